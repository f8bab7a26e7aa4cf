use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sspread::harness::{gaussian_matrix, hermitian, SplitMix64};
use sspread::spectra::Mode;
use sspread_cli::io::{parse_matrix, write_matrix, MatrixFile};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sspread"));
    c.env_remove("SSPREAD_SEED");
    c
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report on stdout")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn identity_scale_is_all_ones() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "i.txt", "dim 3\n1 0 0\n0 1 0\n0 0 1\n");
    let o = run(&["scale", &f, "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["mode"], "matrix");
    for side in ["pos", "neg"] {
        let xs = v[side].as_array().unwrap();
        assert_eq!(xs.len(), 3);
        assert!(xs.iter().all(|x| (x.as_f64().unwrap() - 1.0).abs() < 1e-12));
    }
    assert!(v["tails"].is_null());
}

#[test]
fn diagonal_file_scale() {
    let o = run(&["scale", fixture("diag-scale/a.diag").to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["horizon"], 50);
    for (i, x) in v["pos"].as_array().unwrap().iter().enumerate() {
        assert!((x.as_f64().unwrap() - (1.0 + 1.0 / (i + 1) as f64)).abs() <= 1e-12);
    }
    assert!(v["neg"].as_array().unwrap().iter().all(|x| x.as_f64().unwrap() == -1.0));
    assert_eq!(v["tails"]["pos"].as_f64(), Some(1.0));
    assert_eq!(v["tails"]["neg"].as_f64(), Some(-1.0));
}

#[test]
fn spread_of_indefinite_fixture() {
    let o = run(&["spread", fixture("agm-fail-3x3/E.txt").to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let sp: Vec<f64> = v["spread_plus"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    // E has eigenvalues 3, 1, −1.
    assert_eq!(sp.len(), 3);
    for (got, want) in sp.iter().zip([4.0, 1.0, 0.0]) {
        assert!((got - want).abs() < 1e-9);
    }
}

#[test]
fn round_trip_preserves_scale() {
    let dir = TempDir::new().unwrap();
    let mut r = SplitMix64::new(11);
    for k in 0..5 {
        let a = hermitian(&mut r, 2 + k);
        let file = MatrixFile {
            mode: Some(Mode::Compact),
            matrix: a.as_cmatrix().clone(),
        };
        let text = write_matrix(&file);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back, file);
        assert_eq!(write_matrix(&back), text);
        let f1 = write(&dir, "a.txt", &text);
        let f2 = write(&dir, "b.txt", &write_matrix(&back));
        let s1 = run(&["scale", &f1, "--json"]);
        let s2 = run(&["scale", &f2, "--json"]);
        assert_eq!(json(&s1)["pos"], json(&s2)["pos"]);
        assert_eq!(json(&s1)["neg"], json(&s2)["neg"]);
    }
}

#[test]
fn check_key_on_diagonal_matrix_holds() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "d.txt", "dim 3\n3 0 0\n0 -1 0\n0 0 2\n");
    let o = run(&["check", "key", &f, "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["command"], "check");
    assert_eq!(v["checks"][0]["ineq_id"], "key");
    assert_eq!(v["checks"][0]["holds"], true);
    assert!(v["inputs_digest"].as_str().unwrap().len() == 64);
}

#[test]
fn check_mixed_commutator_on_kittaneh_fixture() {
    let files: Vec<String> = ["A", "B", "X"]
        .iter()
        .map(|n| fixture(&format!("kittaneh-fail/{n}.txt")).to_str().unwrap().to_string())
        .collect();
    let mut args = vec!["check", "mixed_commutator"];
    args.extend(files.iter().map(String::as_str));
    args.push("--json");
    let o = run(&args);
    assert_eq!(code(&o), 0);
    let c = &json(&o)["checks"][0];
    assert_eq!(c["holds"], true);
    assert_eq!(c["entrywise_fails"], true);
    assert_eq!(c["entrywise"]["first_failure"], 2);
    assert_eq!(c["tail_verdict"], "conclusive");
}

#[test]
fn check_zhan_on_random_pair() {
    let dir = TempDir::new().unwrap();
    let mut r = SplitMix64::new(5);
    let e = write_matrix(&MatrixFile { mode: None, matrix: hermitian(&mut r, 4).into_cmatrix() });
    let f = write_matrix(&MatrixFile { mode: None, matrix: hermitian(&mut r, 4).into_cmatrix() });
    let (e, f) = (write(&dir, "e.txt", &e), write(&dir, "f.txt", &f));
    let o = run(&["check", "zhan", &e, &f]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("holds      true"));
}

#[test]
fn failing_check_exits_one_and_still_reports() {
    let dir = TempDir::new().unwrap();
    let h = "dim 3\n0.7071067811865476 0 0\n0 0.7071067811865476 0\n0 0 0.7071067811865476\n";
    let s = write(&dir, "s.txt", h);
    let e = write(&dir, "e.txt", "dim 3\n1 0 0\n0 1 0\n0 0 1\n");
    let o = run(&["check", "agm_compact", &s, &s, &e, "--mode", "matrix", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["pass"], false);
    assert_eq!(v["checks"][0]["holds"], false);
    let o = run(&["check", "agm_compact", &s, &s, &e, "--mode", "compact"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "dim 2\n1 2\n3\n");
    assert_eq!(code(&run(&["scale", &bad])), 2);
    let exp = write(&dir, "exp.txt", "dim 1\n1e3\n");
    assert_eq!(code(&run(&["scale", &exp])), 2);
    let nonherm = write(&dir, "nh.txt", "dim 2\n1 2\n3 4\n");
    let o = run(&["spread", &nonherm, "--json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "parse");
    assert_eq!(code(&run(&["scale", "/nonexistent/file.txt"])), 2);
    let a = write(&dir, "a.txt", "dim 2\n1 0\n0 1\n");
    assert_eq!(code(&run(&["check", "zhan", &a])), 2);
    let neg = write(&dir, "neg.txt", "dim 2\n-1 0\n0 1\n");
    assert_eq!(code(&run(&["check", "tao_positive", &neg])), 2);
}

#[test]
fn mode_violations_exit_three() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "dim 2\n1 0\n0 -1\n");
    assert_eq!(code(&run(&["scale", &a, "--mode", "diagonal"])), 3);
    assert_eq!(code(&run(&["scale", &a, "--horizon", "4"])), 3);
    assert_eq!(code(&run(&["scale", &a, "--mode", "compact", "--horizon", "1"])), 3);
    assert_eq!(code(&run(&["scale", &a, "--mode", "compact", "--horizon", "4"])), 0);
    let d = fixture("diag-scale/a.diag");
    assert_eq!(code(&run(&["scale", d.to_str().unwrap(), "--mode", "matrix"])), 3);
    assert_eq!(code(&run(&["check", "zhan", d.to_str().unwrap(), &a])), 3);
    assert_eq!(code(&run(&["check", "zhan", &a, &a, "--mode", "diagonal"])), 3);
    assert_eq!(code(&run(&["check", "trace_pairing", &a, &a, "--mode", "matrix"])), 3);
}

#[test]
fn unknown_ids_exit_four() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", "dim 1\n1\n");
    assert_eq!(code(&run(&["check", "no_such", &a])), 4);
    assert_eq!(code(&run(&["fuzz", "no_such"])), 4);
    let o = run(&["repro", "no-such", "--json"]);
    assert_eq!(code(&o), 4);
    assert_eq!(json(&o)["error"]["exit_code"], 4);
}

#[test]
fn fuzz_with_zero_trials_is_empty() {
    let o = run(&["fuzz", "key", "--trials", "0", "--json"]);
    assert_eq!(code(&o), 0);
    let s = &json(&o)["summary"];
    assert_eq!(s["trials"], 0);
    assert_eq!(s["failures"], 0);
    assert!(s["worst_margin"].is_null());
    assert!(s.get("runtime_ms").is_none());
}

#[test]
fn fuzz_is_deterministic_and_reads_seed_from_env() {
    let a = run(&["fuzz", "zhan", "--trials", "30", "--dims", "2..5", "--seed", "9", "--json"]);
    let b = bin()
        .args(["fuzz", "zhan", "--trials", "30", "--dims", "2..5", "--json"])
        .env("SSPREAD_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);
    let c = run(&["fuzz", "zhan", "--trials", "30", "--dims", "2..5", "--seed", "10", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn bad_dims_are_rejected() {
    assert_eq!(code(&run(&["fuzz", "key", "--dims", "0..3"])), 2);
    assert_eq!(code(&run(&["fuzz", "key", "--dims", "5..2"])), 2);
}

#[test]
fn repro_agm_three_by_three_table() {
    let o = run(&["repro", "agm-fail-3x3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("Spr+(F^1/2 E F^1/2)[1]"));
    assert!(text.lines().last().unwrap().contains("true"));
}

#[test]
fn rectangular_operands_for_general_checks() {
    let dir = TempDir::new().unwrap();
    let mut r = SplitMix64::new(3);
    let mk = |r: &mut SplitMix64, rows, cols| {
        write_matrix(&MatrixFile { mode: None, matrix: gaussian_matrix(r, rows, cols) })
    };
    let a = write(&dir, "a.txt", &mk(&mut r, 2, 3));
    let b = write(&dir, "b.txt", &mk(&mut r, 2, 3));
    let e = write_matrix(&MatrixFile { mode: None, matrix: hermitian(&mut r, 3).into_cmatrix() });
    let e = write(&dir, "e.txt", &e);
    let o = run(&["check", "agm_general", &a, &b, &e, "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
