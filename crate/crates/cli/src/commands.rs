use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sspread::harness::{self, property_suite, SuiteConfig};
use sspread::ineq::{self, IneqId, Verdict};
use sspread::spectra::{compact_scale, diag_scale, matrix_scale, spread_full, spread_plus, Mode};
use sspread::{HermMatrix, TwoSidedSeq};

use crate::io::{self, InputFile, MatrixFile};
use crate::report::{digest, float, floats, to_value, Report};
use crate::CliError;

/// Default number of entries for diagonal operators.
pub const DIAG_DEFAULT_HORIZON: usize = 50;

pub struct Output {
    pub report: Report,
    pub table: String,
}

fn fmt(x: f64) -> String {
    if x == 0.0 {
        format!("{:.12}", 0.0)
    } else if x.is_finite() {
        format!("{x:.12}")
    } else {
        format!("{x}")
    }
}

fn scale_of(input: &InputFile, mode: Option<Mode>, horizon: Option<usize>) -> Result<TwoSidedSeq, CliError> {
    match input {
        InputFile::Matrix(m) => {
            let a = io::hermitian(&m.matrix)?;
            match mode.unwrap_or(Mode::Matrix) {
                Mode::Matrix if horizon.is_some() => Err(CliError::Mode(
                    "--horizon applies to compact and diagonal mode only".into(),
                )),
                Mode::Matrix => Ok(matrix_scale(&a)?),
                Mode::Compact => Ok(compact_scale(&a, horizon.unwrap_or(a.dim()))?),
                Mode::Diagonal => Err(CliError::Mode("a matrix file cannot be read in diagonal mode".into())),
            }
        }
        InputFile::Diag(d) => match mode.unwrap_or(Mode::Diagonal) {
            Mode::Diagonal => Ok(diag_scale(&d.spec, horizon.unwrap_or(DIAG_DEFAULT_HORIZON))?),
            other => Err(CliError::Mode(format!("a diagonal file cannot be read in {other} mode"))),
        },
    }
}

fn read(file: &Path) -> Result<(InputFile, Vec<u8>), CliError> {
    Ok(io::read_input(file)?)
}

fn tails_json(scale: &TwoSidedSeq) -> Value {
    match scale.tails() {
        Some(t) => json!({ "pos": float(t.pos), "neg": float(t.neg), "exact": t.exact }),
        None => Value::Null,
    }
}

fn scale_table(out: &mut String, scale: &TwoSidedSeq, pos_label: &str, neg_label: &str) {
    let _ = writeln!(out, "mode     {}", scale.mode());
    let _ = writeln!(out, "horizon  {}", scale.horizon());
    let _ = writeln!(out, "{:>5}  {:>20}  {:>20}", "i", pos_label, neg_label);
    for (i, (p, n)) in scale.pos().iter().zip(scale.neg()).enumerate() {
        let _ = writeln!(out, "{:>5}  {:>20}  {:>20}", i + 1, fmt(*p), fmt(*n));
    }
    match scale.tails() {
        Some(t) => {
            let exact = if t.exact { "exact" } else { "limit" };
            let _ = writeln!(out, "tails    pos {}  neg {}  ({exact})", fmt(t.pos), fmt(t.neg));
        }
        None => {
            let _ = writeln!(out, "tails    none");
        }
    }
}

pub fn scale(file: &Path, mode: Option<Mode>, horizon: Option<usize>) -> Result<Output, CliError> {
    let (input, bytes) = read(file)?;
    let scale = scale_of(&input, mode.or(input.mode()), horizon)?;
    let mut report = Report::new("scale");
    report.inputs_digest = Some(digest(&[bytes]));
    report.set("mode", json!(scale.mode().as_str()));
    report.set("horizon", json!(scale.horizon()));
    report.set("pos", floats(scale.pos()));
    report.set("neg", floats(scale.neg()));
    report.set("tails", tails_json(&scale));
    let mut table = String::new();
    scale_table(&mut table, &scale, "lambda_i", "lambda_-i");
    Ok(Output { report, table })
}

pub fn spread(file: &Path, mode: Option<Mode>, horizon: Option<usize>) -> Result<Output, CliError> {
    let (input, bytes) = read(file)?;
    let scale = scale_of(&input, mode.or(input.mode()), horizon)?;
    let plus = spread_plus(&scale);
    let full = spread_full(&scale);
    let mut report = Report::new("spread");
    report.inputs_digest = Some(digest(&[bytes]));
    report.set("mode", json!(scale.mode().as_str()));
    report.set("horizon", json!(scale.horizon()));
    report.set("spread_plus", floats(plus.values()));
    report.set(
        "spread_plus_tail",
        plus.tail().map_or(Value::Null, |t| json!({ "value": float(t.value), "exact": t.exact })),
    );
    report.set(
        "full",
        json!({ "pos": floats(full.pos()), "neg": floats(full.neg()), "tails": tails_json(&full) }),
    );
    let mut table = String::new();
    let _ = writeln!(table, "spread_plus  {}", plus.values().iter().map(|x| fmt(*x)).collect::<Vec<_>>().join(" "));
    match plus.tail() {
        Some(t) => {
            let _ = writeln!(table, "tail         {}{}", fmt(t.value), if t.exact { " (exact)" } else { "" });
        }
        None => {
            let _ = writeln!(table, "tail         none");
        }
    }
    scale_table(&mut table, &full, "Spr_i", "Spr_-i");
    Ok(Output { report, table })
}

/// Mode used when neither `--mode` nor the first file chooses one.
pub fn default_mode(id: IneqId) -> Mode {
    match id {
        IneqId::Equiv1 | IneqId::Equiv2 | IneqId::Equiv3 | IneqId::Equiv4 | IneqId::Equiv5 => {
            Mode::Matrix
        }
        _ => Mode::Compact,
    }
}

/// Argument names per inequality, in command-line order.
pub fn signature(id: IneqId) -> &'static [&'static str] {
    match id {
        IneqId::TaoPositive => &["F"],
        IneqId::Key => &["A"],
        IneqId::TracePairing => &["A", "B"],
        IneqId::CommutatorScale | IneqId::CommutatorSv | IneqId::Equiv2 => &["A", "X"],
        IneqId::MixedCommutator | IneqId::GeneralCommutator | IneqId::Equiv3 => &["A", "B", "X"],
        IneqId::UnitaryConj => &["A", "X"],
        IneqId::AgmProjection | IneqId::AgmCompact | IneqId::Equiv5 => &["S", "C", "E"],
        IneqId::AgmPair => &["S", "C", "E1", "E2"],
        IneqId::AgmGeneral | IneqId::EquivCompact2 => &["A", "B", "E"],
        IneqId::Zhan | IneqId::Equiv4 => &["E", "F"],
        IneqId::Equiv1 | IneqId::EquivCompact1 => &["E", "P"],
    }
}

fn herm(m: &MatrixFile) -> Result<HermMatrix, CliError> {
    Ok(io::hermitian(&m.matrix)?)
}

fn fixed_compact(requested: Option<Mode>, id: IneqId) -> Result<(), CliError> {
    match requested {
        Some(m) if m != Mode::Compact => Err(CliError::Mode(format!("{id} is only defined in compact mode"))),
        _ => Ok(()),
    }
}

pub fn run_check(
    id: IneqId,
    m: &[MatrixFile],
    requested: Option<Mode>,
    split: Option<usize>,
) -> Result<Verdict, CliError> {
    let names = signature(id);
    // agm_pair accepts a single E for E1 = E2.
    let min = if id == IneqId::AgmPair { 3 } else { names.len() };
    if m.len() < min || m.len() > names.len() {
        return Err(CliError::Input(format!(
            "{id} takes {} matrix files ({}), got {}",
            names.len(),
            names.join(" "),
            m.len()
        )));
    }
    let mode = requested.or(m[0].mode).unwrap_or(default_mode(id));
    let x = |k: usize| &m[k].matrix;
    let h = |k: usize| herm(&m[k]);
    let half = |a: &HermMatrix| split.unwrap_or(a.dim() / 2);
    let v = match id {
        IneqId::TaoPositive => {
            fixed_compact(requested, id)?;
            let f = h(0)?;
            ineq::check_tao_positive(&f, half(&f))?
        }
        IneqId::Key => {
            let a = h(0)?;
            ineq::check_key(&a, half(&a), mode)?
        }
        IneqId::TracePairing => {
            fixed_compact(requested, id)?;
            ineq::check_trace_pairing(&h(0)?, &h(1)?)?
        }
        IneqId::CommutatorScale => ineq::check_commutator_scale(&h(0)?, &h(1)?, mode)?,
        IneqId::CommutatorSv | IneqId::Equiv2 => {
            ineq::relabel(ineq::check_commutator_sv(&h(0)?, &h(1)?, mode)?, id)
        }
        IneqId::MixedCommutator | IneqId::Equiv3 => {
            ineq::relabel(ineq::check_mixed_commutator(&h(0)?, &h(1)?, x(2), mode)?, id)
        }
        IneqId::GeneralCommutator => ineq::check_general_commutator(x(0), x(1), x(2), mode)?,
        IneqId::UnitaryConj => ineq::check_unitary_conj(&h(0)?, &h(1)?, mode)?,
        IneqId::AgmProjection => ineq::check_agm_projection(x(0), x(1), &h(2)?, mode)?,
        IneqId::AgmPair => {
            let e1 = h(2)?;
            let e2 = if m.len() == 4 { h(3)? } else { e1.clone() };
            ineq::check_agm_pair(&h(0)?, &h(1)?, &e1, &e2, mode)?
        }
        IneqId::AgmCompact => ineq::check_agm_compact(x(0), x(1), &h(2)?, mode)?,
        IneqId::AgmGeneral | IneqId::EquivCompact2 => {
            ineq::relabel(ineq::check_agm_general(x(0), x(1), &h(2)?, mode)?, id)
        }
        IneqId::Zhan | IneqId::Equiv4 => ineq::relabel(ineq::check_zhan(&h(0)?, &h(1)?, mode)?, id),
        IneqId::Equiv1 | IneqId::EquivCompact1 => {
            ineq::relabel(ineq::check_equiv_1(&h(0)?, &h(1)?, mode)?, id)
        }
        IneqId::Equiv5 => ineq::check_equiv_5(x(0), x(1), &h(2)?, mode)?,
    };
    Ok(v)
}

fn parse_id(s: &str) -> Result<IneqId, CliError> {
    s.parse().map_err(|_| {
        let known: Vec<&str> = IneqId::ALL.iter().map(|i| i.as_str()).collect();
        CliError::UnknownId(format!("unknown inequality {s:?}; known: {}", known.join(", ")))
    })
}

pub fn verdict_json(v: &Verdict) -> Value {
    let mut out = to_value(v);
    let obj = out.as_object_mut().expect("verdicts serialize to objects");
    let (upper, lower, worst_k, tail) = match &v.report {
        Some(r) => (
            floats(&r.margins_upper),
            floats(&r.margins_lower),
            json!(r.worst_k),
            json!(r.tail_verdict.as_str()),
        ),
        None => (json!([]), json!([]), Value::Null, Value::Null),
    };
    obj.insert("margins".into(), upper);
    obj.insert("margins_lower".into(), lower);
    obj.insert("worst_k".into(), worst_k);
    obj.insert("worst_margin".into(), float(v.worst_margin()));
    obj.insert("tail_verdict".into(), tail);
    obj.insert("entrywise_fails".into(), json!(v.entrywise_fails()));
    out
}

fn verdict_table(v: &Verdict) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "ineq_id    {}", v.ineq_id);
    let _ = writeln!(t, "mode       {}", v.mode);
    let _ = writeln!(t, "holds      {}", v.holds);
    let _ = writeln!(t, "witness    {}", v.witness);
    if let Some(r) = &v.report {
        let _ = writeln!(
            t,
            "submajorization  holds={} worst_k={} worst_margin={} tol={:e} tail={}",
            r.holds,
            r.worst_k,
            fmt(r.worst_margin),
            r.tolerance,
            r.tail_verdict.as_str()
        );
        let _ = writeln!(t, "{:>5}  {:>20}", "k", "margin");
        for (k, m) in r.margins_upper.iter().enumerate() {
            let _ = writeln!(t, "{:>5}  {:>20}", k + 1, fmt(*m));
        }
    }
    if let Some(e) = &v.entrywise {
        let status = match e.first_failure {
            Some(i) => format!("fails first at i = {i}"),
            None => "holds".into(),
        };
        let claim = if e.claimed { "" } else { " (not claimed)" };
        let _ = writeln!(t, "entrywise  {status}{claim}");
    }
    for s in &v.scalars {
        let claim = if s.claimed { "" } else { " (not claimed)" };
        let _ = writeln!(t, "scalar     {}: {} <= {}  {}{claim}", s.name, fmt(s.lhs), fmt(s.rhs), s.holds);
    }
    for s in &v.subchecks {
        let claim = if s.claimed { "" } else { " (not claimed)" };
        let _ = writeln!(
            t,
            "subcheck   {}: holds={} worst_margin={}{claim}",
            s.name,
            s.report.holds,
            fmt(s.report.worst_margin)
        );
    }
    t
}

pub fn check(
    id: &str,
    files: &[PathBuf],
    mode: Option<Mode>,
    split: Option<usize>,
) -> Result<Output, CliError> {
    let id = parse_id(id)?;
    let mut matrices = Vec::new();
    let mut inputs = Vec::new();
    for f in files {
        let (input, bytes) = read(f)?;
        match input {
            InputFile::Matrix(m) => matrices.push(m),
            InputFile::Diag(_) => {
                return Err(CliError::Mode(format!(
                    "{}: inequality checks need matrix files",
                    f.display()
                )))
            }
        }
        inputs.push(bytes);
    }
    let v = run_check(id, &matrices, mode, split)?;
    let mut report = Report::new("check");
    report.inputs_digest = Some(digest(&inputs));
    report.pass = v.holds;
    report.set("checks", json!([verdict_json(&v)]));
    Ok(Output {
        table: verdict_table(&v),
        report,
    })
}

pub fn fuzz(id: &str, trials: usize, dims: (usize, usize), seed: u64) -> Result<Output, CliError> {
    let id = parse_id(id)?;
    let mut s = harness::fuzz(id.as_str(), trials, dims.0..=dims.1, seed)?;
    if let Some(ms) = s.runtime_ms.take() {
        eprintln!("sspread fuzz: {trials} trials in {ms} ms");
    }
    let mut report = Report::new("fuzz");
    report.seed = Some(seed);
    report.pass = s.passed();
    report.set("summary", to_value(&s));
    let mut t = String::new();
    let _ = writeln!(t, "ineq_id       {}", s.ineq_id);
    let _ = writeln!(t, "trials        {}", s.trials);
    let _ = writeln!(t, "dims          {}..{}", s.dims[0], s.dims[1]);
    let _ = writeln!(t, "seed          {}", s.seed);
    let _ = writeln!(t, "failures      {}", s.failures);
    let _ = writeln!(t, "errors        {}", s.errors);
    if let (Some(m), Some(ws), Some(wt)) = (s.worst_margin, s.worst_seed, s.worst_trial) {
        let _ = writeln!(t, "worst_margin  {} (trial {wt}, seed {ws})", fmt(m));
    }
    if let Some(e) = &s.first_error {
        let _ = writeln!(t, "first_error   {e}");
    }
    Ok(Output { report, table: t })
}

pub fn repro(id: &str) -> Result<Output, CliError> {
    let r = harness::repro(id)?;
    let mut report = Report::new("repro");
    report.pass = r.pass;
    report.set("example", to_value(&r));
    let mut t = String::new();
    let _ = writeln!(t, "example  {}", r.example_id);
    let _ = writeln!(t, "{:<32} {:>20} {:>20} {:>10}  pass", "quantity", "expected", "computed", "tol");
    for row in &r.rows {
        let _ = writeln!(
            t,
            "{:<32} {:>20} {:>20} {:>10.0e}  {}",
            row.quantity,
            fmt(row.expected),
            fmt(row.computed),
            row.tol,
            row.pass
        );
    }
    for f in &r.flags {
        let _ = writeln!(t, "flag {:<27} expected={} observed={}  {}", f.name, f.expected, f.observed, f.pass);
    }
    let _ = writeln!(t, "pass     {}", r.pass);
    Ok(Output { report, table: t })
}

pub fn suite(seed: u64) -> Result<Output, CliError> {
    let s = property_suite(seed, &SuiteConfig::default())?;
    let mut report = Report::new("suite");
    report.seed = Some(seed);
    report.pass = s.pass;
    report.set("suite", to_value(&s));
    let mut t = String::new();
    let _ = writeln!(t, "seed {seed}");
    for p in &s.properties {
        let _ = writeln!(
            t,
            "property  {:<30} {:>5} trials  {:>3} failures  {}",
            p.name,
            p.trials,
            p.failures,
            if p.pass { "pass" } else { "FAIL" }
        );
    }
    for f in &s.fuzz {
        let _ = writeln!(
            t,
            "fuzz      {:<30} {:>5} trials  {:>3} failures  {:>3} errors  {}",
            f.ineq_id,
            f.trials,
            f.failures,
            f.errors,
            if f.passed() { "pass" } else { "FAIL" }
        );
    }
    for r in &s.repro {
        let _ = writeln!(t, "repro     {:<30} {}", r.example_id, if r.pass { "pass" } else { "FAIL" });
    }
    let _ = writeln!(t, "pass {}", s.pass);
    Ok(Output { report, table: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sspread::CMatrix;

    fn mf(rows: usize, cols: usize, entries: &[f64]) -> MatrixFile {
        MatrixFile {
            mode: None,
            matrix: CMatrix::from_real(rows, cols, entries).unwrap(),
        }
    }

    #[test]
    fn every_id_has_a_signature_and_default_mode() {
        for id in IneqId::ALL {
            assert!(!signature(*id).is_empty());
            let _ = default_mode(*id);
        }
    }

    #[test]
    fn arity_is_checked() {
        let a = mf(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let err = run_check(IneqId::Zhan, &[a], None, None).unwrap_err();
        assert!(matches!(err, CliError::Input(_)));
    }

    #[test]
    fn fixed_mode_verifiers_reject_matrix_mode() {
        let f = mf(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let err = run_check(IneqId::TaoPositive, &[f], Some(Mode::Matrix), None).unwrap_err();
        assert!(matches!(err, CliError::Mode(_)));
    }

    #[test]
    fn key_on_diagonal_matrix_holds() {
        let a = mf(3, 3, &[3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0]);
        assert!(run_check(IneqId::Key, &[a], None, None).unwrap().holds);
    }

    #[test]
    fn verdict_json_has_report_fields() {
        let e = mf(2, 2, &[1.0, 2.0, 2.0, -1.0]);
        let f = mf(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let v = run_check(IneqId::Zhan, &[e, f], None, None).unwrap();
        let j = verdict_json(&v);
        for key in ["ineq_id", "holds", "margins", "worst_k", "tail_verdict", "witness"] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["ineq_id"], "zhan");
    }
}
