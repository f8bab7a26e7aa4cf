//! Recomputes every number quoted for the worked examples.

use serde::Serialize;

use super::{fixtures, HarnessError};
use crate::ineq::{check_agm_compact, check_agm_general, check_agm_projection, check_mixed_commutator};
use crate::linalg::{direct_sum, psd_sqrt, svd_values, HermMatrix};
use crate::spectra::{compact_scale, diag_scale, spread_plus_of, Mode};

pub const EXAMPLES: [&str; 4] = ["diag-scale", "kittaneh-fail", "agm-fail-2x2", "agm-fail-3x3"];

/// Exact quantities.
pub const EXACT_TOL: f64 = 1e-9;
/// Quantities quoted to four decimals.
pub const FOUR_DIGIT_TOL: f64 = 5e-4;
/// Quantities quoted to two decimals.
pub const TWO_DIGIT_TOL: f64 = 5e-2;
/// Diagonal-model entries.
pub const DIAG_TOL: f64 = 1e-12;
pub const DIAG_HORIZON: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproRow {
    pub quantity: String,
    pub expected: f64,
    pub computed: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproFlag {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproReport {
    pub example_id: String,
    pub rows: Vec<ReproRow>,
    pub flags: Vec<ReproFlag>,
    pub pass: bool,
}

#[derive(Default)]
struct Builder {
    rows: Vec<ReproRow>,
    flags: Vec<ReproFlag>,
}

impl Builder {
    fn row(&mut self, quantity: impl Into<String>, expected: f64, computed: f64, tol: f64) {
        self.rows.push(ReproRow {
            quantity: quantity.into(),
            expected,
            computed,
            tol,
            pass: (expected - computed).abs() <= tol,
        });
    }

    fn rows(&mut self, name: &str, expected: &[f64], computed: &[f64], tol: f64) {
        for (i, &e) in expected.iter().enumerate() {
            let c = computed.get(i).copied().unwrap_or(f64::NAN);
            self.row(format!("{name}[{}]", i + 1), e, c, tol);
        }
    }

    fn flag(&mut self, name: &str, expected: bool, observed: bool) {
        self.flags.push(ReproFlag {
            name: name.to_string(),
            expected,
            observed,
            pass: expected == observed,
        });
    }

    fn finish(self, id: &str) -> ReproReport {
        let pass = self.rows.iter().all(|r| r.pass) && self.flags.iter().all(|f| f.pass);
        ReproReport {
            example_id: id.to_string(),
            rows: self.rows,
            flags: self.flags,
            pass,
        }
    }
}

pub fn repro(example_id: &str) -> Result<ReproReport, HarnessError> {
    let mut b = Builder::default();
    match example_id {
        "diag-scale" => diag(&mut b)?,
        "kittaneh-fail" => kittaneh(&mut b)?,
        "agm-fail-2x2" => agm_2x2(&mut b)?,
        "agm-fail-3x3" => agm_3x3(&mut b)?,
        other => return Err(HarnessError::UnknownExample(other.to_string())),
    }
    Ok(b.finish(example_id))
}

fn diag(b: &mut Builder) -> Result<(), HarnessError> {
    let scale = diag_scale(&fixtures::diag_harmonic(), DIAG_HORIZON)?;
    let pos: Vec<f64> = (1..=DIAG_HORIZON).map(|i| 1.0 + 1.0 / i as f64).collect();
    b.rows("lambda_pos", &pos, scale.pos(), DIAG_TOL);
    b.rows("lambda_neg", &[-1.0; DIAG_HORIZON], scale.neg(), DIAG_TOL);
    let tails = scale.tails().expect("diagonal scales carry tails");
    b.row("tail_pos", 1.0, tails.pos, DIAG_TOL);
    b.row("tail_neg", -1.0, tails.neg, DIAG_TOL);
    Ok(())
}

fn kittaneh(b: &mut Builder) -> Result<(), HarnessError> {
    let (a, bm, x) = fixtures::kittaneh();
    let lhs = svd_values(&(&(a.as_cmatrix() * &x) - &(&x * bm.as_cmatrix())))?;
    b.rows("s(AX-XB)", &[6.0, 2.0], lhs.values(), EXACT_TOL);
    let sum = direct_sum(&a, &bm);
    let scale = compact_scale(&sum, 4)?;
    b.rows("lambda_pos(A⊕B)", &[3.0, 1.0, 1.0, 0.0], scale.pos(), EXACT_TOL);
    b.rows("lambda_neg(A⊕B)", &[-1.0, 0.0, 0.0, 0.0], scale.neg(), EXACT_TOL);
    let sx = svd_values(&x)?;
    b.rows("s(X)", &[3.0, 1.0], sx.values(), EXACT_TOL);
    let spread = spread_plus_of(&sum, Mode::Compact)?;
    b.rows("Spr+(A⊕B)", &[4.0, 1.0, 1.0, 0.0], spread.values(), EXACT_TOL);
    b.row("Spr+_2(A⊕B)*s_2(X)", 1.0, spread.values()[1] * sx.values()[1], EXACT_TOL);

    let v = check_mixed_commutator(&a, &bm, &x, Mode::Compact)?;
    b.flag("submajorization_holds", true, v.holds);
    b.flag("entrywise_fails", true, v.entrywise_fails());
    let first = v.entrywise.as_ref().and_then(|e| e.first_failure);
    b.row("first_entrywise_failure", 2.0, first.map_or(f64::NAN, |k| k as f64), 0.0);
    Ok(())
}

fn agm_2x2(b: &mut Builder) -> Result<(), HarnessError> {
    let (s, c, e) = fixtures::agm_2x2();
    let y = &(&s * e.as_cmatrix()) * &c.adjoint();
    let frob = y.frobenius_norm();
    let half = 0.5 * e.as_cmatrix().frobenius_norm();
    b.row("||SEC*||_2", 0.7598, frob, FOUR_DIGIT_TOL);
    b.row("||E||_2/2", 2f64.sqrt() / 2.0, half, EXACT_TOL);
    let sum = &(&c.adjoint() * &c) + &(&s.adjoint() * &s);
    b.row("||C*C+S*S-I||_F", 0.0, sum.distance(&HermMatrix::identity(2).into_cmatrix()), EXACT_TOL);
    b.flag("frobenius_bound_fails", true, frob > half);
    let proj = check_agm_projection(&s, &c, &e, Mode::Compact)?;
    b.flag("agm_projection_holds", true, proj.holds);
    let compact = check_agm_compact(&s, &c, &e, Mode::Compact)?;
    b.flag("agm_compact_holds", true, compact.holds);
    Ok(())
}

fn agm_3x3(b: &mut Builder) -> Result<(), HarnessError> {
    let (a, bm, e) = fixtures::agm_3x3();
    let gram = &(&a.adjoint() * &a) + &(&bm.adjoint() * &bm);
    let expected_gram = [3.25, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.25];
    for (k, &want) in expected_gram.iter().enumerate() {
        let (i, j) = (k / 3, k % 3);
        b.row(format!("F[{},{}]", i + 1, j + 1), want, gram[(i, j)].norm(), EXACT_TOL);
    }
    let root = psd_sqrt(&HermMatrix::symmetrized(gram))?;
    let inner = e.conjugate_by(root.as_cmatrix());
    let scale = compact_scale(&inner, 3)?;
    b.rows("lambda_pos(F^1/2 E F^1/2)", &[39.0 / 4.0, 2.0, 0.0], scale.pos(), EXACT_TOL);
    b.rows("lambda_neg(F^1/2 E F^1/2)", &[-13.0 / 4.0, 0.0, 0.0], scale.neg(), EXACT_TOL);
    let spread = spread_plus_of(&inner, Mode::Compact)?;
    b.rows("Spr+(F^1/2 E F^1/2)", &[13.0, 2.0, 0.0], spread.values(), EXACT_TOL);
    let y = &(&a * e.as_cmatrix()) * &bm.adjoint();
    let sy = svd_values(&y)?;
    b.rows("s(AEB*)", &[4.74, 1.58, 1.0], sy.values(), TWO_DIGIT_TOL);
    b.row("2*s_2(AEB*)", 3.16, 2.0 * sy.values()[1], TWO_DIGIT_TOL);
    b.flag("2*s_2(AEB*) > Spr+_2", true, 2.0 * sy.values()[1] > spread.values()[1]);

    let v = check_agm_general(&a, &bm, &e, Mode::Compact)?;
    b.flag("submajorization_holds", true, v.holds);
    b.flag("entrywise_fails", true, v.entrywise_fails());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_pass() {
        for id in EXAMPLES {
            let r = repro(id).unwrap();
            for row in &r.rows {
                assert!(row.pass, "{id}: {row:?}");
            }
            for flag in &r.flags {
                assert!(flag.pass, "{id}: {flag:?}");
            }
            assert!(r.pass);
        }
    }

    #[test]
    fn unknown_example() {
        assert!(matches!(repro("nope"), Err(HarnessError::UnknownExample(_))));
    }
}
