//! Rearrangements, (sub)majorization verdicts and gauge norms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::spectra::{compact_from_values, Mode, SpectraError, SpreadSeq, Tail, TwoSidedSeq};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MajorError {
    #[error("horizons differ: {left} vs {right}")]
    HorizonMismatch { left: usize, right: usize },
    #[error("operation requires compact mode, got {mode}")]
    ModeError { mode: Mode },
    #[error("Schatten exponent must be >= 1, got {p}")]
    InvalidExponent { p: f64 },
    #[error("unknown norm {0:?}")]
    UnknownNorm(String),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// `1e-9 · max(1, ‖b‖_∞ · K)`.
pub fn maj_tol(b_sup: f64, horizon: usize) -> f64 {
    1e-9 * (b_sup.abs() * horizon as f64).max(1.0)
}

pub fn dec_rearrange(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn inc_rearrange(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MajorKind {
    Submajorization,
    Majorization,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailVerdict {
    /// The margins cannot decrease past the horizon.
    Conclusive,
    /// The horizon margins hold but the tails do not settle the remainder.
    HorizonLimited,
    /// The left tail exceeds the right tail, so partial sums eventually fail.
    TailViolated,
}

impl TailVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TailVerdict::Conclusive => "conclusive",
            TailVerdict::HorizonLimited => "horizon_limited",
            TailVerdict::TailViolated => "tail_violated",
        }
    }
}

/// Partial-sum margins for `a ≺_w b` or `a ≺ b`.
///
/// `margins_upper[k-1] = Σ_{i≤k} b↓_i − Σ_{i≤k} a↓_i`; for majorization
/// `margins_lower[k-1] = Σ_{i≤k} a↑_i − Σ_{i≤k} b↑_i` (or the negative-side
/// sums of two scales).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MajorizationReport {
    pub kind: MajorKind,
    pub margins_upper: Vec<f64>,
    pub margins_lower: Vec<f64>,
    pub holds: bool,
    /// 1-based `k` of the smallest margin, 0 when there are no margins.
    pub worst_k: usize,
    pub worst_margin: f64,
    pub tail_verdict: TailVerdict,
    pub tolerance: f64,
}

impl MajorizationReport {
    fn build(
        kind: MajorKind,
        margins_upper: Vec<f64>,
        margins_lower: Vec<f64>,
        tail_verdict: TailVerdict,
        tolerance: f64,
    ) -> Self {
        let mut worst_k = 0;
        let mut worst_margin = f64::INFINITY;
        for (k, &m) in margins_upper.iter().enumerate().chain(margins_lower.iter().enumerate()) {
            if m < worst_margin {
                worst_margin = m;
                worst_k = k + 1;
            }
        }
        if worst_k == 0 {
            worst_margin = 0.0;
        }
        let mut report = Self {
            kind,
            margins_upper,
            margins_lower,
            holds: false,
            worst_k,
            worst_margin,
            tail_verdict,
            tolerance,
        };
        report.holds = report.holds_at(tolerance);
        report
    }

    /// Re-judges the stored margins at another tolerance.
    pub fn holds_at(&self, tol: f64) -> bool {
        self.worst_margin >= -tol && self.tail_verdict != TailVerdict::TailViolated
    }
}

fn prefix_margins(small: &[f64], large: &[f64]) -> Vec<f64> {
    let mut sa = 0.0;
    let mut sb = 0.0;
    small
        .iter()
        .zip(large)
        .map(|(a, b)| {
            sa += a;
            sb += b;
            sb - sa
        })
        .collect()
}

fn sup_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// `a ≺_w b` for finitely supported vectors; the shorter one is zero-padded.
pub fn submajorizes(a: &[f64], b: &[f64]) -> MajorizationReport {
    let k = a.len().max(b.len());
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.resize(k, 0.0);
    b.resize(k, 0.0);
    let a = dec_rearrange(&a);
    let b = dec_rearrange(&b);
    let tol = maj_tol(sup_abs(&b), k);
    MajorizationReport::build(
        MajorKind::Submajorization,
        prefix_margins(&a, &b),
        Vec::new(),
        TailVerdict::Conclusive,
        tol,
    )
}

/// `a ≺_w b` for spread-like sequences, padding with exact tails where needed.
pub fn submajorizes_seq(a: &SpreadSeq, b: &SpreadSeq) -> Result<MajorizationReport, MajorError> {
    let k = a.len().max(b.len());
    let mismatch = MajorError::HorizonMismatch {
        left: a.len(),
        right: b.len(),
    };
    let pa = a.padded(k).map_err(|_| mismatch.clone())?;
    let pb = b.padded(k).map_err(|_| mismatch)?;
    let tol = maj_tol(sup_abs(pb.values()), k);
    let verdict = match (a.tail(), b.tail()) {
        (Some(ta), Some(tb)) => {
            let post_sup = if ta.exact {
                ta.value
            } else {
                pa.values().last().copied().unwrap_or(ta.value)
            };
            if ta.value > tb.value + tol {
                TailVerdict::TailViolated
            } else if post_sup <= tb.value + tol {
                TailVerdict::Conclusive
            } else {
                TailVerdict::HorizonLimited
            }
        }
        // Equal finite lengths: every partial sum was compared.
        _ => TailVerdict::Conclusive,
    };
    Ok(MajorizationReport::build(
        MajorKind::Submajorization,
        prefix_margins(pa.values(), pb.values()),
        Vec::new(),
        verdict,
        tol,
    ))
}

/// `a ≺ b` for equal-length vectors.
pub fn majorizes(a: &[f64], b: &[f64]) -> Result<MajorizationReport, MajorError> {
    if a.len() != b.len() {
        return Err(MajorError::HorizonMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let upper = prefix_margins(&dec_rearrange(a), &dec_rearrange(b));
    // Σ a↑ − Σ b↑ = margins of (−a) ≺_w (−b).
    let neg_a: Vec<f64> = a.iter().map(|x| -x).collect();
    let neg_b: Vec<f64> = b.iter().map(|x| -x).collect();
    let lower = prefix_margins(&dec_rearrange(&neg_a), &dec_rearrange(&neg_b));
    let tol = maj_tol(sup_abs(b), a.len());
    Ok(MajorizationReport::build(
        MajorKind::Majorization,
        upper,
        lower,
        TailVerdict::Conclusive,
        tol,
    ))
}

/// `λ(a) ≺ λ(b)` for two scales in the same model and horizon.
pub fn majorizes_scales(a: &TwoSidedSeq, b: &TwoSidedSeq) -> Result<MajorizationReport, MajorError> {
    if a.horizon() != b.horizon() {
        return Err(MajorError::HorizonMismatch {
            left: a.horizon(),
            right: b.horizon(),
        });
    }
    let upper = prefix_margins(a.pos(), b.pos());
    let neg_a: Vec<f64> = a.neg().iter().map(|x| -x).collect();
    let neg_b: Vec<f64> = b.neg().iter().map(|x| -x).collect();
    let lower = prefix_margins(&neg_a, &neg_b);
    let k = a.horizon();
    let tol = maj_tol(sup_abs(b.pos()).max(sup_abs(b.neg())), k);
    let verdict = match (a.tails(), b.tails()) {
        (Some(ta), Some(tb)) => {
            if ta.pos > tb.pos + tol || ta.neg < tb.neg - tol {
                TailVerdict::TailViolated
            } else {
                let sup_a = if ta.exact { ta.pos } else { a.pos().last().copied().unwrap_or(ta.pos) };
                let inf_a = if ta.exact { ta.neg } else { a.neg().last().copied().unwrap_or(ta.neg) };
                if sup_a <= tb.pos + tol && inf_a >= tb.neg - tol {
                    TailVerdict::Conclusive
                } else {
                    TailVerdict::HorizonLimited
                }
            }
        }
        _ => TailVerdict::Conclusive,
    };
    Ok(MajorizationReport::build(
        MajorKind::Majorization,
        upper,
        lower,
        verdict,
        tol,
    ))
}

/// A finitely supported two-sided sequence `(a, b)` with `(a,b)_{-n} = a_n`
/// and `(a,b)_n = b_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bisequence {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl Bisequence {
    pub fn entries(&self) -> impl Iterator<Item = f64> + '_ {
        self.left.iter().chain(&self.right).copied()
    }

    /// All entries in non-increasing order.
    pub fn dec(&self) -> Vec<f64> {
        dec_rearrange(&self.entries().collect::<Vec<_>>())
    }
}

/// `x↑↓ = λ(D_x)` for finitely supported data, which only makes sense in the
/// compact model.
pub fn updown_rearrange(x: &Bisequence, mode: Mode) -> Result<TwoSidedSeq, MajorError> {
    if mode != Mode::Compact {
        return Err(MajorError::ModeError { mode });
    }
    let values: Vec<f64> = x.entries().collect();
    Ok(compact_from_values(&values, values.len())?)
}

pub fn interleave(a: &SpreadSeq, b: &SpreadSeq) -> Result<Bisequence, MajorError> {
    if a.len() != b.len() {
        return Err(MajorError::HorizonMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(Bisequence {
        left: a.values().to_vec(),
        right: b.values().to_vec(),
    })
}

fn combine_tails(a: Option<Tail>, b: Option<Tail>, f: impl Fn(f64, f64) -> f64) -> Option<Tail> {
    match (a, b) {
        (Some(x), Some(y)) => Some(Tail {
            value: f(x.value, y.value),
            exact: x.exact && y.exact,
        }),
        _ => None,
    }
}

fn zip_seq(
    a: &SpreadSeq,
    b: &SpreadSeq,
    f: impl Fn(f64, f64) -> f64,
) -> Result<SpreadSeq, MajorError> {
    if a.len() != b.len() {
        return Err(MajorError::HorizonMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let values = a.values().iter().zip(b.values()).map(|(x, y)| f(*x, *y)).collect();
    Ok(SpreadSeq::new(values, combine_tails(a.tail(), b.tail(), f))?)
}

/// `(a · b)_n = a_n b_n`.
pub fn seq_product(a: &SpreadSeq, b: &SpreadSeq) -> Result<SpreadSeq, MajorError> {
    zip_seq(a, b, |x, y| x * y)
}

/// `(a + b)_n = a_n + b_n`.
pub fn seq_sum(a: &SpreadSeq, b: &SpreadSeq) -> Result<SpreadSeq, MajorError> {
    zip_seq(a, b, |x, y| x + y)
}

/// Pads both sequences to a common horizon (using their exact tails) and
/// multiplies them.
pub fn padded_product(a: &SpreadSeq, b: &SpreadSeq) -> Result<SpreadSeq, MajorError> {
    let k = a.len().max(b.len());
    let mismatch = MajorError::HorizonMismatch {
        left: a.len(),
        right: b.len(),
    };
    let pa = a.padded(k).map_err(|_| mismatch.clone())?;
    let pb = b.padded(k).map_err(|_| mismatch)?;
    seq_product(&pa, &pb)
}

/// Unitarily invariant norms through their gauge functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormId {
    Operator,
    KyFan(usize),
    Schatten(f64),
}

impl NormId {
    /// Norms evaluated by the verifiers' norm-form checks.
    pub const STANDARD: [NormId; 4] = [
        NormId::Operator,
        NormId::KyFan(2),
        NormId::Schatten(1.0),
        NormId::Schatten(2.0),
    ];
}

impl fmt::Display for NormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormId::Operator => f.write_str("operator"),
            NormId::KyFan(k) => write!(f, "ky_fan_{k}"),
            NormId::Schatten(p) => write!(f, "schatten_{p}"),
        }
    }
}

impl FromStr for NormId {
    type Err = MajorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MajorError::UnknownNorm(s.to_string());
        if s == "operator" {
            return Ok(NormId::Operator);
        }
        if let Some(k) = s.strip_prefix("ky_fan_") {
            return k.parse().map(NormId::KyFan).map_err(|_| bad());
        }
        if let Some(p) = s.strip_prefix("schatten_") {
            let p: f64 = p.parse().map_err(|_| bad())?;
            if !(p >= 1.0) {
                return Err(MajorError::InvalidExponent { p });
            }
            return Ok(NormId::Schatten(p));
        }
        Err(bad())
    }
}

/// Sum of the first `k` entries (tail-extended when exact).
pub fn ky_fan(a: &SpreadSeq, k: usize) -> f64 {
    let stored: f64 = a.values().iter().take(k).sum();
    let missing = k.saturating_sub(a.len());
    match a.tail() {
        Some(t) if missing > 0 => stored + missing as f64 * t.value,
        _ => stored,
    }
}

/// `(Σ a_i^p)^{1/p}` over the horizon; infinite when an exact tail is
/// non-zero.
pub fn schatten(a: &SpreadSeq, p: f64) -> Result<f64, MajorError> {
    if !(p >= 1.0) {
        return Err(MajorError::InvalidExponent { p });
    }
    if let Some(t) = a.tail() {
        if t.exact && t.value > 0.0 {
            return Ok(f64::INFINITY);
        }
    }
    let top = a.values().first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    // Scale by the largest entry to avoid overflow for large p.
    let sum: f64 = a.values().iter().map(|v| (v / top).powf(p)).sum();
    Ok(top * sum.powf(1.0 / p))
}

pub fn gauge(a: &SpreadSeq, norm: NormId) -> Result<f64, MajorError> {
    match norm {
        NormId::Operator => Ok(a.get(0).unwrap_or(0.0)),
        NormId::KyFan(k) => Ok(ky_fan(a, k)),
        NormId::Schatten(p) => schatten(a, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn seq(v: &[f64]) -> SpreadSeq {
        SpreadSeq::finite(v.to_vec())
    }

    #[test]
    fn rearrangements() {
        assert_eq!(dec_rearrange(&[1.0, 3.0, 2.0]), vec![3.0, 2.0, 1.0]);
        assert_eq!(dec_rearrange(&[6.0, 2.0, 0.0]), vec![6.0, 2.0, 0.0]);
        let b = Bisequence {
            left: vec![-1.0],
            right: vec![1.0],
        };
        let s = updown_rearrange(&b, Mode::Compact).unwrap();
        assert_eq!(s.pos(), &[1.0, 0.0]);
        assert_eq!(s.neg(), &[-1.0, 0.0]);
        assert!(matches!(
            updown_rearrange(&b, Mode::Matrix),
            Err(MajorError::ModeError { .. })
        ));
        let b = Bisequence {
            left: vec![-1.0, 1.0],
            right: vec![3.0, 1.0],
        };
        let s = updown_rearrange(&b, Mode::Compact).unwrap();
        assert_eq!(s.pos(), &[3.0, 1.0, 1.0, 0.0]);
        assert_eq!(s.neg(), &[-1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn products_and_interleaving() {
        let a = seq(&[3.0, 1.0]);
        let ones = SpreadSeq::new(vec![1.0, 1.0], Some(Tail { value: 1.0, exact: true })).unwrap();
        assert_eq!(seq_product(&a, &ones).unwrap().values(), a.values());
        let spr = seq(&[4.0, 1.0, 1.0, 0.0]);
        let sx = seq(&[3.0, 1.0]).padded(4).unwrap();
        assert_eq!(seq_product(&spr, &sx).unwrap().values(), &[12.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            seq_product(&spr, &a),
            Err(MajorError::HorizonMismatch { .. })
        ));
        let z = interleave(&seq(&[0.0, 0.0]), &a).unwrap();
        assert_eq!(z.left, vec![0.0, 0.0]);
        assert_eq!(interleave(&a, &a).unwrap().dec(), vec![3.0, 3.0, 1.0, 1.0]);
    }

    #[test]
    fn kittaneh_remark_margins() {
        let r = submajorizes(&[6.0, 2.0, 0.0, 0.0], &[12.0, 1.0, 0.0, 0.0]);
        assert_eq!(r.margins_upper, vec![6.0, 5.0, 5.0, 5.0]);
        assert!(r.holds);
        let r = submajorizes(&[1.0, 2.0], &[2.0, 1.0]);
        assert!(r.margins_upper.iter().all(|&m| m == 0.0) && r.holds);
    }

    #[test]
    fn tail_verdicts() {
        let a = SpreadSeq::new(vec![2.0], Some(Tail { value: 1.0, exact: false })).unwrap();
        let b = SpreadSeq::new(vec![3.0], Some(Tail { value: 1.0, exact: false })).unwrap();
        assert_eq!(submajorizes_seq(&a, &b).unwrap().tail_verdict, TailVerdict::HorizonLimited);
        let a1 = SpreadSeq::new(vec![2.0], Some(Tail { value: 1.0, exact: true })).unwrap();
        assert_eq!(submajorizes_seq(&a1, &b).unwrap().tail_verdict, TailVerdict::Conclusive);
        let b0 = SpreadSeq::new(vec![5.0], Some(Tail::ZERO)).unwrap();
        let r = submajorizes_seq(&a1, &b0).unwrap();
        assert_eq!(r.tail_verdict, TailVerdict::TailViolated);
        assert!(!r.holds);
        let m = SpreadSeq::new(vec![1.0, 0.0], None).unwrap();
        assert!(matches!(
            submajorizes_seq(&seq(&[1.0, 1.0, 1.0]), &m),
            Err(MajorError::HorizonMismatch { .. })
        ));
    }

    #[test]
    fn norms() {
        assert_abs_diff_eq!(schatten(&seq(&[1.0, 1.0]), 2.0).unwrap(), 2f64.sqrt(), epsilon = 1e-15);
        let a = seq(&[5.0, 2.0, 1.0]);
        assert_eq!(ky_fan(&a, 1), 5.0);
        assert_eq!(gauge(&a, NormId::Operator).unwrap(), 5.0);
        assert_eq!(ky_fan(&a, 5), 8.0);
        assert!(matches!(schatten(&a, 0.5), Err(MajorError::InvalidExponent { .. })));
        assert_eq!("ky_fan_3".parse::<NormId>().unwrap(), NormId::KyFan(3));
        assert_eq!(NormId::Schatten(2.0).to_string(), "schatten_2");
    }

    #[test]
    fn majorization_permutation_and_trace() {
        let r = majorizes(&[2.0, -1.0, 3.0], &[3.0, 2.0, -1.0]).unwrap();
        assert!(r.holds);
        let r = majorizes(&[1.0, 1.0], &[2.0, 1.0]).unwrap();
        assert!(!r.holds);
        assert!(majorizes(&[1.0], &[1.0, 0.0]).is_err());
    }

    fn int_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec((-20i32..20).prop_map(f64::from), n)
    }

    proptest! {
        #[test]
        fn dec_rearrange_matches_naive_sort(x in proptest::collection::vec(-10.0f64..10.0, 10)) {
            let mut naive = x.clone();
            // Selection sort oracle.
            for i in 0..naive.len() {
                let mut best = i;
                for j in i + 1..naive.len() {
                    if naive[j] > naive[best] {
                        best = j;
                    }
                }
                naive.swap(i, best);
            }
            prop_assert_eq!(dec_rearrange(&x), naive);
        }

        #[test]
        fn seq_product_matches_loop(a in proptest::collection::vec(0.0f64..5.0, 6), b in proptest::collection::vec(0.0f64..5.0, 6)) {
            let (sa, sb) = (seq(&a), seq(&b));
            let p = seq_product(&sa, &sb).unwrap();
            for i in 0..6 {
                prop_assert_eq!(p.values()[i], sa.values()[i] * sb.values()[i]);
            }
        }

        #[test]
        fn submajorization_reflexive_transitive(x in int_vec(6), d1 in proptest::collection::vec(0i32..5, 6), d2 in proptest::collection::vec(0i32..5, 6)) {
            let r = submajorizes(&x, &x);
            prop_assert!(r.holds_at(0.0));
            // Adding non-negative amounts gives y, z with x ≺_w y ≺_w z.
            let y: Vec<f64> = x.iter().zip(&d1).map(|(a, d)| a + f64::from(*d)).collect();
            let z: Vec<f64> = y.iter().zip(&d2).map(|(a, d)| a + f64::from(*d)).collect();
            prop_assert!(submajorizes(&x, &y).holds_at(0.0));
            prop_assert!(submajorizes(&y, &z).holds_at(0.0));
            prop_assert!(submajorizes(&x, &z).holds_at(0.0));
        }

        #[test]
        fn gauge_is_monotone(x in proptest::collection::vec(0.0f64..5.0, 5), d in proptest::collection::vec(0.0f64..2.0, 5)) {
            let a = seq(&x);
            let y: Vec<f64> = a.values().iter().zip(&d).map(|(v, e)| v + e).collect();
            let b = seq(&y);
            prop_assert!(submajorizes_seq(&a, &b).unwrap().holds);
            for norm in [NormId::Operator, NormId::KyFan(1), NormId::KyFan(3), NormId::Schatten(1.0), NormId::Schatten(3.0)] {
                prop_assert!(gauge(&a, norm).unwrap() <= gauge(&b, norm).unwrap() + 1e-12);
            }
        }
    }
}
