//! Randomized property checks: linear algebra identities, spread identities,
//! the sequence lemmas and the entrywise controls.

use super::generate::{gaussian_matrix, hermitian, positive, projection, unitary, with_spectrum};
use super::rng::SplitMix64;
use super::HarnessError;
use crate::ineq::EntrywiseCheck;
use crate::linalg::{compress, direct_sum, eigh, offdiag_embed, svd_values, CMatrix, HermMatrix};
use crate::major::{
    dec_rearrange, gauge, inc_rearrange, majorizes, submajorizes, updown_rearrange, Bisequence,
    MajorizationReport, NormId,
};
use crate::spectra::{compact_scale, matrix_scale, spread_full, spread_plus_of, Mode, SpreadSeq};

/// Outcome of one trial of one property.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Check {
    pub margin: f64,
    pub pass: bool,
}

impl Check {
    fn at_least(margin: f64, tol: f64) -> Self {
        Self {
            margin,
            pass: margin >= -tol,
        }
    }

    fn strictly(margin: f64, tol: f64) -> Self {
        Self {
            margin,
            pass: margin > tol,
        }
    }

    fn report(r: &MajorizationReport) -> Self {
        Self {
            margin: r.worst_margin,
            pass: r.holds,
        }
    }

    fn entrywise(e: &EntrywiseCheck) -> Self {
        Self {
            margin: e.margins.iter().copied().fold(f64::INFINITY, f64::min),
            pass: e.holds,
        }
    }

    fn all(checks: impl IntoIterator<Item = Check>) -> Self {
        checks.into_iter().fold(
            Check {
                margin: f64::INFINITY,
                pass: true,
            },
            |acc, c| Check {
                margin: acc.margin.min(c.margin),
                pass: acc.pass && c.pass,
            },
        )
    }
}

type Outcome = Result<Check, HarnessError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Budget {
    /// Eigensolver trials, up to the larger dimension.
    Eigh,
    Standard,
    StrictGap,
}

pub(crate) struct Property {
    pub name: &'static str,
    pub group: &'static str,
    pub budget: Budget,
    pub min_dim: usize,
    pub run: fn(&mut SplitMix64, usize) -> Outcome,
}

const fn prop(
    name: &'static str,
    group: &'static str,
    budget: Budget,
    min_dim: usize,
    run: fn(&mut SplitMix64, usize) -> Outcome,
) -> Property {
    Property {
        name,
        group,
        budget,
        min_dim,
        run,
    }
}

pub(crate) const PROPERTIES: &[Property] = &[
    prop("eigh_residual", "linalg", Budget::Eigh, 1, eigh_residual),
    prop("svd_unitary_invariance", "linalg", Budget::Standard, 1, svd_unitary_invariance),
    prop("svd_contraction", "linalg", Budget::Standard, 1, svd_contraction),
    prop("hat_trick", "linalg", Budget::Standard, 1, hat_trick),
    prop("weyl_eigenvalues", "linalg", Budget::Standard, 1, weyl_eigenvalues),
    prop("weyl_singular_values", "linalg", Budget::Standard, 1, weyl_singular_values),
    prop("weyl_singular_index", "linalg", Budget::Standard, 1, weyl_singular_index),
    prop("ky_fan_extremality", "linalg", Budget::Standard, 1, ky_fan_extremality),
    prop("interlacing", "linalg", Budget::Standard, 1, interlacing),
    prop("spread_translation", "spectra", Budget::Standard, 1, spread_translation),
    prop("spread_scaling", "spectra", Budget::Standard, 1, spread_scaling),
    prop("spread_oplus_zero", "spectra", Budget::Standard, 1, spread_oplus_zero),
    prop("spread_vs_singular", "spectra", Budget::Standard, 1, spread_vs_singular),
    prop("spread_doubling", "spectra", Budget::Standard, 1, spread_doubling),
    prop("spread_monotone", "spectra", Budget::Standard, 1, spread_monotone),
    prop("additive_spread", "spectra", Budget::Standard, 1, additive_spread),
    prop("lemma_sum_rearrangement", "major", Budget::Standard, 1, lemma_sum_rearrangement),
    prop("lemma_absolute_values", "major", Budget::Standard, 1, lemma_absolute_values),
    prop("lemma_sum_of_majorized", "major", Budget::Standard, 1, lemma_sum_of_majorized),
    prop("lemma_concatenation", "major", Budget::Standard, 1, lemma_concatenation),
    prop("lemma_product_rearrangement", "major", Budget::Standard, 1, lemma_product_rearrangement),
    prop("lemma_product_monotone", "major", Budget::Standard, 1, lemma_product_monotone),
    prop("lemma_product_bounds", "major", Budget::Standard, 1, lemma_product_bounds),
    prop("lemma_weighted_sums", "major", Budget::Standard, 1, lemma_weighted_sums),
    prop("submajorization_order", "major", Budget::Standard, 1, submajorization_order),
    prop("gauge_monotone", "major", Budget::Standard, 1, gauge_monotone),
    prop("control_bhatia_kittaneh", "control", Budget::Standard, 1, control_bhatia_kittaneh),
    prop("control_kittaneh", "control", Budget::Standard, 1, control_kittaneh),
    prop("strict_gap", "control", Budget::StrictGap, 2, strict_gap),
];

fn rel(scale: f64) -> f64 {
    1e-9 * scale.max(1.0)
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

fn mu(a: &HermMatrix) -> Result<Vec<f64>, HarnessError> {
    Ok(eigh(a)?.values)
}

fn sv(x: &CMatrix) -> Result<Vec<f64>, HarnessError> {
    Ok(svd_values(x)?.values().to_vec())
}

fn spr(a: &HermMatrix, mode: Mode) -> Result<Vec<f64>, HarnessError> {
    Ok(spread_plus_of(a, mode)?.values().to_vec())
}

fn gauss_vec(r: &mut SplitMix64, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.gaussian()).collect()
}

fn nonneg_vec(r: &mut SplitMix64, n: usize) -> Vec<f64> {
    (0..n).map(|_| r.gaussian().abs()).collect()
}

fn permutation(r: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, r.int_in(0, i));
    }
    p
}

/// `D y` for a random doubly stochastic `D` (a convex combination of three
/// permutations), so `D y ≺ y`.
fn doubly_stochastic(r: &mut SplitMix64, y: &[f64]) -> Vec<f64> {
    let n = y.len();
    let w: Vec<f64> = (0..3).map(|_| r.uniform_in(0.1, 1.0)).collect();
    let total: f64 = w.iter().sum();
    let mut out = vec![0.0; n];
    for wj in w {
        let p = permutation(r, n);
        for (i, o) in out.iter_mut().enumerate() {
            *o += wj / total * y[p[i]];
        }
    }
    out
}

/// A non-negative `x ≺_w y` for non-negative `y`.
fn below_weakly(r: &mut SplitMix64, y: &[f64]) -> Vec<f64> {
    doubly_stochastic(r, y)
        .into_iter()
        .map(|v| (v - 0.5 * r.uniform() * v.abs()).max(0.0))
        .collect()
}

fn zip_with(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| f(*x, *y)).collect()
}

fn eigh_residual(r: &mut SplitMix64, d: usize) -> Outcome {
    let scale = 10f64.powf(r.uniform_in(-3.0, 3.0));
    let a = hermitian(r, d).scale(scale);
    let e = eigh(&a)?;
    let v = &e.vectors;
    let res = (a.as_cmatrix() * v).distance(&(v * &CMatrix::from_diag(&e.values)));
    let orth = (&v.adjoint() * v).distance(&CMatrix::identity(d));
    let norm = a.as_cmatrix().frobenius_norm().max(1.0);
    Ok(Check::all([
        Check::at_least(1e-10 * norm - res, 0.0),
        Check::at_least(1e-10 - orth, 0.0),
    ]))
}

fn svd_unitary_invariance(r: &mut SplitMix64, d: usize) -> Outcome {
    let m = r.int_in(1, 8);
    let x = gaussian_matrix(r, d, m);
    let u = unitary(r, d);
    let v = unitary(r, m);
    let s = sv(&x)?;
    let t = sv(&(&(&u * &x) * &v))?;
    Ok(Check::at_least(rel(s[0]) - max_dev(&s, &t), 0.0))
}

fn svd_contraction(r: &mut SplitMix64, d: usize) -> Outcome {
    let x = gaussian_matrix(r, d, d);
    let a = gaussian_matrix(r, d, d);
    let y = gaussian_matrix(r, d, d);
    let c = sv(&x)?[0] * sv(&y)?[0];
    let sa = sv(&a)?;
    let s = sv(&(&(&x * &a) * &y))?;
    let margin = (0..d).map(|i| c * sa[i] - s[i]).fold(f64::INFINITY, f64::min);
    Ok(Check::at_least(margin, rel(c * sa[0])))
}

fn hat_trick(r: &mut SplitMix64, d: usize) -> Outcome {
    let m = r.int_in(1, 8);
    let b = gaussian_matrix(r, d, m);
    let s = sv(&b)?;
    let hat = offdiag_embed(&b);
    let mut abs: Vec<f64> = mu(&hat)?.iter().map(|v| v.abs()).collect();
    abs.sort_by(|p, q| q.total_cmp(p));
    let doubled = dec_rearrange(&[s.clone(), s.clone()].concat());
    let scale = compact_scale(&hat, d + m)?;
    let neg_s: Vec<f64> = s.iter().map(|v| -v).collect();
    let dev = max_dev(&abs, &doubled)
        .max(max_dev(scale.pos(), &s))
        .max(max_dev(scale.neg(), &neg_s));
    Ok(Check::at_least(rel(s[0]) - dev, 0.0))
}

fn weyl_eigenvalues(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let b = hermitian(r, d);
    let sum = zip_with(&mu(&a)?, &mu(&b)?, |x, y| x + y);
    Ok(Check::report(&majorizes(&mu(&a.add(&b))?, &sum)?))
}

fn weyl_singular_values(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = gaussian_matrix(r, d, d);
    let b = gaussian_matrix(r, d, d);
    let sum = zip_with(&sv(&a)?, &sv(&b)?, |x, y| x + y);
    Ok(Check::report(&submajorizes(&sv(&(&a + &b))?, &sum)))
}

fn weyl_singular_index(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = gaussian_matrix(r, d, d);
    let b = gaussian_matrix(r, d, d);
    let (sa, sb, sab) = (sv(&a)?, sv(&b)?, sv(&(&a + &b))?);
    let mut margin = f64::INFINITY;
    for i in 0..d {
        for j in 0..d - i {
            margin = margin.min(sa[i] + sb[j] - sab[i + j]);
        }
    }
    Ok(Check::at_least(margin, rel(sa[0] + sb[0])))
}

fn ky_fan_extremality(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let k = r.int_in(1, d);
    let e = eigh(&a)?;
    let top: f64 = e.values[..k].iter().sum();
    let bottom: f64 = e.values[d - k..].iter().sum();
    let tol = rel(a.as_cmatrix().frobenius_norm());
    let trace_on = |p: &CMatrix| (&(p * a.as_cmatrix()) * p).trace().re;
    let basis_top = e.vectors.block(0, d, 0, k);
    let p_top = &basis_top * &basis_top.adjoint();
    let q = projection(r, d, k);
    let tq = trace_on(q.as_cmatrix());
    Ok(Check::all([
        Check::at_least(-(trace_on(&p_top) - top).abs(), tol),
        Check::at_least(top - tq, tol),
        Check::at_least(tq - bottom, tol),
    ]))
}

fn interlacing(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let k = r.int_in(1, d);
    let p = projection(r, d, k);
    let reduced = compress(&a, &p)?.reduced;
    let (m, n) = (mu(&a)?, mu(&reduced)?);
    let mut margin = f64::INFINITY;
    for j in 0..n.len() {
        margin = margin.min(m[j] - n[j]).min(n[j] - m[j + d - n.len()]);
    }
    Ok(Check::at_least(margin, 1e-10 * a.as_cmatrix().frobenius_norm().max(1.0)))
}

fn spread_translation(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let c = 3.0 * r.gaussian();
    let full = |h: &HermMatrix| -> Result<Vec<f64>, HarnessError> {
        Ok(spread_full(&matrix_scale(h)?).pos().to_vec())
    };
    let dev = max_dev(&full(&a)?, &full(&a.shift(c))?)
        .max(max_dev(&spr(&a, Mode::Matrix)?, &spr(&a.shift(c), Mode::Matrix)?));
    Ok(Check::at_least(rel(a.as_cmatrix().frobenius_norm() + c.abs()) - dev, 0.0))
}

fn spread_scaling(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let c = 3.0 * r.gaussian();
    let mut dev: f64 = 0.0;
    for mode in [Mode::Matrix, Mode::Compact] {
        let base = spr(&a, mode)?;
        let scaled: Vec<f64> = base.iter().map(|v| c.abs() * v).collect();
        dev = dev
            .max(max_dev(&spr(&a.scale(c), mode)?, &scaled))
            .max(max_dev(&spr(&a.scale(-1.0), mode)?, &base));
    }
    Ok(Check::at_least(rel(a.as_cmatrix().frobenius_norm() * c.abs().max(1.0)) - dev, 0.0))
}

fn spread_oplus_zero(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let padded = direct_sum(&a, &HermMatrix::zeros(d));
    let compact = spr(&a, Mode::Compact)?;
    let matrix = spr(&a, Mode::Matrix)?;
    let dev = max_dev(&compact, &spr(&padded, Mode::Compact)?)
        .max(max_dev(&compact, &spr(&padded, Mode::Matrix)?));
    let tol = rel(a.as_cmatrix().frobenius_norm());
    // The compact spread dominates the matrix spread entrywise.
    let dominance = zip_with(&compact, &matrix, |c, m| c - m).into_iter().fold(f64::INFINITY, f64::min);
    Ok(Check::all([Check::at_least(tol - dev, 0.0), Check::at_least(dominance, tol)]))
}

fn spread_vs_singular(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let scale = compact_scale(&a, d)?;
    let s = sv(a.as_cmatrix())?;
    let sp = spr(&a, Mode::Compact)?;
    let tol = rel(s[0]);
    let mut margin = f64::INFINITY;
    for i in 0..d {
        let sum_abs = scale.pos()[i].abs() + scale.neg()[i].abs();
        margin = margin.min(sp[i]).min(sum_abs - sp[i]).min(2.0 * s[i] - sum_abs);
    }
    let p = positive(r, d);
    let sp_pos = spr(&p, Mode::Compact)?;
    let s_pos = sv(p.as_cmatrix())?;
    let pos_margin = zip_with(&s_pos, &sp_pos, |x, y| x - y).into_iter().fold(f64::INFINITY, f64::min);
    Ok(Check::all([
        Check::at_least(margin, tol),
        Check::at_least(pos_margin, rel(s_pos[0])),
    ]))
}

fn spread_doubling(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let single = spr(&a, Mode::Compact)?;
    let doubled = spr(&direct_sum(&a, &a), Mode::Compact)?;
    let expected = dec_rearrange(&[single.clone(), single].concat());
    let s = sv(a.as_cmatrix())?;
    let tol = rel(s[0]);
    let half: Vec<f64> = doubled.iter().map(|v| 0.5 * v).collect();
    Ok(Check::all([
        Check::at_least(tol - max_dev(&doubled, &expected), 0.0),
        Check::report(&submajorizes(&half, &s)),
    ]))
}

fn spread_monotone(r: &mut SplitMix64, d: usize) -> Outcome {
    let b = hermitian(r, d);
    let w: Vec<f64> = (0..3).map(|_| r.uniform_in(0.1, 1.0)).collect();
    let total: f64 = w.iter().sum();
    let mut acc = CMatrix::zeros(d, d);
    for wj in w {
        let u = unitary(r, d);
        acc = &acc + &b.conjugate_by(&u).as_cmatrix().scale(wj / total);
    }
    let a = HermMatrix::symmetrized(acc);
    let mut checks = vec![Check::report(&majorizes(&mu(&a)?, &mu(&b)?)?)];
    for mode in [Mode::Matrix, Mode::Compact] {
        checks.push(Check::report(&submajorizes(&spr(&a, mode)?, &spr(&b, mode)?)));
    }
    Ok(Check::all(checks))
}

fn additive_spread(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = hermitian(r, d);
    let b = hermitian(r, d);
    let flat = |h: &HermMatrix| -> Result<Vec<f64>, HarnessError> {
        let s = spread_full(&matrix_scale(h)?);
        Ok([s.pos(), s.neg()].concat())
    };
    let sum = zip_with(&flat(&a)?, &flat(&b)?, |x, y| x + y);
    Ok(Check::report(&majorizes(&flat(&a.add(&b))?, &sum)?))
}

fn lemma_sum_rearrangement(r: &mut SplitMix64, d: usize) -> Outcome {
    let n = d;
    let x = Bisequence {
        left: gauss_vec(r, n),
        right: gauss_vec(r, n),
    };
    let y = Bisequence {
        left: gauss_vec(r, n),
        right: gauss_vec(r, n),
    };
    let xs = updown_rearrange(&x, Mode::Compact)?;
    let ys = updown_rearrange(&y, Mode::Compact)?;
    let mut lhs = zip_with(
        &x.entries().collect::<Vec<_>>(),
        &y.entries().collect::<Vec<_>>(),
        |p, q| p + q,
    );
    let rhs = [
        zip_with(xs.pos(), ys.pos(), |p, q| p + q),
        zip_with(xs.neg(), ys.neg(), |p, q| p + q),
    ]
    .concat();
    lhs.resize(rhs.len(), 0.0);
    Ok(Check::report(&majorizes(&lhs, &rhs)?))
}

fn lemma_absolute_values(r: &mut SplitMix64, d: usize) -> Outcome {
    let y = gauss_vec(r, d);
    let x = doubly_stochastic(r, &y);
    let abs = |v: &[f64]| v.iter().map(|t| t.abs()).collect::<Vec<_>>();
    Ok(Check::all([
        Check::report(&majorizes(&x, &y)?),
        Check::report(&submajorizes(&abs(&x), &abs(&y))),
    ]))
}

fn lemma_sum_of_majorized(r: &mut SplitMix64, d: usize) -> Outcome {
    let z = dec_rearrange(&gauss_vec(r, d));
    let w = dec_rearrange(&gauss_vec(r, d));
    let x = doubly_stochastic(r, &z);
    let y = doubly_stochastic(r, &w);
    Ok(Check::report(&majorizes(
        &zip_with(&x, &y, |p, q| p + q),
        &zip_with(&z, &w, |p, q| p + q),
    )?))
}

fn lemma_concatenation(r: &mut SplitMix64, d: usize) -> Outcome {
    let m = r.int_in(1, 8);
    let y = nonneg_vec(r, d);
    let w = nonneg_vec(r, m);
    let x = below_weakly(r, &y);
    let z = below_weakly(r, &w);
    Ok(Check::all([
        Check::report(&submajorizes(&x, &y)),
        Check::report(&submajorizes(&z, &w)),
        Check::report(&submajorizes(&[x, z].concat(), &[y, w].concat())),
    ]))
}

fn lemma_product_rearrangement(r: &mut SplitMix64, d: usize) -> Outcome {
    let x = nonneg_vec(r, d);
    let y = nonneg_vec(r, d);
    let sorted = zip_with(&dec_rearrange(&x), &dec_rearrange(&y), |p, q| p * q);
    Ok(Check::report(&submajorizes(&zip_with(&x, &y, |p, q| p * q), &sorted)))
}

fn lemma_product_monotone(r: &mut SplitMix64, d: usize) -> Outcome {
    let y = dec_rearrange(&nonneg_vec(r, d));
    let z = dec_rearrange(&nonneg_vec(r, d));
    let x = below_weakly(r, &y);
    Ok(Check::all([
        Check::report(&submajorizes(&x, &y)),
        Check::report(&submajorizes(
            &zip_with(&x, &z, |p, q| p * q),
            &zip_with(&y, &z, |p, q| p * q),
        )),
    ]))
}

/// `x↓·y↑ ≺_w x·y ≺_w x↓·y↓`. The sums differ in general, so only the weak
/// form can hold.
fn lemma_product_bounds(r: &mut SplitMix64, d: usize) -> Outcome {
    let x = nonneg_vec(r, d);
    let y = nonneg_vec(r, d);
    let xy = zip_with(&x, &y, |p, q| p * q);
    let low = zip_with(&dec_rearrange(&x), &inc_rearrange(&y), |p, q| p * q);
    let high = zip_with(&dec_rearrange(&x), &dec_rearrange(&y), |p, q| p * q);
    Ok(Check::all([
        Check::report(&submajorizes(&low, &xy)),
        Check::report(&submajorizes(&xy, &high)),
    ]))
}

fn lemma_weighted_sums(r: &mut SplitMix64, d: usize) -> Outcome {
    let y = dec_rearrange(&gauss_vec(r, d));
    let cut: Vec<f64> = doubly_stochastic(r, &y).into_iter().map(|v| v - r.uniform()).collect();
    let x = dec_rearrange(&cut);
    let z = dec_rearrange(&nonneg_vec(r, d));
    let dot = |a: &[f64]| a.iter().zip(&z).map(|(p, q)| p * q).sum::<f64>();
    let tol = rel(y.iter().chain(&z).fold(0.0f64, |m, v| m.max(v.abs())) * d as f64);
    Ok(Check::all([
        Check::report(&submajorizes(&x, &y)),
        Check::at_least(dot(&y) - dot(&x), tol),
    ]))
}

fn submajorization_order(r: &mut SplitMix64, d: usize) -> Outcome {
    let ints = |r: &mut SplitMix64| -> Vec<f64> { (0..d).map(|_| r.int_in(0, 20) as f64).collect() };
    let x = ints(r);
    let y = zip_with(&x, &ints(r), |p, q| p + q);
    let z = zip_with(&y, &ints(r), |p, q| p + q);
    let exact = |a: &[f64], b: &[f64]| Check::at_least(submajorizes(a, b).worst_margin, 0.0);
    Ok(Check::all([exact(&x, &x), exact(&x, &y), exact(&y, &z), exact(&x, &z)]))
}

fn gauge_monotone(r: &mut SplitMix64, d: usize) -> Outcome {
    let b = nonneg_vec(r, d);
    let a = below_weakly(r, &b);
    let k = r.int_in(1, d);
    let norms = [
        NormId::Operator,
        NormId::KyFan(k),
        NormId::Schatten(1.0),
        NormId::Schatten(2.0),
        NormId::Schatten(3.5),
    ];
    let (sa, sb) = (SpreadSeq::finite(a), SpreadSeq::finite(b));
    let mut checks = Vec::new();
    for n in norms {
        let gb = gauge(&sb, n)?;
        checks.push(Check::at_least(gb - gauge(&sa, n)?, rel(gb)));
    }
    Ok(Check::all(checks))
}

fn control_bhatia_kittaneh(r: &mut SplitMix64, d: usize) -> Outcome {
    let a = gaussian_matrix(r, d, d);
    let b = gaussian_matrix(r, d, d);
    let lhs: Vec<f64> = sv(&(&a * &b.adjoint()))?.iter().map(|v| 2.0 * v).collect();
    let rhs = sv(&(&(&a.adjoint() * &a) + &(&b.adjoint() * &b)))?;
    Ok(Check::entrywise(&EntrywiseCheck::new(&lhs, &rhs, true)))
}

fn control_kittaneh(r: &mut SplitMix64, d: usize) -> Outcome {
    let m = r.int_in(1, 8);
    let c = positive(r, d);
    let dm = positive(r, m);
    let x = gaussian_matrix(r, d, m);
    let lhs = sv(&(&(c.as_cmatrix() * &x) - &(&x * dm.as_cmatrix())))?;
    let norm = sv(&x)?[0];
    let rhs: Vec<f64> = sv(direct_sum(&c, &dm).as_cmatrix())?.iter().map(|v| norm * v).collect();
    Ok(Check::entrywise(&EntrywiseCheck::new(&lhs, &rhs, true)))
}

/// `‖E‖₂ < g₂(Spr⁺(E))` for indefinite `E`, with margin above `1e−9 ‖E‖₂`.
fn strict_gap(r: &mut SplitMix64, d: usize) -> Outcome {
    let mut values = gauss_vec(r, d);
    values[0] = values[0].abs() + 0.1;
    values[1] = -values[1].abs() - 0.1;
    let e = with_spectrum(r, &values);
    let frob = e.as_cmatrix().frobenius_norm();
    let spread = spread_plus_of(&e, Mode::Compact)?;
    let g2 = gauge(&spread, NormId::Schatten(2.0))?;
    Ok(Check::strictly(g2 - frob, 1e-9 * frob))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let mut names: Vec<&str> = PROPERTIES.iter().map(|p| p.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), PROPERTIES.len());
    }

    #[test]
    fn full_majorization_fails_for_product_bounds() {
        // x = y = (1, 0): x↓·y↑ = (0, 0) and x·y = (1, 0) have different sums.
        let low = [0.0, 0.0];
        let xy = [1.0, 0.0];
        assert!(!majorizes(&low, &xy).unwrap().holds);
        assert!(submajorizes(&low, &xy).holds);
    }

    #[test]
    fn strict_gap_example() {
        // E = diag(1, −1): ‖E‖₂ = √2 and Spr⁺(E) = (2, 0).
        let e = HermMatrix::diag(&[1.0, -1.0]);
        let g2 = gauge(&spread_plus_of(&e, Mode::Compact).unwrap(), NormId::Schatten(2.0)).unwrap();
        assert!((g2 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn every_property_passes_a_few_trials() {
        for p in PROPERTIES {
            for i in 0..10u64 {
                let mut r = SplitMix64::new(i);
                let d = r.int_in(p.min_dim, 6);
                let c = (p.run)(&mut r, d).unwrap();
                assert!(c.pass, "{} trial {i}: {c:?}", p.name);
            }
        }
    }
}
