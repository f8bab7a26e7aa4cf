//! The five equivalent forms of the spread inequality and the two
//! compact-operator forms.
//!
//! Items 2, 3 and 4 are the commutator and Zhan verifiers under their own
//! ids; see [`relabel`].

use rayon::prelude::*;

use super::{spr, sv, witness, IneqError, IneqId, Verdict, PROJECTION_SUM_TOL};
use crate::harness::{run_trial, trial_seed};
use crate::linalg::{direct_sum, CMatrix, HermMatrix, HERM_TOL};
use crate::spectra::Mode;

/// Dimension range used by [`equivalence_suite`].
pub const SUITE_DIMS: (usize, usize) = (2, 8);

/// Same verdict reported under another id. The witness only depends on the
/// inputs, so it is unchanged.
pub fn relabel(mut v: Verdict, id: IneqId) -> Verdict {
    v.ineq_id = id;
    v
}

/// `2 s(PE(I − P)) ≺_w Spr⁺(E)` for an orthogonal projection `P`.
pub fn check_equiv_1(e: &HermMatrix, p: &HermMatrix, mode: Mode) -> Result<Verdict, IneqError> {
    if e.dim() != p.dim() {
        return Err(IneqError::DimMismatch(format!(
            "equiv_1: E is {0}x{0}, P is {1}x{1}",
            e.dim(),
            p.dim()
        )));
    }
    let pm = p.as_cmatrix();
    let deviation = (&(pm * pm) - pm).frobenius_norm();
    if deviation > HERM_TOL * pm.frobenius_norm().max(1.0) {
        return Err(IneqError::Linalg(crate::linalg::LinalgError::NotProjection { deviation }));
    }
    let q = &CMatrix::identity(p.dim()) - pm;
    let block = &(pm * e.as_cmatrix()) * &q;
    let lhs = sv(&block)?.scaled(2.0);
    let rhs = spr(e, mode)?;
    let w = witness(mode, &[], &[e.as_cmatrix(), pm]);
    Ok(Verdict::submajorization(IneqId::Equiv1, mode, w, &lhs, &rhs, false)?.finish())
}

/// `2 s(SEC*) ≺_w Spr⁺(E ⊕ 0)` for `C*C + S*S = I`.
pub fn check_equiv_5(
    s: &CMatrix,
    c: &CMatrix,
    e: &HermMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    let n = e.dim();
    if s.cols() != n || c.cols() != n || s.rows() != c.rows() {
        return Err(IneqError::DimMismatch(format!(
            "equiv_5: S is {}x{}, C is {}x{}, E is {n}x{n}",
            s.rows(),
            s.cols(),
            c.rows(),
            c.cols()
        )));
    }
    let sum = &(&c.adjoint() * c) + &(&s.adjoint() * s);
    let deviation = sum.distance(&CMatrix::identity(n));
    if deviation > PROJECTION_SUM_TOL * (n as f64).sqrt().max(1.0) {
        return Err(IneqError::NotProjectionSum { deviation });
    }
    let lhs = sv(&(&(s * e.as_cmatrix()) * &c.adjoint()))?.scaled(2.0);
    let rhs = spr(&direct_sum(e, &HermMatrix::zeros(n)), mode)?;
    let w = witness(mode, &[], &[s, c, e.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::Equiv5, mode, w, &lhs, &rhs, false)?.finish())
}

/// Fuzzes each of the seven forms on its own instance family:
/// `trials` verdicts per item, items in [`IneqId::EQUIVALENCE`] order.
/// Trial `i` of every item uses `trial_seed(seed, i)`, as in
/// [`crate::harness::fuzz`].
pub fn equivalence_suite(seed: u64, trials: usize) -> Result<Vec<Verdict>, IneqError> {
    let jobs: Vec<(IneqId, usize)> = IneqId::EQUIVALENCE
        .iter()
        .flat_map(|&id| (0..trials).map(move |i| (id, i)))
        .collect();
    jobs.into_par_iter()
        .map(|(id, i)| run_trial(id, SUITE_DIMS.0..=SUITE_DIMS.1, trial_seed(seed, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_projections() {
        let e = HermMatrix::from_real(3, &[1.0, 2.0, 0.0, 2.0, -1.0, 1.0, 0.0, 1.0, 3.0]).unwrap();
        for p in [HermMatrix::zeros(3), HermMatrix::identity(3)] {
            for mode in [Mode::Matrix, Mode::Compact] {
                let v = check_equiv_1(&e, &p, mode).unwrap();
                assert!(v.holds);
                assert!(v.entrywise.unwrap().margins.iter().all(|m| *m >= 0.0));
            }
        }
    }

    #[test]
    fn identity_with_explicit_zero_block() {
        let h = 0.5f64.sqrt();
        let s = CMatrix::identity(3).scale(h);
        let v = check_equiv_5(&s, &s, &HermMatrix::identity(3), Mode::Matrix).unwrap();
        assert!(v.holds);
        let r = v.report.unwrap();
        assert!(r.margins_upper.iter().take(3).all(|m| m.abs() < 1e-12));
    }

    #[test]
    fn item_five_rejects_non_isometry() {
        let s = CMatrix::identity(2);
        assert!(matches!(
            check_equiv_5(&s, &s, &HermMatrix::identity(2), Mode::Matrix),
            Err(IneqError::NotProjectionSum { .. })
        ));
    }

    #[test]
    fn suite_holds_and_is_ordered() {
        let verdicts = equivalence_suite(5, 10).unwrap();
        assert_eq!(verdicts.len(), 70);
        for (k, v) in verdicts.iter().enumerate() {
            assert_eq!(v.ineq_id, IneqId::EQUIVALENCE[k / 10]);
            assert!(v.holds, "{v:?}");
        }
    }
}
