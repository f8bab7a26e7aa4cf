use super::{
    douglas_factorize, min_eigenvalue_check, projection_sum, require_square_dims, spr, sv, witness,
    IneqError, IneqId, ScalarCheck, Verdict, PROJECTION_SUM_TOL,
};
use crate::linalg::{direct_sum, pinv, psd_sqrt, CMatrix, HermMatrix};
use crate::major::{gauge, NormId};
use crate::spectra::Mode;

fn check_operator_dims(s: &CMatrix, c: &CMatrix, e: &HermMatrix) -> Result<(), IneqError> {
    if s.cols() != e.dim() || c.cols() != e.dim() || s.rows() != c.rows() {
        return Err(IneqError::DimMismatch(format!(
            "S is {}x{}, C is {}x{}, E is {n}x{n}",
            s.rows(),
            s.cols(),
            c.rows(),
            c.cols(),
            n = e.dim(),
        )));
    }
    Ok(())
}

fn sec(s: &CMatrix, e: &HermMatrix, c: &CMatrix) -> CMatrix {
    &(s * e.as_cmatrix()) * &c.adjoint()
}

fn is_positive(e: &HermMatrix) -> Result<bool, IneqError> {
    match min_eigenvalue_check(e) {
        Ok(()) => Ok(true),
        Err(IneqError::NotPositive { .. }) => Ok(false),
        Err(other) => Err(other),
    }
}

/// `2 s(SEC*) ≺_w Spr⁺(PEP ⊕ 0)` with `P = C*C + S*S`.
pub fn check_agm_projection(
    s: &CMatrix,
    c: &CMatrix,
    e: &HermMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    check_operator_dims(s, c, e)?;
    let p = projection_sum(s, c)?;
    let pep = e.conjugate_by(p.as_cmatrix());
    let lhs = sv(&sec(s, e, c))?.scaled(2.0);
    let rhs = spr(&direct_sum(&pep, &HermMatrix::zeros(e.dim())), mode)?;
    let w = witness(mode, &[], &[s, c, e.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::AgmProjection, mode, w, &lhs, &rhs, false)?.finish())
}

/// `s(SE₁C + CE₂S) ≺_w ½ Spr⁺(PE₁P ⊕ −PE₂P)` for positive `S`, `C` with
/// `C² + S² = P`.
///
/// When `E₁ = E₂ = E` it also checks `s(Re(SEC)) ≺_w ½ s(E)` and the identity
/// `Spr⁺(E ⊕ −E) = 2 s(E)`.
pub fn check_agm_pair(
    s: &HermMatrix,
    c: &HermMatrix,
    e1: &HermMatrix,
    e2: &HermMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    require_square_dims("agm_pair", &[s.dim(), c.dim(), e1.dim(), e2.dim()])?;
    min_eigenvalue_check(s)?;
    min_eigenvalue_check(c)?;
    let (sm, cm) = (s.as_cmatrix(), c.as_cmatrix());
    let p = projection_sum(sm, cm)?;
    let y = &(&(sm * e1.as_cmatrix()) * cm) + &(&(cm * e2.as_cmatrix()) * sm);
    let lhs = sv(&y)?;
    let pe1p = e1.conjugate_by(p.as_cmatrix());
    let pe2p = e2.conjugate_by(p.as_cmatrix());
    let rhs = spr(&direct_sum(&pe1p, &pe2p.scale(-1.0)), mode)?.scaled(0.5);
    let w = witness(
        mode,
        &[],
        &[sm, cm, e1.as_cmatrix(), e2.as_cmatrix()],
    );
    let mut v = Verdict::submajorization(IneqId::AgmPair, mode, w, &lhs, &rhs, false)?;

    if e1 == e2 {
        let e = e1;
        let z = &(sm * e.as_cmatrix()) * cm;
        let re = HermMatrix::symmetrized(z);
        let se = sv(e.as_cmatrix())?;
        v.push_sub("real_part", &sv(re.as_cmatrix())?, &se.scaled(0.5), true)?;

        let doubled = spr(&direct_sum(e, &e.scale(-1.0)), mode)?;
        let target = se.scaled(2.0);
        let deviation = (0..e.dim())
            .map(|i| (doubled.get(i).unwrap_or(0.0) - target.get(i).unwrap_or(0.0)).abs())
            .fold(0.0, f64::max);
        let tol = 1e-9 * target.get(0).unwrap_or(0.0).max(1.0);
        v.scalars.push(ScalarCheck::new("spread_of_e_oplus_minus_e", deviation, 0.0, tol, true));
    }
    Ok(v.finish())
}

/// `2 s(SEC*) ≺_w Spr⁺(E)` in the compact model, with `Spr⁺(PEP) ≺_w Spr⁺(E)`
/// as a sub-check and the norm forms. `N(SEC*) ≤ ½ N(E)` is evaluated as well
/// and is only claimed for positive `E`.
pub fn check_agm_compact(
    s: &CMatrix,
    c: &CMatrix,
    e: &HermMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    check_operator_dims(s, c, e)?;
    let p = projection_sum(s, c)?;
    let y = sec(s, e, c);
    let sy = sv(&y)?;
    let lhs = sy.scaled(2.0);
    let rhs = spr(e, mode)?;
    let w = witness(mode, &[], &[s, c, e.as_cmatrix()]);
    let mut v = Verdict::submajorization(IneqId::AgmCompact, mode, w, &lhs, &rhs, false)?;

    let pep = e.conjugate_by(p.as_cmatrix());
    v.push_sub("compression", &spr(&pep, mode)?, &rhs, true)?;
    v.push_norms("norm_form", &lhs, &rhs, true)?;

    let positive = is_positive(e)?;
    let se = sv(e.as_cmatrix())?;
    for norm in NormId::STANDARD {
        v.scalars.push(ScalarCheck::norm(
            "half_norm_bound",
            norm,
            gauge(&sy, norm)?,
            0.5 * gauge(&se, norm)?,
            positive,
        ));
    }
    Ok(v.finish())
}

/// `s(AEB*) ≺_w ½ Spr⁺(FEF)` with `F = (A*A + B*B)^{1/2}`.
///
/// Sub-checks: the `⊕ 0` variant, the positive form
/// `2 s(AEB*) ≺_w s(E^{1/2}(A*A + B*B)E^{1/2})` when `E ≥ 0`, and the
/// Douglas identity `S*S + C*C = P_{R(F)}` for `SF = A`, `CF = B`.
pub fn check_agm_general(
    a: &CMatrix,
    b: &CMatrix,
    e: &HermMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    if a.cols() != e.dim() || b.cols() != e.dim() || a.rows() != b.rows() {
        return Err(IneqError::DimMismatch(format!(
            "A is {}x{}, B is {}x{}, E is {n}x{n}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            n = e.dim(),
        )));
    }
    let gram = HermMatrix::symmetrized(&(&a.adjoint() * a) + &(&b.adjoint() * b));
    let f = psd_sqrt(&gram)?;
    let fef = e.conjugate_by(f.as_cmatrix());
    let lhs = sv(&sec(a, e, b))?;
    let rhs = spr(&fef, mode)?.scaled(0.5);
    let w = witness(mode, &[], &[a, b, e.as_cmatrix()]);
    let mut v = Verdict::submajorization(IneqId::AgmGeneral, mode, w, &lhs, &rhs, false)?;

    let padded = direct_sum(&fef, &HermMatrix::zeros(e.dim()));
    v.push_sub("oplus_zero", &lhs, &spr(&padded, mode)?.scaled(0.5), true)?;

    if is_positive(e)? {
        let root = psd_sqrt(e)?;
        let inner = gram.conjugate_by(root.as_cmatrix());
        v.push_sub("positive_form", &lhs.scaled(2.0), &sv(inner.as_cmatrix())?, true)?;
    }

    let fm = f.as_cmatrix();
    let s_adj = douglas_factorize(&a.adjoint(), fm)?;
    let c_adj = douglas_factorize(&b.adjoint(), fm)?;
    let sum = &(&s_adj * &s_adj.adjoint()) + &(&c_adj * &c_adj.adjoint());
    let range = fm * &pinv(fm)?;
    let deviation = sum.distance(&range);
    v.scalars.push(ScalarCheck::new(
        "douglas_projection",
        deviation,
        0.0,
        PROJECTION_SUM_TOL * range.frobenius_norm().max(1.0),
        true,
    ));
    Ok(v.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn two_by_two() -> (CMatrix, CMatrix, HermMatrix) {
        (
            CMatrix::from_diag(&[(PI / 3.0).sin(), (PI / 5.0).sin()]),
            CMatrix::from_diag(&[(PI / 3.0).cos(), (PI / 5.0).cos()]),
            HermMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap(),
        )
    }

    fn three_by_three() -> (CMatrix, CMatrix, HermMatrix) {
        (
            CMatrix::from_real(3, 3, &[1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]).unwrap(),
            CMatrix::from_real(3, 3, &[-1.0, 0.0, 0.5, 0.0, 1.0, 0.0, 0.5, 0.0, 1.0]).unwrap(),
            HermMatrix::from_real(3, &[1.0, 0.0, 2.0, 0.0, 1.0, 0.0, 2.0, 0.0, 1.0]).unwrap(),
        )
    }

    #[test]
    fn frobenius_form_fails_for_indefinite_e() {
        let (s, c, e) = two_by_two();
        let v = check_agm_compact(&s, &c, &e, Mode::Compact).unwrap();
        assert!(v.holds);
        let frob = v
            .scalars
            .iter()
            .find(|x| x.name == "half_norm_bound[schatten_2]")
            .unwrap();
        assert!(!frob.claimed);
        assert!(!frob.holds);
        let expected = (0.7006f64.powi(2) + 0.2939f64.powi(2)).sqrt();
        assert!((frob.lhs - expected).abs() < 5e-4);
        assert_abs_diff_eq!(frob.rhs, 2f64.sqrt() / 2.0, epsilon = 1e-12);
        assert!(check_agm_projection(&s, &c, &e, Mode::Compact).unwrap().holds);
    }

    #[test]
    fn identity_needs_the_compact_model() {
        let h = 0.5f64.sqrt();
        let s = CMatrix::identity(3).scale(h);
        let e = HermMatrix::identity(3);
        assert!(check_agm_compact(&s, &s, &e, Mode::Compact).unwrap().holds);
        assert!(!check_agm_compact(&s, &s, &e, Mode::Matrix).unwrap().holds);
        // With the explicit ⊕ 0 block the bound is 𝟙 and is attained.
        let v = check_agm_projection(&s, &s, &e, Mode::Matrix).unwrap();
        assert!(v.holds);
        let r = v.report.unwrap();
        assert!(r.margins_upper.iter().take(3).all(|m| m.abs() < 1e-12));
    }

    #[test]
    fn positive_e_satisfies_half_norm_bound() {
        let (s, c, _) = two_by_two();
        let e = HermMatrix::from_real(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        let v = check_agm_compact(&s, &c, &e, Mode::Compact).unwrap();
        assert!(v.holds);
        assert!(v.scalars.iter().filter(|x| x.name.starts_with("half")).all(|x| x.claimed && x.holds));
    }

    #[test]
    fn rejects_non_projection_sum() {
        let s = CMatrix::identity(2);
        let e = HermMatrix::identity(2);
        assert!(matches!(
            check_agm_projection(&s, &s, &e, Mode::Compact),
            Err(IneqError::NotProjectionSum { .. })
        ));
    }

    #[test]
    fn three_by_three_fixture() {
        let (a, b, e) = three_by_three();
        let v = check_agm_general(&a, &b, &e, Mode::Compact).unwrap();
        assert!(v.holds);
        assert!(v.entrywise_fails());
        let ew = v.entrywise.as_ref().unwrap();
        assert_eq!(ew.first_failure, Some(2));
        // lhs s(AEB*) ≈ (4.74, 1.58, 1); rhs ½(13, 2, 0).
        assert!((6.5 - ew.margins[0] - 4.74).abs() < 5e-2);
        assert!((1.0 - ew.margins[1] - 1.58).abs() < 5e-2);
        assert!(v.subchecks.iter().all(|s| s.report.holds));
    }

    #[test]
    fn zero_b_gives_zero_left_side() {
        let (a, _, e) = three_by_three();
        let v = check_agm_general(&a, &CMatrix::zeros(3, 3), &e, Mode::Compact).unwrap();
        assert!(v.holds);
        assert!(v.report.unwrap().margins_upper.iter().all(|m| *m >= 0.0));
    }

    #[test]
    fn agm_pair_identity_and_trivial_case() {
        let h = 0.5f64.sqrt();
        let s = HermMatrix::identity(2).scale(h);
        let e = HermMatrix::from_real(2, &[1.0, 2.0, 2.0, -3.0]).unwrap();
        let v = check_agm_pair(&s, &s, &e, &e, Mode::Compact).unwrap();
        assert!(v.holds);
        assert!(v.scalars[0].holds && v.subchecks[0].report.holds);
        let z = HermMatrix::zeros(2);
        assert!(check_agm_pair(&s, &s, &z, &z, Mode::Compact).unwrap().holds);
        let neg = HermMatrix::diag(&[-1.0, 0.0]);
        assert!(matches!(
            check_agm_pair(&neg, &s, &e, &e, Mode::Compact),
            Err(IneqError::NotPositive { .. })
        ));
    }
}
