use super::{require_square_dims, spr, sv, witness, IneqError, IneqId, ScalarCheck, Verdict};
use crate::linalg::{direct_sum, eigh, svd_values, unitary_exp, CMatrix, HermMatrix, C64};
use crate::major::{gauge, padded_product, seq_product, seq_sum, NormId};
use crate::spectra::{compact_scale, Mode, SpreadSeq};

fn commutator(a: &CMatrix, x: &CMatrix, b: &CMatrix) -> CMatrix {
    &(a * x) - &(x * b)
}

fn extremes(a: &HermMatrix) -> Result<(f64, f64), IneqError> {
    let values = eigh(a)?.values;
    Ok((
        values.last().copied().unwrap_or(0.0),
        values.first().copied().unwrap_or(0.0),
    ))
}

/// Positive part of `λ(i[A, X])` is submajorized by `½ Spr⁺(A) · Spr⁺(X)`.
pub fn check_commutator_scale(
    a: &HermMatrix,
    x: &HermMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    require_square_dims("commutator_scale", &[a.dim(), x.dim()])?;
    let n = a.dim();
    let c = commutator(a.as_cmatrix(), x.as_cmatrix(), a.as_cmatrix()).scale_c(C64::new(0.0, 1.0));
    let lhs = SpreadSeq::finite(
        compact_scale(&HermMatrix::symmetrized(c), n)?
            .pos()
            .to_vec(),
    );
    let rhs = seq_product(&spr(a, mode)?, &spr(x, mode)?)?.scaled(0.5);
    let w = witness(mode, &[], &[a.as_cmatrix(), x.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::CommutatorScale, mode, w, &lhs, &rhs, false)?.finish())
}

/// `s(AX − XA) ≺_w ½ Spr⁺(A ⊕ A) · Spr⁺(X ⊕ X)` plus its norm forms.
pub fn check_commutator_sv(a: &HermMatrix, x: &HermMatrix, mode: Mode) -> Result<Verdict, IneqError> {
    require_square_dims("commutator_sv", &[a.dim(), x.dim()])?;
    let lhs = sv(&commutator(a.as_cmatrix(), x.as_cmatrix(), a.as_cmatrix()))?;
    let rhs = seq_product(&spr(&direct_sum(a, a), mode)?, &spr(&direct_sum(x, x), mode)?)?
        .scaled(0.5);
    let w = witness(mode, &[], &[a.as_cmatrix(), x.as_cmatrix()]);
    let mut v = Verdict::submajorization(IneqId::CommutatorSv, mode, w, &lhs, &rhs, false)?;
    v.push_norms("norm_form", &lhs, &rhs, true)?;
    Ok(v.finish())
}

/// `s(AX − XB) ≺_w Spr⁺(A ⊕ B) · s(X)` for `X` of size `n × m`.
pub fn check_mixed_commutator(
    a: &HermMatrix,
    b: &HermMatrix,
    x: &CMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    if x.rows() != a.dim() || x.cols() != b.dim() {
        return Err(IneqError::DimMismatch(format!(
            "mixed_commutator: A is {0}x{0}, B is {1}x{1}, X is {2}x{3}",
            a.dim(),
            b.dim(),
            x.rows(),
            x.cols()
        )));
    }
    let lhs = sv(&commutator(a.as_cmatrix(), x, b.as_cmatrix()))?;
    let rhs = padded_product(&spr(&direct_sum(a, b), mode)?, &svd_values(x)?)?;
    let w = witness(mode, &[], &[a.as_cmatrix(), b.as_cmatrix(), x]);
    Ok(Verdict::submajorization(IneqId::MixedCommutator, mode, w, &lhs, &rhs, false)?.finish())
}

/// `s(AX − XB) ≺_w (Spr⁺(A₁ ⊕ B₁) + Spr⁺(A₂ ⊕ B₂)) · s(X)` with `A = A₁ + iA₂`,
/// `B = B₁ + iB₂`, plus the scalar corollary
/// `s(AX − XB) ≺_w Σ_j (max{a_j′, b_j′} − min{a_j, b_j}) · s(X)`.
pub fn check_general_commutator(
    a: &CMatrix,
    b: &CMatrix,
    x: &CMatrix,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    if !a.is_square() || !b.is_square() || x.rows() != a.rows() || x.cols() != b.rows() {
        return Err(IneqError::DimMismatch(format!(
            "general_commutator: A is {}x{}, B is {}x{}, X is {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let (a1, a2) = a.cartesian_parts()?;
    let (b1, b2) = b.cartesian_parts()?;
    let lhs = sv(&commutator(a, x, b))?;
    let spreads = seq_sum(
        &spr(&direct_sum(&a1, &b1), mode)?,
        &spr(&direct_sum(&a2, &b2), mode)?,
    )?;
    let sx = svd_values(x)?;
    let rhs = padded_product(&spreads, &sx)?;
    let w = witness(mode, &[], &[a, b, x]);
    let mut v = Verdict::submajorization(IneqId::GeneralCommutator, mode, w, &lhs, &rhs, false)?;

    let mut c = 0.0;
    for (p, q) in [(&a1, &b1), (&a2, &b2)] {
        let (p_min, p_max) = extremes(p)?;
        let (q_min, q_max) = extremes(q)?;
        c += p_max.max(q_max) - p_min.min(q_min);
    }
    let scalar_rhs = sx.scaled(c);
    v.push_sub("scalar_corollary", &lhs, &scalar_rhs, true)?;
    for norm in NormId::STANDARD {
        v.scalars.push(ScalarCheck::norm(
            "scalar_norm_form",
            norm,
            gauge(&lhs, norm)?,
            c * gauge(&sx, norm)?,
            true,
        ));
    }
    Ok(v.finish())
}

/// `s(A − U*AU) ≺_w ½ Spr⁺(X ⊕ X) · Spr⁺(A ⊕ A)` with `U = e^{iX}`.
pub fn check_unitary_conj(a: &HermMatrix, x: &HermMatrix, mode: Mode) -> Result<Verdict, IneqError> {
    require_square_dims("unitary_conj", &[a.dim(), x.dim()])?;
    let u = unitary_exp(x)?;
    let conj = a.congruence(&u);
    let lhs = sv(a.sub(&conj).as_cmatrix())?;
    let rhs = seq_product(&spr(&direct_sum(x, x), mode)?, &spr(&direct_sum(a, a), mode)?)?
        .scaled(0.5);
    let w = witness(mode, &[], &[a.as_cmatrix(), x.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::UnitaryConj, mode, w, &lhs, &rhs, false)?.finish())
}
