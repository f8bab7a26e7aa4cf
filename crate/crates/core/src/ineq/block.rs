use super::{
    min_eigenvalue_check, require_square_dims, spr, sv, witness, IneqError, IneqId, ScalarCheck,
    Verdict,
};
use crate::linalg::{direct_sum, CMatrix, HermMatrix};
use crate::spectra::{compact_scale, Mode};

fn offdiag_block(a: &HermMatrix, split: usize) -> Result<CMatrix, IneqError> {
    let n = a.dim();
    if split > n {
        return Err(IneqError::InvalidSplit { split, dim: n });
    }
    Ok(a.as_cmatrix().block(0, split, split, n))
}

/// `2 s_i(G) ≤ s_i(F)` for positive `F = [[F₁, G], [G*, F₂]]`.
pub fn check_tao_positive(f: &HermMatrix, split: usize) -> Result<Verdict, IneqError> {
    let g = offdiag_block(f, split)?;
    min_eigenvalue_check(f)?;
    let lhs = sv(&g)?.scaled(2.0);
    let rhs = sv(f.as_cmatrix())?;
    let w = witness(Mode::Compact, &[split as u64], &[f.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::TaoPositive, Mode::Compact, w, &lhs, &rhs, true)?.finish())
}

/// `2 s(B) ≺_w Spr⁺(A)` for `A = [[A₁, B], [B*, A₂]]`.
pub fn check_key(a: &HermMatrix, split: usize, mode: Mode) -> Result<Verdict, IneqError> {
    let b = offdiag_block(a, split)?;
    let lhs = sv(&b)?.scaled(2.0);
    let rhs = spr(a, mode)?;
    let w = witness(mode, &[split as u64], &[a.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::Key, mode, w, &lhs, &rhs, false)?.finish())
}

/// `tr(AB) ≤ Σ_{i ∈ Z₀} λ_i(A) λ_i(B)` with compact scales paired index by
/// index over the whole horizon.
pub fn check_trace_pairing(a: &HermMatrix, b: &HermMatrix) -> Result<Verdict, IneqError> {
    require_square_dims("trace_pairing", &[a.dim(), b.dim()])?;
    let n = a.dim();
    let la = compact_scale(a, n)?;
    let lb = compact_scale(b, n)?;
    let pairs = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let rhs = pairs(la.pos(), lb.pos()) + pairs(la.neg(), lb.neg());
    let lhs = (a.as_cmatrix() * b.as_cmatrix()).trace().re;
    let scale = a.as_cmatrix().frobenius_norm() * b.as_cmatrix().frobenius_norm();
    let mut v = Verdict::new(
        IneqId::TracePairing,
        Mode::Compact,
        witness(Mode::Compact, &[], &[a.as_cmatrix(), b.as_cmatrix()]),
    );
    v.scalars.push(ScalarCheck::new("trace_pairing", lhs, rhs, 1e-9 * scale.max(1.0), true));
    Ok(v.finish())
}

/// `s(E − F) ≺_w Spr⁺(E ⊕ F)`.
pub fn check_zhan(e: &HermMatrix, f: &HermMatrix, mode: Mode) -> Result<Verdict, IneqError> {
    require_square_dims("zhan", &[e.dim(), f.dim()])?;
    let lhs = sv(e.sub(f).as_cmatrix())?;
    let rhs = spr(&direct_sum(e, f), mode)?;
    let w = witness(mode, &[], &[e.as_cmatrix(), f.as_cmatrix()]);
    Ok(Verdict::submajorization(IneqId::Zhan, mode, w, &lhs, &rhs, false)?.finish())
}
