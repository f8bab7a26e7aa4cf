use super::IneqError;
use crate::linalg::{pinv, CMatrix};

/// Residual gate for `‖(I − BB⁺)A‖_F`, relative to `max(1, ‖A‖_F)`.
pub const DOUGLAS_RANGE_TOL: f64 = 1e-8;

/// The unique `C = B⁺A` with `A = BC` and `R(C) ⊥ ker B`, provided
/// `R(A) ⊆ R(B)`.
pub fn douglas_factorize(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, IneqError> {
    if a.rows() != b.rows() {
        return Err(IneqError::DimMismatch(format!(
            "douglas: A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let c = &pinv(b)? * a;
    let residual = a.distance(&(b * &c));
    if residual > DOUGLAS_RANGE_TOL * a.frobenius_norm().max(1.0) {
        return Err(IneqError::RangeNotContained { residual });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigh, HermMatrix, C64};

    #[test]
    fn invertible_b_gives_inverse() {
        let b = CMatrix::from_real(2, 2, &[2.0, 1.0, 0.0, 1.0]).unwrap();
        let a = CMatrix::from_real(2, 1, &[3.0, 1.0]).unwrap();
        let c = douglas_factorize(&a, &b).unwrap();
        // B⁻¹ = [[1/2, −1/2], [0, 1]].
        assert!((c[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((c[(1, 0)] - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn a_equal_b_gives_range_projection() {
        let b = CMatrix::from_real(3, 3, &[1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 2.0]).unwrap();
        let c = douglas_factorize(&b, &b).unwrap();
        assert!((&c * &c).distance(&c) < 1e-10);
        assert!(c.distance(&c.adjoint()) < 1e-10);
        let values = eigh(&HermMatrix::symmetrized(c)).unwrap().values;
        assert!((values[0] - 1.0).abs() < 1e-10 && (values[1] - 1.0).abs() < 1e-10);
        assert!(values[2].abs() < 1e-10);
    }

    #[test]
    fn range_violation_is_reported() {
        let b = CMatrix::from_diag(&[1.0, 0.0]);
        let a = CMatrix::from_real(2, 1, &[0.0, 1.0]).unwrap();
        assert!(matches!(
            douglas_factorize(&a, &b),
            Err(IneqError::RangeNotContained { .. })
        ));
    }
}
