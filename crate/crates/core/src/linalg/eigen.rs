use super::{CMatrix, HermMatrix, LinalgError, C64};

/// Convergence threshold: off-diagonal Frobenius norm relative to `‖A‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted non-increasing with matching orthonormal eigenvectors
/// stored as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenPair {
    /// `V · diag(f(values)) · V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fv: Vec<C64> = self.values.iter().map(|&x| f(x)).collect();
        CMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of `a_pq` with a diagonal unitary
/// and then applies a real Givens rotation, so the pivot becomes exactly zero.
/// Ties in the output ordering keep the original diagonal position.
pub fn eigh(a: &HermMatrix) -> Result<EigenPair, LinalgError> {
    let n = a.dim();
    let mut m: Vec<C64> = a.as_cmatrix().as_slice().to_vec();
    let mut v = CMatrix::identity(n);

    let total = a.as_cmatrix().frobenius_norm();
    let threshold = JACOBI_REL_TOL * total;

    let mut converged = false;
    for _ in 0..=JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        });
    }

    let diag: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]).then(i.cmp(&j)));

    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(EigenPair { values, vectors })
}

fn off_diagonal_norm(m: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(m: &mut [C64], v: &mut CMatrix, n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;

    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    // signum(0.0) is 1.0, so theta == 0 gives t == 1 as required.
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) · [[c, s], [-s, c]] acting on coordinates (p, q).
    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    // A <- A G
    for k in 0..n {
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        m[k * n + p] = akp * g_pp + akq * g_qp;
        m[k * n + q] = akp * g_pq + akq * g_qq;
    }
    // A <- G* A
    for k in 0..n {
        let apk = m[p * n + k];
        let aqk = m[q * n + k];
        m[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        m[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    m[p * n + q] = C64::new(0.0, 0.0);
    m[q * n + p] = C64::new(0.0, 0.0);
    m[p * n + p] = C64::new(app - t * r, 0.0);
    m[q * n + q] = C64::new(aqq + t * r, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn residual(a: &HermMatrix, e: &EigenPair) -> (f64, f64) {
        let n = a.dim();
        let av = a.as_cmatrix() * &e.vectors;
        let vl = &e.vectors * &CMatrix::from_diag(&e.values);
        let vv = &e.vectors.adjoint() * &e.vectors;
        (av.distance(&vl), vv.distance(&CMatrix::identity(n)))
    }

    /// Real roots of det(tI - A) for a 3x3 Hermitian A via the trigonometric
    /// cubic formula; independent of the Jacobi path.
    fn cubic_eigenvalues(a: &HermMatrix) -> [f64; 3] {
        let m = |i, j| a[(i, j)];
        let c2 = m(0, 0).re + m(1, 1).re + m(2, 2).re;
        let c1 = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).re
            + (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)).re
            + (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)).re;
        let c0 = (m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)))
        .re;
        // t^3 - c2 t^2 + c1 t - c0, depressed with t = x + c2/3.
        let shift = c2 / 3.0;
        let p = c1 - c2 * c2 / 3.0;
        let q = -2.0 * c2.powi(3) / 27.0 + c2 * c1 / 3.0 - c0;
        if p.abs() < 1e-300 {
            return [shift; 3];
        }
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let mut roots = [0.0; 3];
        for (k, root) in roots.iter_mut().enumerate() {
            *root = shift + r * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
        }
        roots.sort_by(|a, b| b.total_cmp(a));
        roots
    }

    fn herm3() -> impl Strategy<Value = HermMatrix> {
        proptest::collection::vec(-5.0f64..5.0, 9).prop_map(|x| {
            let mut m = CMatrix::zeros(3, 3);
            m[(0, 0)] = C64::new(x[0], 0.0);
            m[(1, 1)] = C64::new(x[1], 0.0);
            m[(2, 2)] = C64::new(x[2], 0.0);
            let off = [(0, 1, x[3], x[4]), (0, 2, x[5], x[6]), (1, 2, x[7], x[8])];
            for (i, j, re, im) in off {
                m[(i, j)] = C64::new(re, im);
                m[(j, i)] = C64::new(re, -im);
            }
            HermMatrix::new(m).unwrap()
        })
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let e = eigh(&HermMatrix::identity(2)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0]);
        let (_, orth) = residual(&HermMatrix::identity(2), &e);
        assert!(orth < 1e-15);
    }

    #[test]
    fn two_by_two_example() {
        let a = HermMatrix::from_real(2, &[1.0, 2.0, 2.0, 1.0]).unwrap();
        let e = eigh(&a).unwrap();
        assert_abs_diff_eq!(e.values[0], 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let e = eigh(&HermMatrix::zeros(4)).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
    }

    #[test]
    fn complex_phase_is_handled() {
        let m = CMatrix::new(
            2,
            2,
            vec![C64::new(0.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0), C64::new(0.0, 0.0)],
        )
        .unwrap();
        let a = HermMatrix::new(m).unwrap();
        let e = eigh(&a).unwrap();
        assert_abs_diff_eq!(e.values[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.values[1], -1.0, epsilon = 1e-15);
        let (res, orth) = residual(&a, &e);
        assert!(res < 1e-14 && orth < 1e-14);
    }

    #[test]
    fn ties_keep_diagonal_order() {
        let a = HermMatrix::diag(&[1.0, 2.0, 1.0]);
        let e = eigh(&a).unwrap();
        assert_eq!(e.values, vec![2.0, 1.0, 1.0]);
        assert_eq!(e.vectors[(1, 0)], C64::new(1.0, 0.0));
        assert_eq!(e.vectors[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(e.vectors[(2, 2)], C64::new(1.0, 0.0));
    }

    proptest! {
        #[test]
        fn matches_cubic_oracle(a in herm3()) {
            let e = eigh(&a).unwrap();
            let roots = cubic_eigenvalues(&a);
            for k in 0..3 {
                prop_assert!((e.values[k] - roots[k]).abs() < 1e-10, "{:?} vs {:?}", e.values, roots);
            }
        }

        #[test]
        fn residual_and_orthogonality(entries in proptest::collection::vec(-3.0f64..3.0, 2 * 64), n in 1usize..=8) {
            let m = CMatrix::from_fn(n, n, |i, j| C64::new(entries[i * 8 + j], entries[64 + i * 8 + j]));
            let a = HermMatrix::symmetrized(m);
            let e = eigh(&a).unwrap();
            let (res, orth) = residual(&a, &e);
            let scale = a.as_cmatrix().frobenius_norm().max(1.0);
            prop_assert!(res <= 1e-10 * scale);
            prop_assert!(orth <= 1e-10);
            prop_assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
