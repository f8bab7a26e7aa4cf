//! Worked examples through the public API, checked against closed forms.

use approx::assert_abs_diff_eq;
use std::f64::consts::PI;

use sspread::harness::fixtures;
use sspread::ineq::{check_agm_compact, check_agm_general, check_agm_projection, check_mixed_commutator};
use sspread::linalg::{direct_sum, svd_values};
use sspread::spectra::{compact_scale, diag_scale, matrix_scale, spread_plus, spread_plus_of, Mode};
use sspread::{CMatrix, HermMatrix};

/// Singular values of a real 2×2 matrix from the trace and determinant of
/// `MᵀM`.
fn sv2(m: [[f64; 2]; 2]) -> (f64, f64) {
    let [[a, b], [c, d]] = m;
    let t = a * a + b * b + c * c + d * d;
    let det = (a * d - b * c).abs();
    let disc = (t * t - 4.0 * det * det).max(0.0).sqrt();
    (((t + disc) / 2.0).sqrt(), ((t - disc) / 2.0).max(0.0).sqrt())
}

#[test]
fn kittaneh_pair_values() {
    let (a, b, x) = fixtures::kittaneh();
    // A = I, so AX − XB = X − XB.
    let xb = [[2.0 * 1.0 + 1.0 * 2.0, 2.0 * 2.0 + 1.0 * 1.0], [1.0 + 2.0 * 2.0, 2.0 + 2.0]];
    let diff = [[2.0 - xb[0][0], 1.0 - xb[0][1]], [1.0 - xb[1][0], 2.0 - xb[1][1]]];
    let (s1, s2) = sv2(diff);
    let lhs = svd_values(&(&(a.as_cmatrix() * &x) - &(&x * b.as_cmatrix()))).unwrap();
    assert_abs_diff_eq!(lhs.values()[0], s1, epsilon = 1e-9);
    assert_abs_diff_eq!(lhs.values()[1], s2, epsilon = 1e-9);
    assert_abs_diff_eq!(s1, 6.0, epsilon = 1e-9);
    assert_abs_diff_eq!(s2, 2.0, epsilon = 1e-9);

    // Eigenvalues of B are 1 ± 2.
    let scale = compact_scale(&direct_sum(&a, &b), 4).unwrap();
    assert_eq!(scale.pos().len(), 4);
    for (got, want) in scale.pos().iter().zip([3.0, 1.0, 1.0, 0.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
    }
    for (got, want) in scale.neg().iter().zip([-1.0, 0.0, 0.0, 0.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
    }
    let spread = spread_plus(&scale);
    let (_, x2) = sv2([[2.0, 1.0], [1.0, 2.0]]);
    assert_abs_diff_eq!(spread.values()[1] * x2, 1.0, epsilon = 1e-9);

    for mode in [Mode::Compact, Mode::Matrix] {
        let v = check_mixed_commutator(&a, &b, &x, mode).unwrap();
        assert!(v.holds, "{mode}");
        assert_eq!(v.entrywise.unwrap().first_failure, Some(2), "{mode}");
    }
}

#[test]
fn agm_two_by_two_frobenius_gap() {
    let (s, c, e) = fixtures::agm_2x2();
    let (s1, s2) = ((PI / 3.0).sin(), (PI / 5.0).sin());
    let (c1, c2) = ((PI / 3.0).cos(), (PI / 5.0).cos());
    // S E C* = [[0, s1 c2], [s2 c1, 0]].
    let frob = ((s1 * c2).powi(2) + (s2 * c1).powi(2)).sqrt();
    let y = &(&s * e.as_cmatrix()) * &c.adjoint();
    assert_abs_diff_eq!(y.frobenius_norm(), frob, epsilon = 1e-12);
    assert_abs_diff_eq!(frob, 0.7598, epsilon = 5e-4);
    assert!(frob > 2f64.sqrt() / 2.0);

    assert!(check_agm_projection(&s, &c, &e, Mode::Compact).unwrap().holds);
    let v = check_agm_compact(&s, &c, &e, Mode::Compact).unwrap();
    assert!(v.holds);
    let bound = v.scalars.iter().find(|x| x.name == "half_norm_bound[schatten_2]").unwrap();
    assert!(!bound.holds && !bound.claimed);
}

#[test]
fn agm_three_by_three_values() {
    let (a, b, e) = fixtures::agm_3x3();
    let gram = &(&a.adjoint() * &a) + &(&b.adjoint() * &b);
    let want = CMatrix::from_diag(&[13.0 / 4.0, 2.0, 13.0 / 4.0]);
    assert!(gram.distance(&want) < 1e-12);

    // F^½ E F^½ = [[13/4, 0, 13/2], [0, 2, 0], [13/2, 0, 13/4]]: eigenvalues
    // 13/4 ± 13/2 and 2.
    let inner = HermMatrix::from_real(3, &[3.25, 0.0, 6.5, 0.0, 2.0, 0.0, 6.5, 0.0, 3.25]).unwrap();
    let spread = spread_plus_of(&inner, Mode::Compact).unwrap();
    for (got, want) in spread.values().iter().zip([13.0, 2.0, 0.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
    }

    // A E B* has singular values √22.5, √2.5 and 1.
    let sy = svd_values(&(&(&a * e.as_cmatrix()) * &b.adjoint())).unwrap();
    for (got, want) in sy.values().iter().zip([22.5f64.sqrt(), 2.5f64.sqrt(), 1.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
    }
    assert!(2.0 * sy.values()[1] > spread.values()[1]);

    let v = check_agm_general(&a, &b, &e, Mode::Compact).unwrap();
    assert!(v.holds);
    assert!(v.entrywise_fails());
}

#[test]
fn harmonic_diagonal_scale() {
    let scale = diag_scale(&fixtures::diag_harmonic(), 50).unwrap();
    for i in 1..=50 {
        assert_abs_diff_eq!(scale.pos()[i - 1], 1.0 + 1.0 / i as f64, epsilon = 1e-12);
        assert_abs_diff_eq!(scale.neg()[i - 1], -1.0, epsilon = 1e-12);
    }
    let tails = scale.tails().unwrap();
    assert_eq!((tails.pos, tails.neg), (1.0, -1.0));
    assert!(!tails.exact);
}

#[test]
fn identity_and_scalar_matrices() {
    let scale = matrix_scale(&HermMatrix::identity(4)).unwrap();
    assert!(scale.pos().iter().chain(scale.neg()).all(|x| (x - 1.0).abs() < 1e-12));
    let spread = spread_plus_of(&HermMatrix::identity(4).scale(-2.5), Mode::Matrix).unwrap();
    assert!(spread.values().iter().all(|x| x.abs() < 1e-12));
}
