//! The four worked examples, as matrices and a diagonal spec.

use std::f64::consts::PI;

use crate::linalg::{CMatrix, HermMatrix};
use crate::spectra::{DiagSpec, Generator};

/// `A = I₂`, `B = [[1,2],[2,1]]`, `X = [[2,1],[1,2]]`.
pub fn kittaneh() -> (HermMatrix, HermMatrix, CMatrix) {
    (
        HermMatrix::identity(2),
        HermMatrix::from_real(2, &[1.0, 2.0, 2.0, 1.0]).expect("symmetric"),
        CMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).expect("2x2"),
    )
}

/// `S = diag(sin π/3, sin π/5)`, `C = diag(cos π/3, cos π/5)`,
/// `E = [[0,1],[1,0]]`.
pub fn agm_2x2() -> (CMatrix, CMatrix, HermMatrix) {
    (
        CMatrix::from_diag(&[(PI / 3.0).sin(), (PI / 5.0).sin()]),
        CMatrix::from_diag(&[(PI / 3.0).cos(), (PI / 5.0).cos()]),
        HermMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("symmetric"),
    )
}

/// The `A`, `B`, `E` with `A*A + B*B = diag(13/4, 2, 13/4)`.
pub fn agm_3x3() -> (CMatrix, CMatrix, HermMatrix) {
    (
        CMatrix::from_real(3, 3, &[1.0, 0.0, -1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]).expect("3x3"),
        CMatrix::from_real(3, 3, &[-1.0, 0.0, 0.5, 0.0, 1.0, 0.0, 0.5, 0.0, 1.0]).expect("3x3"),
        HermMatrix::from_real(3, &[1.0, 0.0, 2.0, 0.0, 1.0, 0.0, 2.0, 0.0, 1.0]).expect("symmetric"),
    )
}

/// Diagonal entries alternating `1 + 1/k` and `−1 + 1/k`.
pub fn diag_harmonic() -> DiagSpec {
    DiagSpec {
        head: Vec::new(),
        liminf: -1.0,
        limsup: 1.0,
        generator: Some(Generator::Interleave(vec![
            Generator::Harmonic {
                limit: 1.0,
                coeff: 1.0,
            },
            Generator::Harmonic {
                limit: -1.0,
                coeff: 1.0,
            },
        ])),
    }
}
