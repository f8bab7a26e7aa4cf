//! Spectral scales, spectral spread and submajorization verifiers for
//! Hermitian operators.
//!
//! Operators are modelled in three ways:
//!
//! * **matrix mode**: a `d × d` Hermitian matrix acting on `C^d`, whose scale
//!   is the eigenvalue vector read forwards and backwards;
//! * **compact mode**: the same matrix viewed as the finite-rank operator
//!   `A ⊕ 0` on an infinite-dimensional space, whose scale lists positive and
//!   negative eigenvalues separately, padded with zeros;
//! * **diagonal mode**: a bounded diagonal operator `D_a` with an essential
//!   spectrum band `[liminf a, limsup a]`.
//!
//! The [`ineq`] module holds one verifier per inequality, each returning a
//! [`ineq::Verdict`] with raw partial-sum margins. [`harness`] drives them with
//! reproducible random instances.

pub mod harness;
pub mod ineq;
pub mod linalg;
pub mod major;
pub mod spectra;

pub use linalg::{CMatrix, EigenPair, HermMatrix, LinalgError, C64};
pub use major::{MajorizationReport, NormId, TailVerdict};
pub use spectra::{DiagSpec, Generator, Mode, SpreadSeq, TwoSidedSeq};
