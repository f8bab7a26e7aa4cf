//! One verifier per inequality. Every check returns a [`Verdict`] that keeps
//! the raw partial-sum margins next to the boolean outcome.

mod agm;
mod block;
mod commutator;
mod douglas;
mod equivalence;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::linalg::{svd_values, CMatrix, HermMatrix, LinalgError};
use crate::major::{gauge, maj_tol, submajorizes_seq, MajorError, MajorizationReport, NormId};
use crate::spectra::{spread_plus_of, Mode, SpectraError, SpreadSeq};

pub use agm::{check_agm_compact, check_agm_general, check_agm_pair, check_agm_projection};
pub use block::{check_key, check_tao_positive, check_trace_pairing, check_zhan};
pub use commutator::{
    check_commutator_scale, check_commutator_sv, check_general_commutator, check_mixed_commutator,
    check_unitary_conj,
};
pub use douglas::{douglas_factorize, DOUGLAS_RANGE_TOL};
pub use equivalence::{check_equiv_1, check_equiv_5, equivalence_suite, relabel};

/// Minimum eigenvalue allowed for inputs declared positive, relative to
/// `max(1, λ_max)`.
pub const POSITIVE_TOL: f64 = 1e-10;

/// Tolerance for `C*C + S*S = P` with `P² = P`.
pub const PROJECTION_SUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IneqError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Major(#[from] MajorError),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("input is not positive semidefinite: eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("C*C + S*S is not an orthogonal projection: deviation {deviation:e}")]
    NotProjectionSum { deviation: f64 },
    #[error("range of A is not contained in range of B: residual {residual:e}")]
    RangeNotContained { residual: f64 },
    #[error("split {split} is outside 0..={dim}")]
    InvalidSplit { split: usize, dim: usize },
    #[error("mode {0} is not supported by this verifier")]
    UnsupportedMode(Mode),
    #[error("unknown inequality {0:?}")]
    UnknownInequality(String),
}

macro_rules! ineq_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum IneqId {
            $($variant),*
        }

        impl IneqId {
            pub const ALL: &'static [IneqId] = &[$(IneqId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IneqId::$variant => $name),*
                }
            }
        }

        impl FromStr for IneqId {
            type Err = IneqError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(IneqId::$variant),)*
                    other => Err(IneqError::UnknownInequality(other.to_string())),
                }
            }
        }
    };
}

ineq_ids! {
    TaoPositive => "tao_positive",
    Key => "key",
    TracePairing => "trace_pairing",
    CommutatorScale => "commutator_scale",
    CommutatorSv => "commutator_sv",
    MixedCommutator => "mixed_commutator",
    GeneralCommutator => "general_commutator",
    UnitaryConj => "unitary_conj",
    AgmProjection => "agm_projection",
    AgmPair => "agm_pair",
    AgmCompact => "agm_compact",
    AgmGeneral => "agm_general",
    Zhan => "zhan",
    Equiv1 => "equiv_1",
    Equiv2 => "equiv_2",
    Equiv3 => "equiv_3",
    Equiv4 => "equiv_4",
    Equiv5 => "equiv_5",
    EquivCompact1 => "equiv_compact_1",
    EquivCompact2 => "equiv_compact_2",
}

impl IneqId {
    pub const EQUIVALENCE: &'static [IneqId] = &[
        IneqId::Equiv1,
        IneqId::Equiv2,
        IneqId::Equiv3,
        IneqId::Equiv4,
        IneqId::Equiv5,
        IneqId::EquivCompact1,
        IneqId::EquivCompact2,
    ];

    pub fn is_equivalence_item(self) -> bool {
        Self::EQUIVALENCE.contains(&self)
    }
}

impl fmt::Display for IneqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for IneqId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Entrywise comparison `a_i ≤ b_i`, stored as `b_i − a_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntrywiseCheck {
    pub margins: Vec<f64>,
    pub holds: bool,
    /// 1-based index of the first violated entry.
    pub first_failure: Option<usize>,
    pub tolerance: f64,
    /// Whether the inequality asserts this comparison. Unclaimed checks are
    /// recorded for contrast and never affect the verdict.
    pub claimed: bool,
}

impl EntrywiseCheck {
    pub fn new(a: &[f64], b: &[f64], claimed: bool) -> Self {
        let n = a.len().max(b.len());
        let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
        let margins: Vec<f64> = (0..n).map(|i| get(b, i) - get(a, i)).collect();
        let sup = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let tolerance = maj_tol(sup, 1);
        let first_failure = margins.iter().position(|&m| m < -tolerance).map(|i| i + 1);
        Self {
            holds: first_failure.is_none(),
            margins,
            first_failure,
            tolerance,
            claimed,
        }
    }

    fn worst(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// A scalar comparison `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalarCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub tolerance: f64,
    pub claimed: bool,
}

impl ScalarCheck {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64, claimed: bool) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            holds: lhs <= rhs + tolerance,
            tolerance,
            claimed,
        }
    }

    /// `N(lhs) ≤ g_N(rhs)` with the usual relative tolerance.
    pub fn norm(name: &str, norm: NormId, lhs: f64, rhs: f64, claimed: bool) -> Self {
        let tol = 1e-9 * rhs.abs().max(1.0);
        Self::new(format!("{name}[{norm}]"), lhs, rhs, tol, claimed)
    }
}

/// A secondary (sub)majorization relation evaluated alongside the main one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubCheck {
    pub name: String,
    pub report: MajorizationReport,
    pub claimed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub ineq_id: IneqId,
    pub holds: bool,
    pub mode: Mode,
    pub report: Option<MajorizationReport>,
    pub entrywise: Option<EntrywiseCheck>,
    pub scalars: Vec<ScalarCheck>,
    pub subchecks: Vec<SubCheck>,
    /// SHA-256 of the inputs.
    pub witness: String,
}

impl Verdict {
    fn new(ineq_id: IneqId, mode: Mode, witness: String) -> Self {
        Self {
            ineq_id,
            holds: true,
            mode,
            report: None,
            entrywise: None,
            scalars: Vec::new(),
            subchecks: Vec::new(),
            witness,
        }
    }

    /// Main claim `lhs ≺_w rhs`, with the entrywise comparison recorded.
    fn submajorization(
        ineq_id: IneqId,
        mode: Mode,
        witness: String,
        lhs: &SpreadSeq,
        rhs: &SpreadSeq,
        entrywise_claimed: bool,
    ) -> Result<Self, IneqError> {
        let mut v = Self::new(ineq_id, mode, witness);
        v.report = Some(submajorizes_seq(lhs, rhs)?);
        v.entrywise = Some(EntrywiseCheck::new(lhs.values(), rhs.values(), entrywise_claimed));
        Ok(v)
    }

    fn push_sub(
        &mut self,
        name: &str,
        lhs: &SpreadSeq,
        rhs: &SpreadSeq,
        claimed: bool,
    ) -> Result<(), IneqError> {
        self.subchecks.push(SubCheck {
            name: name.to_string(),
            report: submajorizes_seq(lhs, rhs)?,
            claimed,
        });
        Ok(())
    }

    /// Norm forms `N(lhs) ≤ g_N(rhs)` for the standard gauge norms.
    fn push_norms(
        &mut self,
        name: &str,
        lhs: &SpreadSeq,
        rhs: &SpreadSeq,
        claimed: bool,
    ) -> Result<(), IneqError> {
        for norm in NormId::STANDARD {
            self.scalars.push(ScalarCheck::norm(
                name,
                norm,
                gauge(lhs, norm)?,
                gauge(rhs, norm)?,
                claimed,
            ));
        }
        Ok(())
    }

    fn finish(mut self) -> Self {
        self.holds = self.report.as_ref().is_none_or(|r| r.holds)
            && self.entrywise.as_ref().is_none_or(|e| !e.claimed || e.holds)
            && self.scalars.iter().all(|s| !s.claimed || s.holds)
            && self.subchecks.iter().all(|s| !s.claimed || s.report.holds);
        self
    }

    /// Smallest margin over every claimed comparison; `+∞` when nothing is
    /// claimed.
    pub fn worst_margin(&self) -> f64 {
        let mut worst = f64::INFINITY;
        if let Some(r) = &self.report {
            worst = worst.min(r.worst_margin);
        }
        if let Some(e) = self.entrywise.as_ref().filter(|e| e.claimed) {
            worst = worst.min(e.worst());
        }
        for s in self.scalars.iter().filter(|s| s.claimed) {
            worst = worst.min(s.rhs - s.lhs);
        }
        for s in self.subchecks.iter().filter(|s| s.claimed) {
            worst = worst.min(s.report.worst_margin);
        }
        worst
    }

    /// True when the submajorization holds but the entrywise comparison
    /// fails, which is the pattern of the known counterexamples.
    pub fn entrywise_fails(&self) -> bool {
        self.entrywise.as_ref().is_some_and(|e| !e.holds)
    }
}

/// SHA-256 over the mode, integer parameters and matrix entries.
fn witness(mode: Mode, params: &[u64], mats: &[&CMatrix]) -> String {
    let mut h = Sha256::new();
    h.update(mode.as_str().as_bytes());
    for p in params {
        h.update(p.to_le_bytes());
    }
    for m in mats {
        h.update(m.digest_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn sv(x: &CMatrix) -> Result<SpreadSeq, IneqError> {
    Ok(svd_values(x)?)
}

fn spr(a: &HermMatrix, mode: Mode) -> Result<SpreadSeq, IneqError> {
    match mode {
        Mode::Matrix | Mode::Compact => Ok(spread_plus_of(a, mode)?),
        Mode::Diagonal => Err(IneqError::UnsupportedMode(mode)),
    }
}

fn require_square_dims(context: &str, dims: &[usize]) -> Result<(), IneqError> {
    if dims.windows(2).any(|w| w[0] != w[1]) {
        return Err(IneqError::DimMismatch(format!("{context}: dimensions {dims:?}")));
    }
    Ok(())
}

fn min_eigenvalue_check(a: &HermMatrix) -> Result<(), IneqError> {
    let values = crate::linalg::eigh(a)?.values;
    if let (Some(&top), Some(&min)) = (values.first(), values.last()) {
        if min < -POSITIVE_TOL * top.abs().max(1.0) {
            return Err(IneqError::NotPositive { min_eigenvalue: min });
        }
    }
    Ok(())
}

/// `C*C + S*S`, checked to be an orthogonal projection.
fn projection_sum(s: &CMatrix, c: &CMatrix) -> Result<HermMatrix, IneqError> {
    if s.cols() != c.cols() {
        return Err(IneqError::DimMismatch(format!(
            "S has {} columns, C has {}",
            s.cols(),
            c.cols()
        )));
    }
    let p = HermMatrix::symmetrized(&(&c.adjoint() * c) + &(&s.adjoint() * s));
    let pm = p.as_cmatrix();
    let deviation = (&(pm * pm) - pm).frobenius_norm();
    if deviation > PROJECTION_SUM_TOL * pm.frobenius_norm().max(1.0) {
        return Err(IneqError::NotProjectionSum { deviation });
    }
    Ok(p)
}
