//! Spectral scales and spreads.
//!
//! A spectral scale is a two-sided sequence `λ = (λ_i)_{i ∈ Z∖{0}}` stored as
//! two arrays: `pos = (λ_1, …, λ_K)` and `neg = (λ_{-1}, …, λ_{-K})`. Three
//! operator models are supported:
//!
//! * [`Mode::Matrix`]: a `d × d` matrix on `C^d`. `pos` is `μ(A)` and `neg`
//!   is `μ(A)↑`, both of length `d`; nothing is defined past `d`.
//! * [`Mode::Compact`]: the finite-rank operator `A ⊕ 0` on an infinite
//!   dimensional space. Positive and negative eigenvalues fill the two sides
//!   and everything else is zero.
//! * [`Mode::Diagonal`]: a diagonal operator `D_a` described by a
//!   [`DiagSpec`]; the tails are `limsup a` and `liminf a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::{eigh, HermMatrix, LinalgError};

/// Tolerance for tail consistency checks.
pub const TAIL_TOL: f64 = 1e-9;

/// The diagonal model samples `SAMPLING_FACTOR · K` entries to certify `K`
/// scale entries.
pub const SAMPLING_FACTOR: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Matrix,
    Compact,
    Diagonal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Matrix => "matrix",
            Mode::Compact => "compact",
            Mode::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "matrix" => Ok(Mode::Matrix),
            "compact" => Ok(Mode::Compact),
            "diagonal" | "diag" => Ok(Mode::Diagonal),
            other => Err(SpectraError::UnknownMode(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unknown mode {0:?}")]
    UnknownMode(String),
    #[error("horizon {horizon} is smaller than the dimension {dim}")]
    HorizonTooSmall { horizon: usize, dim: usize },
    #[error("pos has length {pos} but neg has length {neg}")]
    LengthMismatch { pos: usize, neg: usize },
    #[error("{side} side is not monotone at index {index}")]
    NotMonotone { side: &'static str, index: usize },
    #[error("ordering neg <= pos violated at index {index}")]
    OrderingViolated { index: usize },
    #[error("{side} tail {tail} is inconsistent with the last entry {last}")]
    TailInconsistent {
        side: &'static str,
        tail: f64,
        last: f64,
    },
    #[error("sequence entry {index} is negative or not finite: {value}")]
    InvalidEntry { index: usize, value: f64 },
    #[error("invalid diagonal specification: {0}")]
    InvalidSpec(String),
    #[error("{samples} samples cannot certify the first {horizon} scale entries")]
    InsufficientSampling { horizon: usize, samples: usize },
    #[error("a sequence without a tail cannot be extended from {len} to {horizon} entries")]
    NoTail { len: usize, horizon: usize },
}

/// Limits of the two sides of a scale.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tails {
    pub pos: f64,
    pub neg: f64,
    /// True when every entry past the horizon equals the tail value.
    pub exact: bool,
}

/// A truncated two-sided sequence (spectral scale or full spread).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoSidedSeq {
    pos: Vec<f64>,
    neg: Vec<f64>,
    tails: Option<Tails>,
    mode: Mode,
}

impl TwoSidedSeq {
    /// Validates monotonicity, the `neg ≤ pos` ordering (outside matrix mode)
    /// and tail consistency.
    pub fn new(
        pos: Vec<f64>,
        neg: Vec<f64>,
        tails: Option<Tails>,
        mode: Mode,
    ) -> Result<Self, SpectraError> {
        if pos.len() != neg.len() {
            return Err(SpectraError::LengthMismatch {
                pos: pos.len(),
                neg: neg.len(),
            });
        }
        for (index, &value) in pos.iter().chain(&neg).enumerate() {
            if !value.is_finite() {
                return Err(SpectraError::InvalidEntry { index, value });
            }
        }
        if let Some(i) = pos.windows(2).position(|w| w[0] < w[1]) {
            return Err(SpectraError::NotMonotone { side: "pos", index: i + 1 });
        }
        if let Some(i) = neg.windows(2).position(|w| w[0] > w[1]) {
            return Err(SpectraError::NotMonotone { side: "neg", index: i + 1 });
        }
        if mode != Mode::Matrix {
            if let Some(i) = pos.iter().zip(&neg).position(|(p, n)| n > p) {
                return Err(SpectraError::OrderingViolated { index: i });
            }
        }
        if let Some(t) = tails {
            if let (Some(&lp), Some(&ln)) = (pos.last(), neg.last()) {
                if lp < t.pos - TAIL_TOL {
                    return Err(SpectraError::TailInconsistent {
                        side: "pos",
                        tail: t.pos,
                        last: lp,
                    });
                }
                if ln > t.neg + TAIL_TOL {
                    return Err(SpectraError::TailInconsistent {
                        side: "neg",
                        tail: t.neg,
                        last: ln,
                    });
                }
            }
        }
        Ok(Self {
            pos,
            neg,
            tails,
            mode,
        })
    }

    /// `(λ_1, …, λ_K)`.
    pub fn pos(&self) -> &[f64] {
        &self.pos
    }

    /// `(λ_{-1}, …, λ_{-K})`.
    pub fn neg(&self) -> &[f64] {
        &self.neg
    }

    pub fn tails(&self) -> Option<Tails> {
        self.tails
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn horizon(&self) -> usize {
        self.pos.len()
    }

    /// `λ_i` for `i ≠ 0`; past the horizon only exact tails are returned.
    pub fn at(&self, i: isize) -> Option<f64> {
        let k = i.unsigned_abs();
        if i == 0 {
            return None;
        }
        let side = if i > 0 { &self.pos } else { &self.neg };
        if k <= side.len() {
            return Some(side[k - 1]);
        }
        match self.tails {
            Some(t) if t.exact => Some(if i > 0 { t.pos } else { t.neg }),
            _ => None,
        }
    }
}

/// The trailing behaviour of a one-sided sequence past its stored values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tail {
    pub value: f64,
    /// True when every entry past the stored values equals `value`; otherwise
    /// they lie between `value` and the last stored entry.
    pub exact: bool,
}

impl Tail {
    pub const ZERO: Tail = Tail {
        value: 0.0,
        exact: true,
    };
}

/// A non-negative, non-increasing sequence such as `Spr⁺(A)` or `s(X)`.
///
/// `tail == None` marks a finite matrix-mode vector with nothing defined
/// past its length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadSeq {
    values: Vec<f64>,
    tail: Option<Tail>,
}

impl SpreadSeq {
    pub fn new(values: Vec<f64>, tail: Option<Tail>) -> Result<Self, SpectraError> {
        for (index, &value) in values.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(SpectraError::InvalidEntry { index, value });
            }
        }
        if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(SpectraError::NotMonotone {
                side: "values",
                index: i + 1,
            });
        }
        if let Some(t) = tail {
            if !(t.value >= 0.0 && t.value.is_finite()) {
                return Err(SpectraError::InvalidEntry {
                    index: values.len(),
                    value: t.value,
                });
            }
            if let Some(&last) = values.last() {
                if last < t.value - TAIL_TOL {
                    return Err(SpectraError::TailInconsistent {
                        side: "values",
                        tail: t.value,
                        last,
                    });
                }
            }
        }
        Ok(Self { values, tail })
    }

    /// Finitely supported sequence: the values sorted non-increasing and a
    /// zero tail. Panics on negative or non-finite input.
    pub fn finite(mut values: Vec<f64>) -> Self {
        assert!(
            values.iter().all(|v| *v >= 0.0 && v.is_finite()),
            "finite sequence needs non-negative finite values"
        );
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            tail: Some(Tail::ZERO),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> Option<Tail> {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at 0-based position `i`, using an exact tail past the end.
    pub fn get(&self, i: usize) -> Option<f64> {
        match self.values.get(i) {
            Some(&v) => Some(v),
            None => match self.tail {
                Some(t) if t.exact => Some(t.value),
                _ => None,
            },
        }
    }

    /// Extends the stored values to `horizon` entries with the tail value.
    /// Shorter horizons are left untouched.
    pub fn padded(&self, horizon: usize) -> Result<Self, SpectraError> {
        if horizon <= self.values.len() {
            return Ok(self.clone());
        }
        let t = self.tail.ok_or(SpectraError::NoTail {
            len: self.values.len(),
            horizon,
        })?;
        let mut values = self.values.clone();
        values.resize(horizon, t.value);
        Ok(Self {
            values,
            tail: self.tail,
        })
    }

    /// Multiplies by `c ≥ 0`.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c >= 0.0, "scale factor must be non-negative");
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
            tail: self.tail.map(|t| Tail {
                value: t.value * c,
                exact: t.exact,
            }),
        }
    }
}

/// Closed-form rules for diagonal entries `a_n`, `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// `a_n = c`.
    Constant(f64),
    /// `a_n = limit + coeff / n`.
    Harmonic { limit: f64, coeff: f64 },
    /// `a_n = limit + coeff · ratio^n` with `|ratio| < 1`.
    Geometric { limit: f64, coeff: f64, ratio: f64 },
    /// Cycles through the components: entry `n` comes from component
    /// `(n-1) mod m` at its own index `(n-1) div m + 1`.
    Interleave(Vec<Generator>),
}

impl Generator {
    fn validate(&self) -> Result<(), SpectraError> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        let ok = match self {
            Generator::Constant(c) => finite(&[*c]),
            Generator::Harmonic { limit, coeff } => finite(&[*limit, *coeff]),
            Generator::Geometric {
                limit,
                coeff,
                ratio,
            } => finite(&[*limit, *coeff]) && ratio.abs() < 1.0,
            Generator::Interleave(parts) => {
                if parts.is_empty() {
                    return Err(SpectraError::InvalidSpec(
                        "interleave needs at least one component".into(),
                    ));
                }
                for p in parts {
                    p.validate()?;
                }
                true
            }
        };
        if ok {
            Ok(())
        } else {
            Err(SpectraError::InvalidSpec(format!("bad generator parameters in {self:?}")))
        }
    }

    pub fn value(&self, n: usize) -> f64 {
        debug_assert!(n >= 1);
        match self {
            Generator::Constant(c) => *c,
            Generator::Harmonic { limit, coeff } => limit + coeff / n as f64,
            Generator::Geometric {
                limit,
                coeff,
                ratio,
            } => limit + coeff * ratio.powi(n.min(i32::MAX as usize) as i32),
            Generator::Interleave(parts) => {
                let m = parts.len();
                parts[(n - 1) % m].value((n - 1) / m + 1)
            }
        }
    }

    /// Upper bound for `sup_{m > n} a_m`.
    pub fn sup_after(&self, n: usize) -> f64 {
        match self {
            Generator::Constant(c) => *c,
            Generator::Harmonic { limit, coeff } => {
                if *coeff > 0.0 {
                    limit + coeff / (n + 1) as f64
                } else {
                    *limit
                }
            }
            Generator::Geometric {
                limit,
                coeff,
                ratio,
            } => limit + coeff.abs() * ratio.abs().powi((n + 1).min(i32::MAX as usize) as i32),
            Generator::Interleave(parts) => Self::fold_parts(parts, n, f64::max, |g, c| g.sup_after(c)),
        }
    }

    /// Lower bound for `inf_{m > n} a_m`.
    pub fn inf_after(&self, n: usize) -> f64 {
        match self {
            Generator::Constant(c) => *c,
            Generator::Harmonic { limit, coeff } => {
                if *coeff < 0.0 {
                    limit + coeff / (n + 1) as f64
                } else {
                    *limit
                }
            }
            Generator::Geometric {
                limit,
                coeff,
                ratio,
            } => limit - coeff.abs() * ratio.abs().powi((n + 1).min(i32::MAX as usize) as i32),
            Generator::Interleave(parts) => Self::fold_parts(parts, n, f64::min, |g, c| g.inf_after(c)),
        }
    }

    fn fold_parts(
        parts: &[Generator],
        n: usize,
        combine: fn(f64, f64) -> f64,
        bound: impl Fn(&Generator, usize) -> f64,
    ) -> f64 {
        let m = parts.len();
        parts
            .iter()
            .enumerate()
            .map(|(j, g)| {
                // Entries of component j among 1..=n.
                let consumed = if n > j { (n - 1 - j) / m + 1 } else { 0 };
                bound(g, consumed)
            })
            .reduce(combine)
            .expect("interleave is non-empty")
    }

    /// `(min, max)` of the set of limit points.
    pub fn limit_range(&self) -> (f64, f64) {
        match self {
            Generator::Constant(c) => (*c, *c),
            Generator::Harmonic { limit, .. } | Generator::Geometric { limit, .. } => (*limit, *limit),
            Generator::Interleave(parts) => parts
                .iter()
                .map(Generator::limit_range)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| {
                    (lo.min(a), hi.max(b))
                }),
        }
    }
}

/// A bounded real sequence `a` defining the diagonal operator `D_a`.
///
/// Entries `1..=head.len()` come from `head`; later entries come from the
/// generator evaluated at the absolute index. Without a generator the
/// remaining entries are only known to lie in `[liminf, limsup]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagSpec {
    pub head: Vec<f64>,
    pub liminf: f64,
    pub limsup: f64,
    pub generator: Option<Generator>,
}

impl DiagSpec {
    pub fn validate(&self) -> Result<(), SpectraError> {
        if !(self.liminf.is_finite() && self.limsup.is_finite()) || self.liminf > self.limsup {
            return Err(SpectraError::InvalidSpec(format!(
                "need finite liminf <= limsup, got {} and {}",
                self.liminf, self.limsup
            )));
        }
        if let Some(i) = self.head.iter().position(|x| !x.is_finite()) {
            return Err(SpectraError::InvalidSpec(format!("head entry {} is not finite", i + 1)));
        }
        if let Some(g) = &self.generator {
            g.validate()?;
            let (lo, hi) = g.limit_range();
            if (lo - self.liminf).abs() > TAIL_TOL || (hi - self.limsup).abs() > TAIL_TOL {
                return Err(SpectraError::InvalidSpec(format!(
                    "generator limit points span [{lo}, {hi}], declared [{}, {}]",
                    self.liminf, self.limsup
                )));
            }
        }
        Ok(())
    }

    /// `a_n` for `n ≥ 1`, if determined by the spec.
    pub fn entry(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        if n <= self.head.len() {
            return Some(self.head[n - 1]);
        }
        self.generator.as_ref().map(|g| g.value(n))
    }
}

pub fn default_horizon(dim: usize) -> usize {
    (2 * dim).max(1)
}

/// `λ(A) = μ(A)` on `C^d`: `pos = μ`, `neg = μ↑`, no tails.
pub fn matrix_scale(a: &HermMatrix) -> Result<TwoSidedSeq, SpectraError> {
    let mu = eigh(a)?.values;
    let mut up = mu.clone();
    up.reverse();
    TwoSidedSeq::new(mu, up, None, Mode::Matrix)
}

/// Scale of `A ⊕ 0` truncated at `horizon ≥ dim(A)`.
pub fn compact_scale(a: &HermMatrix, horizon: usize) -> Result<TwoSidedSeq, SpectraError> {
    if horizon < a.dim() {
        return Err(SpectraError::HorizonTooSmall {
            horizon,
            dim: a.dim(),
        });
    }
    compact_from_values(&eigh(a)?.values, horizon)
}

/// Compact-model scale of a finitely supported multiset of eigenvalues.
pub fn compact_from_values(values: &[f64], horizon: usize) -> Result<TwoSidedSeq, SpectraError> {
    if horizon < values.len() {
        return Err(SpectraError::HorizonTooSmall {
            horizon,
            dim: values.len(),
        });
    }
    let mut pos: Vec<f64> = values.iter().copied().filter(|&x| x > 0.0).collect();
    let mut neg: Vec<f64> = values.iter().copied().filter(|&x| x < 0.0).collect();
    pos.sort_by(|a, b| b.total_cmp(a));
    neg.sort_by(f64::total_cmp);
    pos.resize(horizon, 0.0);
    neg.resize(horizon, 0.0);
    TwoSidedSeq::new(
        pos,
        neg,
        Some(Tails {
            pos: 0.0,
            neg: 0.0,
            exact: true,
        }),
        Mode::Compact,
    )
}

/// Scale of `D_a` truncated at `horizon`.
///
/// Entries strictly above `limsup` are listed in decreasing order and the
/// rest of the positive side collapses to `limsup`; the negative side is
/// symmetric with `liminf`. The first `horizon` entries are certified using
/// `SAMPLING_FACTOR · horizon` samples and the generator's tail bounds.
pub fn diag_scale(spec: &DiagSpec, horizon: usize) -> Result<TwoSidedSeq, SpectraError> {
    spec.validate()?;
    let samples = (SAMPLING_FACTOR * horizon).max(spec.head.len());
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for n in 1..=samples {
        let Some(x) = spec.entry(n) else { break };
        if x > spec.limsup {
            upper.push(x);
        } else if x < spec.liminf {
            lower.push(x);
        }
    }
    let known = match &spec.generator {
        Some(_) => samples,
        None => spec.head.len(),
    };
    let (beyond_sup, beyond_inf) = match &spec.generator {
        Some(g) => (g.sup_after(known), g.inf_after(known)),
        None => (spec.limsup, spec.liminf),
    };
    upper.sort_by(|a, b| b.total_cmp(a));
    lower.sort_by(f64::total_cmp);

    let certified = |side: &[f64], beyond_outside: bool, kth_ok: &dyn Fn(f64) -> bool| {
        if !beyond_outside {
            return true;
        }
        side.len() >= horizon && (horizon == 0 || kth_ok(side[horizon - 1]))
    };
    let pos_ok = certified(&upper, beyond_sup > spec.limsup, &|v| v >= beyond_sup);
    let neg_ok = certified(&lower, beyond_inf < spec.liminf, &|v| v <= beyond_inf);
    if !(pos_ok && neg_ok) {
        return Err(SpectraError::InsufficientSampling { horizon, samples });
    }

    upper.truncate(horizon);
    lower.truncate(horizon);
    upper.resize(horizon, spec.limsup);
    lower.resize(horizon, spec.liminf);
    TwoSidedSeq::new(
        upper,
        lower,
        Some(Tails {
            pos: spec.limsup,
            neg: spec.liminf,
            exact: false,
        }),
        Mode::Diagonal,
    )
}

/// `Spr(λ)_i = λ_i − λ_{-i}` and `Spr_{-i} = −Spr_i`.
pub fn spread_full(scale: &TwoSidedSeq) -> TwoSidedSeq {
    let pos: Vec<f64> = scale.pos.iter().zip(&scale.neg).map(|(p, n)| p - n).collect();
    let neg: Vec<f64> = pos.iter().map(|v| -v).collect();
    let tails = scale.tails.map(|t| Tails {
        pos: t.pos - t.neg,
        neg: t.neg - t.pos,
        exact: t.exact,
    });
    // Differences of a non-increasing and a non-decreasing array stay monotone
    // under rounding, so no validation is needed.
    TwoSidedSeq {
        pos,
        neg,
        tails,
        mode: scale.mode,
    }
}

/// `Spr⁺(λ) = (λ_i − λ_{-i})_{i ≥ 1}`.
///
/// In matrix mode the entries past `d/2` are negative and are clamped to 0,
/// which keeps the sequence non-negative without changing any partial sum
/// that matters for submajorization.
pub fn spread_plus(scale: &TwoSidedSeq) -> SpreadSeq {
    let values: Vec<f64> = scale
        .pos
        .iter()
        .zip(&scale.neg)
        .map(|(p, n)| (p - n).max(0.0))
        .collect();
    let tail = match scale.mode {
        Mode::Matrix => None,
        _ => scale.tails.map(|t| Tail {
            value: (t.pos - t.neg).max(0.0),
            exact: t.exact,
        }),
    };
    SpreadSeq { values, tail }
}

/// `Spr⁺(A)` in the given model; the compact horizon is `dim(A)`, past which
/// the spread is exactly zero.
pub fn spread_plus_of(a: &HermMatrix, mode: Mode) -> Result<SpreadSeq, SpectraError> {
    match mode {
        Mode::Matrix => Ok(spread_plus(&matrix_scale(a)?)),
        Mode::Compact => Ok(spread_plus(&compact_scale(a, a.dim())?)),
        Mode::Diagonal => Err(SpectraError::UnknownMode(
            "diagonal mode needs a DiagSpec, not a matrix".into(),
        )),
    }
}
