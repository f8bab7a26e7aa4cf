use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{
    full_isometry, gaussian_matrix, hermitian, partition_isometry, positive, positive_pair,
    projection, with_spectrum,
};
use super::rng::{trial_seed, SplitMix64};
use super::HarnessError;
use crate::ineq::{self, IneqError, IneqId, Verdict};
use crate::linalg::{eigh, HermMatrix};
use crate::spectra::Mode;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub ineq_id: String,
    pub trials: usize,
    pub dims: [usize; 2],
    pub seed: u64,
    /// Trials whose verdict has `holds = false`.
    pub failures: usize,
    /// Trials where the verifier returned an error.
    pub errors: usize,
    /// Smallest claimed margin over all trials.
    pub worst_margin: Option<f64>,
    /// Trial seed of the worst trial; feed it to [`run_trial`] to replay it.
    pub worst_seed: Option<u64>,
    pub worst_trial: Option<usize>,
    pub first_error: Option<String>,
    /// Wall-clock time; left out of reports that must be reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.errors == 0
    }
}

/// Runs `trials` seeded instances of `ineq_id`. Trial `i` uses
/// `trial_seed(seed, i)`; results are merged in trial order, so the summary
/// does not depend on the thread count.
pub fn fuzz(
    ineq_id: &str,
    trials: usize,
    dims: RangeInclusive<usize>,
    seed: u64,
) -> Result<FuzzSummary, HarnessError> {
    let id: IneqId = ineq_id
        .parse()
        .map_err(|_| HarnessError::UnknownInequality(ineq_id.to_string()))?;
    check_dims(&dims)?;
    let start = Instant::now();
    let outcomes: Vec<(u64, Result<Verdict, IneqError>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(seed, i);
            (s, run_trial(id, dims.clone(), s))
        })
        .collect();

    let mut summary = FuzzSummary {
        ineq_id: id.as_str().to_string(),
        trials,
        dims: [*dims.start(), *dims.end()],
        seed,
        failures: 0,
        errors: 0,
        worst_margin: None,
        worst_seed: None,
        worst_trial: None,
        first_error: None,
        runtime_ms: None,
    };
    for (i, (s, outcome)) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(v) => {
                if !v.holds {
                    summary.failures += 1;
                }
                let m = v.worst_margin();
                if summary.worst_margin.is_none_or(|w| m < w) {
                    summary.worst_margin = Some(m);
                    summary.worst_seed = Some(s);
                    summary.worst_trial = Some(i);
                }
            }
            Err(e) => {
                summary.errors += 1;
                summary.first_error.get_or_insert_with(|| format!("trial {i}: {e}"));
            }
        }
    }
    summary.runtime_ms = Some(start.elapsed().as_millis() as u64);
    Ok(summary)
}

pub(crate) fn check_dims(dims: &RangeInclusive<usize>) -> Result<(), HarnessError> {
    if *dims.start() == 0 || dims.start() > dims.end() {
        return Err(HarnessError::InvalidSpec(format!(
            "dimension range {}..{} must be non-empty and start at 1 or more",
            dims.start(),
            dims.end()
        )));
    }
    Ok(())
}

/// One instance of the hypothesis class of `id`, drawn from `seed`.
pub fn run_trial(id: IneqId, dims: RangeInclusive<usize>, seed: u64) -> Result<Verdict, IneqError> {
    let mut rng = SplitMix64::new(seed);
    let d = rng.int_in(*dims.start(), *dims.end());
    let r = &mut rng;
    let compact = Mode::Compact;
    match id {
        IneqId::TaoPositive => {
            let split = split_point(r, d);
            ineq::check_tao_positive(&positive(r, d), split)
        }
        IneqId::Key => {
            let split = split_point(r, d);
            ineq::check_key(&hermitian(r, d), split, compact)
        }
        IneqId::TracePairing => {
            let rank = r.int_in(1, d.div_ceil(2));
            let values: Vec<f64> =
                (0..d).map(|i| if i < rank { 2.0 * r.gaussian() } else { 0.0 }).collect();
            let a = with_spectrum(r, &values);
            ineq::check_trace_pairing(&a, &hermitian(r, d))
        }
        IneqId::CommutatorScale => ineq::check_commutator_scale(&hermitian(r, d), &hermitian(r, d), compact),
        IneqId::CommutatorSv => commutator_sv(r, d, compact),
        IneqId::MixedCommutator => mixed(r, d, &dims, compact),
        IneqId::GeneralCommutator => {
            let m = r.int_in(*dims.start(), *dims.end());
            let a = gaussian_matrix(r, d, d);
            let b = gaussian_matrix(r, m, m);
            let x = gaussian_matrix(r, d, m);
            ineq::check_general_commutator(&a, &b, &x, compact)
        }
        IneqId::UnitaryConj => {
            let a = hermitian(r, d);
            let x = hermitian(r, d);
            // Spread the generator over ‖X‖ ∈ [0, π].
            let norm = eigh(&x)?.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let target = r.uniform_in(0.0, std::f64::consts::PI);
            let x = if norm > 0.0 { x.scale(target / norm) } else { x };
            ineq::check_unitary_conj(&a, &x, compact)
        }
        IneqId::AgmProjection => {
            let pt = partition_isometry(r, d);
            ineq::check_agm_projection(&pt.s, &pt.c, &hermitian(r, d), compact)
        }
        IneqId::AgmPair => {
            let (c, s, _) = positive_pair(r, d);
            let e1 = hermitian(r, d);
            let e2 = if r.coin(0.5) { e1.clone() } else { hermitian(r, d) };
            ineq::check_agm_pair(&s, &c, &e1, &e2, compact)
        }
        IneqId::AgmCompact => {
            let pt = partition_isometry(r, d);
            let e = if r.coin(0.25) { positive(r, d) } else { hermitian(r, d) };
            ineq::check_agm_compact(&pt.s, &pt.c, &e, compact)
        }
        IneqId::AgmGeneral | IneqId::EquivCompact2 => {
            let rows = r.int_in(*dims.start(), *dims.end());
            let a = gaussian_matrix(r, rows, d);
            let b = if r.coin(0.1) {
                crate::linalg::CMatrix::zeros(rows, d)
            } else {
                gaussian_matrix(r, rows, d)
            };
            let e = if r.coin(0.25) { positive(r, d) } else { hermitian(r, d) };
            let v = ineq::check_agm_general(&a, &b, &e, compact)?;
            Ok(ineq::relabel(v, id))
        }
        IneqId::Zhan => ineq::check_zhan(&hermitian(r, d), &hermitian(r, d), compact),
        IneqId::Equiv1 | IneqId::EquivCompact1 => {
            let mode = if id == IneqId::Equiv1 { Mode::Matrix } else { compact };
            let rank = r.int_in(0, d);
            let p = projection(r, d, rank);
            let v = ineq::check_equiv_1(&hermitian(r, d), &p, mode)?;
            Ok(ineq::relabel(v, id))
        }
        IneqId::Equiv2 => Ok(ineq::relabel(commutator_sv(r, d, Mode::Matrix)?, id)),
        IneqId::Equiv3 => Ok(ineq::relabel(mixed(r, d, &dims, Mode::Matrix)?, id)),
        IneqId::Equiv4 => {
            let v = ineq::check_zhan(&hermitian(r, d), &hermitian(r, d), Mode::Matrix)?;
            Ok(ineq::relabel(v, id))
        }
        IneqId::Equiv5 => {
            let pt = full_isometry(r, d);
            ineq::check_equiv_5(&pt.s, &pt.c, &hermitian(r, d), Mode::Matrix)
        }
    }
}

fn split_point(r: &mut SplitMix64, d: usize) -> usize {
    if d < 2 {
        d
    } else {
        r.int_in(1, d - 1)
    }
}

fn commutator_sv(r: &mut SplitMix64, d: usize, mode: Mode) -> Result<Verdict, IneqError> {
    ineq::check_commutator_sv(&hermitian(r, d), &hermitian(r, d), mode)
}

fn mixed(
    r: &mut SplitMix64,
    d: usize,
    dims: &RangeInclusive<usize>,
    mode: Mode,
) -> Result<Verdict, IneqError> {
    let m = r.int_in(*dims.start(), *dims.end());
    let a: HermMatrix = hermitian(r, d);
    let b = hermitian(r, m);
    let x = gaussian_matrix(r, d, m);
    ineq::check_mixed_commutator(&a, &b, &x, mode)
}
