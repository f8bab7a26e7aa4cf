use rayon::prelude::*;
use serde::Serialize;

use super::fuzz::{check_dims, fuzz, FuzzSummary};
use super::properties::{Budget, Check, Property, PROPERTIES};
use super::repro::{repro, ReproReport, EXAMPLES};
use super::rng::{name_hash, trial_seed, SplitMix64};
use super::HarnessError;
use crate::ineq::IneqId;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub eigh_trials: usize,
    pub eigh_max_dim: usize,
    pub property_trials: usize,
    pub property_max_dim: usize,
    pub strict_gap_trials: usize,
    pub fuzz_trials: usize,
    pub fuzz_dims: [usize; 2],
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            eigh_trials: 1000,
            eigh_max_dim: 16,
            property_trials: 500,
            property_max_dim: 8,
            strict_gap_trials: 200,
            fuzz_trials: 500,
            fuzz_dims: [2, 8],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub group: String,
    pub trials: usize,
    pub failures: usize,
    /// Smallest margin over all trials.
    pub worst_margin: Option<f64>,
    pub worst_seed: Option<u64>,
    pub first_error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub config: SuiteConfig,
    pub properties: Vec<PropertyResult>,
    /// One campaign per inequality id; wall-clock times are dropped.
    pub fuzz: Vec<FuzzSummary>,
    pub repro: Vec<ReproReport>,
    pub pass: bool,
}

/// Runs every property, every fuzz campaign and every worked example. The
/// report is a function of `seed` and `config` only.
pub fn property_suite(seed: u64, config: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let [lo, hi] = config.fuzz_dims;
    check_dims(&(lo..=hi))?;
    if config.eigh_max_dim == 0 || config.property_max_dim < 2 {
        return Err(HarnessError::InvalidSpec(
            "property dimensions must allow at least 2x2 instances".into(),
        ));
    }
    let properties: Vec<PropertyResult> =
        PROPERTIES.iter().map(|p| run_property(p, seed, config)).collect();
    let fuzz = IneqId::ALL
        .iter()
        .map(|id| {
            fuzz(id.as_str(), config.fuzz_trials, lo..=hi, seed).map(|mut s| {
                s.runtime_ms = None;
                s
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let repro = EXAMPLES.iter().map(|id| repro(id)).collect::<Result<Vec<_>, _>>()?;
    let pass = properties.iter().all(|p| p.pass)
        && fuzz.iter().all(FuzzSummary::passed)
        && repro.iter().all(|r| r.pass);
    Ok(SuiteReport {
        seed,
        config: config.clone(),
        properties,
        fuzz,
        repro,
        pass,
    })
}

fn run_property(p: &Property, seed: u64, config: &SuiteConfig) -> PropertyResult {
    let (trials, max_dim) = match p.budget {
        Budget::Eigh => (config.eigh_trials, config.eigh_max_dim),
        Budget::Standard => (config.property_trials, config.property_max_dim),
        Budget::StrictGap => (config.strict_gap_trials, config.property_max_dim),
    };
    let base = seed ^ name_hash(p.name);
    let outcomes: Vec<(u64, Result<Check, HarnessError>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = trial_seed(base, i);
            let mut r = SplitMix64::new(s);
            let d = r.int_in(p.min_dim, max_dim.max(p.min_dim));
            (s, (p.run)(&mut r, d))
        })
        .collect();

    let mut result = PropertyResult {
        name: p.name.to_string(),
        group: p.group.to_string(),
        trials,
        failures: 0,
        worst_margin: None,
        worst_seed: None,
        first_error: None,
        pass: true,
    };
    for (i, (s, outcome)) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(c) => {
                if !c.pass {
                    result.failures += 1;
                }
                if result.worst_margin.is_none_or(|w| c.margin < w) {
                    result.worst_margin = Some(c.margin);
                    result.worst_seed = Some(s);
                }
            }
            Err(e) => {
                result.failures += 1;
                result.first_error.get_or_insert_with(|| format!("trial {i}: {e}"));
            }
        }
    }
    result.pass = result.failures == 0;
    result
}
