//! Monte Carlo secrecy outage estimation, SNR sweeps and closed-form checks.
//!
//! Trial `t` of a run with seed `s` always draws from `RandomStream(s, t)`.
//! Trials are processed in fixed-size batches on the ambient rayon pool and
//! merged by summing integer outage counts, so results are bit-identical for
//! any number of workers.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::environment::{sample_trial_into, StreamFamily, TrialRealization};
use crate::error::{Error, Result};
use crate::model::ValidatedParams;
use crate::relaying::relaying_outcome;
use crate::secrecy::direct_trial;

/// Trials handled by one rayon work item.
const BATCH: u64 = 8192;

/// Default number of trials per grid point.
pub const DEFAULT_TRIALS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Direct,
    Opportunistic,
}

impl Scheme {
    pub fn tag(self) -> &'static str {
        match self {
            Scheme::Direct => "direct",
            Scheme::Opportunistic => "opportunistic",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Scheme::Direct),
            "opportunistic" => Ok(Scheme::Opportunistic),
            other => Err(Error::invalid(format!("unknown scheme `{other}`"))),
        }
    }
}

/// Outage probability estimate with its 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub outages: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl OutageEstimate {
    pub fn from_counts(outages: u64, trials: u64, seed: u64) -> Result<Self> {
        let (ci_low, ci_high) = wilson_interval(outages, trials, 0.95)?;
        Ok(Self {
            outages,
            trials,
            estimate: outages as f64 / trials as f64,
            ci_low,
            ci_high,
            seed,
        })
    }

    /// Binomial standard error at the point estimate.
    pub fn std_error(&self) -> f64 {
        (self.estimate * (1.0 - self.estimate) / self.trials as f64).sqrt()
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci_high - self.ci_low)
    }

    /// True when the two 95% intervals are disjoint.
    pub fn separated_from(&self, other: &OutageEstimate) -> bool {
        self.ci_high < other.ci_low || other.ci_high < self.ci_low
    }
}

/// Counts outages over trials `[0, trials)` of stream family `seed`.
pub fn count_outages(
    scheme: Scheme,
    params: &ValidatedParams,
    trials: u64,
    seed: u64,
) -> Result<u64> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if scheme == Scheme::Opportunistic && params.n_relays() == 0 {
        return Err(Error::invalid("opportunistic relaying needs n_relays >= 1"));
    }
    let family = StreamFamily::new(seed);
    let batches = trials.div_ceil(BATCH);
    let outages = (0..batches)
        .into_par_iter()
        .map(|b| {
            let start = b * BATCH;
            let end = (start + BATCH).min(trials);
            let mut t = TrialRealization::default();
            let mut count = 0u64;
            for idx in start..end {
                let mut rng = family.stream(idx);
                sample_trial_into(params, &mut rng, &mut t);
                let outcome = match scheme {
                    Scheme::Direct => direct_trial(&t, params),
                    Scheme::Opportunistic => relaying_outcome(&t, params),
                };
                count += outcome.outage as u64;
            }
            count
        })
        .sum();
    Ok(outages)
}

pub fn estimate_outage(
    scheme: Scheme,
    params: &ValidatedParams,
    trials: u64,
    seed: u64,
) -> Result<OutageEstimate> {
    let outages = count_outages(scheme, params, trials, seed)?;
    OutageEstimate::from_counts(outages, trials, seed)
}

/// Runs `f` on a dedicated pool of `workers` threads (0 = all cores).
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::invalid("Wilson interval needs at least one trial"));
    }
    if successes > trials {
        return Err(Error::invalid(format!(
            "successes ({successes}) exceed trials ({trials})"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::invalid(format!(
            "confidence {confidence} must lie strictly between 0 and 1"
        )));
    }
    let z = Normal::standard().inverse_cdf(0.5 + confidence / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;

    let low = if successes == 0 {
        0.0
    } else {
        (center - half).clamp(0.0, p)
    };
    let high = if successes == trials {
        1.0
    } else {
        (center + half).clamp(p, 1.0)
    };
    Ok((low, high))
}

/// Exact direct-link outage probability for perfect sensing (no primary
/// interference):
///
/// `1 − exp(−(c−1)/(γs·σ²sd)) · σ²sd/(σ²sd + c·σ²se)` with `c = 2^rs`.
pub fn direct_outage_closed_form(
    gamma_s: f64,
    sigma2_sd: f64,
    sigma2_se: f64,
    r_s: f64,
) -> Result<f64> {
    for (name, v) in [
        ("gamma_s", gamma_s),
        ("sigma2_sd", sigma2_sd),
        ("sigma2_se", sigma2_se),
        ("r_s", r_s),
    ] {
        if v.is_nan() || v <= 0.0 {
            return Err(Error::invalid(format!("{name} = {v} must be positive")));
        }
    }
    let c = r_s.exp2();
    let no_deficit = (-(c - 1.0) / (gamma_s * sigma2_sd)).exp();
    Ok(1.0 - no_deficit * sigma2_sd / (sigma2_sd + c * sigma2_se))
}

/// High-SNR limit of [`direct_outage_closed_form`]: the secrecy outage floor.
pub fn direct_outage_floor(sigma2_sd: f64, sigma2_se: f64, r_s: f64) -> f64 {
    let c = r_s.exp2();
    c * sigma2_se / (sigma2_sd + c * sigma2_se)
}

/// What to sweep. Direct rows ignore `relay_counts` and carry `n_relays = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub schemes: Vec<Scheme>,
    pub snr_grid_db: Vec<f64>,
    pub relay_counts: Vec<usize>,
    /// Empty means "use the rate in the base params".
    pub secrecy_rates: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub scheme: Scheme,
    pub n_relays: usize,
    pub secrecy_rate: f64,
    pub gamma_s_db: f64,
    pub estimate: OutageEstimate,
}

/// Rows ordered by (scheme, n_relays, secrecy_rate, gamma_s_db).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// Seed for row `row` of a sweep seeded with `seed` (SplitMix64 finalizer over
/// the pair), so rows draw from unrelated stream families.
pub fn row_seed(seed: u64, row: u64) -> u64 {
    let mut z = seed.wrapping_add(row.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sorted_unique_f64(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

pub fn sweep(params: &ValidatedParams, plan: &SweepPlan) -> Result<SweepTable> {
    if plan.snr_grid_db.is_empty() {
        return Err(Error::invalid("SNR grid is empty"));
    }
    if plan.schemes.is_empty() {
        return Err(Error::invalid("no schemes to sweep"));
    }
    let mut schemes = plan.schemes.clone();
    schemes.sort();
    schemes.dedup();
    let grid = sorted_unique_f64(&plan.snr_grid_db);
    let rates = if plan.secrecy_rates.is_empty() {
        vec![params.secrecy_rate()]
    } else {
        sorted_unique_f64(&plan.secrecy_rates)
    };
    let mut relay_counts = plan.relay_counts.clone();
    relay_counts.sort_unstable();
    relay_counts.dedup();

    let mut cases = Vec::new();
    for &scheme in &schemes {
        let counts: Vec<usize> = match scheme {
            Scheme::Direct => vec![0],
            Scheme::Opportunistic => {
                if relay_counts.is_empty() || relay_counts[0] == 0 {
                    return Err(Error::invalid(
                        "opportunistic sweeps need relay counts >= 1",
                    ));
                }
                relay_counts.clone()
            }
        };
        for &n in &counts {
            for &rate in &rates {
                for &g in &grid {
                    cases.push((scheme, n, rate, g));
                }
            }
        }
    }

    let rows = cases
        .into_iter()
        .enumerate()
        .map(|(i, (scheme, n_relays, secrecy_rate, gamma_s_db))| {
            let p = params.with(|p| {
                p.n_relays = n_relays;
                p.secrecy_rate = secrecy_rate;
                p.gamma_s_db = gamma_s_db;
            })?;
            let estimate = estimate_outage(scheme, &p, plan.trials, row_seed(plan.seed, i as u64))?;
            Ok(SweepRow {
                scheme,
                n_relays,
                secrecy_rate,
                gamma_s_db,
                estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable { rows })
}
