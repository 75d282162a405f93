//! Fading and primary-activity sampling, conditioned on the band having been
//! detected idle.
//!
//! Every trial draws from its own [`RandomStream`], keyed by the run seed and
//! the trial index. A trial's draws therefore never depend on which worker ran
//! it or in what order.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::ParamError;
use crate::model::ValidatedParams;

/// Counter-based random stream: the draw sequence is a pure function of
/// `(seed, stream_id)`.
///
/// Backed by ChaCha8, whose 64-bit stream selector gives 2^64 independent
/// sequences under one key.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        StreamFamily::new(seed).stream(stream_id)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// All streams sharing one seed. Expands the key once so that opening a
/// stream per trial is a clone plus a stream switch.
#[derive(Debug, Clone)]
pub struct StreamFamily {
    seed: u64,
    base: ChaCha8Rng,
}

impl StreamFamily {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            base: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn stream(&self, stream_id: u64) -> RandomStream {
        let mut rng = self.base.clone();
        rng.set_stream(stream_id);
        rng.set_word_pos(0);
        RandomStream {
            seed: self.seed,
            stream_id,
            rng,
        }
    }
}

/// One Monte Carlo draw: every channel power |h|² plus the primary activity
/// indicator α.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrialRealization {
    pub x_sd: f64,
    pub x_se: f64,
    pub x_pd: f64,
    pub x_pe: f64,
    pub x_si: Vec<f64>,
    pub x_id: Vec<f64>,
    pub x_pi: Vec<f64>,
    pub x_ie: Vec<f64>,
    /// Primary source transmitting despite the band being detected idle.
    pub alpha: bool,
}

impl TrialRealization {
    pub fn n_relays(&self) -> usize {
        self.x_si.len()
    }

    fn resize(&mut self, n: usize) {
        for v in [
            &mut self.x_si,
            &mut self.x_id,
            &mut self.x_pi,
            &mut self.x_ie,
        ] {
            v.clear();
            v.reserve(n);
        }
    }
}

/// Exponential draw with mean `variance` (the power of a Rayleigh gain).
pub fn sample_channel_power<R: Rng + ?Sized>(variance: f64, rng: &mut R) -> f64 {
    debug_assert!(variance > 0.0);
    let e: f64 = Exp1.sample(rng);
    variance * e
}

/// Pr(primary active | band detected idle), by Bayes' rule.
pub fn posterior_busy_given_detected_idle(p0: f64, pd: f64, pf: f64) -> Result<f64, ParamError> {
    let miss = (1.0 - p0) * (1.0 - pd);
    let detected_idle = p0 * (1.0 - pf) + miss;
    if detected_idle.is_nan() || detected_idle <= 0.0 {
        return Err(ParamError::ImpossibleConditioning { p0, pd, pf });
    }
    Ok(miss / detected_idle)
}

/// Draws α: `true` with the miss-detection posterior probability.
pub fn sample_interference_state<R: Rng + ?Sized>(params: &ValidatedParams, rng: &mut R) -> bool {
    rng.random::<f64>() < params.posterior_busy()
}

pub fn sample_trial<R: Rng + ?Sized>(params: &ValidatedParams, rng: &mut R) -> TrialRealization {
    let mut out = TrialRealization::default();
    sample_trial_into(params, rng, &mut out);
    out
}

/// Fills `out` with a fresh realization, reusing its buffers.
///
/// Draw order is α, the four direct links, then (si, id, pi, ie) relay by
/// relay, so a realization with N relays is a prefix of the one with N + 1.
pub fn sample_trial_into<R: Rng + ?Sized>(
    params: &ValidatedParams,
    rng: &mut R,
    out: &mut TrialRealization,
) {
    let links = params.links();
    let n = params.n_relays();

    out.alpha = sample_interference_state(params, rng);
    out.x_sd = sample_channel_power(links.sigma2_sd, rng);
    out.x_se = sample_channel_power(links.sigma2_se, rng);
    out.x_pd = sample_channel_power(links.sigma2_pd, rng);
    out.x_pe = sample_channel_power(links.sigma2_pe, rng);

    out.resize(n);
    for _ in 0..n {
        out.x_si.push(sample_channel_power(links.sigma2_si, rng));
        out.x_id.push(sample_channel_power(links.sigma2_id, rng));
        out.x_pi.push(sample_channel_power(links.sigma2_pi, rng));
        out.x_ie.push(sample_channel_power(links.sigma2_ie, rng));
    }
}
