//! Instantaneous capacities and the secrecy outage verdict for direct
//! source-to-destination transmission.

use crate::environment::TrialRealization;
use crate::error::{Error, Result};
use crate::model::ValidatedParams;

/// Per-trial capacities at the destination and the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeOutcome {
    /// Legitimate capacity, bit/s/Hz.
    pub capacity_d: f64,
    /// Eavesdropper capacity, bit/s/Hz.
    pub capacity_e: f64,
    /// `capacity_d - capacity_e < secrecy_rate`.
    pub outage: bool,
}

impl SchemeOutcome {
    pub fn new(capacity_d: f64, capacity_e: f64, secrecy_rate: f64) -> Self {
        Self {
            capacity_d,
            capacity_e,
            outage: capacity_d - capacity_e < secrecy_rate,
        }
    }

    pub fn secrecy_margin(&self) -> f64 {
        self.capacity_d - self.capacity_e
    }
}

/// Shannon capacity `log2(1 + sinr)` in bit/s/Hz.
pub fn capacity_from_sinr(sinr: f64) -> Result<f64> {
    if sinr.is_nan() || sinr < 0.0 {
        return Err(Error::invalid(format!("SINR {sinr} must be non-negative")));
    }
    Ok(capacity(sinr))
}

#[inline]
pub(crate) fn capacity(sinr: f64) -> f64 {
    sinr.ln_1p() * std::f64::consts::LOG2_E
}

/// Single-hop SINR `x·γ_s / (α·x_p·γ_p + 1)`.
#[inline]
pub fn direct_sinr(x: f64, x_p: f64, alpha: bool, gamma_s: f64, gamma_p: f64) -> f64 {
    let interference = if alpha { x_p * gamma_p } else { 0.0 };
    x * gamma_s / (interference + 1.0)
}

/// Evaluates direct transmission on one realization. Relay draws are ignored.
pub fn direct_trial(t: &TrialRealization, params: &ValidatedParams) -> SchemeOutcome {
    let (gs, gp) = (params.gamma_s(), params.gamma_p());
    let c_sd = capacity(direct_sinr(t.x_sd, t.x_pd, t.alpha, gs, gp));
    let c_se = capacity(direct_sinr(t.x_se, t.x_pe, t.alpha, gs, gp));
    SchemeOutcome::new(c_sd, c_se, params.secrecy_rate())
}
