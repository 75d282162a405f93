//! Scenario parameters and their validation.
//!
//! [`SystemParams`] is the plain, user-editable description of a scenario.
//! [`ValidatedParams`] is the only form the samplers and estimators accept; it
//! carries the linear SNRs and the miss-detection posterior precomputed.

use serde::{Deserialize, Serialize};

use crate::environment::posterior_busy_given_detected_idle;
use crate::error::{Error, ParamError, Result};

/// Default detection probability: the IEEE 802.22 boundary value.
pub const DEFAULT_PD: f64 = 0.9;
/// Default false-alarm probability: the IEEE 802.22 boundary value.
pub const DEFAULT_PF: f64 = 0.1;

/// Converts a decibel value to a linear power ratio.
pub fn db_to_linear(x_db: f64) -> Result<f64> {
    if !x_db.is_finite() {
        return Err(Error::invalid(format!("dB value {x_db} is not finite")));
    }
    Ok(10f64.powf(x_db / 10.0))
}

/// Rayleigh fading variances (mean channel powers) for every link class.
///
/// The `*_si`, `*_id`, `*_pi` and `*_ie` values are shared by all relays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkBudget {
    /// Cognitive source to cognitive destination.
    pub sigma2_sd: f64,
    /// Cognitive source to eavesdropper.
    pub sigma2_se: f64,
    /// Primary source to cognitive destination.
    pub sigma2_pd: f64,
    /// Primary source to eavesdropper.
    pub sigma2_pe: f64,
    /// Cognitive source to relay.
    pub sigma2_si: f64,
    /// Relay to cognitive destination.
    pub sigma2_id: f64,
    /// Primary source to relay.
    pub sigma2_pi: f64,
    /// Relay to eavesdropper.
    pub sigma2_ie: f64,
}

impl LinkBudget {
    /// Variances of the relay-network scenario: unit-mean cognitive links,
    /// 0.2 for cross-network links and 0.1 for the wiretap links.
    pub fn reference() -> Self {
        Self {
            sigma2_sd: 1.0,
            sigma2_se: 0.1,
            sigma2_pd: 0.2,
            sigma2_pe: 0.2,
            sigma2_si: 1.0,
            sigma2_id: 1.0,
            sigma2_pi: 0.2,
            sigma2_ie: 0.1,
        }
    }

    fn fields(&self) -> [(&'static str, f64); 8] {
        [
            ("sigma2_sd", self.sigma2_sd),
            ("sigma2_se", self.sigma2_se),
            ("sigma2_pd", self.sigma2_pd),
            ("sigma2_pe", self.sigma2_pe),
            ("sigma2_si", self.sigma2_si),
            ("sigma2_id", self.sigma2_id),
            ("sigma2_pi", self.sigma2_pi),
            ("sigma2_ie", self.sigma2_ie),
        ]
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        for (field, value) in self.fields() {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { field, value });
            }
            if value <= 0.0 {
                return Err(ParamError::NotPositive { field, value });
            }
        }
        Ok(())
    }
}

impl Default for LinkBudget {
    fn default() -> Self {
        Self::reference()
    }
}

/// Every constant describing one scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Prior probability that the licensed band is unoccupied.
    pub p0: f64,
    /// Detection probability.
    pub pd: f64,
    /// False-alarm probability.
    pub pf: f64,
    /// Cognitive transmit SNR in dB.
    pub gamma_s_db: f64,
    /// Primary transmit SNR in dB.
    pub gamma_p_db: f64,
    pub link_variances: LinkBudget,
    /// Number of candidate relays; 0 means direct transmission only.
    pub n_relays: usize,
    /// Target secrecy rate in bit/s/Hz.
    pub secrecy_rate: f64,
}

impl SystemParams {
    /// The imperfect-sensing scenario with P_0 = 0.8, γ_p = 5 dB and the
    /// reference link budget, at γ_s = 0 dB, R_s = 0.1 and no relays.
    pub fn reference() -> Self {
        Self {
            p0: 0.8,
            pd: DEFAULT_PD,
            pf: DEFAULT_PF,
            gamma_s_db: 0.0,
            gamma_p_db: 5.0,
            link_variances: LinkBudget::reference(),
            n_relays: 0,
            secrecy_rate: 0.1,
        }
    }

    pub fn validate(self) -> Result<ValidatedParams, ParamError> {
        for (field, value) in [("p0", self.p0), ("pd", self.pd), ("pf", self.pf)] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { field, value });
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(ParamError::ProbabilityRange { field, value });
            }
        }
        if self.pd < self.pf {
            return Err(ParamError::Miscalibrated {
                pd: self.pd,
                pf: self.pf,
            });
        }
        let posterior_busy = posterior_busy_given_detected_idle(self.p0, self.pd, self.pf)?;

        for (field, value) in [
            ("gamma_s_db", self.gamma_s_db),
            ("gamma_p_db", self.gamma_p_db),
            ("secrecy_rate", self.secrecy_rate),
        ] {
            if !value.is_finite() {
                return Err(ParamError::NotFinite { field, value });
            }
        }
        if self.secrecy_rate <= 0.0 {
            return Err(ParamError::NotPositive {
                field: "secrecy_rate",
                value: self.secrecy_rate,
            });
        }
        self.link_variances.validate()?;

        Ok(ValidatedParams {
            gamma_s: 10f64.powf(self.gamma_s_db / 10.0),
            gamma_p: 10f64.powf(self.gamma_p_db / 10.0),
            posterior_busy,
            params: self,
        })
    }
}

impl Default for SystemParams {
    fn default() -> Self {
        Self::reference()
    }
}

/// Free-function form of [`SystemParams::validate`].
pub fn validate(params: SystemParams) -> Result<ValidatedParams, ParamError> {
    params.validate()
}

/// A [`SystemParams`] known to satisfy every invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidatedParams {
    params: SystemParams,
    gamma_s: f64,
    gamma_p: f64,
    posterior_busy: f64,
}

impl ValidatedParams {
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn links(&self) -> &LinkBudget {
        &self.params.link_variances
    }

    /// Linear cognitive transmit SNR.
    pub fn gamma_s(&self) -> f64 {
        self.gamma_s
    }

    /// Linear primary transmit SNR.
    pub fn gamma_p(&self) -> f64 {
        self.gamma_p
    }

    /// Probability the primary user is active given the band was detected idle.
    pub fn posterior_busy(&self) -> f64 {
        self.posterior_busy
    }

    pub fn n_relays(&self) -> usize {
        self.params.n_relays
    }

    pub fn secrecy_rate(&self) -> f64 {
        self.params.secrecy_rate
    }

    /// Returns a copy with some scenario fields replaced, re-validated.
    pub fn with(&self, f: impl FnOnce(&mut SystemParams)) -> Result<ValidatedParams, ParamError> {
        let mut p = self.params;
        f(&mut p);
        p.validate()
    }

    pub fn into_inner(self) -> SystemParams {
        self.params
    }
}
