//! Experiment configuration files.
//!
//! A config is a flat TOML table. Keys:
//!
//! | key             | required                       | meaning                                 |
//! |-----------------|--------------------------------|-----------------------------------------|
//! | `schemes`       | yes                            | subset of `["direct", "opportunistic"]` |
//! | `snr_grid_db`   | yes                            | strictly increasing γ_s grid, dB        |
//! | `secrecy_rates` | yes                            | R_s values, bit/s/Hz                    |
//! | `relay_counts`  | with `opportunistic`           | relay counts N ≥ 1                      |
//! | `p0`            | yes                            | prior idle probability                  |
//! | `pd`, `pf`      | no (0.9, 0.1)                  | detection / false-alarm probabilities   |
//! | `gamma_p_db`    | yes                            | primary transmit SNR, dB                |
//! | `sigma2_sd`, `sigma2_se`, `sigma2_pd`, `sigma2_pe` | yes | direct-path variances       |
//! | `sigma2_si`, `sigma2_id`, `sigma2_pi`, `sigma2_ie` | with `opportunistic` | relay-link variances |
//! | `trials`        | no (1000000)                   | trials per grid point                   |
//! | `seed`          | no (0)                         | base seed                               |
//! | `output`        | yes, unless given on the CLI   | CSV output path                         |
//!
//! Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{Scheme, SweepPlan, DEFAULT_TRIALS};
use crate::model::{LinkBudget, SystemParams, ValidatedParams, DEFAULT_PD, DEFAULT_PF};

/// Raw file contents; every key optional so missing ones can be reported by
/// name.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schemes: Option<Vec<Scheme>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub snr_grid_db: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secrecy_rates: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relay_counts: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_p_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_sd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_se: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_pd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_pe: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_si: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_id: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_pi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2_ie: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

/// Values given on the command line; each replaces the file's key.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

/// A complete, validated experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    /// Base scenario. `gamma_s_db`, `n_relays` and `secrecy_rate` hold the
    /// first sweep point; the sweep overrides them per row.
    pub params: SystemParams,
    pub schemes: Vec<Scheme>,
    pub snr_grid_db: Vec<f64>,
    pub relay_counts: Vec<usize>,
    pub secrecy_rates: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub output_path: PathBuf,
}

fn require<T>(value: Option<T>, key: &str) -> Result<T> {
    value.ok_or_else(|| Error::MissingKey(key.to_owned()))
}

fn non_empty<T>(v: Vec<T>, key: &str) -> Result<Vec<T>> {
    if v.is_empty() {
        return Err(Error::Config(format!("`{key}` must not be empty")));
    }
    Ok(v)
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_owned()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if o.trials.is_some() {
            self.trials = o.trials;
        }
        if o.seed.is_some() {
            self.seed = o.seed;
        }
        if o.output.is_some() {
            self.output = o.output.clone();
        }
    }

    pub fn into_spec(self) -> Result<ExperimentSpec> {
        let schemes = non_empty(require(self.schemes, "schemes")?, "schemes")?;
        let snr_grid_db = non_empty(require(self.snr_grid_db, "snr_grid_db")?, "snr_grid_db")?;
        let secrecy_rates = non_empty(
            require(self.secrecy_rates, "secrecy_rates")?,
            "secrecy_rates",
        )?;
        let relaying = schemes.contains(&Scheme::Opportunistic);
        let relay_counts = if relaying {
            non_empty(require(self.relay_counts, "relay_counts")?, "relay_counts")?
        } else {
            self.relay_counts.unwrap_or_default()
        };

        // Relay-link variances only matter when a relaying scheme runs.
        let fallback = LinkBudget::reference();
        let relay_var = |v: Option<f64>, key: &str, dflt: f64| -> Result<f64> {
            if relaying {
                require(v, key)
            } else {
                Ok(v.unwrap_or(dflt))
            }
        };
        let link_variances = LinkBudget {
            sigma2_sd: require(self.sigma2_sd, "sigma2_sd")?,
            sigma2_se: require(self.sigma2_se, "sigma2_se")?,
            sigma2_pd: require(self.sigma2_pd, "sigma2_pd")?,
            sigma2_pe: require(self.sigma2_pe, "sigma2_pe")?,
            sigma2_si: relay_var(self.sigma2_si, "sigma2_si", fallback.sigma2_si)?,
            sigma2_id: relay_var(self.sigma2_id, "sigma2_id", fallback.sigma2_id)?,
            sigma2_pi: relay_var(self.sigma2_pi, "sigma2_pi", fallback.sigma2_pi)?,
            sigma2_ie: relay_var(self.sigma2_ie, "sigma2_ie", fallback.sigma2_ie)?,
        };

        let params = SystemParams {
            p0: require(self.p0, "p0")?,
            pd: self.pd.unwrap_or(DEFAULT_PD),
            pf: self.pf.unwrap_or(DEFAULT_PF),
            gamma_s_db: snr_grid_db[0],
            gamma_p_db: require(self.gamma_p_db, "gamma_p_db")?,
            link_variances,
            n_relays: relay_counts.iter().copied().max().unwrap_or(0),
            secrecy_rate: secrecy_rates[0],
        };

        let spec = ExperimentSpec {
            params,
            schemes,
            snr_grid_db,
            relay_counts,
            secrecy_rates,
            trials: self.trials.unwrap_or(DEFAULT_TRIALS),
            seed: self.seed.unwrap_or(0),
            output_path: require(self.output, "output")?,
        };
        spec.check()?;
        Ok(spec)
    }
}

impl ExperimentSpec {
    /// Checks every spec invariant and validates each swept scenario.
    pub fn check(&self) -> Result<ValidatedParams> {
        let base = self.params.validate()?;
        if self.schemes.is_empty() || self.snr_grid_db.is_empty() || self.secrecy_rates.is_empty() {
            return Err(Error::Config(
                "schemes, snr_grid_db and secrecy_rates must be non-empty".into(),
            ));
        }
        if let Some(w) = self
            .snr_grid_db
            .windows(2)
            .find(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::Config(format!(
                "snr_grid_db must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.schemes.contains(&Scheme::Opportunistic) {
            if self.relay_counts.is_empty() {
                return Err(Error::MissingKey("relay_counts".into()));
            }
            if self.relay_counts.contains(&0) {
                return Err(Error::Config("relay_counts must be positive".into()));
            }
        }
        for &g in &self.snr_grid_db {
            base.with(|p| p.gamma_s_db = g)?;
        }
        for &r in &self.secrecy_rates {
            base.with(|p| p.secrecy_rate = r)?;
        }
        Ok(base)
    }

    pub fn plan(&self) -> SweepPlan {
        SweepPlan {
            schemes: self.schemes.clone(),
            snr_grid_db: self.snr_grid_db.clone(),
            relay_counts: self.relay_counts.clone(),
            secrecy_rates: self.secrecy_rates.clone(),
            trials: self.trials,
            seed: self.seed,
        }
    }

    /// The effective configuration in file syntax.
    pub fn to_toml(&self) -> String {
        let l = &self.params.link_variances;
        let file = ConfigFile {
            schemes: Some(self.schemes.clone()),
            snr_grid_db: Some(self.snr_grid_db.clone()),
            secrecy_rates: Some(self.secrecy_rates.clone()),
            relay_counts: Some(self.relay_counts.clone()),
            p0: Some(self.params.p0),
            pd: Some(self.params.pd),
            pf: Some(self.params.pf),
            gamma_p_db: Some(self.params.gamma_p_db),
            sigma2_sd: Some(l.sigma2_sd),
            sigma2_se: Some(l.sigma2_se),
            sigma2_pd: Some(l.sigma2_pd),
            sigma2_pe: Some(l.sigma2_pe),
            sigma2_si: Some(l.sigma2_si),
            sigma2_id: Some(l.sigma2_id),
            sigma2_pi: Some(l.sigma2_pi),
            sigma2_ie: Some(l.sigma2_ie),
            trials: Some(self.trials),
            seed: Some(self.seed),
            output: Some(self.output_path.clone()),
        };
        toml::to_string(&file).expect("config serializes")
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentSpec> {
    load_config_with(path, &Overrides::default())
}

pub fn load_config_with(path: &Path, overrides: &Overrides) -> Result<ExperimentSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut file = ConfigFile::parse(&text)?;
    file.apply(overrides);
    file.into_spec()
}
