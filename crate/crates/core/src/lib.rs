//! Secrecy outage simulation for cognitive radio links.
//!
//! A cognitive source transmits to its destination only after sensing the
//! licensed band idle; missed detections let the primary user interfere. An
//! eavesdropper listens to every hop. This crate estimates, by conditioned
//! Monte Carlo over Rayleigh fading, how often the instantaneous
//! main-minus-wiretap capacity falls below a target secrecy rate, for direct
//! transmission and for opportunistic amplify-and-forward relaying.
//!
//! Module map:
//!
//! - [`model`]: scenario parameters and validation
//! - [`environment`]: counter-based random streams and channel sampling
//! - [`secrecy`]: capacities and the direct-link outage verdict
//! - [`relaying`]: AF relay SINR, relay selection and combining
//! - [`estimator`]: outage estimation, Wilson intervals, sweeps, closed forms
//! - [`cli`]: config files, CSV tables and SVG plots

pub mod cli;
pub mod environment;
pub mod error;
pub mod estimator;
pub mod model;
pub mod relaying;
pub mod secrecy;

pub use environment::{
    posterior_busy_given_detected_idle, sample_channel_power, sample_interference_state,
    sample_trial, RandomStream, StreamFamily, TrialRealization,
};
pub use error::{Error, ParamError, Result};
pub use estimator::{
    direct_outage_closed_form, direct_outage_floor, estimate_outage, sweep, wilson_interval,
    OutageEstimate, Scheme, SweepPlan, SweepRow, SweepTable,
};
pub use model::{db_to_linear, validate, LinkBudget, SystemParams, ValidatedParams};
pub use relaying::{relay_sinr, relaying_trial, sdc_combine, select_best_relay, RelayCandidate};
pub use secrecy::{capacity_from_sinr, direct_sinr, direct_trial, SchemeOutcome};
