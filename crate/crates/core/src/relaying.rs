//! Opportunistic amplify-and-forward relaying.
//!
//! The source broadcasts in the first half-slot; the relay with the best
//! end-to-end SINR at the destination retransmits in the second. Destination
//! and eavesdropper each keep the stronger of their two copies (selection
//! combining), and both capacities pay the half-slot factor.

use crate::environment::TrialRealization;
use crate::error::{Error, Result};
use crate::model::ValidatedParams;
use crate::secrecy::{capacity, direct_sinr, SchemeOutcome};

/// End-to-end SINRs through one relay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayCandidate {
    pub index: usize,
    /// SINR at the destination.
    pub sinr_d: f64,
    /// SINR at the eavesdropper through the same relay.
    pub sinr_e: f64,
}

/// Two-hop AF SINR with primary interference at the relay and the receiver:
///
/// ```text
///               x1·x2·γs
/// ─────────────────────────────────────────
/// x2·(x_pr·α·γp + 1) + x1·(x_prx·α·γp + 1)
/// ```
///
/// `x_first_hop` is source→relay, `x_second_hop` relay→receiver, `x_p_relay`
/// primary→relay and `x_p_receiver` primary→receiver. Returns 0 when both hop
/// powers vanish.
#[inline]
pub fn relay_sinr(
    x_first_hop: f64,
    x_second_hop: f64,
    x_p_relay: f64,
    x_p_receiver: f64,
    alpha: bool,
    gamma_s: f64,
    gamma_p: f64,
) -> f64 {
    let (relay_ipn, receiver_ipn) = if alpha {
        (x_p_relay * gamma_p + 1.0, x_p_receiver * gamma_p + 1.0)
    } else {
        (1.0, 1.0)
    };
    let denom = x_second_hop * relay_ipn + x_first_hop * receiver_ipn;
    if denom == 0.0 {
        return 0.0;
    }
    x_first_hop * x_second_hop * gamma_s / denom
}

/// Picks the candidate with the largest destination SINR, lowest index on
/// ties. The eavesdropper SINR plays no part.
pub fn select_best_relay(candidates: &[RelayCandidate]) -> Result<RelayCandidate> {
    let (first, rest) = candidates
        .split_first()
        .ok_or_else(|| Error::invalid("relay selection needs at least one candidate"))?;
    Ok(rest.iter().copied().fold(*first, keep_better))
}

// Strict comparison: an equal later candidate never displaces an earlier one.
#[inline]
fn keep_better(best: RelayCandidate, c: RelayCandidate) -> RelayCandidate {
    if c.sinr_d > best.sinr_d {
        c
    } else {
        best
    }
}

/// Selection diversity combining: keep the stronger branch.
#[inline]
pub fn sdc_combine(sinr_a: f64, sinr_b: f64) -> f64 {
    sinr_a.max(sinr_b)
}

/// Destination and eavesdropper SINRs for every relay in `t`.
pub fn relay_candidates<'a>(
    t: &'a TrialRealization,
    params: &ValidatedParams,
) -> impl Iterator<Item = RelayCandidate> + 'a {
    let (gs, gp) = (params.gamma_s(), params.gamma_p());
    (0..t.n_relays()).map(move |i| RelayCandidate {
        index: i,
        sinr_d: relay_sinr(t.x_si[i], t.x_id[i], t.x_pi[i], t.x_pd, t.alpha, gs, gp),
        sinr_e: relay_sinr(t.x_si[i], t.x_ie[i], t.x_pi[i], t.x_pe, t.alpha, gs, gp),
    })
}

/// Evaluates opportunistic relaying on one realization.
pub fn relaying_trial(t: &TrialRealization, params: &ValidatedParams) -> Result<SchemeOutcome> {
    if t.n_relays() == 0 {
        return Err(Error::invalid(
            "opportunistic relaying needs at least one relay; use direct_trial",
        ));
    }
    Ok(relaying_outcome(t, params))
}

/// [`relaying_trial`] without the relay-count check; `t` must hold at least
/// one relay.
pub(crate) fn relaying_outcome(t: &TrialRealization, params: &ValidatedParams) -> SchemeOutcome {
    let best = relay_candidates(t, params)
        .reduce(keep_better)
        .expect("non-empty relay set");
    combine(t, params, &best)
}

fn combine(t: &TrialRealization, params: &ValidatedParams, best: &RelayCandidate) -> SchemeOutcome {
    let (gs, gp) = (params.gamma_s(), params.gamma_p());
    let at_d = sdc_combine(direct_sinr(t.x_sd, t.x_pd, t.alpha, gs, gp), best.sinr_d);
    let at_e = sdc_combine(direct_sinr(t.x_se, t.x_pe, t.alpha, gs, gp), best.sinr_e);
    SchemeOutcome::new(
        0.5 * capacity(at_d),
        0.5 * capacity(at_e),
        params.secrecy_rate(),
    )
}
