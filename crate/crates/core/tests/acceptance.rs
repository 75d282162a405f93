//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::path::Path;
use std::time::{Duration, Instant};

use cr_secrecy::cli::{self, ConfigFile, Overrides, PRESETS};
use cr_secrecy::estimator::with_workers;
use cr_secrecy::relaying::relay_candidates;
use cr_secrecy::{
    direct_outage_closed_form, direct_outage_floor, direct_trial, estimate_outage, relay_sinr,
    relaying_trial, sample_trial, select_best_relay, wilson_interval, OutageEstimate, RandomStream,
    Scheme, SystemParams, ValidatedParams,
};
use rand::Rng;

/// 3σ band for p ≈ 0.1 at 10^6 trials.
const ORACLE_BAND: f64 = 0.0027;
const HM_REL_TOL: f64 = 1e-12;
const ONE_CORE_BUDGET: Duration = Duration::from_secs(10);
const FLOOR_BUDGET: Duration = Duration::from_secs(300);
const SEED: u64 = 20_141_001;

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn preset(name: &str) -> ConfigFile {
    ConfigFile::parse(PRESETS.iter().find(|(n, _)| *n == name).unwrap().1).unwrap()
}

fn perfect_sensing(gamma_s_db: f64) -> ValidatedParams {
    SystemParams {
        p0: 0.8,
        pd: 1.0,
        pf: 0.0,
        gamma_s_db,
        secrecy_rate: 0.1,
        ..SystemParams::reference()
    }
    .validate()
    .unwrap()
}

/// A bundled preset as a spec; the output path is never written.
fn preset_spec(name: &str) -> cli::ExperimentSpec {
    let mut f = preset(name);
    f.apply(&Overrides {
        output: Some("unused.csv".into()),
        ..Default::default()
    });
    f.into_spec().unwrap()
}

fn fig5(gamma_s_db: f64, n_relays: usize) -> ValidatedParams {
    let base = preset_spec("fig5").params;
    SystemParams {
        gamma_s_db,
        n_relays,
        ..base
    }
    .validate()
    .unwrap()
}

fn fmt(e: &OutageEstimate) -> String {
    format!("{:.5} [{:.5}, {:.5}]", e.estimate, e.ci_low, e.ci_high)
}

fn oracle_match() -> Outcome {
    let p = perfect_sensing(10.0);
    let target = direct_outage_closed_form(10.0, 1.0, 0.1, 0.1).unwrap();
    let start = Instant::now();
    let e = with_workers(1, || estimate_outage(Scheme::Direct, &p, 1_000_000, SEED))
        .unwrap()
        .unwrap();
    let took = start.elapsed();
    let pass = (e.estimate - target).abs() <= ORACLE_BAND
        && (target - 0.10326).abs() < 5e-6
        && took < ONE_CORE_BUDGET;
    outcome(
        pass,
        format!("estimate {} vs {target:.5}, 1 core {:.2?}", fmt(&e), took),
    )
}

fn floor_value() -> Outcome {
    let floor = direct_outage_floor(1.0, 0.1, 0.1);
    let e40 = estimate_outage(Scheme::Direct, &perfect_sensing(40.0), 1_000_000, SEED + 1).unwrap();
    let e30 = estimate_outage(Scheme::Direct, &perfect_sensing(30.0), 1_000_000, SEED + 2).unwrap();
    let flat = (e30.estimate - e40.estimate).abs() < e30.half_width() + e40.half_width();
    let pass =
        (e40.estimate - 0.09680).abs() <= ORACLE_BAND && (floor - 0.09680).abs() < 5e-6 && flat;
    outcome(
        pass,
        format!("40 dB {} vs {floor:.5}; 30 dB {}", fmt(&e40), fmt(&e30)),
    )
}

fn fig3_ordering() -> Outcome {
    let spec = preset_spec("fig3");
    let base = spec.check().unwrap();
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for (i, &g) in spec.snr_grid_db.iter().enumerate() {
        let e: Vec<_> = [0.1, 0.3, 0.5]
            .iter()
            .enumerate()
            .map(|(k, &rs)| {
                let p = base
                    .with(|p| {
                        p.gamma_s_db = g;
                        p.secrecy_rate = rs;
                    })
                    .unwrap();
                estimate_outage(
                    Scheme::Direct,
                    &p,
                    1_000_000,
                    SEED + 100 + (3 * i + k) as u64,
                )
                .unwrap()
            })
            .collect();
        worst = worst
            .min(e[1].ci_low - e[0].ci_high)
            .min(e[2].ci_low - e[1].ci_high);
        if !(e[0].ci_high < e[1].ci_low && e[1].ci_high < e[2].ci_low) {
            failures.push(g);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} grid points, smallest CI gap {worst:.5}, failing at {failures:?}",
            spec.snr_grid_db.len()
        ),
    )
}

fn fig5_crossover() -> Outcome {
    let at = |g: f64, seed: u64| {
        let d = estimate_outage(Scheme::Direct, &fig5(g, 0), 1_000_000, seed).unwrap();
        let r = estimate_outage(Scheme::Opportunistic, &fig5(g, 2), 1_000_000, seed + 1).unwrap();
        (d, r)
    };
    let (d_lo, r_lo) = at(-10.0, SEED + 200);
    let (d_hi, r_hi) = at(20.0, SEED + 300);
    let pass = r_lo.ci_low > d_lo.ci_high && r_hi.ci_high < d_hi.ci_low;
    outcome(
        pass,
        format!(
            "-10 dB direct {} relay(N=2) {}; 20 dB direct {} relay(N=2) {}",
            fmt(&d_lo),
            fmt(&r_lo),
            fmt(&d_hi),
            fmt(&r_hi)
        ),
    )
}

fn fig5_relay_ordering() -> Outcome {
    let trials = 10_000_000;
    let start = Instant::now();
    let direct = estimate_outage(Scheme::Direct, &fig5(35.0, 0), trials, SEED + 400).unwrap();
    let relayed: Vec<_> = [2usize, 4, 6]
        .iter()
        .map(|&n| {
            estimate_outage(
                Scheme::Opportunistic,
                &fig5(35.0, n),
                trials,
                SEED + 400 + n as u64,
            )
            .unwrap()
        })
        .collect();
    let took = start.elapsed();
    let chain = [&relayed[2], &relayed[1], &relayed[0], &direct];
    let ordered = chain.windows(2).all(|w| w[0].estimate < w[1].estimate);
    let mut disjoint = true;
    for i in 0..chain.len() {
        for j in (i + 1)..chain.len() {
            disjoint &= chain[i].separated_from(chain[j]);
        }
    }
    outcome(
        ordered && disjoint && took < FLOOR_BUDGET,
        format!(
            "N=6 {} < N=4 {} < N=2 {} < direct {}; {:.1?} on {} threads",
            fmt(&relayed[2]),
            fmt(&relayed[1]),
            fmt(&relayed[0]),
            fmt(&direct),
            took,
            rayon::current_num_threads()
        ),
    )
}

fn harmonic_mean_identity() -> Outcome {
    let p = fig5(10.0, 1);
    let mut rng = RandomStream::new(SEED + 500, 0);
    let mut worst = 0.0f64;
    for t in 0..10_000u64 {
        let r = sample_trial(&p, &mut RandomStream::new(SEED + 500, t + 1));
        let gamma_s = 10f64.powf(rng.random_range(-20.0..50.0) / 10.0);
        let gamma_p = 10f64.powf(rng.random_range(-10.0..20.0) / 10.0);
        let (x1, x2) = (r.x_si[0], r.x_id[0]);
        let v = relay_sinr(x1, x2, r.x_pi[0], r.x_pd, false, gamma_s, gamma_p);
        let hm = gamma_s * x1 * x2 / (x1 + x2);
        worst = worst.max(((v - hm) / hm).abs());
    }
    outcome(
        worst <= HM_REL_TOL,
        format!("max relative error {worst:.3e} over 10^4 draws"),
    )
}

fn posterior_frequency() -> Outcome {
    let p = SystemParams::reference().validate().unwrap();
    let n = 1_000_000u64;
    let busy = (0..n)
        .filter(|&t| sample_trial(&p, &mut RandomStream::new(SEED + 600, t)).alpha)
        .count() as u64;
    let (lo, hi) = wilson_interval(busy, n, 0.95).unwrap();
    let target = 0.0270270;
    outcome(
        lo <= target && target <= hi && (p.posterior_busy() - target).abs() < 1e-7,
        format!(
            "α frequency {:.6} [{lo:.6}, {hi:.6}] vs {target}",
            busy as f64 / n as f64
        ),
    )
}

fn determinism(dir: &Path) -> Outcome {
    let mut files = Vec::new();
    for w in [1usize, 4, 8] {
        let out = dir.join(format!("fig5_w{w}.csv"));
        let mut f = preset("fig5");
        f.apply(&Overrides {
            trials: Some(50_000),
            seed: Some(SEED),
            output: Some(out.clone()),
        });
        let spec = f.into_spec().unwrap();
        cli::run_experiment(&spec, w).unwrap();
        files.push(std::fs::read(&out).unwrap());
    }
    let same = files.windows(2).all(|w| w[0] == w[1]);
    outcome(
        same,
        format!(
            "workers {{1, 4, 8}}: {} bytes each, identical = {same}",
            files[0].len()
        ),
    )
}

fn property_suites() -> Outcome {
    let mut rng = RandomStream::new(SEED + 700, 0);
    let mut violations: Vec<&str> = Vec::new();
    let mut note = |ok: bool, name: &'static str| {
        if !ok && !violations.contains(&name) {
            violations.push(name);
        }
    };
    for t in 0..10_000u64 {
        let gs_db = rng.random_range(-20.0..50.0);
        let rs = rng.random_range(0.05..1.5);
        let p = fig5(gs_db, 6).with(|p| p.secrecy_rate = rs).unwrap();
        let r = sample_trial(&p, &mut RandomStream::new(SEED + 701, t));

        // monotonicity of the direct verdict
        let o = direct_trial(&r, &p);
        let bump = rng.random_range(0.0..5.0);
        let mut better = r.clone();
        better.x_sd += bump;
        let mut leakier = r.clone();
        leakier.x_se += bump;
        note(
            o.outage || !direct_trial(&better, &p).outage,
            "monotonicity",
        );
        note(
            !o.outage || direct_trial(&leakier, &p).outage,
            "monotonicity",
        );

        // two forms of the outage event
        let rel = relaying_trial(&r, &p).unwrap();
        for s in [o, rel] {
            note(
                (s.capacity_e > s.capacity_d - rs) == s.outage,
                "two-form equivalence",
            );
        }

        // selection dominance and argmax invariance
        let cands: Vec<_> = relay_candidates(&r, &p).collect();
        let best = select_best_relay(&cands).unwrap();
        note(
            cands.iter().all(|c| best.sinr_d >= c.sinr_d),
            "selection dominance",
        );
        let scaled = p
            .with(|q| q.gamma_s_db += rng.random_range(-20.0..20.0))
            .unwrap();
        let cands_scaled: Vec<_> = relay_candidates(&r, &scaled).collect();
        note(
            select_best_relay(&cands_scaled).unwrap().index == best.index,
            "argmax invariance",
        );

        // weaker-hop bound without interference
        for i in 0..r.n_relays() {
            let v = relay_sinr(
                r.x_si[i],
                r.x_id[i],
                r.x_pi[i],
                r.x_pd,
                false,
                p.gamma_s(),
                p.gamma_p(),
            );
            note(
                v <= p.gamma_s() * r.x_si[i].min(r.x_id[i]),
                "weaker-hop bound",
            );
        }
    }
    outcome(
        violations.is_empty(),
        format!("10^4 realizations; violated: {violations:?}"),
    )
}

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let criteria: Vec<Criterion> = vec![
        ("1 oracle match (direct, 10 dB)", Box::new(oracle_match)),
        ("2 floor value (direct, 40 dB)", Box::new(floor_value)),
        ("3 secrecy-rate ordering", Box::new(fig3_ordering)),
        ("4 direct/relay crossover", Box::new(fig5_crossover)),
        (
            "5 relay-count floor ordering",
            Box::new(fig5_relay_ordering),
        ),
        ("6 harmonic-mean identity", Box::new(harmonic_mean_identity)),
        ("7 posterior α frequency", Box::new(posterior_frequency)),
        (
            "8 determinism across workers",
            Box::new(|| determinism(dir.path())),
        ),
        ("9 property suites", Box::new(property_suites)),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let o = check();
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += !o.pass as usize;
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
