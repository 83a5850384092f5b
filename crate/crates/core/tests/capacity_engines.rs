//! Cross-checks between the capacity engines.

mod common;

use common::*;
use fso_capacity::capacity::{
    high_snr_asymptote, ln_capacity_gauss_hermite, low_snr_asymptote, malaga_meijer_expansion_asymptote,
    DEFAULT_HERMITE_POINTS,
};
use fso_capacity::channel::{average_to_electrical_snr, db_to_linear, Detection, LinkScenario, PointingErrorParams, TurbulenceModel};
use fso_capacity::moments::moment;
use fso_capacity::montecarlo::{estimate_capacity, SimulationPlan};

fn mc(sc: LinkScenario, n: u64, seed: u64) -> (f64, f64) {
    let est = estimate_capacity(&SimulationPlan::with_default_batch(sc, n, seed).unwrap()).unwrap();
    (est.value, est.stderr.unwrap())
}

/// The three-point ladder of the Rician-lognormal IM/DD example
/// (k = 5, σ = 0.35, ξ = 1.1, s = σ_s = 3) at average SNR 30, 35, 40 dB.
fn ladder_scenario(avg_db: f64) -> LinkScenario {
    let template = LinkScenario::new(
        rician_lognormal(),
        PointingErrorParams::boresight(1.1, 3.0, 3.0).unwrap(),
        Detection::ImDd,
        1.0,
    )
    .unwrap();
    let mu = average_to_electrical_snr(&template, db_to_linear(avg_db)).unwrap();
    template.at_mu_r(mu).unwrap()
}

#[test]
fn rician_lognormal_ladder() {
    // Values reproduced here: asymptote 4.482, 5.633, 6.784 and simulated
    // capacity 4.66, 5.741, 6.849 nats.
    let expected = [(30.0, 4.482, 4.66), (35.0, 5.633, 5.741), (40.0, 6.784, 6.849)];
    for (i, (db, asym, sim)) in expected.into_iter().enumerate() {
        let sc = ladder_scenario(db);
        let hi = high_snr_asymptote(&sc).unwrap().value;
        assert!((hi - asym).abs() < 0.02, "{db} dB asymptote {hi}");
        let (value, _) = mc(sc, 1_000_000, 2024 + i as u64);
        assert!((value - sim).abs() < 0.05, "{db} dB simulation {value}");
        assert!(value > hi);
    }
}

#[test]
fn meijer_expansion_tracks_high_snr_asymptote() {
    let sc = scenario(
        TurbulenceModel::gamma_gamma(2.296, 2.0).unwrap(),
        zero_boresight(),
        Detection::Heterodyne,
        40.0,
    );
    let hi = high_snr_asymptote(&sc).unwrap().value;
    let me = malaga_meijer_expansion_asymptote(&sc).unwrap().value;
    assert!((me - hi).abs() / hi < 0.01, "{me} vs {hi}");
}

#[test]
fn meijer_expansion_matches_simulation_for_malaga() {
    for (alpha, beta) in [(2.296, 2), (4.2, 3), (8.0, 4)] {
        for d in [Detection::Heterodyne, Detection::ImDd] {
            let sc = scenario(malaga(alpha, beta), PointingErrorParams::zero_boresight(1.1).unwrap(), d, 35.0);
            let me = malaga_meijer_expansion_asymptote(&sc).unwrap().value;
            let (sim, se) = mc(sc, 400_000, 77);
            assert!(
                (me - sim).abs() < (0.02 * sim).max(4.0 * se),
                "alpha={alpha} {d:?}: {me} vs {sim} ± {se}"
            );
            // The expansion improves on the plain asymptote.
            let hi = high_snr_asymptote(&sc).unwrap().value;
            assert!((me - sim).abs() <= (hi - sim).abs() + 4.0 * se);
        }
    }
}

#[test]
fn gauss_hermite_matches_simulation_for_lognormal() {
    for xi in [1.1, 6.7] {
        for d in [Detection::Heterodyne, Detection::ImDd] {
            for db in [0.0, 20.0] {
                let sc = scenario(lognormal(), PointingErrorParams::zero_boresight(xi).unwrap(), d, db);
                let gh = ln_capacity_gauss_hermite(&sc, DEFAULT_HERMITE_POINTS).unwrap().value;
                let (sim, se) = mc(sc, 200_000, 5);
                assert!((gh - sim).abs() < (0.005 * sim).max(3.0 * se), "xi={xi} {d:?} {db}: {gh} vs {sim} ± {se}");
            }
        }
    }
}

#[test]
fn asymptotes_bracket_simulation() {
    for m in all_models() {
        let template = scenario(m, zero_boresight(), Detection::ImDd, 0.0);
        let mut gaps = Vec::new();
        let mut worst_se: f64 = 0.0;
        for db in [20.0, 30.0, 40.0, 50.0] {
            let sc = template.at_mu_r(db_to_linear(db)).unwrap();
            // Common random numbers make the gap sequence comparable.
            let (sim, se) = mc(sc, 200_000, 31);
            worst_se = worst_se.max(se);
            gaps.push(sim - high_snr_asymptote(&sc).unwrap().value);
        }
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{}: {gaps:?}", m.name());
        assert!(gaps.iter().all(|&g| g > -3.0 * worst_se), "{}: {gaps:?}", m.name());

        for db in [-20.0, -30.0] {
            let low = template.at_mu_r(db_to_linear(db)).unwrap();
            let (sim, se) = mc(low, 200_000, 32);
            let lo = low_snr_asymptote(&low).unwrap().value;
            // ln(1+x) ≥ x - x²/2 bounds the relative gap by c E[γ²] / (2 E[γ]).
            let c = low.detection.c();
            let bound = c * moment(&low, 2.0).unwrap() / (2.0 * moment(&low, 1.0).unwrap());
            let rel = (lo - sim) / lo;
            assert!(rel > -3.0 * se / lo && rel <= bound + 3.0 * se / lo, "{} {db} dB: {rel} vs {bound}", m.name());
            if db <= -30.0 {
                assert!(rel.abs() < 0.03, "{}: {sim} vs {lo}", m.name());
            }
        }
    }
}

#[test]
fn degenerate_channel_is_deterministic() {
    let sc = LinkScenario::new(
        TurbulenceModel::rician_lognormal(1e4, 1e-6).unwrap(),
        PointingErrorParams::none(),
        Detection::Heterodyne,
        100.0,
    )
    .unwrap();
    let (sim, se) = mc(sc, 10_000, 1);
    assert!((sim - 101f64.ln()).abs() < 1e-4 + 3.0 * se, "{sim}");
    let tiny = sc.at_mu_r(1e-9).unwrap();
    let (sim, _) = mc(tiny, 10_000, 1);
    assert!(sim.abs() < 2e-9);
}
