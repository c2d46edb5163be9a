//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test -- --nocapture`).
//!
//! Criteria cover scattering validity, physicality and purity of the
//! propagated states, the closed-system null result, the qualitative
//! scrambling features of the figure presets, the Markovian boundary facts,
//! the environment scaling law, the channel-map oracle, the closed-form
//! comparator, and byte-level determinism of the CLI outputs.

use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gcm_core::evolve::{closed_form_cov, propagate_scenario, ClosedFormVariant, ScenarioConfig};
use gcm_core::gstate::{omega, single_mode_cov, squeezed_vac_cov, SingleModeSpec, PHYSICALITY_TOL};
use gcm_core::info::info_series;
use gcm_core::nonmarkov::{channel_map, negativity, MARKOVIAN_D_TOL};
use gcm_core::optics::{channel_scatter, lift, total_scatter, BSAngle, Channel};

use gcm_cli::cmd;
use gcm_cli::config::Config;
use gcm_cli::presets::{preset, PRESET_NAMES};

fn ang(x: f64) -> BSAngle {
    BSAngle::from_pi_multiple(x).unwrap()
}

fn scenario(name: &str) -> ScenarioConfig {
    preset(name, false).unwrap().to_scenario().unwrap()
}

fn i3_series(cfg: &ScenarioConfig) -> Vec<f64> {
    info_series(cfg).unwrap().iter().map(|r| r.i3).collect()
}

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

#[test]
fn criterion_01_scattering_validity() {
    let start = Instant::now();
    let grid: Vec<BSAngle> = (0..11).map(|i| ang(0.5 * i as f64 / 10.0)).collect();
    let l = 50;
    let om = omega(2 * l + 1);
    let mut max_orth: f64 = 0.0;
    let mut max_symp: f64 = 0.0;
    for &tss in &grid {
        for &tse in &grid {
            for &tee in &grid {
                let s = total_scatter(l, tss, tse, tee).unwrap();
                max_orth = max_orth.max(s.orthogonality_defect());
                let m = lift(&s);
                max_symp = max_symp.max((&m * &om * m.transpose() - &om).abs().max());
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = max_orth < 1e-10 && max_symp < 1e-10 && elapsed.as_secs_f64() < 30.0;
    report(
        "01 scattering validity",
        pass,
        &format!(
            "11^3 grid at L=50: max|SS^T-I| = {max_orth:.2e}, max|M Omega M^T - Omega| = {max_symp:.2e}, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_02_physicality_and_purity() {
    let presets = ["fig3a-vacuum", "fig3a-sq-same", "fig3a-sq-alt", "fig4"];
    let pure_inputs = ["fig3a-vacuum", "fig3a-sq-same", "fig3a-sq-alt"];
    let mut min_eig = f64::INFINITY;
    let mut max_nu_dev: f64 = 0.0;
    for name in presets {
        let cfg = scenario(name);
        for l in 1..=50 {
            let (sigma, _) = propagate_scenario(&cfg, l).unwrap();
            min_eig = min_eig.min(sigma.min_physical_eig());
            if pure_inputs.contains(&name) {
                for nu in sigma.symplectic_eigenvalues() {
                    max_nu_dev = max_nu_dev.max((nu - 0.5).abs());
                }
            }
        }
    }
    let pass = min_eig >= -PHYSICALITY_TOL && max_nu_dev < 1e-8;
    report(
        "02 physicality",
        pass,
        &format!(
            "4 presets, L <= 50: min eig(sigma + i Omega/2) = {min_eig:.2e}, max |nu - 1/2| = {max_nu_dev:.2e}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_03_closed_system_null() {
    let cfg = scenario("closed");
    let worst = i3_series(&cfg).iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let pass = worst < 1e-9;
    report("03 closed-system null", pass, &format!("max |I3| over L <= 50 = {worst:.2e}"));
    assert!(pass);
}

#[test]
fn criterion_04_fig3a_scrambling() {
    let mut pass = true;
    let mut details = Vec::new();
    for (name, must_scramble) in [
        ("fig3a-vacuum", true),
        ("fig3a-sq-alt", true),
        ("fig3a-sq-same", false),
    ] {
        let start = Instant::now();
        let series = i3_series(&scenario(name));
        let elapsed = start.elapsed().as_secs_f64();
        let min = series.iter().fold(f64::INFINITY, |a, &x| a.min(x));
        let extremum = series.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
        let last = series.last().unwrap().abs();
        // Decay toward zero: the L=50 value sits below the transient
        // extremum (for the scrambling presets the extremum is the negative
        // dip, so this is |I3(50)| < |min I3|).
        let decays = last < extremum;
        let timed = elapsed < 10.0;
        let shape = if must_scramble { min < -1e-3 } else { min >= -1e-9 };
        pass &= decays && timed && shape;
        details.push(format!(
            "{name}: min I3 = {min:.4}, |I3(50)| = {last:.1e}, extremum = {extremum:.4}, {elapsed:.1}s"
        ));
    }
    report("04 fig3a scrambling", pass, &details.join("; "));
    assert!(pass);
}

#[test]
fn criterion_05_fig3b_crossover() {
    let cfg = preset("fig3b", false).unwrap();
    let (points, _) = cmd::sweep_outputs(&cfg).unwrap();
    let mins: Vec<f64> = points.iter().map(|p| p.min_i3).collect();
    let non_increasing = mins.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    let min_at_pi = mins
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i == mins.len() - 1)
        .unwrap();
    let pass = non_increasing && min_at_pi;
    report(
        "05 fig3b crossover",
        pass,
        &format!(
            "min I3 over dphi/pi in {{0, 1/4, 1/2, 3/4, 1}}: [{}]",
            mins.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_06_fig4_angle_independence() {
    let cfg = preset("fig4", false).unwrap();
    let series: Vec<Vec<f64>> = cfg
        .sweep_points()
        .unwrap()
        .iter()
        .map(|(_, point)| i3_series(&point.to_scenario().unwrap()))
        .collect();
    let mut max_diff: f64 = 0.0;
    for other in &series[1..] {
        for (a, b) in series[0].iter().zip(other) {
            max_diff = max_diff.max((a - b).abs());
        }
    }
    let min_i3 = series[0].iter().fold(f64::INFINITY, |a, &x| a.min(x));
    let pass = max_diff < 1e-9 && min_i3 < -1e-3;
    report(
        "06 fig4 angle independence",
        pass,
        &format!(
            "pointwise spread over phi_E in {{0, pi/2, pi}} = {max_diff:.2e}, min I3 = {min_i3:.4}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_markovian_boundary_facts() {
    let start = Instant::now();
    let vac = SingleModeSpec::vacuum();
    let mut max_row_d: f64 = 0.0;
    for i in 0..51 {
        let se = ang(0.5 * i as f64 / 50.0);
        max_row_d = max_row_d.max(negativity(50, se, ang(0.5), &vac).unwrap().total);
    }
    let d_markovian = negativity(50, ang(0.35), ang(0.35), &vac).unwrap().total;
    let d_non_markovian = negativity(50, ang(0.25), ang(0.2), &vac).unwrap().total;
    let elapsed = start.elapsed().as_secs_f64();
    let pass = max_row_d <= 1e-12
        && d_markovian <= 1e-12
        && d_non_markovian > 1e-8
        && elapsed < 60.0;
    report(
        "07 markovian boundary facts",
        pass,
        &format!(
            "row theta_ee=pi/2: max D = {max_row_d:.2e}; D(0.35pi,0.35pi) = {d_markovian:.2e}; D(0.25pi,0.2pi) = {d_non_markovian:.3}; {elapsed:.1}s"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_08_boundary_invariance() {
    let grid: Vec<BSAngle> = (0..21).map(|i| ang(0.5 * i as f64 / 20.0)).collect();
    let envs = [
        SingleModeSpec::vacuum(),
        SingleModeSpec::new(1.0, 0.0, 0.0).unwrap(),
        SingleModeSpec::new(0.0, 0.5, 0.0).unwrap(),
    ];
    let classify = |env: &SingleModeSpec| -> Vec<bool> {
        let mut out = Vec::with_capacity(441);
        for &se in &grid {
            for &ee in &grid {
                out.push(negativity(50, se, ee, env).unwrap().total <= MARKOVIAN_D_TOL);
            }
        }
        out
    };
    let reference = classify(&envs[0]);
    let same_thermal = classify(&envs[1]) == reference;
    let same_squeezed = classify(&envs[2]) == reference;
    let markovian_count = reference.iter().filter(|&&m| m).count();
    let pass = same_thermal && same_squeezed;
    report(
        "08 boundary invariance",
        pass,
        &format!(
            "21x21 grid at L=50: classification identical (thermal {same_thermal}, squeezed {same_squeezed}); {markovian_count}/441 Markovian"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_scaling_law() {
    let (se, ee) = (ang(0.25), ang(0.2));
    let mut pass = true;
    let mut details = Vec::new();
    for (n, r) in [(1.0, 0.0), (2.0, 0.0), (0.0, 0.3)] {
        let env = SingleModeSpec::new(n, r, 0.0).unwrap();
        let cmp = gcm_core::nonmarkov::gaussian_scaling(50, se, ee, &env).unwrap();
        // The law requires every materially contributing step to push both
        // eigenvalue branches nonpositive (a pure environment keeps one
        // branch at zero, which still satisfies the law); skip with a report
        // if a contributing step ever has a genuinely positive branch.
        let branches_ok = cmp
            .env_report
            .steps
            .iter()
            .filter(|s| s.contribution > 1e-12)
            .all(|s| s.eigenvalues[1] <= 1e-12);
        if !branches_ok {
            println!(
                "criterion 09 scaling law: SKIP — (n={n}, r={r}) has a contributing step with a positive branch"
            );
            return;
        }
        pass &= cmp.rel_deviation < 1e-6 && cmp.zero_consistent;
        details.push(format!(
            "(n={n}, r={r}): D_G/D_vac = {:.9}, factor = {:.9}, rel dev = {:.1e}",
            cmp.d_env / cmp.d_vac,
            cmp.factor,
            cmp.rel_deviation
        ));
    }
    report("09 scaling law", pass, &details.join("; "));
    assert!(pass);
}

#[test]
fn criterion_10_channel_map_oracle() {
    let env = SingleModeSpec::new(0.3, 0.25, 1.1).unwrap();
    let env_cov = single_mode_cov(&env);
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut worst: f64 = 0.0;
    for se in [0.2, 0.35] {
        for ee in [0.15, 0.35] {
            let (tse, tee) = (ang(se), ang(ee));
            let map = channel_map(6, tse, tee, &env).unwrap();
            let s = channel_scatter(6, tse, tee, Channel::C).unwrap();
            let m = lift(&s);
            for _ in 0..5 {
                let sigma_c = squeezed_vac_cov(
                    rng.random_range(0.0..1.5),
                    rng.random_range(0.0..std::f64::consts::TAU),
                )
                .unwrap();
                let mut joint = sigma_c.clone();
                for _ in 1..6 {
                    joint = joint.direct_sum(&env_cov);
                }
                let out = &m * joint.data() * m.transpose();
                let direct =
                    nalgebra::Matrix2::new(out[(0, 0)], out[(0, 1)], out[(1, 0)], out[(1, 1)]);
                let dev = (direct - map.apply(&sigma_c.block(0, 0))).abs().max();
                worst = worst.max(dev);
            }
        }
    }
    let pass = worst < 1e-10;
    report(
        "10 channel-map oracle",
        pass,
        &format!("L=6, 4 angle pairs, 5 random pure inputs each: max deviation = {worst:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_11_fig5_ordering() {
    let cfg = preset("fig5a", false).unwrap();
    let mut first_halving = Vec::new();
    for (value, point) in cfg.sweep_points().unwrap() {
        let records = info_series(&point.to_scenario().unwrap()).unwrap();
        let half = records[0].i2_abc / 2.0;
        let first = records
            .iter()
            .find(|r| r.i2_abc < half)
            .map(|r| r.l)
            .unwrap_or(usize::MAX);
        first_halving.push((value, first));
    }
    let pass = first_halving.windows(2).all(|w| w[1].1 <= w[0].1);
    report(
        "11 fig5 ordering",
        pass,
        &format!(
            "first L with I2(A:BC) below half its L=1 value: {}",
            first_halving
                .iter()
                .map(|(v, l)| format!("theta_ee={v}pi -> L={l}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_12_closed_form_comparator() {
    let cfg = scenario("fig3a-vacuum");
    let want = cfg.xi_ab.cosh() / 2.0;
    let mut max_sigma_a_dev: f64 = 0.0;
    let mut max_consistent_dev: f64 = 0.0;
    let mut table = String::from("  L   consistent     additive\n");
    for l in 1..=50 {
        let consistent = closed_form_cov(&cfg, l, ClosedFormVariant::Consistent).unwrap();
        let a = consistent.sigma.block(0, 0);
        max_sigma_a_dev = max_sigma_a_dev
            .max((a[(0, 0)] - want).abs())
            .max((a[(1, 1)] - want).abs())
            .max(a[(0, 1)].abs())
            .max(a[(1, 0)].abs());
        max_consistent_dev = max_consistent_dev.max(consistent.max_deviation);
        if l % 10 == 0 || l == 1 {
            let additive = closed_form_cov(&cfg, l, ClosedFormVariant::Additive).unwrap();
            table.push_str(&format!(
                "  {:<3} {:.3e}      {:.3e}\n",
                l, consistent.max_deviation, additive.max_deviation
            ));
        }
    }
    println!("closed-form comparator deviation table (vacuum environments):\n{table}");
    let target_met = max_consistent_dev < 1e-9;
    // sigma_A is the hard requirement; the consistent-variant deviation is
    // recorded and the table emitted regardless of the target.
    let pass = max_sigma_a_dev < 1e-12;
    report(
        "12 closed-form comparator",
        pass,
        &format!(
            "sigma_A deviation = {max_sigma_a_dev:.2e}; consistent-variant max deviation = {max_consistent_dev:.2e} (target < 1e-9 met: {target_met})"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_13_determinism_and_check_suite() {
    // Every preset, run twice, must emit identical bytes.
    let mut identical = true;
    for name in PRESET_NAMES {
        let cfg: Config = preset(name, false).unwrap();
        if cfg.phase.is_some() {
            identical &= cmd::phase_csv(&cfg).unwrap() == cmd::phase_csv(&cfg).unwrap();
        } else if cfg.sweep.is_some() {
            let (a, ia) = cmd::sweep_outputs(&cfg).unwrap();
            let (b, ib) = cmd::sweep_outputs(&cfg).unwrap();
            identical &= ia == ib && a.len() == b.len();
            for (pa, pb) in a.iter().zip(&b) {
                identical &= pa.csv == pb.csv && pa.file == pb.file;
            }
        } else {
            identical &= cmd::evolve_csv(&cfg).unwrap() == cmd::evolve_csv(&cfg).unwrap();
        }
    }

    // Also through the filesystem for one preset.
    let tmp = tempfile::tempdir().unwrap();
    let cfg = preset("fig3a-vacuum", false).unwrap();
    let dir_a = tmp.path().join("a");
    let dir_b = tmp.path().join("b");
    cmd::run_evolve(&cfg, &dir_a).unwrap();
    cmd::run_evolve(&cfg, &dir_b).unwrap();
    identical &= std::fs::read(dir_a.join("series.csv")).unwrap()
        == std::fs::read(dir_b.join("series.csv")).unwrap();
    identical &= std::fs::read(dir_a.join("manifest.json")).unwrap()
        == std::fs::read(dir_b.join("manifest.json")).unwrap();

    let outcomes = gcm_cli::checks::run_all();
    let failures: Vec<&str> = outcomes
        .iter()
        .filter(|o| !o.pass)
        .map(|o| o.name.as_str())
        .collect();
    let pass = identical && failures.is_empty();
    report(
        "13 determinism + check suite",
        pass,
        &format!(
            "byte-identical reruns across {} presets: {identical}; check suite: {}/{} pass",
            PRESET_NAMES.len(),
            outcomes.len() - failures.len(),
            outcomes.len()
        ),
    );
    assert!(pass, "failing checks: {failures:?}");
}
