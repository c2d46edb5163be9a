//! Desk-scale invariant suite behind `gcm check`.
//!
//! Every module's documented invariants run here at sizes that finish in
//! seconds. The closed-form comparator table is informational and never fails
//! the suite.

use nalgebra::DMatrix;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gcm_core::evolve::{
    closed_form_cov, propagate_scenario, system_cov, ClosedFormVariant, EnvPattern, ScenarioConfig,
};
use gcm_core::gstate::{
    single_mode_cov, squeezed_vac_cov, thermal_cov, tmsv_cov, CovMatrix, SingleModeSpec,
    PHYSICALITY_TOL,
};
use gcm_core::info::{info_record, tmi};
use gcm_core::nonmarkov::{channel_map, channel_map_series, lambda_matrix, negativity};
use gcm_core::optics::{
    bs2, channel_scatter, lift, s_ee, s_se, s_ss, total_scatter, BSAngle, Channel,
};

use crate::config::Config;
use crate::presets;

pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> CheckOutcome {
    CheckOutcome { name: name.to_string(), pass, detail }
}

fn ang(x: f64) -> BSAngle {
    BSAngle::from_pi_multiple(x).unwrap()
}

fn angle_grid(points: usize) -> Vec<BSAngle> {
    (0..points)
        .map(|i| ang(0.5 * i as f64 / (points - 1) as f64))
        .collect()
}

fn preset_scenario(name: &str) -> ScenarioConfig {
    presets::preset(name, false)
        .and_then(|c| c.to_scenario())
        .expect("preset converts")
}

// gstate ---------------------------------------------------------------

fn gstate_constructor_physicality() -> CheckOutcome {
    let mut worst = f64::INFINITY;
    for n in [0.0, 0.5, 1.5] {
        for r in [0.0, 0.5, 1.2] {
            for phi in [0.0, 1.0, 4.5] {
                let cov = single_mode_cov(&SingleModeSpec::new(n, r, phi).unwrap());
                worst = worst.min(cov.min_physical_eig());
            }
        }
    }
    for xi in [0.0, 0.7, 1.5] {
        worst = worst.min(tmsv_cov(xi).min_physical_eig());
        worst = worst.min(squeezed_vac_cov(xi, 0.8).unwrap().min_physical_eig());
    }
    check(
        "gstate: constructor outputs satisfy physicality",
        worst >= -PHYSICALITY_TOL,
        format!("min eig of sigma + (i/2)Omega over grid = {worst:.2e}"),
    )
}

fn gstate_pure_entropy() -> CheckOutcome {
    let mut worst = 0.0f64;
    for xi in [0.0, 0.9, 1.8] {
        worst = worst.max(tmsv_cov(xi).entropy().unwrap().abs());
        worst = worst.max(squeezed_vac_cov(xi, 2.2).unwrap().entropy().unwrap().abs());
    }
    worst = worst.max(CovMatrix::vacuum(3).entropy().unwrap().abs());
    check(
        "gstate: pure constructors have zero entropy",
        worst < 1e-10,
        format!("max |S| = {worst:.2e}"),
    )
}

fn gstate_rotation_invariance() -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let spec = SingleModeSpec::new(
            rng.random_range(0.0..1.5),
            rng.random_range(0.0..1.2),
            rng.random_range(0.0..std::f64::consts::TAU),
        )
        .unwrap();
        let cov = single_mode_cov(&spec);
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let (s, c) = theta.sin_cos();
        let rot = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let rotated = CovMatrix::new(&rot * cov.data() * rot.transpose()).unwrap();
        let a = cov.symplectic_eigenvalues()[0];
        let b = rotated.symplectic_eigenvalues()[0];
        worst = worst.max((a - b).abs());
    }
    check(
        "gstate: symplectic spectrum invariant under rotations",
        worst < 1e-10,
        format!("max |nu - nu_rot| = {worst:.2e}"),
    )
}

fn gstate_entropy_additivity() -> CheckOutcome {
    let a = thermal_cov(0.8).unwrap();
    let b = squeezed_vac_cov(1.1, 0.4).unwrap();
    let c = single_mode_cov(&SingleModeSpec::new(0.3, 0.6, 2.2).unwrap());
    let sum = a.direct_sum(&b).direct_sum(&c);
    let lhs = sum.entropy().unwrap();
    let rhs = a.entropy().unwrap() + b.entropy().unwrap() + c.entropy().unwrap();
    check(
        "gstate: entropy additive over direct sums",
        (lhs - rhs).abs() < 1e-10,
        format!("|S(sum) - sum S| = {:.2e}", (lhs - rhs).abs()),
    )
}

fn gstate_moment_oracle() -> CheckOutcome {
    // Independent finite-difference oracle on the characteristic function.
    let chi = |n: f64, r: f64, phi: f64, u: f64, v: f64| -> f64 {
        let x = (n + 0.5) * (2.0 * r).cosh();
        let y_re = -(n + 0.5) * (2.0 * r).sinh() * phi.cos();
        let y_im = -(n + 0.5) * (2.0 * r).sinh() * phi.sin();
        (-x * (u * u + v * v) - (y_re * (u * u - v * v) + 2.0 * y_im * u * v)).exp()
    };
    let h = 5e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = rng.random_range(0.0..1.5);
        let r = rng.random_range(0.0..1.2);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        let f = |u: f64, v: f64| chi(n, r, phi, u, v);
        let duu = (f(h, 0.0) - 2.0 * f(0.0, 0.0) + f(-h, 0.0)) / (h * h);
        let dvv = (f(0.0, h) - 2.0 * f(0.0, 0.0) + f(0.0, -h)) / (h * h);
        let duv = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
        // Both layouts are symmetric, so iteration order is immaterial.
        let oracle = [-0.5 * dvv, 0.5 * duv, 0.5 * duv, -0.5 * duu];
        let got = single_mode_cov(&SingleModeSpec::new(n, r, phi).unwrap());
        for (want, have) in oracle.iter().zip(got.data().iter()) {
            worst = worst.max((want - have).abs());
        }
    }
    check(
        "gstate: covariance matches the moment oracle",
        worst < 1e-6,
        format!("max deviation over 10-point grid = {worst:.2e}"),
    )
}

// optics ---------------------------------------------------------------

fn optics_orthogonality() -> CheckOutcome {
    let grid11 = angle_grid(11);
    let mut worst = 0.0f64;
    for &t in &grid11 {
        worst = worst.max(bs2(t).orthogonality_defect());
    }
    for l in [1usize, 2, 3, 5, 10, 25, 50, 60] {
        for &t in &grid11 {
            worst = worst.max(s_ss(l, t).unwrap().orthogonality_defect());
            if l >= 2 {
                worst = worst.max(s_se(l, 0, t, t).unwrap().orthogonality_defect());
                worst = worst.max(s_se(l, l - 2, t, t).unwrap().orthogonality_defect());
            }
            if l >= 3 {
                worst = worst.max(s_ee(l, 1, t, t).unwrap().orthogonality_defect());
                worst = worst.max(s_ee(l, l - 2, t, t).unwrap().orthogonality_defect());
            }
        }
    }
    let grid5 = angle_grid(5);
    for l in [5usize, 25, 60] {
        for &tss in &grid5 {
            for &tse in &grid5 {
                for &tee in &grid5 {
                    worst = worst
                        .max(total_scatter(l, tss, tse, tee).unwrap().orthogonality_defect());
                }
            }
        }
    }
    check(
        "optics: builders orthogonal across the angle grid",
        worst < 1e-10,
        format!("max |S S^T - I| = {worst:.2e}"),
    )
}

fn optics_mode_a_isolated() -> CheckOutcome {
    let mut worst = 0.0f64;
    for l in [1usize, 2, 7, 30] {
        let s = total_scatter(l, ang(0.4), ang(0.35), ang(0.2)).unwrap();
        for col in 0..2 * l + 1 {
            let want = if col == l { 1.0 } else { 0.0 };
            worst = worst.max((s.data()[(l, col)] - want).abs());
        }
    }
    check(
        "optics: mode A row is the unit vector",
        worst < 1e-12,
        format!("max deviation = {worst:.2e}"),
    )
}

fn optics_lift_functorial() -> CheckOutcome {
    let s1 = s_ss(4, ang(0.31)).unwrap();
    let s2 = s_se(4, 1, ang(0.12), ang(0.47)).unwrap();
    let s3 = s_ee(4, 2, ang(0.25), ang(0.41)).unwrap();
    let prod = gcm_core::optics::ScatterMatrix::new(s1.data() * s2.data() * s3.data(), 4).unwrap();
    let dev = (lift(&prod) - lift(&s1) * lift(&s2) * lift(&s3)).abs().max();
    check(
        "optics: lift is functorial over products",
        dev < 1e-12,
        format!("max |lift(S1 S2 S3) - lift(S1)lift(S2)lift(S3)| = {dev:.2e}"),
    )
}

fn optics_channels_identical() -> CheckOutcome {
    // B and C channels share one construction; pin both against the full
    // network at theta_ss = pi/2.
    let (tse, tee) = (ang(0.23), ang(0.37));
    let mut worst = 0.0f64;
    for l in [2usize, 5, 12] {
        let full = total_scatter(l, ang(0.5), tse, tee).unwrap();
        let chan_c = channel_scatter(l, tse, tee, Channel::C).unwrap();
        let chan_b = channel_scatter(l, tse, tee, Channel::B).unwrap();
        worst = worst.max((chan_c.data() - chan_b.data()).abs().max());
        for k in 0..l {
            worst = worst.max((chan_c.data()[(0, k)] - full.data()[(l + 1, l + 1 + k)]).abs());
            worst = worst.max((chan_b.data()[(0, k)] - full.data()[(l - 1, l - 1 - k)]).abs());
        }
    }
    check(
        "optics: B and C channel networks coincide with the full network rows",
        worst < 1e-12,
        format!("max deviation = {worst:.2e}"),
    )
}

// evolve ---------------------------------------------------------------

fn evolve_physicality_purity() -> CheckOutcome {
    let mut worst_eig = f64::INFINITY;
    let mut worst_nu = 0.0f64;
    for name in ["fig3a-vacuum", "fig3a-sq-alt"] {
        let scenario = preset_scenario(name);
        for l in 1..=16 {
            let (sigma, _) = propagate_scenario(&scenario, l).unwrap();
            worst_eig = worst_eig.min(sigma.min_physical_eig());
            for nu in sigma.symplectic_eigenvalues() {
                worst_nu = worst_nu.max((nu - 0.5).abs());
            }
        }
    }
    check(
        "evolve: global covariance physical and pure (presets, L <= 16)",
        worst_eig >= -PHYSICALITY_TOL && worst_nu < 1e-8,
        format!("min eig = {worst_eig:.2e}, max |nu - 1/2| = {worst_nu:.2e}"),
    )
}

fn evolve_sigma_a_constant() -> CheckOutcome {
    let scenario = preset_scenario("fig3a-sq-same");
    let want = scenario.xi_ab.cosh() / 2.0;
    let mut worst = 0.0f64;
    for l in 1..=30 {
        let abc = system_cov(&scenario, l).unwrap();
        let a = abc.block(0, 0);
        worst = worst.max((a[(0, 0)] - want).abs());
        worst = worst.max((a[(1, 1)] - want).abs());
        worst = worst.max(a[(0, 1)].abs());
    }
    check(
        "evolve: sigma_A block constant in L",
        worst < 1e-12,
        format!("max deviation over L <= 30 = {worst:.2e}"),
    )
}

fn evolve_closed_system_env_independence() -> CheckOutcome {
    let closed = ScenarioConfig { theta_se: ang(0.5), ..preset_scenario("fig3a-vacuum") };
    let reference = system_cov(&closed, 9).unwrap();
    let mut worst = 0.0f64;
    for env in [
        EnvPattern::Thermal { n: 2.0 },
        EnvPattern::SqueezedSame { r: 0.9, phi: 1.0 },
        EnvPattern::SqueezedAlternative { r: 0.4 },
    ] {
        let other = ScenarioConfig { env, ..closed.clone() };
        let got = system_cov(&other, 9).unwrap();
        worst = worst.max((got.data() - reference.data()).abs().max());
    }
    check(
        "evolve: closed system ignores environment preparation",
        worst < 1e-12,
        format!("max deviation across env patterns = {worst:.2e}"),
    )
}

fn evolve_closed_form_consistent() -> CheckOutcome {
    let scenario = preset_scenario("fig3a-vacuum");
    let mut worst = 0.0f64;
    for l in [1usize, 5, 10, 20] {
        let cmp = closed_form_cov(&scenario, l, ClosedFormVariant::Consistent).unwrap();
        worst = worst.max(cmp.max_deviation);
    }
    check(
        "evolve: consistent closed forms match propagation (vacuum envs)",
        worst < 1e-9,
        format!("max deviation = {worst:.2e}"),
    )
}

// info -----------------------------------------------------------------

fn info_nonnegative_bmi() -> CheckOutcome {
    let mut worst = f64::INFINITY;
    for name in ["fig3a-vacuum", "fig3a-sq-same", "fig3a-sq-alt"] {
        let scenario = preset_scenario(name);
        for l in 1..=30 {
            let rec = info_record(&system_cov(&scenario, l).unwrap(), l).unwrap();
            worst = worst.min(rec.i2_ab).min(rec.i2_ac).min(rec.i2_abc);
        }
    }
    check(
        "info: bipartite mutual information nonnegative",
        worst > -1e-9,
        format!("min I2 across presets = {worst:.2e}"),
    )
}

fn info_closed_system_relations() -> CheckOutcome {
    let closed = ScenarioConfig { theta_se: ang(0.5), ..preset_scenario("fig3a-vacuum") };
    let mut worst = 0.0f64;
    for l in 1..=25 {
        let rec = info_record(&system_cov(&closed, l).unwrap(), l).unwrap();
        worst = worst.max(rec.i3.abs());
        worst = worst.max((rec.s_ab - rec.s_c).abs());
        worst = worst.max((rec.s_ac - rec.s_b).abs());
        worst = worst.max(rec.s_abc.abs());
    }
    check(
        "info: closed system has zero TMI and pure-state entropy relations",
        worst < 1e-9,
        format!("max residue over L <= 25 = {worst:.2e}"),
    )
}

fn info_tmi_local_invariance() -> CheckOutcome {
    let scenario = preset_scenario("fig3a-sq-alt");
    let sigma = system_cov(&scenario, 7).unwrap();
    let reference = tmi(&sigma).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let mut rot = DMatrix::<f64>::zeros(6, 6);
        for k in 0..3 {
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let (s, c) = theta.sin_cos();
            rot[(2 * k, 2 * k)] = c;
            rot[(2 * k, 2 * k + 1)] = -s;
            rot[(2 * k + 1, 2 * k)] = s;
            rot[(2 * k + 1, 2 * k + 1)] = c;
        }
        let rotated = CovMatrix::new(&rot * sigma.data() * rot.transpose()).unwrap();
        worst = worst.max((tmi(&rotated).unwrap() - reference).abs());
    }
    check(
        "info: TMI invariant under per-mode rotations",
        worst < 1e-9,
        format!("max |TMI - TMI_rot| = {worst:.2e}"),
    )
}

// nonmarkov ------------------------------------------------------------

fn nonmarkov_lambda_hermitian() -> CheckOutcome {
    let env = SingleModeSpec::new(0.4, 0.3, 1.2).unwrap();
    let mut worst = 0.0f64;
    for (se, ee) in [(0.25, 0.2), (0.35, 0.35), (0.1, 0.45)] {
        let maps = channel_map_series(25, ang(se), ang(ee), &env).unwrap();
        for pair in maps.windows(2) {
            if let Ok(lambda) = lambda_matrix(&pair[1], &pair[0]) {
                worst = worst.max(lambda.hermiticity_defect());
            }
        }
    }
    check(
        "nonmarkov: divisibility witness Hermitian",
        worst < 1e-12,
        format!("max Hermiticity defect = {worst:.2e}"),
    )
}

fn nonmarkov_d_nondecreasing() -> CheckOutcome {
    let mut ok = true;
    for (se, ee) in [(0.25, 0.2), (0.05, 0.05), (0.35, 0.35)] {
        let report = negativity(40, ang(se), ang(ee), &SingleModeSpec::vacuum()).unwrap();
        let mut last = 0.0;
        for &(_, d) in &report.cumulative {
            ok &= d >= last - 1e-15;
            last = d;
        }
    }
    check(
        "nonmarkov: cumulative D non-decreasing",
        ok,
        "checked 3 angle pairs at L <= 40".to_string(),
    )
}

fn nonmarkov_channel_map_oracle() -> CheckOutcome {
    let env = SingleModeSpec::new(0.3, 0.25, 1.1).unwrap();
    let env_cov = single_mode_cov(&env);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut worst = 0.0f64;
    for (se, ee) in [(0.2, 0.15), (0.35, 0.35)] {
        let map = channel_map(6, ang(se), ang(ee), &env).unwrap();
        let s = channel_scatter(6, ang(se), ang(ee), Channel::C).unwrap();
        let m = lift(&s);
        for _ in 0..5 {
            let sigma_c =
                squeezed_vac_cov(rng.random_range(0.0..1.5), rng.random_range(0.0..std::f64::consts::TAU))
                    .unwrap();
            let mut joint = sigma_c.clone();
            for _ in 1..6 {
                joint = joint.direct_sum(&env_cov);
            }
            let out = &m * joint.data() * m.transpose();
            let direct = nalgebra::Matrix2::new(out[(0, 0)], out[(0, 1)], out[(1, 0)], out[(1, 1)]);
            let via_map = map.apply(&sigma_c.block(0, 0));
            worst = worst.max((direct - via_map).abs().max());
        }
    }
    check(
        "nonmarkov: channel map reproduces direct propagation",
        worst < 1e-10,
        format!("max deviation at L = 6 = {worst:.2e}"),
    )
}

fn nonmarkov_channels_equal_d() -> CheckOutcome {
    // Independent route for the B chain: read B's row of the full network at
    // theta_ss = pi/2, build the channel maps from it, and accumulate D.
    let env = SingleModeSpec::new(0.3, 0.2, 0.4).unwrap();
    let env_block = single_mode_cov(&env).block(0, 0);
    let (l_max, se, ee) = (30usize, ang(0.25), ang(0.2));
    let mut maps_b = Vec::new();
    for l in 2..=l_max {
        let full = total_scatter(l, ang(0.5), se, ee).unwrap();
        let c11 = full.data()[(l - 1, l - 1)];
        let weight: f64 = (1..l).map(|k| full.data()[(l - 1, l - 1 - k)].powi(2)).sum();
        maps_b.push(gcm_core::nonmarkov::ChannelMap {
            l,
            x: nalgebra::Matrix2::identity() * c11,
            y: env_block * weight,
            c11,
        });
    }
    let mut d_b = 0.0;
    for pair in maps_b.windows(2) {
        if let Ok(lambda) = lambda_matrix(&pair[1], &pair[0]) {
            d_b += lambda.eigenvalues().iter().map(|&e| 0.5 * (e.abs() - e)).sum::<f64>();
        }
    }
    let d_c = negativity(l_max, se, ee, &env).unwrap().total;
    check(
        "nonmarkov: B chain (from the full network) gives the same D as C",
        (d_c - d_b).abs() < 1e-12,
        format!("|D_B - D_C| = {:.2e}", (d_c - d_b).abs()),
    )
}

fn nonmarkov_boundary_invariance() -> CheckOutcome {
    let grid = angle_grid(11);
    let envs = [
        SingleModeSpec::vacuum(),
        SingleModeSpec::new(1.0, 0.0, 0.0).unwrap(),
        SingleModeSpec::new(0.0, 0.5, 0.0).unwrap(),
    ];
    let classify = |env: &SingleModeSpec| -> Vec<bool> {
        let mut out = Vec::new();
        for &se in &grid {
            for &ee in &grid {
                out.push(negativity(30, se, ee, env).unwrap().is_markovian());
            }
        }
        out
    };
    let reference = classify(&envs[0]);
    let ok = envs[1..].iter().all(|e| classify(e) == reference);
    check(
        "nonmarkov: Markovian boundary identical across environments",
        ok,
        "11x11 grid at L = 30, vacuum vs thermal vs squeezed".to_string(),
    )
}

// cli ------------------------------------------------------------------

fn cli_determinism() -> CheckOutcome {
    let mut cfg = presets::preset("fig3a-vacuum", false).unwrap();
    cfg.l_max = 12;
    let a = crate::cmd::evolve_csv(&cfg).unwrap();
    let b = crate::cmd::evolve_csv(&cfg).unwrap();
    check(
        "cli: repeated runs emit identical bytes",
        a == b && !a.is_empty(),
        format!("{} bytes", a.len()),
    )
}

fn cli_config_roundtrip() -> CheckOutcome {
    let mut ok = true;
    for name in presets::PRESET_NAMES {
        let cfg = presets::preset(name, false).unwrap();
        let canon = cfg.canonical_json();
        let reparsed = Config::from_json(&canon).unwrap();
        ok &= reparsed == cfg;
        ok &= reparsed.canonical_json() == canon;
        ok &= reparsed.digest() == cfg.digest();
    }
    check(
        "cli: configs round-trip through their canonical form",
        ok,
        format!("{} presets", presets::PRESET_NAMES.len()),
    )
}

/// Runs the whole suite.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        gstate_constructor_physicality(),
        gstate_pure_entropy(),
        gstate_rotation_invariance(),
        gstate_entropy_additivity(),
        gstate_moment_oracle(),
        optics_orthogonality(),
        optics_mode_a_isolated(),
        optics_lift_functorial(),
        optics_channels_identical(),
        evolve_physicality_purity(),
        evolve_sigma_a_constant(),
        evolve_closed_system_env_independence(),
        evolve_closed_form_consistent(),
        info_nonnegative_bmi(),
        info_closed_system_relations(),
        info_tmi_local_invariance(),
        nonmarkov_lambda_hermitian(),
        nonmarkov_d_nondecreasing(),
        nonmarkov_channel_map_oracle(),
        nonmarkov_channels_equal_d(),
        nonmarkov_boundary_invariance(),
        cli_determinism(),
        cli_config_roundtrip(),
    ]
}

/// Informational table of closed-form deviations for both variants.
pub fn print_closed_form_table() {
    let scenario = preset_scenario("fig3a-vacuum");
    println!("closed-form comparator deviations (informational):");
    println!("  L   consistent   additive");
    for l in [1usize, 2, 5, 10, 20, 30] {
        let consistent = closed_form_cov(&scenario, l, ClosedFormVariant::Consistent).unwrap();
        let additive = closed_form_cov(&scenario, l, ClosedFormVariant::Additive).unwrap();
        println!(
            "  {:<3} {:.3e}    {:.3e}",
            l, consistent.max_deviation, additive.max_deviation
        );
    }
}
