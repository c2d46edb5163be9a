//! Property tests for the covariance and scattering invariants.

use gcm_core::evolve::{propagate_scenario, system_cov, CState, EnvPattern, ScenarioConfig};
use gcm_core::gstate::{
    single_mode_cov, squeezed_vac_cov, tmsv_cov, CovMatrix, SingleModeSpec, PHYSICALITY_TOL,
};
use gcm_core::nonmarkov::negativity;
use gcm_core::optics::{lift, total_scatter, BSAngle};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn angle() -> impl Strategy<Value = BSAngle> {
    (0.0..=0.5f64).prop_map(|x| BSAngle::from_pi_multiple(x).unwrap())
}

fn scenario(l_max: usize) -> impl Strategy<Value = ScenarioConfig> {
    (
        angle(),
        angle(),
        angle(),
        -1.5..1.5f64,
        0.0..1.5f64,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(move |(tss, tse, tee, xi_ab, xi_c, phi_c)| ScenarioConfig {
            l_max,
            theta_ss: tss,
            theta_se: tse,
            theta_ee: tee,
            xi_ab,
            c_state: CState::SqueezedVacuum { xi: xi_c, phi: phi_c },
            env: EnvPattern::Vacuum,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn single_mode_cov_is_physical(
        n in 0.0..2.0f64,
        r in 0.0..1.5f64,
        phi in 0.0..std::f64::consts::TAU,
    ) {
        let cov = single_mode_cov(&SingleModeSpec::new(n, r, phi).unwrap());
        prop_assert!(cov.is_physical(PHYSICALITY_TOL));
    }

    #[test]
    fn tmsv_is_pure(xi in -2.0..2.0f64) {
        for nu in tmsv_cov(xi).symplectic_eigenvalues() {
            prop_assert!((nu - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn symplectic_spectrum_rotation_invariant(
        n in 0.0..2.0f64,
        r in 0.0..1.5f64,
        phi in 0.0..std::f64::consts::TAU,
        theta in 0.0..std::f64::consts::TAU,
    ) {
        let cov = single_mode_cov(&SingleModeSpec::new(n, r, phi).unwrap());
        let (s, c) = theta.sin_cos();
        let rot = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
        let rotated = CovMatrix::new(&rot * cov.data() * rot.transpose()).unwrap();
        let a = cov.symplectic_eigenvalues();
        let b = rotated.symplectic_eigenvalues();
        prop_assert!((a[0] - b[0]).abs() < 1e-10);
    }

    #[test]
    fn entropy_additive(
        n in 0.0..2.0f64,
        xi in 0.0..1.5f64,
        phi in 0.0..std::f64::consts::TAU,
    ) {
        let a = gcm_core::gstate::thermal_cov(n).unwrap();
        let b = squeezed_vac_cov(xi, phi).unwrap();
        let sum = a.direct_sum(&b);
        let lhs = sum.entropy().unwrap();
        let rhs = a.entropy().unwrap() + b.entropy().unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn network_orthogonal_and_a_isolated(
        l in 1usize..12,
        tss in angle(),
        tse in angle(),
        tee in angle(),
    ) {
        let s = total_scatter(l, tss, tse, tee).unwrap();
        prop_assert!(s.orthogonality_defect() < 1e-10);
        for col in 0..2 * l + 1 {
            let want = if col == l { 1.0 } else { 0.0 };
            prop_assert!((s.data()[(l, col)] - want).abs() < 1e-12);
        }
        // Symplectic lift.
        let m = lift(&s);
        let om = gcm_core::gstate::omega(2 * l + 1);
        prop_assert!((&m * &om * m.transpose() - &om).abs().max() < 1e-10);
    }

    #[test]
    fn propagation_preserves_purity_and_physicality(cfg in scenario(5)) {
        let (sigma, _) = propagate_scenario(&cfg, 5).unwrap();
        prop_assert!(sigma.min_physical_eig() >= -PHYSICALITY_TOL);
        // All inputs in this strategy are pure, so the global state stays pure.
        for nu in sigma.symplectic_eigenvalues() {
            prop_assert!((nu - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn reduced_abc_physical_and_a_block_fixed(cfg in scenario(6), l in 1usize..=6) {
        let abc = system_cov(&cfg, l).unwrap();
        prop_assert!(abc.is_physical(PHYSICALITY_TOL));
        let a = abc.block(0, 0);
        let want = cfg.xi_ab.cosh() / 2.0;
        prop_assert!((a[(0, 0)] - want).abs() < 1e-12);
        prop_assert!((a[(1, 1)] - want).abs() < 1e-12);
        prop_assert!(a[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn negativity_nondecreasing(tse in angle(), tee in angle()) {
        let report = negativity(12, tse, tee, &SingleModeSpec::vacuum()).unwrap();
        let mut last = 0.0;
        for &(_, d) in &report.cumulative {
            prop_assert!(d >= last - 1e-15);
            last = d;
        }
    }
}
