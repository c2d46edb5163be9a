//! Scenario assembly and covariance propagation through the collision
//! network, plus the closed-form comparator for the reduced (A,B,C) block.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::gstate::{
    single_mode_cov, thermal_cov, tmsv_cov, CovMatrix, Mode, ModeLayout, SingleModeSpec,
};
use crate::optics::{lift, total_scatter, BSAngle, ScatterMatrix};
use crate::{Error, Result};

/// Initial state of mode C.
#[derive(Debug, Clone, PartialEq)]
pub enum CState {
    /// Squeezed vacuum with parameter `xi >= 0` and angle `phi`
    /// (variances `e^{+-xi}/2` at `phi = 0`).
    SqueezedVacuum { xi: f64, phi: f64 },
    /// Thermal state with mean photon number `n`.
    Thermal { n: f64 },
    /// Generic squeezed thermal mode.
    Generic(SingleModeSpec),
}

impl CState {
    pub fn cov(&self) -> Result<CovMatrix> {
        match *self {
            CState::SqueezedVacuum { xi, phi } => crate::gstate::squeezed_vac_cov(xi, phi),
            CState::Thermal { n } => thermal_cov(n),
            CState::Generic(spec) => Ok(single_mode_cov(&spec)),
        }
    }

    /// Characteristic-function weights `(X, Y)` of the C input.
    pub fn chi_xy(&self) -> (f64, Complex64) {
        match *self {
            CState::SqueezedVacuum { xi, phi } => {
                (xi.cosh() / 2.0, -Complex64::from_polar(xi.sinh() / 2.0, phi))
            }
            CState::Thermal { n } => (n + 0.5, Complex64::new(0.0, 0.0)),
            CState::Generic(spec) => (spec.chi_x(), spec.chi_y()),
        }
    }
}

/// Preparation pattern of the environment chains. Channels B and C always
/// share one pattern.
#[derive(Debug, Clone, PartialEq)]
pub enum EnvPattern {
    Vacuum,
    /// Squeezed vacua with one common angle.
    SqueezedSame { r: f64, phi: f64 },
    /// Squeezed vacua whose neighbours are squeezed along perpendicular
    /// axes: `phi = pi` for odd `j`, `phi = 0` for even `j`.
    SqueezedAlternative { r: f64 },
    Thermal { n: f64 },
    /// Explicit per-`j` specs (1-based index `j` maps to entry `j - 1`).
    List(Vec<SingleModeSpec>),
}

impl EnvPattern {
    /// Spec of the `j`-th environment mode (`j >= 1`) at step horizon `l`.
    pub fn spec_for(&self, j: usize, l: usize) -> Result<SingleModeSpec> {
        match self {
            EnvPattern::Vacuum => Ok(SingleModeSpec::vacuum()),
            EnvPattern::SqueezedSame { r, phi } => SingleModeSpec::new(0.0, *r, *phi),
            EnvPattern::SqueezedAlternative { r } => {
                let phi = if j % 2 == 1 { std::f64::consts::PI } else { 0.0 };
                SingleModeSpec::new(0.0, *r, phi)
            }
            EnvPattern::Thermal { n } => SingleModeSpec::new(*n, 0.0, 0.0),
            EnvPattern::List(specs) => specs.get(j - 1).copied().ok_or(Error::EnvListTooShort {
                have: specs.len(),
                need: l - 1,
                l,
            }),
        }
    }
}

/// Full experiment description: step horizon, collision strengths and the
/// input states.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub l_max: usize,
    pub theta_ss: BSAngle,
    pub theta_se: BSAngle,
    pub theta_ee: BSAngle,
    /// TMSV squeezing of the A-B pair (real).
    pub xi_ab: f64,
    pub c_state: CState,
    pub env: EnvPattern,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.l_max < 1 {
            return Err(Error::HorizonTooSmall { l: self.l_max, min: 1 });
        }
        if let EnvPattern::List(specs) = &self.env {
            if self.l_max >= 2 && specs.len() < self.l_max - 1 {
                return Err(Error::EnvListTooShort {
                    have: specs.len(),
                    need: self.l_max - 1,
                    l: self.l_max,
                });
            }
        }
        self.c_state.cov()?;
        Ok(())
    }
}

/// Joint input covariance at step `l`: block-diagonal except for the A-B
/// two-mode-squeezed correlation, ordered per [`ModeLayout::collision`].
pub fn assemble_input(cfg: &ScenarioConfig, l: usize) -> Result<(CovMatrix, ModeLayout)> {
    if l < 1 || l > cfg.l_max {
        return Err(Error::HorizonTooSmall { l, min: 1 });
    }
    let layout = ModeLayout::collision(l)?;
    let mut sigma = CovMatrix::zeros(2 * l + 1);

    let tm = tmsv_cov(cfg.xi_ab);
    let p_b = layout.position(Mode::B)?;
    let p_a = layout.position(Mode::A)?;
    sigma.set_block(p_a, p_a, &tm.block(0, 0));
    sigma.set_block(p_b, p_b, &tm.block(1, 1));
    sigma.set_block(p_a, p_b, &tm.block(0, 1));
    sigma.set_block(p_b, p_a, &tm.block(1, 0));

    let c_cov = cfg.c_state.cov()?;
    let p_c = layout.position(Mode::C)?;
    sigma.set_block(p_c, p_c, &c_cov.block(0, 0));

    for j in 1..l {
        let env = single_mode_cov(&cfg.env.spec_for(j, l)?);
        let block = env.block(0, 0);
        sigma.set_block(layout.position(Mode::EnvB(j))?, layout.position(Mode::EnvB(j))?, &block);
        sigma.set_block(layout.position(Mode::EnvC(j))?, layout.position(Mode::EnvC(j))?, &block);
    }
    Ok((sigma, layout))
}

/// `sigma_out = lift(S) sigma_in lift(S)^T`.
pub fn propagate(sigma_in: &CovMatrix, s: &ScatterMatrix) -> Result<CovMatrix> {
    if sigma_in.dim() != 2 * s.dim() {
        return Err(Error::DimensionMismatch { left: sigma_in.dim(), right: 2 * s.dim() });
    }
    let m = lift(s);
    CovMatrix::new(&m * sigma_in.data() * m.transpose())
}

/// Assembles and propagates the full joint covariance at step `l`.
pub fn propagate_scenario(cfg: &ScenarioConfig, l: usize) -> Result<(CovMatrix, ModeLayout)> {
    let (sigma_in, layout) = assemble_input(cfg, l)?;
    let s = total_scatter(l, cfg.theta_ss, cfg.theta_se, cfg.theta_ee)?;
    Ok((propagate(&sigma_in, &s)?, layout))
}

/// Reduced three-mode covariance at step `l`, ordered `(A, B, C)`.
pub fn system_cov(cfg: &ScenarioConfig, l: usize) -> Result<CovMatrix> {
    let (sigma, layout) = propagate_scenario(cfg, l)?;
    sigma.reduce(&layout, &[Mode::A, Mode::B, Mode::C])
}

/// Which weighting of the closed-form (A,B,C) covariance to evaluate.
///
/// `Additive` weighs each environment mode by `cosh 2r + (n + 1/2)` and
/// repeats `K + M` on both diagonals of the B-C block; `Consistent` uses the
/// characteristic-function weights (`(n + 1/2) cosh 2r` etc.) throughout,
/// which reproduces the direct propagation route. Keeping both quantifies
/// exactly how far the additive weighting drifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormVariant {
    Additive,
    Consistent,
}

/// Closed-form evaluation together with its deviation from [`system_cov`].
#[derive(Debug, Clone)]
pub struct ClosedFormCov {
    pub variant: ClosedFormVariant,
    pub l: usize,
    /// The closed-form (A,B,C) covariance.
    pub sigma: CovMatrix,
    /// Entrywise `|closed form - propagated|`.
    pub deviation: DMatrix<f64>,
    pub max_deviation: f64,
}

/// Evaluates the closed-form expressions for the (A,B,C) covariance from the
/// row weights of the inverse network matrix and compares them against the
/// propagation route.
///
/// The closed forms use only two rows of `S^{-1}(L) = S(L)^T` — the weights
/// with which each input mode enters the B and C outputs — so this is an
/// algebraically independent evaluation path: no joint matrix sandwich is
/// formed.
pub fn closed_form_cov(
    cfg: &ScenarioConfig,
    l: usize,
    variant: ClosedFormVariant,
) -> Result<ClosedFormCov> {
    let s = total_scatter(l, cfg.theta_ss, cfg.theta_se, cfg.theta_ee)?;
    let layout = ModeLayout::collision(l)?;
    let p_b = layout.position(Mode::B)?;
    let p_c = layout.position(Mode::C)?;
    let n_modes = 2 * l + 1;

    // d_k / e_k: weight of input mode k in the B / C output row.
    let d: Vec<f64> = (0..n_modes).map(|k| s.data()[(p_b, k)]).collect();
    let e: Vec<f64> = (0..n_modes).map(|k| s.data()[(p_c, k)]).collect();

    let (x_c, y_c) = cfg.c_state.chi_xy();

    // Per-mode weights for the quadratic sums. The first is the |c|^2 weight
    // (2X in the consistent variant), the second the squeezing weight (-2Y).
    let mode_weights = |k: usize| -> Result<(f64, Complex64)> {
        let mode = layout.modes()[k];
        Ok(match mode {
            Mode::B | Mode::A => (cfg.xi_ab.cosh(), Complex64::new(0.0, 0.0)),
            Mode::C => (2.0 * x_c, -2.0 * y_c),
            Mode::EnvB(j) | Mode::EnvC(j) => {
                let spec = cfg.env.spec_for(j, l)?;
                match variant {
                    ClosedFormVariant::Consistent => (2.0 * spec.chi_x(), -2.0 * spec.chi_y()),
                    ClosedFormVariant::Additive => (
                        (2.0 * spec.r()).cosh() + spec.n() + 0.5,
                        Complex64::from_polar((2.0 * spec.r()).sinh(), spec.phi()),
                    ),
                }
            }
        })
    };

    // sigma_B and sigma_C: [[alpha + beta, gamma], [gamma, alpha - beta]].
    let diag_block = |row: &[f64]| -> Result<Matrix2<f64>> {
        let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
        for (k, &c) in row.iter().enumerate() {
            let c2 = c * c;
            let (aw, sw) = mode_weights(k)?;
            alpha += 0.5 * aw * c2;
            beta += 0.5 * sw.re * c2;
            gamma += 0.5 * sw.im * c2;
        }
        Ok(Matrix2::new(alpha + beta, gamma, gamma, alpha - beta))
    };
    let sigma_b = diag_block(&d)?;
    let sigma_c = diag_block(&e)?;

    let sigma_a = Matrix2::identity() * (cfg.xi_ab.cosh() / 2.0);
    let half_sinh = cfg.xi_ab.sinh() / 2.0;
    let sigma_ab = Matrix2::new(half_sinh * d[p_b], 0.0, 0.0, -half_sinh * d[p_b]);
    let sigma_ac = Matrix2::new(half_sinh * e[p_b], 0.0, 0.0, -half_sinh * e[p_b]);

    // B-C block from K, M, P, Q sums.
    let (mut kk, mut mm, mut pp) = (0.0, 0.0, 0.0);
    for k in 0..n_modes {
        let g = d[k] * e[k];
        let (aw, sw) = mode_weights(k)?;
        kk += aw * g;
        mm += sw.re * g;
        pp += sw.im * g;
    }
    // Q is the imaginary part of real products: identically zero here, kept
    // for the additive variant's off-diagonal structure.
    let qq = 0.0;
    let sigma_bc = match variant {
        ClosedFormVariant::Additive => {
            0.5 * Matrix2::new(kk + mm, pp + qq, pp - qq, kk + mm)
        }
        ClosedFormVariant::Consistent => 0.5 * Matrix2::new(kk + mm, pp, pp, kk - mm),
    };

    let mut sigma = CovMatrix::zeros(3);
    sigma.set_block(0, 0, &sigma_a);
    sigma.set_block(1, 1, &sigma_b);
    sigma.set_block(2, 2, &sigma_c);
    sigma.set_block(0, 1, &sigma_ab);
    sigma.set_block(1, 0, &sigma_ab.transpose());
    sigma.set_block(0, 2, &sigma_ac);
    sigma.set_block(2, 0, &sigma_ac.transpose());
    sigma.set_block(1, 2, &sigma_bc);
    sigma.set_block(2, 1, &sigma_bc.transpose());

    let direct = system_cov(cfg, l)?;
    let deviation = (sigma.data() - direct.data()).abs();
    let max_deviation = deviation.max();
    Ok(ClosedFormCov { variant, l, sigma, deviation, max_deviation })
}
