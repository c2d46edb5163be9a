//! Gaussian channel extraction for one dissipative chain, the divisibility
//! test, and the non-Markovianity measure.
//!
//! The channel on the system mode after `L` steps is
//! `sigma_out = X_L sigma_in X_L^T + Y_L` with `X_L = c11(L) I` and
//! `Y_L = sum_{k>=2} c1k(L)^2 sigma_E`, where `c1k(L)` is the first row of
//! the single-channel network. The one-step map from `L-1` to `L` is
//! completely positive iff
//! `Lambda_L = Y_{L,L-1} - (i/2) Omega + (i/2) X_{L,L-1} Omega X_{L,L-1}^T`
//! is positive semidefinite; the accumulated negative parts of its
//! eigenvalues quantify indivisibility.
//!
//! The measure reported here is the linear negativity sum `D(L)`; it is zero
//! iff every intermediate map is CP. A logarithm of `D` is exposed as an
//! auxiliary value away from the Markovian point, where it is undefined.

use nalgebra::Matrix2;

use crate::gstate::{single_mode_cov, SingleModeSpec};
use crate::optics::{channel_first_rows, BSAngle, Channel};
use crate::{Error, Result};

/// `|c11(L-1)|` below this is treated as a degenerate (non-invertible) step.
pub const DEGENERATE_C11_TOL: f64 = 1e-12;
/// `D` at or below this is classified as Markovian.
pub const MARKOVIAN_D_TOL: f64 = 1e-12;

/// The pair `(X_L, Y_L)` describing the Gaussian channel after `L` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMap {
    pub l: usize,
    pub x: Matrix2<f64>,
    pub y: Matrix2<f64>,
    /// First-row head element of the channel network; `x = c11 I`.
    pub c11: f64,
}

impl ChannelMap {
    /// Applies the channel to an input covariance block.
    pub fn apply(&self, sigma_in: &Matrix2<f64>) -> Matrix2<f64> {
        self.x * sigma_in * self.x.transpose() + self.y
    }
}

/// Hermitian 2x2 divisibility witness for the step `L-1 -> L`, stored as
/// real and imaginary parts (`re` symmetric, `im` antisymmetric).
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMat {
    pub l: usize,
    pub re: Matrix2<f64>,
    pub im: Matrix2<f64>,
}

impl LambdaMat {
    /// Eigenvalues of the Hermitian matrix, ascending. For a 2x2 Hermitian
    /// `[[a, c - i d], [c + i d, b]]` these are
    /// `(a + b)/2 -+ sqrt(((a - b)/2)^2 + c^2 + d^2)`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.re[(0, 0)];
        let b = self.re[(1, 1)];
        let c = self.re[(0, 1)];
        let d = self.im[(1, 0)];
        let mean = 0.5 * (a + b);
        let radius = (0.25 * (a - b) * (a - b) + c * c + d * d).sqrt();
        [mean - radius, mean + radius]
    }

    /// Max deviation from Hermiticity (`re` asymmetry and `im` diagonal /
    /// symmetric residue).
    pub fn hermiticity_defect(&self) -> f64 {
        let re_asym = (self.re[(0, 1)] - self.re[(1, 0)]).abs();
        let im_sym = (self.im[(0, 1)] + self.im[(1, 0)]).abs();
        let im_diag = self.im[(0, 0)].abs().max(self.im[(1, 1)].abs());
        re_asym.max(im_sym).max(im_diag)
    }
}

fn map_from_row(l: usize, row: &[f64], env_cov: &Matrix2<f64>) -> ChannelMap {
    let c11 = row[0];
    let weight: f64 = row[1..].iter().map(|c| c * c).sum();
    ChannelMap {
        l,
        x: Matrix2::identity() * c11,
        y: env_cov * weight,
        c11,
    }
}

/// Channel map at step `l >= 2` for identical environment specs.
pub fn channel_map(
    l: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    env: &SingleModeSpec,
) -> Result<ChannelMap> {
    Ok(channel_map_series(l, theta_se, theta_ee, env)?.pop().expect("series nonempty"))
}

/// Channel maps for every step `2..=l_max`, built incrementally.
pub fn channel_map_series(
    l_max: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    env: &SingleModeSpec,
) -> Result<Vec<ChannelMap>> {
    let env_cov = {
        let cov = single_mode_cov(env);
        cov.block(0, 0)
    };
    let rows = channel_first_rows(l_max, theta_se, theta_ee, Channel::C)?;
    Ok(rows
        .iter()
        .map(|(l, row)| map_from_row(*l, row, &env_cov))
        .collect())
}

/// Divisibility witness for the one-step map `map_lm1.l -> map_l.l`.
pub fn lambda_matrix(map_l: &ChannelMap, map_lm1: &ChannelMap) -> Result<LambdaMat> {
    if map_lm1.c11.abs() < DEGENERATE_C11_TOL {
        return Err(Error::DegenerateStep { l: map_l.l, c11: map_lm1.c11 });
    }
    let x_rel = map_l.x
        * map_lm1
            .x
            .try_inverse()
            .ok_or(Error::DegenerateStep { l: map_l.l, c11: map_lm1.c11 })?;
    let y_rel = map_l.y - x_rel * map_lm1.y * x_rel.transpose();
    let omega = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    // Lambda = Y_rel + (i/2)(X_rel Omega X_rel^T - Omega); the parenthesis is
    // antisymmetric, so it forms the imaginary part.
    let im = 0.5 * (x_rel * omega * x_rel.transpose() - omega);
    Ok(LambdaMat { l: map_l.l, re: y_rel, im })
}

/// Negative-part contribution of one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepNegativity {
    /// Later step of the one-step map.
    pub l: usize,
    /// Eigenvalues of the witness, ascending.
    pub eigenvalues: [f64; 2],
    /// `sum (|lambda| - lambda)/2` over the pair.
    pub contribution: f64,
}

/// Per-step and cumulative negativity of the channel up to `l_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityReport {
    pub steps: Vec<StepNegativity>,
    /// Steps skipped because the previous map was degenerate.
    pub skipped: Vec<usize>,
    /// `(L, D(L))` with `D` accumulated over contributions at steps `<= L`.
    pub cumulative: Vec<(usize, f64)>,
    /// `D(l_max)`.
    pub total: f64,
}

impl NegativityReport {
    /// `ln D`, only defined away from the Markovian point.
    pub fn ln_total(&self) -> Option<f64> {
        (self.total > MARKOVIAN_D_TOL).then(|| self.total.ln())
    }

    pub fn is_markovian(&self) -> bool {
        self.total <= MARKOVIAN_D_TOL
    }
}

/// Accumulates the negativity of every one-step map with later step in
/// `3..=l_max` (the first map acting on a nontrivial channel is `2 -> 3`).
pub fn negativity(
    l_max: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    env: &SingleModeSpec,
) -> Result<NegativityReport> {
    if l_max < 3 {
        return Err(Error::HorizonTooSmall { l: l_max, min: 3 });
    }
    let maps = channel_map_series(l_max, theta_se, theta_ee, env)?;
    let mut steps = Vec::new();
    let mut skipped = Vec::new();
    let mut cumulative = Vec::with_capacity(maps.len().saturating_sub(1));
    let mut total = 0.0;
    for pair in maps.windows(2) {
        match lambda_matrix(&pair[1], &pair[0]) {
            Ok(lambda) => {
                let eigenvalues = lambda.eigenvalues();
                let contribution: f64 =
                    eigenvalues.iter().map(|&e| 0.5 * (e.abs() - e)).sum();
                total += contribution;
                steps.push(StepNegativity { l: pair[1].l, eigenvalues, contribution });
            }
            Err(Error::DegenerateStep { l, .. }) => skipped.push(l),
            Err(e) => return Err(e),
        }
        cumulative.push((pair[1].l, total));
    }
    Ok(NegativityReport { steps, skipped, cumulative, total })
}

/// Closed-form spectrum of the witness at one step, next to the numerical
/// spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormComparison {
    pub l: usize,
    /// Numerical eigenvalues of the witness, ascending.
    pub numeric: [f64; 2],
    /// `(X_E -+ (1/2) sqrt(|Y_E|^2 + 1)) (1 - c11(L)^2 / c11(L-1)^2)`,
    /// ascending by branch.
    pub inner: [f64; 2],
    /// The same expression wrapped in a logarithm, where defined. The
    /// log-wrapped reading is retained for comparison only; it cannot
    /// reproduce the witness spectrum (negative eigenvalues have no log).
    pub log_wrapped: [Option<f64>; 2],
    /// `max |numeric - inner|`.
    pub max_deviation: f64,
}

/// Evaluates the closed-form eigenvalue expression for the step `l-1 -> l`
/// and compares it against the numerically diagonalized witness.
pub fn closed_form_eigs(
    l: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    env: &SingleModeSpec,
) -> Result<ClosedFormComparison> {
    if l < 3 {
        return Err(Error::HorizonTooSmall { l, min: 3 });
    }
    let maps = channel_map_series(l, theta_se, theta_ee, env)?;
    let map_lm1 = &maps[maps.len() - 2];
    let map_l = &maps[maps.len() - 1];
    let lambda = lambda_matrix(map_l, map_lm1)?;
    let numeric = lambda.eigenvalues();

    let bracket = 1.0 - (map_l.c11 * map_l.c11) / (map_lm1.c11 * map_lm1.c11);
    let x_e = env.chi_x();
    let y_abs = env.chi_y().norm();
    let half_root = 0.5 * (y_abs * y_abs + 1.0).sqrt();
    let mut inner = [(x_e - half_root) * bracket, (x_e + half_root) * bracket];
    inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let log_wrapped = [
        (inner[0] > 0.0).then(|| inner[0].ln()),
        (inner[1] > 0.0).then(|| inner[1].ln()),
    ];
    let max_deviation = (numeric[0] - inner[0]).abs().max((numeric[1] - inner[1]).abs());
    Ok(ClosedFormComparison { l, numeric, inner, log_wrapped, max_deviation })
}

/// Scaling comparison of a Gaussian environment against the vacuum at the
/// same collision angles.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingComparison {
    pub d_env: f64,
    pub d_vac: f64,
    /// `(2 n_E + 1) cosh(2 r_E)`.
    pub factor: f64,
    /// `factor * d_vac`.
    pub predicted: f64,
    /// Relative deviation of `d_env` from the prediction (absolute when the
    /// prediction vanishes).
    pub rel_deviation: f64,
    /// Whether `d_env` and `d_vac` are zero together.
    pub zero_consistent: bool,
    pub env_report: NegativityReport,
    pub vac_report: NegativityReport,
}

/// Verifies the scaling law `D_G = (2 n_E + 1) cosh(2 r_E) D_vac`.
pub fn gaussian_scaling(
    l_max: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    env: &SingleModeSpec,
) -> Result<ScalingComparison> {
    let env_report = negativity(l_max, theta_se, theta_ee, env)?;
    let vac_report = negativity(l_max, theta_se, theta_ee, &SingleModeSpec::vacuum())?;
    let factor = (2.0 * env.n() + 1.0) * (2.0 * env.r()).cosh();
    let predicted = factor * vac_report.total;
    let rel_deviation = if predicted > 0.0 {
        (env_report.total - predicted).abs() / predicted
    } else {
        env_report.total.abs()
    };
    let zero_consistent = env_report.is_markovian() == vac_report.is_markovian();
    Ok(ScalingComparison {
        d_env: env_report.total,
        d_vac: vac_report.total,
        factor,
        predicted,
        rel_deviation,
        zero_consistent,
        env_report,
        vac_report,
    })
}

/// `D` over a grid of collision angles, row-major with `theta_se` as the
/// outer (slow) axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagram {
    pub theta_se: Vec<f64>,
    pub theta_ee: Vec<f64>,
    /// `d[i * theta_ee.len() + k]` is `D` at `(theta_se[i], theta_ee[k])`.
    pub d: Vec<f64>,
    /// Number of one-step maps skipped as degenerate, per grid point.
    pub skipped: Vec<usize>,
}

impl PhaseDiagram {
    pub fn d_at(&self, i_se: usize, k_ee: usize) -> f64 {
        self.d[i_se * self.theta_ee.len() + k_ee]
    }

    /// Markovian classification (`true` where `D <= MARKOVIAN_D_TOL`).
    pub fn markovian_map(&self) -> Vec<bool> {
        self.d.iter().map(|&v| v <= MARKOVIAN_D_TOL).collect()
    }
}

/// Computes `D` at horizon `l` for every point of the angle grid.
pub fn phase_diagram(
    theta_se: &[BSAngle],
    theta_ee: &[BSAngle],
    l: usize,
    env: &SingleModeSpec,
) -> Result<PhaseDiagram> {
    if l < 3 {
        return Err(Error::HorizonTooSmall { l, min: 3 });
    }
    let mut d = Vec::with_capacity(theta_se.len() * theta_ee.len());
    let mut skipped = Vec::with_capacity(d.capacity());
    for &se in theta_se {
        for &ee in theta_ee {
            let report = negativity(l, se, ee, env)?;
            d.push(report.total);
            skipped.push(report.skipped.len());
        }
    }
    Ok(PhaseDiagram {
        theta_se: theta_se.iter().map(|a| a.theta()).collect(),
        theta_ee: theta_ee.iter().map(|a| a.theta()).collect(),
        d,
        skipped,
    })
}
