//! Beam-splitter scattering matrices and their composition into the full
//! collision network `S(L)` and the single-channel network.
//!
//! A beam splitter with angle `theta` has reflectivity `r = sin theta` and
//! transmissivity `t = cos theta`. Every collision is a two-mode rotation, so
//! every composed network is real orthogonal. Mode bookkeeping follows the
//! joint vector `[E^B_{L-1}, ..., E^B_1, B, A, C, E^C_1, ..., E^C_{L-1}]`;
//! the B-side coupling blocks carry the opposite transmissivity sign from the
//! C-side ones, matching the mirror geometry of the two chains.

use nalgebra::DMatrix;

use crate::{Error, Result};

/// Orthogonality tolerance for scattering matrices.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Beam-splitter angle in `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BSAngle(f64);

impl BSAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(Error::AngleOutOfRange(theta));
        }
        Ok(Self(theta))
    }

    /// Angle given as a multiple of pi, so `0.5` is full reflection.
    pub fn from_pi_multiple(x: f64) -> Result<Self> {
        Self::new(x * std::f64::consts::PI)
    }

    pub fn theta(&self) -> f64 {
        self.0
    }

    /// Reflectivity `sin theta`.
    pub fn r(&self) -> f64 {
        self.0.sin()
    }

    /// Transmissivity `cos theta`.
    pub fn t(&self) -> f64 {
        self.0.cos()
    }
}

/// Which dissipative chain a single-channel network describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    B,
    C,
}

/// Real orthogonal mode-mixing matrix, tagged with the step it was built for.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterMatrix {
    data: DMatrix<f64>,
    step: usize,
}

impl ScatterMatrix {
    /// Wraps a matrix after checking orthogonality within
    /// [`ORTHOGONALITY_TOL`].
    pub fn new(data: DMatrix<f64>, step: usize) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare { rows: data.nrows(), cols: data.ncols() });
        }
        let defect = orthogonality_defect(&data);
        if defect >= ORTHOGONALITY_TOL {
            return Err(Error::NotOrthogonal(defect));
        }
        Ok(Self { data, step })
    }

    /// For builders whose output is orthogonal by construction.
    fn from_parts(data: DMatrix<f64>, step: usize) -> Self {
        Self { data, step }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn orthogonality_defect(&self) -> f64 {
        orthogonality_defect(&self.data)
    }
}

/// `max |S S^T - I|`.
pub fn orthogonality_defect(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows();
    let gram = s * s.transpose();
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((gram[(i, j)] - target).abs());
        }
    }
    defect
}

// The two coupling patterns that appear in the network. `pos` is the
// C-side / single-BS pattern [[r, t], [-t, r]]; `neg` flips the
// transmissivity sign, [[r, -t], [t, r]], as the B-side blocks do.
fn block_pos(theta: BSAngle) -> [[f64; 2]; 2] {
    [[theta.r(), theta.t()], [-theta.t(), theta.r()]]
}

fn block_neg(theta: BSAngle) -> [[f64; 2]; 2] {
    [[theta.r(), -theta.t()], [theta.t(), theta.r()]]
}

/// Writes the 2x2 coupling `block` over rows/columns `(p, q)` of an identity
/// background.
fn place_block(m: &mut DMatrix<f64>, p: usize, q: usize, block: [[f64; 2]; 2]) {
    m[(p, p)] = block[0][0];
    m[(p, q)] = block[0][1];
    m[(q, p)] = block[1][0];
    m[(q, q)] = block[1][1];
}

/// Left-multiplies `m` by the two-mode rotation `block` acting on rows
/// `(p, q)`.
fn apply_block(m: &mut DMatrix<f64>, p: usize, q: usize, block: [[f64; 2]; 2]) {
    let n = m.ncols();
    for col in 0..n {
        let a = m[(p, col)];
        let b = m[(q, col)];
        m[(p, col)] = block[0][0] * a + block[0][1] * b;
        m[(q, col)] = block[1][0] * a + block[1][1] * b;
    }
}

/// Single beam splitter, `[[r, t], [-t, r]]`.
pub fn bs2(theta: BSAngle) -> ScatterMatrix {
    let mut m = DMatrix::identity(2, 2);
    place_block(&mut m, 0, 1, block_pos(theta));
    ScatterMatrix::from_parts(m, 1)
}

// Zero-based mode positions at step `l`.
fn pos_b(l: usize) -> usize {
    l - 1
}
fn pos_c(l: usize) -> usize {
    l + 1
}
fn pos_env_b(l: usize, j: usize) -> usize {
    l - 1 - j
}
fn pos_env_c(l: usize, j: usize) -> usize {
    l + 1 + j
}

/// System-system collision: mixes B and C, leaves A and every environment
/// mode untouched.
pub fn s_ss(l: usize, theta_ss: BSAngle) -> Result<ScatterMatrix> {
    if l < 1 {
        return Err(Error::HorizonTooSmall { l, min: 1 });
    }
    let n = 2 * l + 1;
    let mut m = DMatrix::identity(n, n);
    place_block(&mut m, pos_b(l), pos_c(l), block_pos(theta_ss));
    Ok(ScatterMatrix::from_parts(m, l))
}

/// System-environment collision: couples B with `E^B_{j+1}` and C with
/// `E^C_{j+1}`, for `0 <= j <= l - 2`.
pub fn s_se(l: usize, j: usize, theta_b: BSAngle, theta_c: BSAngle) -> Result<ScatterMatrix> {
    if l < 2 || j > l - 2 {
        return Err(Error::CollisionIndexOutOfRange { j, l });
    }
    let n = 2 * l + 1;
    let mut m = DMatrix::identity(n, n);
    place_block(&mut m, pos_env_b(l, j + 1), pos_b(l), block_neg(theta_b));
    place_block(&mut m, pos_c(l), pos_env_c(l, j + 1), block_pos(theta_c));
    Ok(ScatterMatrix::from_parts(m, l))
}

/// Environment-environment collision: couples `E^B_j` with `E^B_{j+1}` and
/// `E^C_j` with `E^C_{j+1}`, for `1 <= j <= l - 2`.
pub fn s_ee(l: usize, j: usize, theta_b: BSAngle, theta_c: BSAngle) -> Result<ScatterMatrix> {
    if l < 3 || j < 1 || j > l - 2 {
        return Err(Error::CollisionIndexOutOfRange { j, l });
    }
    let n = 2 * l + 1;
    let mut m = DMatrix::identity(n, n);
    place_block(&mut m, pos_env_b(l, j + 1), pos_env_b(l, j), block_neg(theta_b));
    place_block(&mut m, pos_env_c(l, j), pos_env_c(l, j + 1), block_pos(theta_c));
    Ok(ScatterMatrix::from_parts(m, l))
}

/// The composed network after `l` system-system collisions.
///
/// Collision order per step: environment-environment, then
/// system-environment, then system-system; the first step is the bare B-C
/// collision and the second adds the first system-environment collision.
/// Factors are applied as successive row rotations, which is exactly the
/// left-multiplied matrix product of the [`s_ss`]/[`s_se`]/[`s_ee`] factors.
pub fn total_scatter(
    l: usize,
    theta_ss: BSAngle,
    theta_se: BSAngle,
    theta_ee: BSAngle,
) -> Result<ScatterMatrix> {
    if l < 1 {
        return Err(Error::HorizonTooSmall { l, min: 1 });
    }
    let n = 2 * l + 1;
    let mut m = DMatrix::identity(n, n);
    let ss = block_pos(theta_ss);
    let se_b = block_neg(theta_se);
    let se_c = block_pos(theta_se);
    let ee_b = block_neg(theta_ee);
    let ee_c = block_pos(theta_ee);

    let apply_ss = |m: &mut DMatrix<f64>| apply_block(m, pos_b(l), pos_c(l), ss);
    let apply_se = |m: &mut DMatrix<f64>, j: usize| {
        apply_block(m, pos_env_b(l, j + 1), pos_b(l), se_b);
        apply_block(m, pos_c(l), pos_env_c(l, j + 1), se_c);
    };
    let apply_ee = |m: &mut DMatrix<f64>, j: usize| {
        apply_block(m, pos_env_b(l, j + 1), pos_env_b(l, j), ee_b);
        apply_block(m, pos_env_c(l, j), pos_env_c(l, j + 1), ee_c);
    };

    apply_ss(&mut m);
    if l >= 2 {
        apply_se(&mut m, 0);
        apply_ss(&mut m);
        for j in 1..=(l - 2) {
            apply_ee(&mut m, j);
            apply_se(&mut m, j);
            apply_ss(&mut m);
        }
    }
    Ok(ScatterMatrix::from_parts(m, l))
}

/// Single-channel network over `[system, E_1, ..., E_{l-1}]` after `l` steps
/// (`l >= 2`): the system mode collides with `E_1`, then each step swaps
/// `E_j` into `E_{j+1}` before the system collides with `E_{j+1}`.
///
/// The B and C chains produce the same matrix: reordering the B-side modes so
/// the system comes first turns every B-side block into the corresponding
/// C-side block, so one construction serves both channels (the `channel`
/// argument is kept for call-site clarity and is validated against the full
/// network in tests).
pub fn channel_scatter(
    l: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    _channel: Channel,
) -> Result<ScatterMatrix> {
    if l < 2 {
        return Err(Error::HorizonTooSmall { l, min: 2 });
    }
    let se = block_pos(theta_se);
    let ee = block_pos(theta_ee);
    let mut m = DMatrix::identity(l, l);
    apply_block(&mut m, 0, 1, se);
    for j in 1..=(l - 2) {
        apply_block(&mut m, j, j + 1, ee);
        apply_block(&mut m, 0, j + 1, se);
    }
    Ok(ScatterMatrix::from_parts(m, l))
}

/// First rows `c_{1,.}(L)` of the single-channel network for every
/// `L = 2..=l_max`, built incrementally (each snapshot is bit-identical to
/// the corresponding [`channel_scatter`] row, padded with zeros).
pub fn channel_first_rows(
    l_max: usize,
    theta_se: BSAngle,
    theta_ee: BSAngle,
    _channel: Channel,
) -> Result<Vec<(usize, Vec<f64>)>> {
    if l_max < 2 {
        return Err(Error::HorizonTooSmall { l: l_max, min: 2 });
    }
    let mut m = DMatrix::identity(l_max, l_max);
    let se = block_pos(theta_se);
    let ee = block_pos(theta_ee);
    let mut rows = Vec::with_capacity(l_max - 1);
    apply_block(&mut m, 0, 1, se);
    rows.push((2, m.row(0).iter().copied().collect()));
    for j in 1..=l_max.saturating_sub(2) {
        apply_block(&mut m, j, j + 1, ee);
        apply_block(&mut m, 0, j + 1, se);
        rows.push((j + 2, m.row(0).iter().copied().collect()));
    }
    Ok(rows)
}

/// Covariance image of a mode transform: the `2N x 2N` matrix with 2x2 block
/// `(i, j)` equal to `S_ij I_2` in interleaved quadrature ordering. For
/// orthogonal `S` the result is symplectic and orthogonal.
pub fn lift(s: &ScatterMatrix) -> DMatrix<f64> {
    let n = s.dim();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = s.data[(i, j)];
            if v != 0.0 {
                m[(2 * i, 2 * j)] = v;
                m[(2 * i + 1, 2 * j + 1)] = v;
            }
        }
    }
    m
}
