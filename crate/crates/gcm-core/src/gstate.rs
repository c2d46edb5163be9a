//! Gaussian state construction and covariance-matrix bookkeeping.
//!
//! All states have zero first moments, so a state of `N` modes is a real
//! symmetric `2N x 2N` covariance matrix over the interleaved quadrature
//! vector `(x_1, p_1, ..., x_N, p_N)` with vacuum variance 1/2. A covariance
//! is physical iff `sigma + (i/2) Omega >= 0`, equivalently iff every
//! symplectic eigenvalue is at least 1/2.
//!
//! Convention notes, fixed once here and relied on everywhere else:
//! - A squeezed thermal mode with parameters `(n, r, phi)` has
//!   `X = (n + 1/2) cosh 2r` and `Y = -(n + 1/2) sinh(2r) e^{i phi}` in its
//!   characteristic function, giving x-variance `(n + 1/2) e^{2r}` at
//!   `phi = 0` (the x quadrature is the anti-squeezed one).
//! - The two-mode squeezed vacuum with real parameter `xi` has diagonal
//!   blocks `(cosh(xi)/2) I` and off-diagonal block `(sinh(xi)/2) diag(1,-1)`;
//!   the single-mode squeezed vacuum with parameter `xi` has variances
//!   `e^{+-xi}/2`. The two squeezing conventions differ by a factor of two in
//!   the exponent and are deliberately kept distinct.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance for the symmetry check on covariance matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Tolerance on the minimum eigenvalue of `sigma + (i/2) Omega`.
pub const PHYSICALITY_TOL: f64 = 1e-9;
/// Symplectic eigenvalues this close to 1/2 are treated as pure.
pub const PURITY_CLAMP: f64 = 1e-12;
/// Symplectic eigenvalues below `1/2 - UNPHYSICAL_NU_TOL` are rejected.
pub const UNPHYSICAL_NU_TOL: f64 = 1e-6;

/// Parameters `(n, r, phi, alpha)` of a generic single-mode Gaussian state.
///
/// `alpha` is carried for completeness but pinned to zero: the model is
/// restricted to zero first moments and constructors reject anything else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleModeSpec {
    n: f64,
    r: f64,
    phi: f64,
    alpha: Complex64,
}

impl SingleModeSpec {
    /// Squeezed thermal mode with mean photon number `n`, squeezing strength
    /// `r` and squeezing angle `phi` (wrapped into `[0, 2pi)`).
    pub fn new(n: f64, r: f64, phi: f64) -> Result<Self> {
        Self::with_displacement(n, r, phi, Complex64::new(0.0, 0.0))
    }

    /// Like [`SingleModeSpec::new`] but with an explicit displacement, which
    /// must be zero.
    pub fn with_displacement(n: f64, r: f64, phi: f64, alpha: Complex64) -> Result<Self> {
        if n.is_nan() || n < 0.0 {
            return Err(Error::NegativePhotonNumber(n));
        }
        if r.is_nan() || r < 0.0 {
            return Err(Error::NegativeSqueezing(r));
        }
        if alpha != Complex64::new(0.0, 0.0) {
            return Err(Error::NonzeroDisplacement(alpha));
        }
        let tau = 2.0 * std::f64::consts::PI;
        Ok(Self { n, r, phi: phi.rem_euclid(tau), alpha })
    }

    pub fn vacuum() -> Self {
        Self { n: 0.0, r: 0.0, phi: 0.0, alpha: Complex64::new(0.0, 0.0) }
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    /// `X = (n + 1/2) cosh 2r`, the `|mu|^2` weight of the characteristic
    /// function.
    pub fn chi_x(&self) -> f64 {
        (self.n + 0.5) * (2.0 * self.r).cosh()
    }

    /// `Y = -(n + 1/2) sinh(2r) e^{i phi}`, the `mu*^2` weight of the
    /// characteristic function.
    pub fn chi_y(&self) -> Complex64 {
        -Complex64::from_polar((self.n + 0.5) * (2.0 * self.r).sinh(), self.phi)
    }
}

/// Label of one mode in the joint collision vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `j`-th environment mode of channel B, `j >= 1`.
    EnvB(usize),
    B,
    A,
    C,
    /// `j`-th environment mode of channel C, `j >= 1`.
    EnvC(usize),
}

/// Ordered mode labels of the joint vector at step `L`:
/// `[E^B_{L-1}, ..., E^B_1, B, A, C, E^C_1, ..., E^C_{L-1}]`.
///
/// With 1-based positions, B sits at `L`, A at `L+1` and C at `L+2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeLayout {
    modes: Vec<Mode>,
}

impl ModeLayout {
    /// Layout of the collision network at step `l >= 1` (`2l + 1` modes).
    pub fn collision(l: usize) -> Result<Self> {
        if l < 1 {
            return Err(Error::HorizonTooSmall { l, min: 1 });
        }
        let mut modes = Vec::with_capacity(2 * l + 1);
        for j in (1..l).rev() {
            modes.push(Mode::EnvB(j));
        }
        modes.push(Mode::B);
        modes.push(Mode::A);
        modes.push(Mode::C);
        for j in 1..l {
            modes.push(Mode::EnvC(j));
        }
        Ok(Self { modes })
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    /// Zero-based position of `mode` in the joint vector.
    pub fn position(&self, mode: Mode) -> Result<usize> {
        self.modes
            .iter()
            .position(|&m| m == mode)
            .ok_or(Error::UnknownMode(mode))
    }
}

/// Real symmetric `2N x 2N` quadrature covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovMatrix {
    data: DMatrix<f64>,
}

impl CovMatrix {
    /// Wraps a matrix after checking squareness, even dimension and symmetry
    /// (tolerance [`SYMMETRY_TOL`]); the stored matrix is symmetrized.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::NotSquare { rows: data.nrows(), cols: data.ncols() });
        }
        if !data.nrows().is_multiple_of(2) || data.nrows() == 0 {
            return Err(Error::OddDimension(data.nrows()));
        }
        let mut max_asym = 0.0f64;
        for i in 0..data.nrows() {
            for j in (i + 1)..data.ncols() {
                max_asym = max_asym.max((data[(i, j)] - data[(j, i)]).abs());
            }
        }
        if max_asym >= SYMMETRY_TOL {
            return Err(Error::NotSymmetric(max_asym));
        }
        let sym = 0.5 * (&data + data.transpose());
        Ok(Self { data: sym })
    }

    /// Vacuum of `modes` modes, `(1/2) I`.
    pub fn vacuum(modes: usize) -> Self {
        Self { data: DMatrix::identity(2 * modes, 2 * modes) * 0.5 }
    }

    pub fn modes(&self) -> usize {
        self.data.nrows() / 2
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    /// The 2x2 block coupling modes `i` and `j` (zero-based).
    pub fn block(&self, i: usize, j: usize) -> Matrix2<f64> {
        Matrix2::new(
            self.data[(2 * i, 2 * j)],
            self.data[(2 * i, 2 * j + 1)],
            self.data[(2 * i + 1, 2 * j)],
            self.data[(2 * i + 1, 2 * j + 1)],
        )
    }

    pub(crate) fn set_block(&mut self, i: usize, j: usize, b: &Matrix2<f64>) {
        self.data[(2 * i, 2 * j)] = b[(0, 0)];
        self.data[(2 * i, 2 * j + 1)] = b[(0, 1)];
        self.data[(2 * i + 1, 2 * j)] = b[(1, 0)];
        self.data[(2 * i + 1, 2 * j + 1)] = b[(1, 1)];
    }

    pub(crate) fn zeros(modes: usize) -> Self {
        Self { data: DMatrix::zeros(2 * modes, 2 * modes) }
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &CovMatrix) -> CovMatrix {
        let (n, m) = (self.dim(), other.dim());
        let mut data = DMatrix::zeros(n + m, n + m);
        data.view_mut((0, 0), (n, n)).copy_from(&self.data);
        data.view_mut((n, n), (m, m)).copy_from(&other.data);
        Self { data }
    }

    /// Symplectic eigenvalues: the `N` moduli of the eigenvalue pairs of
    /// `i Omega sigma`, sorted ascending. Computed through the Williamson
    /// route `K = sigma^{1/2} Omega sigma^{1/2}`; the spectrum of `K^T K` is
    /// the squared symplectic spectrum, doubled.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        let n = self.modes();
        let eig = self.data.clone().symmetric_eigen();
        let mut scaled = eig.eigenvectors.clone();
        for k in 0..2 * n {
            scaled.column_mut(k).scale_mut(eig.eigenvalues[k].max(0.0).sqrt());
        }
        let root = &scaled * eig.eigenvectors.transpose();
        let k = &root * omega(n) * &root;
        let m = k.transpose() * &k;
        let mut sq: Vec<f64> = m
            .symmetric_eigenvalues()
            .iter()
            .map(|v| v.max(0.0).sqrt())
            .collect();
        sq.sort_by(|a, b| a.partial_cmp(b).unwrap());
        (0..n).map(|i| 0.5 * (sq[2 * i] + sq[2 * i + 1])).collect()
    }

    /// Minimum eigenvalue of the Hermitian matrix `sigma + (i/2) Omega`,
    /// computed through the real embedding `[[sigma, -Omega/2], [Omega/2,
    /// sigma]]` whose spectrum doubles the Hermitian one.
    pub fn min_physical_eig(&self) -> f64 {
        let d = self.dim();
        let om = omega(self.modes());
        let mut emb = DMatrix::zeros(2 * d, 2 * d);
        emb.view_mut((0, 0), (d, d)).copy_from(&self.data);
        emb.view_mut((d, d), (d, d)).copy_from(&self.data);
        emb.view_mut((0, d), (d, d)).copy_from(&(-0.5 * &om));
        emb.view_mut((d, 0), (d, d)).copy_from(&(0.5 * &om));
        emb.symmetric_eigenvalues()
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }

    pub fn is_physical(&self, tol: f64) -> bool {
        self.min_physical_eig() >= -tol
    }

    /// Von Neumann entropy in nats, `sum_k f(nu_k)` over the symplectic
    /// spectrum. Eigenvalues within [`PURITY_CLAMP`] of 1/2 contribute zero;
    /// eigenvalues below `1/2 - UNPHYSICAL_NU_TOL` are an error.
    pub fn entropy(&self) -> Result<f64> {
        let mut s = 0.0;
        for nu in self.symplectic_eigenvalues() {
            if nu < 0.5 - UNPHYSICAL_NU_TOL {
                return Err(Error::UnphysicalEigenvalue(nu));
            }
            s += entropy_term(nu);
        }
        Ok(s)
    }

    /// Sub-covariance over `subset`, with 2x2 blocks in the order the subset
    /// lists them.
    pub fn reduce(&self, layout: &ModeLayout, subset: &[Mode]) -> Result<CovMatrix> {
        if layout.len() != self.modes() {
            return Err(Error::DimensionMismatch { left: layout.len(), right: self.modes() });
        }
        let positions: Vec<usize> = subset
            .iter()
            .map(|&m| layout.position(m))
            .collect::<Result<_>>()?;
        Ok(self.sub_modes(&positions))
    }

    /// Sub-covariance over zero-based mode positions, in the given order.
    pub fn sub_modes(&self, positions: &[usize]) -> CovMatrix {
        let k = positions.len();
        let mut data = DMatrix::zeros(2 * k, 2 * k);
        for (a, &i) in positions.iter().enumerate() {
            for (b, &j) in positions.iter().enumerate() {
                for u in 0..2 {
                    for v in 0..2 {
                        data[(2 * a + u, 2 * b + v)] = self.data[(2 * i + u, 2 * j + v)];
                    }
                }
            }
        }
        CovMatrix { data }
    }
}

/// `f(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2)`, clamped to zero at
/// the pure-state limit.
pub fn entropy_term(nu: f64) -> f64 {
    if nu <= 0.5 + PURITY_CLAMP {
        return 0.0;
    }
    (nu + 0.5) * (nu + 0.5).ln() - (nu - 0.5) * (nu - 0.5).ln()
}

/// Direct sum of `n` copies of the single-mode symplectic form
/// `[[0, 1], [-1, 0]]`, in interleaved quadrature ordering.
pub fn omega(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[(2 * i, 2 * i + 1)] = 1.0;
        m[(2 * i + 1, 2 * i)] = -1.0;
    }
    m
}

/// Covariance of the squeezed thermal state described by `spec`:
/// `[[X - Re Y, -Im Y], [-Im Y, X + Re Y]]`. At `phi = 0` the x quadrature is
/// anti-squeezed (`(n + 1/2) e^{2r}`).
pub fn single_mode_cov(spec: &SingleModeSpec) -> CovMatrix {
    let x = spec.chi_x();
    let y = spec.chi_y();
    CovMatrix {
        data: DMatrix::from_row_slice(2, 2, &[x - y.re, -y.im, -y.im, x + y.re]),
    }
}

/// Two-mode squeezed vacuum over `[A, B]` with real squeezing `xi`.
pub fn tmsv_cov(xi_ab: f64) -> CovMatrix {
    let c = xi_ab.cosh() / 2.0;
    let s = xi_ab.sinh() / 2.0;
    let mut cov = CovMatrix::zeros(2);
    let diag = Matrix2::new(c, 0.0, 0.0, c);
    let off = Matrix2::new(s, 0.0, 0.0, -s);
    cov.set_block(0, 0, &diag);
    cov.set_block(1, 1, &diag);
    cov.set_block(0, 1, &off);
    cov.set_block(1, 0, &off);
    cov
}

/// Single-mode squeezed vacuum: `diag(e^{xi}/2, e^{-xi}/2)` rotated by
/// `phi/2`.
pub fn squeezed_vac_cov(xi: f64, phi: f64) -> Result<CovMatrix> {
    if xi.is_nan() || xi < 0.0 {
        return Err(Error::NegativeSqueezing(xi));
    }
    let (s, c) = (phi / 2.0).sin_cos();
    let rot = Matrix2::new(c, -s, s, c);
    let diag = Matrix2::new(xi.exp() / 2.0, 0.0, 0.0, (-xi).exp() / 2.0);
    let m = rot * diag * rot.transpose();
    Ok(CovMatrix {
        data: DMatrix::from_row_slice(2, 2, &[m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]),
    })
}

/// Thermal state, `(n + 1/2) I`.
pub fn thermal_cov(n: f64) -> Result<CovMatrix> {
    if n.is_nan() || n < 0.0 {
        return Err(Error::NegativePhotonNumber(n));
    }
    Ok(CovMatrix { data: DMatrix::identity(2, 2) * (n + 0.5) })
}

/// Photon number of the reduced single mode of [`tmsv_cov`]`(xi)`:
/// `(cosh xi - 1)/2`. A thermal state with this `n` is exactly the reduced
/// state of either half of the pair.
pub fn tmsv_reduced_thermal_n(xi: f64) -> f64 {
    (xi.cosh() - 1.0) / 2.0
}

/// The alternative matching rule `n = sinh^2 xi`, which corresponds to a
/// two-mode squeezing convention with twice the exponent. Kept selectable so
/// both readings stay available.
pub fn tmsv_sinh2_thermal_n(xi: f64) -> f64 {
    xi.sinh().powi(2)
}
