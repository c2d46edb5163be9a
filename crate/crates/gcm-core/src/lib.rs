//! Stroboscopic simulation of a three-mode Gaussian bosonic system coupled to
//! beam-splitter-mediated environments.
//!
//! An auxiliary mode `A` is entangled with system mode `B` through a two-mode
//! squeezed vacuum; `B` and `C` collide with each other and with chains of
//! fresh environment modes. Everything stays Gaussian with zero first moments,
//! so states are carried as quadrature covariance matrices and dynamics as
//! orthogonal mode-scattering matrices lifted to symplectic transforms.
//!
//! Module map:
//! - [`gstate`]: Gaussian state constructors, covariance bookkeeping,
//!   symplectic spectra, von Neumann entropy.
//! - [`optics`]: beam-splitter scattering matrices, the composed collision
//!   network, and the single-channel network.
//! - [`evolve`]: scenario assembly, covariance propagation, and the
//!   closed-form comparator for the reduced (A,B,C) block.
//! - [`info`]: bipartite and tripartite mutual information.
//! - [`nonmarkov`]: Gaussian channel extraction, divisibility test, the
//!   non-Markovianity measure, and the angle-plane phase diagram.

pub mod evolve;
pub mod gstate;
pub mod info;
pub mod nonmarkov;
pub mod optics;

use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the simulator modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mean photon number must be nonnegative, got {0}")]
    NegativePhotonNumber(f64),
    #[error("squeezing strength must be nonnegative, got {0}")]
    NegativeSqueezing(f64),
    #[error("displacement must vanish in this model, got {0}")]
    NonzeroDisplacement(Complex64),
    #[error("beam-splitter angle {0} lies outside [0, pi/2]")]
    AngleOutOfRange(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("covariance dimension {0} is odd")]
    OddDimension(usize),
    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),
    #[error("matrix is not orthogonal (max |S S^T - I| = {0:.3e})")]
    NotOrthogonal(f64),
    #[error("unphysical covariance: symplectic eigenvalue {0} below 1/2")]
    UnphysicalEigenvalue(f64),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("mode {0:?} is not part of the layout")]
    UnknownMode(gstate::Mode),
    #[error("collision index j = {j} is out of range at step {l}")]
    CollisionIndexOutOfRange { j: usize, l: usize },
    #[error("step horizon {l} is too small, need at least {min}")]
    HorizonTooSmall { l: usize, min: usize },
    #[error("environment list holds {have} specs but step {l} needs {need}")]
    EnvListTooShort { have: usize, need: usize, l: usize },
    #[error("degenerate intermediate map at step {l}: c11({lm1}) = {c11:.3e}", lm1 = l - 1)]
    DegenerateStep { l: usize, c11: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
