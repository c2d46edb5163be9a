//! Bipartite and tripartite mutual information over the (A,B,C) covariance.
//!
//! Entropies are in nats throughout. The tripartite combination
//! `I3 = I2(A:B) + I2(A:C) - I2(A:BC)` is negative when information about A
//! has been delocalized over B and C: the joint system holds more correlation
//! with A than the parts do.

use crate::evolve::{system_cov, ScenarioConfig};
use crate::gstate::CovMatrix;
use crate::{Error, Result};

/// The partner subsystem of a bipartite split against mode A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    B,
    C,
    BC,
}

/// Entropies and mutual informations at one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoRecord {
    pub l: usize,
    pub i2_ab: f64,
    pub i2_ac: f64,
    pub i2_abc: f64,
    pub i3: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub s_c: f64,
    pub s_ab: f64,
    pub s_ac: f64,
    pub s_abc: f64,
    pub s_bc: f64,
}

fn check_three_modes(sigma: &CovMatrix) -> Result<()> {
    if sigma.modes() != 3 {
        return Err(Error::DimensionMismatch { left: sigma.dim(), right: 6 });
    }
    Ok(())
}

/// Bipartite mutual information `I2(A:X) = S(A) + S(X) - S(AX)` on a
/// three-mode covariance ordered `(A, B, C)`.
pub fn bmi(sigma_abc: &CovMatrix, partition: Partition) -> Result<f64> {
    check_three_modes(sigma_abc)?;
    let s_a = sigma_abc.sub_modes(&[0]).entropy()?;
    let (s_x, s_ax) = match partition {
        Partition::B => (
            sigma_abc.sub_modes(&[1]).entropy()?,
            sigma_abc.sub_modes(&[0, 1]).entropy()?,
        ),
        Partition::C => (
            sigma_abc.sub_modes(&[2]).entropy()?,
            sigma_abc.sub_modes(&[0, 2]).entropy()?,
        ),
        Partition::BC => (
            sigma_abc.sub_modes(&[1, 2]).entropy()?,
            sigma_abc.entropy()?,
        ),
    };
    Ok(s_a + s_x - s_ax)
}

/// Tripartite mutual information from one shared set of reduced entropies.
pub fn tmi(sigma_abc: &CovMatrix) -> Result<f64> {
    Ok(info_record(sigma_abc, 0)?.i3)
}

/// All entropies and mutual informations of a three-mode covariance ordered
/// `(A, B, C)`. The `I3` field is formed from the three `I2` fields, so the
/// defining identity holds exactly in floating point.
pub fn info_record(sigma_abc: &CovMatrix, l: usize) -> Result<InfoRecord> {
    check_three_modes(sigma_abc)?;
    let s_a = sigma_abc.sub_modes(&[0]).entropy()?;
    let s_b = sigma_abc.sub_modes(&[1]).entropy()?;
    let s_c = sigma_abc.sub_modes(&[2]).entropy()?;
    let s_ab = sigma_abc.sub_modes(&[0, 1]).entropy()?;
    let s_ac = sigma_abc.sub_modes(&[0, 2]).entropy()?;
    let s_bc = sigma_abc.sub_modes(&[1, 2]).entropy()?;
    let s_abc = sigma_abc.entropy()?;
    let i2_ab = s_a + s_b - s_ab;
    let i2_ac = s_a + s_c - s_ac;
    let i2_abc = s_a + s_bc - s_abc;
    Ok(InfoRecord {
        l,
        i2_ab,
        i2_ac,
        i2_abc,
        i3: i2_ab + i2_ac - i2_abc,
        s_a,
        s_b,
        s_c,
        s_ab,
        s_ac,
        s_abc,
        s_bc,
    })
}

/// One record per step `L = 1..=l_max`.
pub fn info_series(cfg: &ScenarioConfig) -> Result<Vec<InfoRecord>> {
    cfg.validate()?;
    (1..=cfg.l_max)
        .map(|l| info_record(&system_cov(cfg, l)?, l))
        .collect()
}
