//! JSON experiment configuration.
//!
//! Angles are given as multiples of pi in fields suffixed `_pi`; unknown
//! fields are rejected. The canonical serialization of a parsed config (and
//! its SHA-256 digest) identifies a run in the manifest.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use gcm_core::evolve::{CState, EnvPattern, ScenarioConfig};
use gcm_core::gstate::SingleModeSpec;
use gcm_core::optics::BSAngle;

use crate::{CliError, CliResult};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub l_max: usize,
    pub theta_ss_pi: f64,
    pub theta_se_pi: f64,
    pub theta_ee_pi: f64,
    pub xi_ab: f64,
    pub c_state: CStateCfg,
    pub env: EnvCfg,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseCfg>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CStateCfg {
    /// Squeezed vacuum with parameter `xi` (variances `e^{+-xi}/2`).
    Squeezed {
        xi: f64,
        #[serde(default)]
        phi_pi: f64,
    },
    Thermal { n: f64 },
    /// Generic squeezed thermal mode, `X = (n + 1/2) cosh 2r`.
    Generic {
        n: f64,
        r: f64,
        #[serde(default)]
        phi_pi: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EnvCfg {
    Vacuum,
    SqueezedSame {
        r: f64,
        #[serde(default)]
        phi_pi: f64,
    },
    SqueezedAlternative { r: f64 },
    Thermal { n: f64 },
    List(Vec<EnvModeCfg>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvModeCfg {
    pub n: f64,
    pub r: f64,
    #[serde(default)]
    pub phi_pi: f64,
}

/// One-axis parameter sweep. Angle-valued axes take multiples of pi.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SweepCfg {
    /// Squeezing-angle difference between the environments and mode C;
    /// requires a `squeezed_same` environment.
    DeltaPhi { values_pi: Vec<f64> },
    ThetaEe { values_pi: Vec<f64> },
    ThetaSe { values_pi: Vec<f64> },
    /// Environment mean photon number; requires a `thermal` environment.
    NE { values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseCfg {
    #[serde(default = "default_phase_l")]
    pub l: usize,
    #[serde(default = "default_grid_points")]
    pub se_points: usize,
    #[serde(default = "default_grid_points")]
    pub ee_points: usize,
}

fn default_phase_l() -> usize {
    50
}

fn default_grid_points() -> usize {
    51
}

impl Default for PhaseCfg {
    fn default() -> Self {
        Self { l: default_phase_l(), se_points: default_grid_points(), ee_points: default_grid_points() }
    }
}

fn angle_field(name: &str, value_pi: f64) -> CliResult<BSAngle> {
    if !(0.0..=0.5).contains(&value_pi) {
        return Err(CliError::Config(format!(
            "{name}: value {value_pi} is outside [0, 0.5] (multiples of pi)"
        )));
    }
    BSAngle::from_pi_multiple(value_pi)
        .map_err(|e| CliError::Config(format!("{name}: {e}")))
}

fn nonnegative(name: &str, value: f64) -> CliResult<f64> {
    if value.is_nan() || value < 0.0 {
        return Err(CliError::Config(format!("{name}: value {value} must be nonnegative")));
    }
    Ok(value)
}

impl Config {
    /// Parses and validates a JSON document, reporting the offending field
    /// path and position on failure.
    pub fn from_json(text: &str) -> CliResult<Config> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Config = serde_path_to_error::deserialize(de).map_err(|e| {
            let inner = e.inner();
            CliError::Config(format!(
                "line {} column {} (field path `{}`): {}",
                inner.line(),
                inner.column(),
                e.path(),
                inner
            ))
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.l_max < 1 {
            return Err(CliError::Config("l_max: must be at least 1".into()));
        }
        angle_field("theta_ss_pi", self.theta_ss_pi)?;
        angle_field("theta_se_pi", self.theta_se_pi)?;
        angle_field("theta_ee_pi", self.theta_ee_pi)?;
        if !self.xi_ab.is_finite() {
            return Err(CliError::Config("xi_ab: must be finite".into()));
        }
        match &self.c_state {
            CStateCfg::Squeezed { xi, .. } => {
                nonnegative("c_state.squeezed.xi", *xi)?;
            }
            CStateCfg::Thermal { n } => {
                nonnegative("c_state.thermal.n", *n)?;
            }
            CStateCfg::Generic { n, r, .. } => {
                nonnegative("c_state.generic.n", *n)?;
                nonnegative("c_state.generic.r", *r)?;
            }
        }
        match &self.env {
            EnvCfg::Vacuum => {}
            EnvCfg::SqueezedSame { r, .. } | EnvCfg::SqueezedAlternative { r } => {
                nonnegative("env.r", *r)?;
            }
            EnvCfg::Thermal { n } => {
                nonnegative("env.n", *n)?;
            }
            EnvCfg::List(list) => {
                if self.l_max >= 2 && list.len() != self.l_max - 1 {
                    return Err(CliError::Config(format!(
                        "env.list: holds {} specs, l_max = {} needs exactly {}",
                        list.len(),
                        self.l_max,
                        self.l_max - 1
                    )));
                }
                for (i, mode) in list.iter().enumerate() {
                    nonnegative(&format!("env.list[{i}].n"), mode.n)?;
                    nonnegative(&format!("env.list[{i}].r"), mode.r)?;
                }
            }
        }
        if let Some(sweep) = &self.sweep {
            match sweep {
                SweepCfg::DeltaPhi { values_pi } => {
                    if !matches!(self.env, EnvCfg::SqueezedSame { .. }) {
                        return Err(CliError::Config(
                            "sweep.delta_phi: requires a squeezed_same environment".into(),
                        ));
                    }
                    if values_pi.is_empty() {
                        return Err(CliError::Config("sweep.delta_phi.values_pi: empty".into()));
                    }
                }
                SweepCfg::ThetaEe { values_pi } => {
                    for (i, v) in values_pi.iter().enumerate() {
                        angle_field(&format!("sweep.theta_ee.values_pi[{i}]"), *v)?;
                    }
                    if values_pi.is_empty() {
                        return Err(CliError::Config("sweep.theta_ee.values_pi: empty".into()));
                    }
                }
                SweepCfg::ThetaSe { values_pi } => {
                    for (i, v) in values_pi.iter().enumerate() {
                        angle_field(&format!("sweep.theta_se.values_pi[{i}]"), *v)?;
                    }
                    if values_pi.is_empty() {
                        return Err(CliError::Config("sweep.theta_se.values_pi: empty".into()));
                    }
                }
                SweepCfg::NE { values } => {
                    if !matches!(self.env, EnvCfg::Thermal { .. }) {
                        return Err(CliError::Config(
                            "sweep.n_e: requires a thermal environment".into(),
                        ));
                    }
                    for (i, v) in values.iter().enumerate() {
                        nonnegative(&format!("sweep.n_e.values[{i}]"), *v)?;
                    }
                    if values.is_empty() {
                        return Err(CliError::Config("sweep.n_e.values: empty".into()));
                    }
                }
            }
        }
        if let Some(phase) = &self.phase {
            if phase.l < 3 {
                return Err(CliError::Config("phase.l: must be at least 3".into()));
            }
            if phase.se_points < 2 || phase.ee_points < 2 {
                return Err(CliError::Config("phase grid: needs at least 2 points per axis".into()));
            }
        }
        Ok(())
    }

    /// Canonical serialization: compact JSON of the parsed value, with the
    /// struct-declared field order.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    /// Hex SHA-256 of [`Config::canonical_json`].
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.canonical_json().as_bytes());
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The squeezing angle of mode C in radians (zero for thermal C), used
    /// as the reference point of `delta_phi` sweeps.
    pub fn c_phi(&self) -> f64 {
        match &self.c_state {
            CStateCfg::Squeezed { phi_pi, .. } => phi_pi * PI,
            CStateCfg::Thermal { .. } => 0.0,
            CStateCfg::Generic { phi_pi, .. } => phi_pi * PI,
        }
    }

    /// Converts to the solver-side scenario description.
    pub fn to_scenario(&self) -> CliResult<ScenarioConfig> {
        let c_state = match &self.c_state {
            CStateCfg::Squeezed { xi, phi_pi } => {
                CState::SqueezedVacuum { xi: *xi, phi: phi_pi * PI }
            }
            CStateCfg::Thermal { n } => CState::Thermal { n: *n },
            CStateCfg::Generic { n, r, phi_pi } => {
                CState::Generic(SingleModeSpec::new(*n, *r, phi_pi * PI)?)
            }
        };
        let env = match &self.env {
            EnvCfg::Vacuum => EnvPattern::Vacuum,
            EnvCfg::SqueezedSame { r, phi_pi } => {
                EnvPattern::SqueezedSame { r: *r, phi: phi_pi * PI }
            }
            EnvCfg::SqueezedAlternative { r } => EnvPattern::SqueezedAlternative { r: *r },
            EnvCfg::Thermal { n } => EnvPattern::Thermal { n: *n },
            EnvCfg::List(list) => EnvPattern::List(
                list.iter()
                    .map(|m| SingleModeSpec::new(m.n, m.r, m.phi_pi * PI))
                    .collect::<gcm_core::Result<_>>()?,
            ),
        };
        let cfg = ScenarioConfig {
            l_max: self.l_max,
            theta_ss: angle_field("theta_ss_pi", self.theta_ss_pi)?,
            theta_se: angle_field("theta_se_pi", self.theta_se_pi)?,
            theta_ee: angle_field("theta_ee_pi", self.theta_ee_pi)?,
            xi_ab: self.xi_ab,
            c_state,
            env,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The per-point scenario configs of a sweep, with the axis value as
    /// configured (pi multiples for angle axes).
    pub fn sweep_points(&self) -> CliResult<Vec<(f64, Config)>> {
        let sweep = self
            .sweep
            .as_ref()
            .ok_or_else(|| CliError::Config("sweep: missing (use `gcm evolve` for a single series)".into()))?;
        let mut points = Vec::new();
        match sweep {
            SweepCfg::DeltaPhi { values_pi } => {
                let (r, _) = match &self.env {
                    EnvCfg::SqueezedSame { r, phi_pi } => (*r, *phi_pi),
                    _ => unreachable!("validated"),
                };
                for &dphi_pi in values_pi {
                    let mut point = self.clone();
                    point.sweep = None;
                    point.env = EnvCfg::SqueezedSame {
                        r,
                        phi_pi: self.c_phi() / PI + dphi_pi,
                    };
                    points.push((dphi_pi, point));
                }
            }
            SweepCfg::ThetaEe { values_pi } => {
                for &v in values_pi {
                    let mut point = self.clone();
                    point.sweep = None;
                    point.theta_ee_pi = v;
                    points.push((v, point));
                }
            }
            SweepCfg::ThetaSe { values_pi } => {
                for &v in values_pi {
                    let mut point = self.clone();
                    point.sweep = None;
                    point.theta_se_pi = v;
                    points.push((v, point));
                }
            }
            SweepCfg::NE { values } => {
                for &n in values {
                    let mut point = self.clone();
                    point.sweep = None;
                    point.env = EnvCfg::Thermal { n };
                    points.push((n, point));
                }
            }
        }
        Ok(points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_json() -> String {
        r#"{
            "l_max": 10,
            "theta_ss_pi": 0.4,
            "theta_se_pi": 0.35,
            "theta_ee_pi": 0.35,
            "xi_ab": 1.0,
            "c_state": {"squeezed": {"xi": 1.0}},
            "env": "vacuum"
        }"#
        .to_string()
    }

    #[test]
    fn parses_and_round_trips() {
        let cfg = Config::from_json(&base_json()).unwrap();
        let canon = cfg.canonical_json();
        let again = Config::from_json(&canon).unwrap();
        assert_eq!(cfg, again);
        assert_eq!(cfg.digest(), again.digest());
        assert_eq!(again.canonical_json(), canon);
    }

    #[test]
    fn rejects_unknown_fields_with_path() {
        let bad = base_json().replace("\"xi_ab\"", "\"xi_zz\"");
        let err = Config::from_json(&bad).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("xi_zz"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn rejects_out_of_range_angle_with_field_name() {
        let bad = base_json().replace("0.35,", "0.51,");
        let err = Config::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("theta_se_pi"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn env_list_length_must_match() {
        let bad = base_json().replace(
            "\"vacuum\"",
            r#"{"list": [{"n": 0.0, "r": 0.0}]}"#,
        );
        let err = Config::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("env.list"), "{err}");
    }

    #[test]
    fn sweep_axis_env_requirements() {
        let mut cfg = Config::from_json(&base_json()).unwrap();
        cfg.sweep = Some(SweepCfg::DeltaPhi { values_pi: vec![0.0, 1.0] });
        assert!(cfg.validate().is_err());
        cfg.env = EnvCfg::SqueezedSame { r: 0.5, phi_pi: 0.0 };
        assert!(cfg.validate().is_ok());
        let points = cfg.sweep_points().unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[1].1.env, EnvCfg::SqueezedSame { r: 0.5, phi_pi: 1.0 });
    }

    #[test]
    fn scenario_conversion() {
        let cfg = Config::from_json(&base_json()).unwrap();
        let sc = cfg.to_scenario().unwrap();
        assert_eq!(sc.l_max, 10);
        assert!((sc.theta_ss.theta() - 0.4 * PI).abs() < 1e-15);
    }
}
