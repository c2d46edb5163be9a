//! Prints the tripartite mutual information series for the vacuum-environment
//! scenario. Negative transients mark information scrambling.

use gcm_core::evolve::{CState, EnvPattern, ScenarioConfig};
use gcm_core::info::info_series;
use gcm_core::optics::BSAngle;

fn main() -> gcm_core::Result<()> {
    let cfg = ScenarioConfig {
        l_max: 50,
        theta_ss: BSAngle::from_pi_multiple(0.4)?,
        theta_se: BSAngle::from_pi_multiple(0.35)?,
        theta_ee: BSAngle::from_pi_multiple(0.35)?,
        xi_ab: 1.0,
        c_state: CState::SqueezedVacuum { xi: 1.0, phi: 0.0 },
        env: EnvPattern::Vacuum,
    };
    for rec in info_series(&cfg)? {
        println!("L={} I3={}", rec.l, rec.i3);
    }
    Ok(())
}
