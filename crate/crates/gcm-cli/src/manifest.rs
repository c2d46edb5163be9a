//! Per-run manifest tying outputs to the canonical config digest.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::CliResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub config_digest: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, cfg: &Config, outputs: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_digest: cfg.digest(),
            outputs,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, out_dir: &Path) -> CliResult<()> {
        std::fs::write(out_dir.join("manifest.json"), self.to_json())?;
        Ok(())
    }
}
