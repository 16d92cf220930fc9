use std::path::Path;

use clap::ValueEnum;
use serde::Deserialize;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "PREIMAGE_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Svg,
}

/// Caps, defaults and output format for one run.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Initial working precision in bits.
    pub precision: u32,
    pub precision_cap: u32,
    pub group_cap: usize,
    pub point_cap: usize,
    pub depth: usize,
    pub window: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: 64,
            precision_cap: preimage_core::scalar::DEFAULT_PRECISION_CAP,
            group_cap: preimage_core::galois::DEFAULT_GROUP_CAP,
            point_cap: preimage_core::orbits::DEFAULT_POINT_CAP,
            depth: 12,
            window: 8,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("malformed config {}: {e}", path.display()))
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.precision_cap == 0 || self.group_cap == 0 || self.point_cap == 0 {
            return Err("caps must be positive".into());
        }
        if self.precision > self.precision_cap {
            return Err(format!("precision {} exceeds the precision cap {}", self.precision, self.precision_cap));
        }
        if self.window > self.depth {
            return Err(format!("window {} exceeds depth {}", self.window, self.depth));
        }
        Ok(())
    }
}
