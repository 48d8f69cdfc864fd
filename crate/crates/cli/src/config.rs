use std::path::Path;

use serde::Deserialize;

use conflop::arcs::SceneJson;
use conflop::rational::{parse_q, CQ};
use conflop::{SceneConfig, StabilityParams};

use crate::commands::CliError;
use crate::Charges;

pub const DEFAULT_TRUNCATION: usize = 6;

/// Defaults read from `--config`; command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub z0: Option<[String; 2]>,
    pub z1: Option<[String; 2]>,
    pub n: Option<usize>,
    pub scene: Option<SceneJson>,
}

fn pair(p: &[String; 2]) -> Result<CQ, CliError> {
    Ok(CQ::new(parse_q(&p[0])?, parse_q(&p[1])?))
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::bad(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::bad(format!("bad config {}: {e}", path.display())))
    }

    /// Charges given by flags or the config file, if any.
    pub fn explicit_params(&self, c: &Charges) -> Result<Option<StabilityParams>, CliError> {
        let z0 = match (&c.z0, &self.z0) {
            (Some(s), _) => Some(CQ::parse_pair(s)?),
            (None, Some(p)) => Some(pair(p)?),
            (None, None) => None,
        };
        let z1 = match (&c.z1, &self.z1) {
            (Some(s), _) => Some(CQ::parse_pair(s)?),
            (None, Some(p)) => Some(pair(p)?),
            (None, None) => None,
        };
        match (z0, z1) {
            (Some(a), Some(b)) => Ok(Some(StabilityParams::new(a, b)?)),
            (None, None) => Ok(None),
            _ => Err(CliError::bad("give both z0 and z1 or neither")),
        }
    }

    /// Explicit charges, else the standard ones (swapped when `flopped`).
    pub fn params(&self, c: &Charges, flopped: bool) -> Result<StabilityParams, CliError> {
        Ok(self.explicit_params(c)?.unwrap_or_else(|| {
            let p = StabilityParams::standard();
            if flopped {
                p.swapped()
            } else {
                p
            }
        }))
    }

    pub fn truncation(&self, n: Option<usize>) -> usize {
        n.or(self.n).unwrap_or(DEFAULT_TRUNCATION)
    }

    pub fn scene(&self) -> Result<SceneConfig, CliError> {
        match &self.scene {
            Some(s) => Ok(SceneConfig::from_json(s)?),
            None => Ok(SceneConfig::standard()),
        }
    }
}
