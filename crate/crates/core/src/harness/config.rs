//! Plain-text run configuration: `key = value` lines, `#` comments,
//! case-sensitive keys.

use crate::potential::PotentialSolver;
use crate::resistivity::{EtaMode, LimiterParams};
use crate::timestepper::SchemeConfig;
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("missing config key `{0}`")]
    Missing(String),
    #[error("bad value `{val}` for config key `{key}`")]
    Bad { key: String, val: String },
    #[error("malformed config line {line}: `{text}`")]
    Malformed { line: usize, text: String },
    #[error("cannot read config {0}: {1}")]
    Io(std::path::PathBuf, std::io::Error),
}

#[derive(Debug, Clone, Default)]
pub struct Config {
    pairs: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut pairs = BTreeMap::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Malformed {
                line: ln + 1,
                text: raw.to_string(),
            })?;
            pairs.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Config { pairs })
    }

    pub fn from_file(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(path.to_path_buf(), e))?;
        Config::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.pairs.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.raw(key)
            .ok_or_else(|| ConfigError::Missing(key.to_string()))
    }

    /// Typed lookup; absent keys return the default, unparsable values fail.
    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| ConfigError::Bad {
                key: key.to_string(),
                val: v.to_string(),
            }),
        }
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| ConfigError::Bad {
                    key: key.to_string(),
                    val: v.to_string(),
                }),
        }
    }

    /// on/off/true/false flags.
    pub fn flag_or(&self, key: &str, default: bool) -> Result<bool, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some("on") | Some("true") | Some("1") => Ok(true),
            Some("off") | Some("false") | Some("0") => Ok(false),
            Some(v) => Err(ConfigError::Bad {
                key: key.to_string(),
                val: v.to_string(),
            }),
        }
    }

    /// Scheme parameters on top of a caller-supplied default (problem
    /// defaults go in `base`, explicit keys override).
    pub fn scheme(&self, base: SchemeConfig) -> Result<SchemeConfig, ConfigError> {
        let mut cfg = base;
        cfg.cfl = self.get_or("cfl", cfg.cfl)?;
        cfg.dt_max = self.get_or("dt_max", cfg.dt_max)?;
        cfg.max_steps = self.get_or("max_steps", cfg.max_steps)?;
        cfg.corrector = self.flag_or("corrector", cfg.corrector)?;
        cfg.ct25d_full = self.flag_or("ct25d_full", cfg.ct25d_full)?;
        cfg.weno = self.flag_or("weno", cfg.weno)?;
        cfg.solver = match self.raw("potential_solver") {
            None => cfg.solver,
            Some("rusanov") => PotentialSolver::Rusanov,
            Some("force") => PotentialSolver::Force,
            Some(v) => {
                return Err(ConfigError::Bad {
                    key: "potential_solver".to_string(),
                    val: v.to_string(),
                })
            }
        };
        cfg.limiter = self.limiter(cfg.limiter)?;
        Ok(cfg)
    }

    pub fn limiter(&self, base: LimiterParams) -> Result<LimiterParams, ConfigError> {
        let mut lim = base;
        lim.lambda_self = self.get_or("limiter.lambda_self", lim.lambda_self)?;
        lim.lambda_nbr = self.get_or("limiter.lambda_nbr", lim.lambda_nbr)?;
        lim.e = self.get_or("limiter.e", lim.e)?;
        lim.eta_scale = self.get_or("limiter.eta_scale", lim.eta_scale)?;
        lim.enabled = self.flag_or("limiter.enabled", lim.enabled)?;
        lim.eta_mode = match self.raw("limiter.eta_mode") {
            None => lim.eta_mode,
            Some("advection") => EtaMode::Advection,
            Some("mhd") => EtaMode::Mhd,
            Some(v) => {
                return Err(ConfigError::Bad {
                    key: "limiter.eta_mode".to_string(),
                    val: v.to_string(),
                })
            }
        };
        Ok(lim)
    }
}
