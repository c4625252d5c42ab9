//! Defaults for sampling and tolerances, read from a `key = value` file and overridden by flags.

use std::path::Path;

use quake_core::Sign;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    pub samples: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// Arclength half-range for Fenchel-Nielsen figures.
    pub s_max: f64,
    /// Sample ranges are shrunk so that no emitted trace exceeds this.
    pub trace_cap: f64,
    pub teich_tol: f64,
    pub orient: String,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            samples: 400,
            r_min: -2.0,
            r_max: 2.0,
            s_max: 10.0,
            trace_cap: 1e3,
            teich_tol: 1e-7,
            orient: "+".into(),
        }
    }
}

impl Settings {
    pub fn load(path: &Path) -> CliResult<Settings> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> CliResult<Settings> {
        let s: Settings = toml::from_str(text).map_err(|e| CliError::Invalid(e.message().to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.samples < 2 {
            return Err(CliError::Invalid(format!("samples must be at least 2, got {}", self.samples)));
        }
        if !(self.r_min < self.r_max) {
            return Err(CliError::Invalid(format!("empty range [{}, {}]", self.r_min, self.r_max)));
        }
        if !(self.s_max > 0.0) {
            return Err(CliError::Invalid(format!("s_max must be positive, got {}", self.s_max)));
        }
        if !(self.trace_cap > 2.0) {
            return Err(CliError::Invalid(format!("trace_cap must exceed 2, got {}", self.trace_cap)));
        }
        if !(self.teich_tol > 0.0) {
            return Err(CliError::Invalid(format!("teich_tol must be positive, got {}", self.teich_tol)));
        }
        parse_orient(&self.orient)?;
        Ok(())
    }

    pub fn orient(&self) -> Sign {
        parse_orient(&self.orient).expect("validated")
    }
}

pub fn parse_orient(s: &str) -> CliResult<Sign> {
    match s.trim() {
        "+" | "forward" => Ok(Sign::Plus),
        "-" | "backward" => Ok(Sign::Minus),
        other => Err(CliError::Invalid(format!("orientation must be + or -, got {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_keep_defaults() {
        let s = Settings::parse("samples = 9\norient = \"-\"\n").unwrap();
        assert_eq!(s.samples, 9);
        assert_eq!(s.orient(), Sign::Minus);
        assert_eq!(s.r_max, 2.0);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Settings::parse("samples = 1").is_err());
        assert!(Settings::parse("r_min = 3.0").is_err());
        assert!(Settings::parse("orient = \"up\"").is_err());
        assert!(Settings::parse("colour = 1").is_err());
    }
}
