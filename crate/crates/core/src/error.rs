use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("realization requires hyperbolic framing traces (x = {x}, y = {y})")]
    NonHyperbolicFraming { x: f64, y: f64 },
    #[error("non-hyperbolic element (trace {0})")]
    NonHyperbolic(f64),
    #[error("extend via Klein symmetries (x = {0} < 0)")]
    NegativeTrace(f64),
    #[error("left the real locus (acosh argument {0} < 1)")]
    LeftRealLocus(f64),
    #[error("point outside chart (acosh argument {0} < 1)")]
    OutsideChart(f64),
    #[error("limit formula requires hyperbolic x (x = {0})")]
    LimitNeedsHyperbolic(f64),
    #[error("not in SL₂(ℤ) (determinant {0})")]
    NotUnimodular(i64),
    #[error("invalid slope ({0}, {1}): entries must be coprime and not both zero")]
    InvalidSlope(i64, i64),
    #[error("exceeds numeric horizon (magnitude ~1e{log10_magnitude:.0})")]
    NumericHorizon { log10_magnitude: f64 },
    #[error("{0}")]
    Domain(String),
}

impl Error {
    pub fn horizon(magnitude: f64) -> Self {
        let log10_magnitude = if magnitude.is_finite() {
            magnitude.abs().log10()
        } else {
            f64::INFINITY
        };
        Error::NumericHorizon { log10_magnitude }
    }

    /// Horizon error for a magnitude known only through its natural logarithm.
    pub fn horizon_exp(ln_magnitude: f64) -> Self {
        Error::NumericHorizon { log10_magnitude: ln_magnitude / std::f64::consts::LN_10 }
    }

    pub fn is_horizon(&self) -> bool {
        matches!(self, Error::NumericHorizon { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
