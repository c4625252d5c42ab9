//! Curves addressed on the command line: `p/q` slopes and the named family members.

use std::fmt;
use std::str::FromStr;

use quake_core::chgcoords::{build_framing, Framing};
use quake_core::families::{family1_framing, family2_framing, pa_twist};
use quake_core::{Slope, Word};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct NamedCurve {
    label: String,
    framing: Framing,
}

impl NamedCurve {
    pub fn slope(s: Slope) -> NamedCurve {
        let label = match (s.p(), s.q()) {
            (1, 0) => "alpha".to_string(),
            (0, 1) => "beta".to_string(),
            (1, 1) => "alphabeta".to_string(),
            (p, q) => format!("p{p}q{q}").replace('-', "m"),
        };
        NamedCurve { label, framing: build_framing(s) }
    }

    /// αβαⁿ⁻¹, with n = 1 the curve αβ.
    pub fn ab_power(n: u32) -> CliResult<NamedCurve> {
        if n == 0 {
            return Err(CliError::Invalid("abpow needs n ≥ 1".into()));
        }
        Ok(NamedCurve { label: format!("abpow{n}"), framing: family1_framing(n) })
    }

    /// Tⁿ(α).
    pub fn orbit_alpha(n: u32) -> NamedCurve {
        NamedCurve { label: format!("T{n}alpha"), framing: family2_framing(n) }
    }

    /// Tⁿ(β), framed through its homology class.
    pub fn orbit_beta(n: u32) -> CliResult<NamedCurve> {
        let (p, q) = pa_twist(n).apply(&Word::beta()).abelianize();
        let framing = build_framing(Slope::new(p, q)?);
        Ok(NamedCurve { label: format!("T{n}beta"), framing })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn framing(&self) -> &Framing {
        &self.framing
    }
}

impl fmt::Display for NamedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label, self.framing.slope())
    }
}

fn index(rest: &str, s: &str) -> CliResult<u32> {
    rest.parse().map_err(|_| CliError::Invalid(format!("cannot parse curve {s:?}")))
}

/// A slope given as `p/q` or as alpha, beta or alphabeta.
pub fn parse_slope(s: &str) -> CliResult<Slope> {
    Ok(match s.trim() {
        "alpha" => Slope::ALPHA,
        "beta" => Slope::BETA,
        "alphabeta" => Slope::ALPHA_BETA,
        other => other.parse()?,
    })
}

impl FromStr for NamedCurve {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<NamedCurve> {
        let s = s.trim();
        match s {
            "alpha" => return Ok(NamedCurve::slope(Slope::ALPHA)),
            "beta" => return Ok(NamedCurve::slope(Slope::BETA)),
            "alphabeta" => return Ok(NamedCurve::slope(Slope::ALPHA_BETA)),
            _ => {}
        }
        if let Some(n) = s.strip_prefix("abpow") {
            return NamedCurve::ab_power(index(n, s)?);
        }
        if let Some(rest) = s.strip_prefix('T') {
            if let Some(n) = rest.strip_suffix("alpha") {
                return Ok(NamedCurve::orbit_alpha(index(n, s)?));
            }
            if let Some(n) = rest.strip_suffix("beta") {
                return NamedCurve::orbit_beta(index(n, s)?);
            }
        }
        Ok(NamedCurve::slope(s.parse()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slopes_by_name() {
        assert_eq!(parse_slope("alpha").unwrap(), Slope::ALPHA);
        assert_eq!(parse_slope(" 2/3").unwrap(), Slope::new(2, 3).unwrap());
        assert!(parse_slope("abpow2").is_err());
    }

    fn slope_of(s: &str) -> (i64, i64) {
        let f = s.parse::<NamedCurve>().unwrap();
        let sl = f.framing().slope();
        (sl.p(), sl.q())
    }

    #[test]
    fn names_resolve_to_slopes() {
        assert_eq!(slope_of("alpha"), (1, 0));
        assert_eq!(slope_of("2/3"), (2, 3));
        assert_eq!(slope_of("-1/2"), (-1, 2));
        assert_eq!(slope_of("abpow3"), (3, 1));
        assert_eq!(slope_of("T0alpha"), (1, 0));
        assert_eq!(slope_of("T2alpha"), (2, 3));
        assert_eq!(slope_of("T0beta"), (0, 1));
    }

    #[test]
    fn orbit_beta_is_the_next_orbit_point_up_to_orientation() {
        for n in 1..4 {
            let b = format!("T{n}beta").parse::<NamedCurve>().unwrap();
            let (p, q) = (b.framing().slope().p(), b.framing().slope().q());
            let a = NamedCurve::orbit_alpha(n).framing().slope();
            assert_eq!((p * a.q() - q * a.p()).abs(), 1, "T{n}β meets T{n}α once");
        }
    }

    #[test]
    fn labels_are_file_safe() {
        assert_eq!("-1/2".parse::<NamedCurve>().unwrap().label(), "pm1q2");
        assert!("abpow0".parse::<NamedCurve>().is_err());
        assert!("Tfooalpha".parse::<NamedCurve>().is_err());
    }
}
