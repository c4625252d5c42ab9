//! Coordinate charts, all converted through trace coordinates.

use std::fmt;
use std::str::FromStr;

use quake_core::coords::{inverted, simplex, simplex_plane, spherical, zeta, zeta_inv};
use quake_core::quake::{nu, nu_inv};
use quake_core::{Error, FNPoint, TracePoint, TriangleLengths};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    Trace,
    Triangle,
    Fn,
    Spherical,
    Inverted,
    Simplex,
    SimplexPlane,
}

impl Chart {
    pub const ALL: [Chart; 7] = [
        Chart::Trace,
        Chart::Triangle,
        Chart::Fn,
        Chart::Spherical,
        Chart::Inverted,
        Chart::Simplex,
        Chart::SimplexPlane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Chart::Trace => "trace",
            Chart::Triangle => "triangle",
            Chart::Fn => "fn",
            Chart::Spherical => "spherical",
            Chart::Inverted => "inverted",
            Chart::Simplex => "simplex",
            Chart::SimplexPlane => "simplex-plane",
        }
    }

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Chart::Trace => &["x", "y", "z"],
            Chart::Triangle => &["a", "b", "c"],
            Chart::Fn => &["ell", "tau"],
            Chart::Spherical => &["theta", "phi", "rad"],
            Chart::Inverted => &["theta", "phi", "inv_rad"],
            Chart::Simplex => &["sx", "sy", "sz"],
            Chart::SimplexPlane => &["u", "v"],
        }
    }

    pub fn dim(self) -> usize {
        self.columns().len()
    }

    pub fn is_planar(self) -> bool {
        self.dim() == 2
    }

    pub fn from_trace(self, v: TracePoint) -> CliResult<Vec<f64>> {
        Ok(match self {
            Chart::Trace => v.to_array().to_vec(),
            Chart::Triangle => nu(v)?.to_array().to_vec(),
            Chart::Fn => {
                let u = zeta(v)?;
                vec![u.ell, u.tau]
            }
            Chart::Spherical => {
                let s = spherical(v)?;
                vec![s.theta, s.phi, s.rad]
            }
            Chart::Inverted => {
                let s = inverted(v)?;
                vec![s.theta, s.phi, s.rad]
            }
            Chart::Simplex => {
                let s = simplex(v)?;
                vec![s.p, s.q, s.r]
            }
            Chart::SimplexPlane => {
                let (u, w) = simplex_plane(simplex(v)?);
                vec![u, w]
            }
        })
    }

    pub fn to_trace(self, c: &[f64]) -> CliResult<TracePoint> {
        if c.len() != self.dim() {
            return Err(CliError::Invalid(format!(
                "{} chart takes {} coordinates, got {}",
                self.name(),
                self.dim(),
                c.len()
            )));
        }
        if c.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Invalid(format!("non-finite coordinate in {c:?}")));
        }
        Ok(match self {
            Chart::Trace => TracePoint::new(c[0], c[1], c[2]),
            Chart::Triangle => nu_inv(TriangleLengths::new(c[0], c[1], c[2])),
            Chart::Fn => zeta_inv(FNPoint::new(c[0], c[1]))?,
            Chart::Spherical => from_spherical(c[0], c[1], c[2])?,
            Chart::Inverted => {
                if c[2] == 0.0 {
                    return Err(Error::Domain("cannot invert a zero radius".into()).into());
                }
                from_spherical(c[0], c[1], 1.0 / c[2])?
            }
            Chart::Simplex => from_simplex(c[0], c[1], c[2])?,
            Chart::SimplexPlane => {
                let r = 2.0 * c[1] / 3f64.sqrt();
                let q = c[0] - r / 2.0;
                from_simplex(1.0 - q - r, q, r)?
            }
        })
    }
}

fn from_spherical(theta: f64, phi: f64, rad: f64) -> CliResult<TracePoint> {
    let sin_phi = phi.sin();
    if sin_phi == 0.0 {
        return Err(Error::Domain(format!("polar angle {phi} leaves z undetermined")).into());
    }
    Ok(TracePoint::new(rad * theta.cos(), rad * theta.sin(), rad * phi.cos() / sin_phi))
}

/// Positive traces with x/(yz) = p, y/(xz) = q, z/(xy) = r.
fn from_simplex(p: f64, q: f64, r: f64) -> CliResult<TracePoint> {
    let root = |u: f64| -> CliResult<f64> {
        if !(u > 0.0) {
            return Err(Error::Domain(format!("√ argument {u} is not positive")).into());
        }
        Ok(1.0 / u.sqrt())
    };
    Ok(TracePoint::new(root(q * r)?, root(p * r)?, root(p * q)?))
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Chart {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Chart> {
        let s = s.trim();
        Chart::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Chart::ALL.iter().map(|c| c.name()).collect();
                CliError::Invalid(format!("unknown chart {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// A point given in some chart, written `chart:c1,c2[,c3]`; a bare list is a trace point.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: Vec<f64>,
}

impl ChartPoint {
    pub fn trace(v: TracePoint) -> ChartPoint {
        ChartPoint { chart: Chart::Trace, coords: v.to_array().to_vec() }
    }

    pub fn to_trace(&self) -> CliResult<TracePoint> {
        self.chart.to_trace(&self.coords)
    }
}

pub fn parse_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Invalid(format!("cannot parse number {t:?} in {s:?}"))))
        .collect()
}

impl FromStr for ChartPoint {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<ChartPoint> {
        let (chart, list) = match s.split_once(':') {
            Some((c, rest)) => (c.parse()?, rest),
            None => (Chart::Trace, s),
        };
        let coords = parse_list(list)?;
        if coords.len() != chart.dim() {
            return Err(CliError::Invalid(format!("{chart} point needs {} coordinates, got {s:?}", chart.dim())));
        }
        Ok(ChartPoint { chart, coords })
    }
}

/// Converts between two charts through trace coordinates.
pub fn convert(p: &ChartPoint, to: Chart) -> CliResult<Vec<f64>> {
    to.from_trace(p.to_trace()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quake_core::charvar::standard_starts;

    #[test]
    fn every_chart_round_trips() {
        for v in standard_starts() {
            for c in Chart::ALL {
                let back = c.to_trace(&c.from_trace(v).unwrap()).unwrap();
                assert!(back.rel_dist(&v) < 1e-12, "{c}: {back} vs {v}");
            }
        }
    }

    #[test]
    fn hexagonal_point_in_simple_charts() {
        let v = TracePoint::new(3.0, 3.0, 3.0);
        for x in Chart::Simplex.from_trace(v).unwrap() {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
        let tri = Chart::Triangle.from_trace(v).unwrap();
        assert!((tri[0] - 1.5f64.acosh()).abs() < 1e-15);
        assert!((tri[0] - 0.962_423_650_119_206_9).abs() < 1e-15);
    }

    #[test]
    fn parses_tagged_points() {
        let p: ChartPoint = "fn:1.5,-0.25".parse().unwrap();
        assert_eq!(p.chart, Chart::Fn);
        assert_eq!(p.coords, vec![1.5, -0.25]);
        assert_eq!("3,3,3".parse::<ChartPoint>().unwrap().chart, Chart::Trace);
        assert!("fn:1,2,3".parse::<ChartPoint>().is_err());
        assert!("disk:1,2".parse::<ChartPoint>().is_err());
    }

    #[test]
    fn fn_domain_errors_name_the_argument() {
        let err = Chart::Fn.from_trace(TracePoint::new(1.5, 3.0, 3.0)).unwrap_err();
        assert!(err.to_string().contains("1.5") || err.to_string().contains("0.75"), "{err}");
    }
}
