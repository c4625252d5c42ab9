//! Earthquake flows about the framing curves in trace and triangle-length coordinates.

use crate::charvar::{kappa, sigma, CurveName, Permutation, Sign, TracePoint};
use crate::error::{Error, Result};
use crate::numeric::{acosh, half_length, EXP_HORIZON};
use crate::rep::sinh_ratio;

/// Half-lengths of the α, β and αβ geodesics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleLengths {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleLengths {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        TriangleLengths { a, b, c }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// cosh²a + cosh²b + cosh²c − 2·cosh a·cosh b·cosh c, zero on the Teichmüller locus.
    pub fn collar_defect(&self) -> f64 {
        let (ca, cb, cc) = (self.a.cosh(), self.b.cosh(), self.c.cosh());
        ca * ca + cb * cb + cc * cc - 2.0 * ca * cb * cc
    }

    /// Collar defect divided by 2·cosh a·cosh b·cosh c.
    pub fn collar_defect_rel(&self) -> f64 {
        self.collar_defect() / (2.0 * self.a.cosh() * self.b.cosh() * self.c.cosh())
    }

    pub fn dist(&self, o: &TriangleLengths) -> f64 {
        ((self.a - o.a).powi(2) + (self.b - o.b).powi(2) + (self.c - o.c).powi(2)).sqrt()
    }

    fn permute(self, p: Permutation) -> TriangleLengths {
        let t = sigma(TracePoint::new(self.a, self.b, self.c), p);
        TriangleLengths::new(t.x, t.y, t.z)
    }
}

/// Coefficients of y(r) = C₊S₊^r + C₋S₋^r, or the trig/linear replacements when x ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FlowParams {
    Hyperbolic { cplus: f64, cminus: f64, splus: f64, sminus: f64 },
    Parabolic { y: f64, slope: f64 },
    Elliptic { theta: f64, cos_coef: f64, sin_coef: f64 },
}

pub fn flow_params(v: TracePoint) -> Result<FlowParams> {
    let TracePoint { x, y, z } = v;
    check_flowable(v)?;
    let w = x * y - 2.0 * z;
    Ok(if x > 2.0 {
        let root = ((x - 2.0) * (x + 2.0)).sqrt();
        let splus = (x + root) / 2.0;
        FlowParams::Hyperbolic {
            cplus: (y + w / root) / 2.0,
            cminus: (y - w / root) / 2.0,
            splus,
            sminus: 1.0 / splus,
        }
    } else if x == 2.0 {
        FlowParams::Parabolic { y, slope: y - z }
    } else {
        let root = ((2.0 - x) * (2.0 + x)).sqrt();
        FlowParams::Elliptic { theta: (x / 2.0).acos(), cos_coef: y, sin_coef: w / root }
    })
}

impl FlowParams {
    /// Direct evaluation of the closed form; `flow_trace_alpha` uses an equivalent stable arrangement.
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            FlowParams::Hyperbolic { cplus, cminus, splus, sminus } => {
                cplus * splus.powf(r) + cminus * sminus.powf(r)
            }
            FlowParams::Parabolic { y, slope } => y + slope * r,
            FlowParams::Elliptic { theta, cos_coef, sin_coef } => {
                cos_coef * (r * theta).cos() + sin_coef * (r * theta).sin()
            }
        }
    }
}

fn check_flowable(v: TracePoint) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::Domain(format!("non-finite trace point {v}")));
    }
    if v.x < 0.0 {
        return Err(Error::NegativeTrace(v.x));
    }
    Ok(())
}

/// C₊ and C₋ for a point of the Teichmüller component, where C₊·C₋ = x²/(x² − 4) lets the
/// smaller one be formed without cancellation. None off the level set.
fn level_coefficients(x: f64, y: f64, z: f64) -> Option<(f64, f64)> {
    if !(x > 2.0 && y > 0.0 && z > 0.0) {
        return None;
    }
    let scale = x * x + y * y + z * z;
    if (kappa(TracePoint::new(x, y, z)) + 2.0).abs() > 1e-8 * scale {
        return None;
    }
    let root = ((x - 2.0) * (x + 2.0)).sqrt();
    let w = x * y - 2.0 * z;
    let big = (y + w.abs() / root) / 2.0;
    let small = x * x / ((x - 2.0) * (x + 2.0) * big);
    Some(if w >= 0.0 { (big, small) } else { (small, big) })
}

/// Trace of β after time r of the α-flow, with y(0) = y and y(−1) = z.
fn alpha_orbit(x: f64, y: f64, z: f64, r: f64) -> Result<f64> {
    let half_w = (x * y - 2.0 * z) / 2.0;
    let out = if x > 2.0 {
        let theta = half_length(x);
        if (r * theta).abs() > EXP_HORIZON {
            return Err(Error::horizon_exp((r * theta).abs()));
        }
        match level_coefficients(x, y, z) {
            Some((cplus, cminus)) => cplus * (r * theta).exp() + cminus * (-r * theta).exp(),
            None => y * (r * theta).cosh() + half_w * sinh_ratio(r, theta),
        }
    } else if x == 2.0 {
        y + half_w * r
    } else {
        let theta = (x / 2.0).acos();
        y * (r * theta).cos() + half_w * (r * theta).sin() / theta.sin()
    };
    if !out.is_finite() {
        return Err(Error::horizon(out));
    }
    Ok(out)
}

/// Earthquake (fractional Dehn twist) about α for time r.
pub fn flow_trace_alpha(v: TracePoint, r: f64) -> Result<TracePoint> {
    check_flowable(v)?;
    let TracePoint { x, y, z } = v;
    Ok(TracePoint::new(x, alpha_orbit(x, y, z, r)?, alpha_orbit(x, y, z, r - 1.0)?))
}

/// Earthquake about any framing curve, by conjugating the α-flow with a rotation.
pub fn flow_trace(v: TracePoint, c: CurveName, r: f64) -> Result<TracePoint> {
    match c {
        CurveName::Alpha => flow_trace_alpha(v, r),
        CurveName::Beta => Ok(sigma(
            flow_trace_alpha(sigma(v, Permutation::RotInv), r)?,
            Permutation::Rot,
        )),
        CurveName::AlphaBeta => Ok(sigma(
            flow_trace_alpha(sigma(v, Permutation::Rot), r)?,
            Permutation::RotInv,
        )),
    }
}

/// Earthquake about α in triangle lengths, from the collar geometry.
pub fn quake_lengths_alpha(w: TriangleLengths, r: f64) -> Result<TriangleLengths> {
    let TriangleLengths { a, b, c } = w;
    if !(a > 0.0) {
        return Err(Error::Domain(format!("triangle length a = {a} must be positive")));
    }
    if (r.abs() + 1.0) * a > EXP_HORIZON {
        return Err(Error::horizon_exp((r.abs() + 1.0) * a));
    }
    let (ca, cb, cc) = (a.cosh(), b.cosh(), c.cosh());
    let cosh_b = |t: f64| cb * (t * a).cosh() - (cc - ca * cb) * sinh_ratio(t, a);
    let length = |u: f64| {
        if u < 1.0 {
            Err(Error::LeftRealLocus(u))
        } else {
            Ok(acosh(u))
        }
    };
    Ok(TriangleLengths::new(a, length(cosh_b(r))?, length(cosh_b(r - 1.0))?))
}

pub fn quake_lengths(w: TriangleLengths, c: CurveName, r: f64) -> Result<TriangleLengths> {
    match c {
        CurveName::Alpha => quake_lengths_alpha(w, r),
        CurveName::Beta => {
            Ok(quake_lengths_alpha(w.permute(Permutation::RotInv), r)?.permute(Permutation::Rot))
        }
        CurveName::AlphaBeta => {
            Ok(quake_lengths_alpha(w.permute(Permutation::Rot), r)?.permute(Permutation::RotInv))
        }
    }
}

/// Trace coordinates to triangle lengths, componentwise acosh(·/2).
pub fn nu(v: TracePoint) -> Result<TriangleLengths> {
    let f = |t: f64| {
        if t > 2.0 {
            Ok(half_length(t))
        } else {
            Err(Error::LeftRealLocus(t / 2.0))
        }
    };
    Ok(TriangleLengths::new(f(v.x)?, f(v.y)?, f(v.z)?))
}

pub fn nu_inv(w: TriangleLengths) -> TracePoint {
    TracePoint::new(2.0 * w.a.cosh(), 2.0 * w.b.cosh(), 2.0 * w.c.cosh())
}

/// Unit twists to hyperbolic distance along a curve of half-length a.
pub fn to_arclength(r: f64, a: f64) -> f64 {
    2.0 * r * a
}

pub fn from_arclength(s: f64, a: f64) -> f64 {
    s / (2.0 * a)
}

/// Boundary length d and half-width ε of the maximal collar about a geodesic of length ℓ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Collar {
    pub boundary: f64,
    pub half_width: f64,
}

/// Expects ℓ > 0.
pub fn collar(ell: f64) -> Collar {
    let h = ell / 2.0;
    Collar { boundary: 2.0 / h.tanh(), half_width: (1.0 / h.sinh()).asinh() }
}

/// Projective class of the α-flow as r → +∞ (Plus) or r → −∞ (Minus), as a unit vector.
pub fn projective_limit(v: TracePoint, dir: Sign) -> Result<[f64; 3]> {
    let TracePoint { x, y, z } = v;
    if !(x > 2.0) {
        return Err(Error::LimitNeedsHyperbolic(x));
    }
    let root = ((x - 2.0) * (x + 2.0)).sqrt();
    let n_plus = |u: f64, v: f64, w: f64| v + (2.0 * w - u * v) / root;
    let n_minus = |u: f64, v: f64, w: f64| v - (2.0 * w - u * v) / root;
    let (p, q) = match dir {
        Sign::Plus => (n_minus(x, y, z), n_plus(x, z, y)),
        Sign::Minus => (n_plus(x, y, z), n_minus(x, z, y)),
    };
    let norm = p.hypot(q);
    Ok([0.0, p / norm, q / norm])
}
