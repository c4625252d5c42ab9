//! Presentation charts: signed Fenchel-Nielsen coordinates, spherical and inverted trace
//! coordinates, and the simplex.

use std::fmt;

use crate::charvar::{Sign, TracePoint};
use crate::error::{Error, Result};
use crate::numeric::acosh;

/// Length of α and the signed twist along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FNPoint {
    pub ell: f64,
    pub tau: f64,
}

impl FNPoint {
    pub const fn new(ell: f64, tau: f64) -> Self {
        FNPoint { ell, tau }
    }

    pub fn dist(&self, o: &FNPoint) -> f64 {
        (self.ell - o.ell).abs().max((self.tau - o.tau).abs())
    }
}

impl fmt::Display for FNPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ℓ={}, τ={})", self.ell, self.tau)
    }
}

/// Barycentric point (x/(yz), y/(xz), z/(xy)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexPoint {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl SimplexPoint {
    pub fn sum(&self) -> f64 {
        self.p + self.q + self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    pub theta: f64,
    pub phi: f64,
    pub rad: f64,
}

/// Fenchel-Nielsen coordinates of a point of the Teichmüller component.
///
/// |τ| = 2·acosh(y·tanh(ℓ/2)/2). On the level set sinh(τ/2) = y/2 − z/x, which carries
/// the sign of xy/2 − z and stays accurate near τ = 0.
pub fn zeta(v: TracePoint) -> Result<FNPoint> {
    let TracePoint { x, y, z } = v;
    if !(x > 2.0) {
        return Err(Error::OutsideChart(x / 2.0));
    }
    let a = acosh(x / 2.0);
    let arg = y * a.tanh() / 2.0;
    if !(arg >= 1.0 - 1e-12) {
        return Err(Error::OutsideChart(arg));
    }
    let tau = 2.0 * (y / 2.0 - z / x).asinh();
    Ok(FNPoint::new(2.0 * a, tau))
}

/// Inverse of `zeta` onto the level set.
pub fn zeta_inv(u: FNPoint) -> Result<TracePoint> {
    if !(u.ell > 0.0 && u.ell.is_finite() && u.tau.is_finite()) {
        return Err(Error::Domain(format!("invalid Fenchel-Nielsen point {u}")));
    }
    let a = u.ell / 2.0;
    let h = u.tau / 2.0;
    let x = 2.0 * a.cosh();
    let y = 2.0 * h.cosh() / a.tanh();
    // z = x·(y/2 − sinh(τ/2)) with coth a − 1 = 2/(e^{2a} − 1)
    let z = x * (h.cosh() * 2.0 / (2.0 * a).exp_m1() + (-h).exp());
    let v = TracePoint::new(x, y, z);
    if !v.is_finite() {
        return Err(Error::horizon(v.max_abs()));
    }
    Ok(v)
}

/// Left earthquake along α in Fenchel-Nielsen coordinates, by arclength s.
pub fn fn_quake_alpha(u: FNPoint, s: f64, orient: Sign) -> FNPoint {
    FNPoint::new(u.ell, u.tau + orient.value() * s)
}

/// Earthquake along β by arclength s, written directly in (ℓ, τ).
///
/// With F = acosh(cosh(τ/2)·coth(ℓ/2)) the length of β and k = sinh(τ/2)/sinh F:
/// cosh(ℓ′/2) = cosh(ℓ/2)·(cosh(s/2) − k·sinh(s/2)) and
/// cosh(τ′/2) = cosh F·tanh(ℓ′/2), with τ′ of the sign of k − tanh(s/2).
pub fn fn_quake_beta_direct(u: FNPoint, s: f64) -> Result<FNPoint> {
    if !(u.ell > 0.0) {
        return Err(Error::Domain(format!("invalid Fenchel-Nielsen point {u}")));
    }
    let h = u.tau / 2.0;
    let a = u.ell / 2.0;
    let cosh_f = h.cosh() / a.tanh();
    let sinh_f = (cosh_f * cosh_f - 1.0).sqrt();
    let k = h.sinh() / sinh_f;
    let cosh_half = a.cosh() * ((s / 2.0).cosh() - k * (s / 2.0).sinh());
    if !(cosh_half >= 1.0) {
        return Err(Error::OutsideChart(cosh_half));
    }
    let half = acosh(cosh_half);
    let c = cosh_f * half.tanh();
    if !(c >= 1.0 - 1e-12) {
        return Err(Error::OutsideChart(c));
    }
    let mag = 2.0 * acosh(c.max(1.0));
    let sign = (k - (s / 2.0).tanh()).signum();
    Ok(FNPoint::new(2.0 * half, sign * mag))
}

pub fn spherical(v: TracePoint) -> Result<SphericalPoint> {
    let rad = v.x.hypot(v.y);
    if rad == 0.0 && v.z == 0.0 {
        return Err(Error::Domain("spherical coordinates undefined at the origin".into()));
    }
    Ok(SphericalPoint { theta: v.y.atan2(v.x), phi: rad.atan2(v.z), rad })
}

/// Spherical coordinates with the radius inverted.
pub fn inverted(v: TracePoint) -> Result<SphericalPoint> {
    let s = spherical(v)?;
    if s.rad == 0.0 {
        return Err(Error::Domain("cannot invert a zero radius".into()));
    }
    Ok(SphericalPoint { rad: 1.0 / s.rad, ..s })
}

pub fn simplex(v: TracePoint) -> Result<SimplexPoint> {
    let TracePoint { x, y, z } = v;
    if x == 0.0 || y == 0.0 || z == 0.0 {
        return Err(Error::Domain(format!("simplex coordinates need nonzero traces, got {v}")));
    }
    Ok(SimplexPoint { p: x / (y * z), q: y / (x * z), r: z / (x * y) })
}

/// Equilateral embedding of the 2-simplex: (q + r/2, (√3/2)·r).
pub fn simplex_plane(sp: SimplexPoint) -> (f64, f64) {
    (sp.q + sp.r / 2.0, 3f64.sqrt() / 2.0 * sp.r)
}

pub fn slope_ratio(u: FNPoint) -> f64 {
    u.tau / u.ell
}
