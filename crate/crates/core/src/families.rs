//! Two curve families approaching irrational laminations, their recursive earthquakes and
//! rescaled limits, slope-convergence tables and the path intersection probe.

use crate::charvar::{CurveName, Sign, TracePoint};
use crate::charvar::other_root;
use crate::chgcoords::{build_framing, quake_about, Framing, LocalPath};
use crate::coords::{zeta, zeta_inv, FNPoint};
use crate::error::{Error, Result};
use crate::f2words::{slope_of, IntMatrix2, Slope, TwistWord, Word};
use crate::numeric::{acosh, half_length};
use crate::quake::{flow_trace_alpha, nu, nu_inv, quake_lengths_alpha, TriangleLengths};
use crate::rep::sinh_ratio;

/// Larger eigenvalue (3 + √5)/2 of the pseudo-Anosov homology action.
pub const LAMBDA_PLUS: f64 = 2.618_033_988_749_895;

const TRACE_HORIZON: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// γ_n = αβαⁿ⁻¹
    ABpow,
    /// γ_n = Tⁿ(α) with T = T_β·T_α⁻¹
    PAorbit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: u32,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, n: u32) -> Result<FamilySpec> {
        if n == 0 {
            return Err(Error::Domain("family index must be at least 1".into()));
        }
        Ok(FamilySpec { kind, n })
    }

    pub fn curve(&self) -> Word {
        match self.kind {
            FamilyKind::ABpow => "a b".parse::<Word>().unwrap().concat(&Word::alpha().pow(self.n as i64 - 1)),
            FamilyKind::PAorbit => pa_twist(self.n).apply(&Word::alpha()),
        }
    }

    pub fn slope(&self) -> Slope {
        let (p, q) = self.curve().abelianize();
        Slope::new(p, q).expect("family curves are primitive")
    }

    pub fn framing(&self) -> Framing {
        match self.kind {
            FamilyKind::ABpow => family1_framing(self.n),
            FamilyKind::PAorbit => family2_framing(self.n),
        }
    }
}

/// Tⁿ as a twist word.
pub fn pa_twist(n: u32) -> TwistWord {
    TwistWord::from_factors([(CurveName::Beta, 1), (CurveName::Alpha, -1)]).pow(n as i64)
}

/// Framing with γ conjugate to αβαⁿ⁻¹ and δ = α⁻¹: the homology matrix (n −1; 1 0).
pub fn family1_framing(n: u32) -> Framing {
    Framing::from_matrix(&IntMatrix2::new(n as i64, -1, 1, 0)).expect("unimodular")
}

pub fn family2_framing(n: u32) -> Framing {
    Framing::from_twist_word(pa_twist(n), Sign::Plus)
}

/// u(n) for u(k) = m·u(k−1) − u(k−2), u(0) = u0, u(1) = u1, via the characteristic roots.
pub fn linear_recurrence(m: f64, u0: f64, u1: f64, n: i64) -> f64 {
    let th = half_length(m);
    let c = (m / 2.0).max(1.0);
    if th > 0.0 {
        u0 * (n as f64 * th).cosh() + (u1 - u0 * c) * sinh_ratio(n as f64, th)
    } else {
        u0 + (u1 - u0) * n as f64
    }
}

/// Same recurrence by direct iteration.
pub fn linear_recurrence_iter(m: f64, u0: f64, u1: f64, n: i64) -> f64 {
    if n < 0 {
        return linear_recurrence_iter(m, u1, u0, 1 - n);
    }
    let (mut prev, mut cur) = (u0, u1);
    if n == 0 {
        return u0;
    }
    for _ in 1..n {
        (prev, cur) = (cur, m * cur - prev);
    }
    cur
}

/// Local coordinates (x′(n), x, x′(n−1)) for the first family, x′(k) = x·x′(k−1) − x′(k−2)
/// with x′(0) = y and x′(1) = z.
pub fn family1_phi(v: TracePoint, n: u32) -> TracePoint {
    let TracePoint { x, y, z } = v;
    let n = n as i64;
    TracePoint::new(linear_recurrence(x, y, z, n), x, linear_recurrence(x, y, z, n - 1))
}

pub fn family1_phi_iter(v: TracePoint, n: u32) -> TracePoint {
    let TracePoint { x, y, z } = v;
    let n = n as i64;
    TracePoint::new(linear_recurrence_iter(x, y, z, n), x, linear_recurrence_iter(x, y, z, n - 1))
}

/// Inverse of `family1_phi`: (y′, u(n), u(n−1)) with u(0) = x′, u(1) = z′ and multiplier y′.
pub fn family1_psi(v: TracePoint, n: u32) -> TracePoint {
    let TracePoint { x, y, z } = v;
    let n = n as i64;
    TracePoint::new(y, linear_recurrence(y, x, z, n), linear_recurrence(y, x, z, n - 1))
}

/// cosh b·cosh(na) + (cosh c − cosh a·cosh b)·sinh(na)/sinh a
fn length_recurrence(a: f64, b: f64, c: f64, n: i64) -> f64 {
    let (ca, cb, cc) = (a.cosh(), b.cosh(), c.cosh());
    cb * (n as f64 * a).cosh() + (cc - ca * cb) * sinh_ratio(n as f64, a)
}

fn arc(u: f64) -> Result<f64> {
    if u >= 1.0 {
        Ok(acosh(u))
    } else {
        Err(Error::LeftRealLocus(u))
    }
}

/// φ̄_n on triangle lengths.
pub fn family1_phi_lengths(w: TriangleLengths, n: u32) -> Result<TriangleLengths> {
    let TriangleLengths { a, b, c } = w;
    let n = n as i64;
    Ok(TriangleLengths::new(arc(length_recurrence(a, b, c, n))?, a, arc(length_recurrence(a, b, c, n - 1))?))
}

/// ψ̄_n on triangle lengths.
pub fn family1_psi_lengths(w: TriangleLengths, n: u32) -> Result<TriangleLengths> {
    let TriangleLengths { a, b, c } = w;
    let n = n as i64;
    Ok(TriangleLengths::new(b, arc(length_recurrence(b, a, c, n))?, arc(length_recurrence(b, a, c, n - 1))?))
}

/// ψ̄_n ∘ (α-earthquake) ∘ φ̄_n, composed literally in triangle lengths.
pub fn family1_quake(w: TriangleLengths, n: u32, r: f64) -> Result<TriangleLengths> {
    family1_psi_lengths(quake_lengths_alpha(family1_phi_lengths(w, n)?, r)?, n)
}

/// The same earthquake through the level-set change of framing.
pub fn family1_quake_stable(w: TriangleLengths, n: u32, r: f64) -> Result<TriangleLengths> {
    nu(quake_about(&family1_framing(n), nu_inv(w), r)?)
}

/// Earthquake about γ_n at arclength s/n, measured along γ_n.
pub fn family1_limit(w: TriangleLengths, n: u32, s: f64) -> Result<TriangleLengths> {
    let path = LocalPath::new(&family1_framing(n), nu_inv(w))?;
    let r = (s / n as f64) / (2.0 * half_length(path.gamma_trace()));
    nu(path.eval(r)?)
}

/// Distance between `family1_limit` and the α-earthquake of arclength s.
pub fn family1_limit_deviation(w: TriangleLengths, n: u32, s: f64) -> Result<f64> {
    let target = quake_lengths_alpha(w, s / (2.0 * w.a))?;
    Ok(family1_limit(w, n, s)?.dist(&target))
}

/// T̃ for Plus, its inverse for Minus.
pub fn family2_step(v: TracePoint, dir: Sign) -> TracePoint {
    let TracePoint { x, y, z } = v;
    match dir {
        Sign::Plus => {
            let w = y * z - x;
            TracePoint::new(z, w, z * w - y)
        }
        Sign::Minus => {
            let w = x * y - z;
            TracePoint::new(x * w - y, w, x)
        }
    }
}

/// T̃ on the Teichmüller component, each new coordinate formed by `other_root`.
pub fn family2_step_on_level(v: TracePoint, dir: Sign) -> TracePoint {
    let TracePoint { x, y, z } = v;
    match dir {
        Sign::Plus => {
            let w = other_root(x, y, z);
            TracePoint::new(z, w, other_root(y, z, w))
        }
        Sign::Minus => {
            let w = other_root(z, x, y);
            TracePoint::new(other_root(y, x, w), w, x)
        }
    }
}

fn within_horizon(v: TracePoint) -> Result<TracePoint> {
    if !v.is_finite() || v.max_abs() > TRACE_HORIZON {
        return Err(Error::horizon(v.max_abs()));
    }
    Ok(v)
}

/// T̃⁻ⁿ ∘ (α-earthquake) ∘ T̃ⁿ, step by step. Intermediate traces grow like λ₊²ⁿ; past
/// the floating-point range the result is a horizon error carrying that magnitude.
pub fn family2_quake(v: TracePoint, n: u32, r: f64) -> Result<TracePoint> {
    let mut u = v;
    for _ in 0..n {
        u = within_horizon(family2_step_on_level(u, Sign::Plus))?;
    }
    u = within_horizon(flow_trace_alpha(u, r)?)?;
    for _ in 0..n {
        u = within_horizon(family2_step_on_level(u, Sign::Minus))?;
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RescaleMode {
    /// r ↦ r/λ₊²ⁿ
    UnitTwist,
    /// s ↦ s/λ₊ⁿ
    Arclength,
}

pub fn family2_rescale(t: f64, n: u32, mode: RescaleMode) -> f64 {
    match mode {
        RescaleMode::UnitTwist => t / LAMBDA_PLUS.powi(2 * n as i32),
        RescaleMode::Arclength => t / LAMBDA_PLUS.powi(n as i32),
    }
}

/// Largest triangle-length distance between the rescaled family-2 paths for n and n + 1
/// over the given unit-twist times.
pub fn family2_path_deviation(v: TracePoint, n: u32, times: &[f64]) -> Result<f64> {
    let here = LocalPath::new(&family2_framing(n), v)?;
    let next = LocalPath::new(&family2_framing(n + 1), v)?;
    let mut worst = 0.0f64;
    for &r in times {
        let a = nu(here.eval(family2_rescale(r, n, RescaleMode::UnitTwist))?)?;
        let b = nu(next.eval(family2_rescale(r, n + 1, RescaleMode::UnitTwist))?)?;
        worst = worst.max(a.dist(&b));
    }
    Ok(worst)
}

/// Sampler for the γ-earthquake in Fenchel-Nielsen coordinates, by arclength along γ.
#[derive(Debug, Clone)]
pub struct FnPath {
    path: LocalPath,
    half_length: f64,
}

impl FnPath {
    pub fn new(s: Slope, u: FNPoint) -> Result<FnPath> {
        Self::with_framing(&build_framing(s), u)
    }

    pub fn with_framing(f: &Framing, u: FNPoint) -> Result<FnPath> {
        let path = LocalPath::new(f, zeta_inv(u)?)?;
        let half_length = half_length(path.gamma_trace());
        Ok(FnPath { path, half_length })
    }

    /// Length of γ at the start.
    pub fn gamma_length(&self) -> f64 {
        2.0 * self.half_length
    }

    pub fn trace_at(&self, s: f64) -> Result<TracePoint> {
        self.path.eval(s / (2.0 * self.half_length))
    }

    pub fn at(&self, s: f64) -> Result<FNPoint> {
        zeta(self.trace_at(s)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeRow {
    pub s: f64,
    pub ell: f64,
    pub tau: f64,
    pub ratio: f64,
}

/// τ/ℓ along the γ-earthquake from u at each arclength of the grid, forward or backward.
pub fn slope_limit_table(s: Slope, u: FNPoint, grid: &[f64], dir: Sign) -> Result<Vec<SlopeRow>> {
    use rayon::prelude::*;
    if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.first().is_some_and(|&g| !(g > 0.0)) {
        return Err(Error::Domain("slope grid must be positive and increasing".into()));
    }
    let path = FnPath::new(s, u)?;
    grid.par_iter()
        .map(|&g| {
            let p = path.at(dir.value() * g)?;
            Ok(SlopeRow { s: g, ell: p.ell, tau: p.tau, ratio: p.tau / p.ell })
        })
        .collect()
}

/// 1/sl(γ) = p/q, infinite for α.
pub fn analytic_slope_limit(s: Slope) -> f64 {
    slope_of(s).recip().to_f64()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProbeOutcome {
    Candidate { s_star: f64, residual: f64 },
    NoCandidate,
}

const PROBE_GRID: usize = 400;
const GOLDEN_TOL: f64 = 1e-10;

/// Searches for s with the backward s1-path and forward s2-path meeting in (ℓ, τ).
pub fn quake_intersection_probe(s1: Slope, s2: Slope, u: FNPoint, s_max: f64) -> Result<ProbeOutcome> {
    if s1 == s2 {
        return Err(Error::Domain(format!("intersection probe needs distinct curves, got {s1} twice")));
    }
    if !(s_max > 0.0) {
        return Err(Error::Domain(format!("s_max must be positive, got {s_max}")));
    }
    let back = FnPath::new(s1, u)?;
    let fwd = FnPath::new(s2, u)?;
    let gap = |s: f64| -> f64 {
        match (back.at(-s), fwd.at(s)) {
            (Ok(p), Ok(q)) => (p.ell - q.ell).hypot(p.tau - q.tau),
            _ => f64::INFINITY,
        }
    };
    let h = s_max / PROBE_GRID as f64;
    let samples: Vec<f64> = (1..=PROBE_GRID).map(|i| gap(i as f64 * h)).collect();
    let best = (1..samples.len() - 1)
        .filter(|&i| samples[i].is_finite() && samples[i] <= samples[i - 1] && samples[i] <= samples[i + 1])
        .min_by(|&i, &j| samples[i].total_cmp(&samples[j]));
    let Some(i) = best else {
        return Ok(ProbeOutcome::NoCandidate);
    };
    // samples[i] sits at s = (i + 1)·h
    let (s_star, residual) = golden_section(gap, i as f64 * h, (i + 2) as f64 * h, GOLDEN_TOL);
    Ok(ProbeOutcome::Candidate { s_star, residual })
}

/// Minimum of a unimodal function on [lo, hi].
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    let m = (lo + hi) / 2.0;
    (m, f(m))
}
