//! Trace coordinates on the SL(2) character variety of the once-punctured torus.

use std::fmt;

/// Default absolute tolerance for membership of the level set κ = −2.
pub const TOL_LEVEL: f64 = 1e-9;

/// Forward or backward direction of a twist, flow or orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Traces of ρ(α), ρ(β) and ρ(αβ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl TracePoint {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        TracePoint { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn kappa(&self) -> f64 {
        kappa(*self)
    }

    pub fn max_abs(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Largest componentwise relative difference, with unit floor on the scale.
    pub fn rel_dist(&self, other: &TracePoint) -> f64 {
        let d = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
        d(self.x, other.x).max(d(self.y, other.y)).max(d(self.z, other.z))
    }
}

impl From<[f64; 3]> for TracePoint {
    fn from(a: [f64; 3]) -> Self {
        TracePoint::new(a[0], a[1], a[2])
    }
}

impl fmt::Display for TracePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// The three framing curves α, β and αβ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveName {
    Alpha,
    Beta,
    AlphaBeta,
}

impl CurveName {
    pub const ALL: [CurveName; 3] = [CurveName::Alpha, CurveName::Beta, CurveName::AlphaBeta];

    pub fn tag(self) -> &'static str {
        match self {
            CurveName::Alpha => "alpha",
            CurveName::Beta => "beta",
            CurveName::AlphaBeta => "alphabeta",
        }
    }
}

/// Which pair of coordinates changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KleinFlip {
    Xy,
    Xz,
    Yz,
}

/// Coordinate permutations conjugating the three twists into each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Permutation {
    Rot,
    RotInv,
    /// fixes x
    Ref1,
    /// fixes y
    Ref2,
    /// fixes z
    Ref3,
}

/// x² + y² + z² − xyz − 2, the trace of the boundary commutator.
pub fn kappa(v: TracePoint) -> f64 {
    let TracePoint { x, y, z } = v;
    x * x + y * y + z * z - x * y * z - 2.0
}

/// Membership in the Teichmüller component: on κ = −2 and every trace above 2.
pub fn is_teich(v: TracePoint, tol: f64) -> bool {
    (kappa(v) + 2.0).abs() < tol && v.x.min(v.y).min(v.z) > 2.0
}

/// Dehn twist automorphism about a framing curve acting on traces.
pub fn twist(v: TracePoint, c: CurveName, dir: Sign) -> TracePoint {
    let TracePoint { x, y, z } = v;
    match (c, dir) {
        (CurveName::Alpha, Sign::Plus) => TracePoint::new(x, x * y - z, y),
        (CurveName::Alpha, Sign::Minus) => TracePoint::new(x, z, x * z - y),
        (CurveName::Beta, Sign::Plus) => TracePoint::new(z, y, y * z - x),
        (CurveName::Beta, Sign::Minus) => TracePoint::new(x * y - z, y, x),
        (CurveName::AlphaBeta, Sign::Plus) => TracePoint::new(x * z - y, x, z),
        (CurveName::AlphaBeta, Sign::Minus) => TracePoint::new(y, y * z - x, z),
    }
}

/// Second root of κ = −2 read as a quadratic in `c`: b·d − c, or (b² + d²)/c when `c` is
/// the larger root so that nothing cancels. Meaningful on the level set only.
pub fn other_root(c: f64, b: f64, d: f64) -> f64 {
    if c > 0.0 && b > 0.0 && c / b > d / 2.0 {
        b * (b / c) + d * (d / c)
    } else {
        b * d - c
    }
}

/// `twist` for points of the Teichmüller component, with every new coordinate formed by
/// `other_root`. Keeps full relative accuracy where the polynomial form cancels.
pub fn twist_on_level(v: TracePoint, c: CurveName, dir: Sign) -> TracePoint {
    let TracePoint { x, y, z } = v;
    match (c, dir) {
        (CurveName::Alpha, Sign::Plus) => TracePoint::new(x, other_root(z, x, y), y),
        (CurveName::Alpha, Sign::Minus) => TracePoint::new(x, z, other_root(y, x, z)),
        (CurveName::Beta, Sign::Plus) => TracePoint::new(z, y, other_root(x, y, z)),
        (CurveName::Beta, Sign::Minus) => TracePoint::new(other_root(z, x, y), y, x),
        (CurveName::AlphaBeta, Sign::Plus) => TracePoint::new(other_root(y, x, z), x, z),
        (CurveName::AlphaBeta, Sign::Minus) => TracePoint::new(y, other_root(x, y, z), z),
    }
}

/// Apply `twist` |n| times, backwards for negative n.
pub fn twist_n(v: TracePoint, c: CurveName, n: i64) -> TracePoint {
    let dir = Sign::of(n);
    (0..n.unsigned_abs()).fold(v, |acc, _| twist(acc, c, dir))
}

pub fn klein(v: TracePoint, which: KleinFlip) -> TracePoint {
    let TracePoint { x, y, z } = v;
    match which {
        KleinFlip::Xy => TracePoint::new(-x, -y, z),
        KleinFlip::Xz => TracePoint::new(-x, y, -z),
        KleinFlip::Yz => TracePoint::new(x, -y, -z),
    }
}

pub fn sigma(v: TracePoint, which: Permutation) -> TracePoint {
    let TracePoint { x, y, z } = v;
    match which {
        Permutation::Rot => TracePoint::new(z, x, y),
        Permutation::RotInv => TracePoint::new(y, z, x),
        Permutation::Ref1 => TracePoint::new(x, z, y),
        Permutation::Ref2 => TracePoint::new(z, y, x),
        Permutation::Ref3 => TracePoint::new(y, x, z),
    }
}

/// The reflection that conjugates the forward twist about `c` into the backward one.
pub fn reflection_for(c: CurveName) -> Permutation {
    match c {
        CurveName::Alpha => Permutation::Ref1,
        CurveName::Beta => Permutation::Ref2,
        CurveName::AlphaBeta => Permutation::Ref3,
    }
}

/// Solve κ(x, y, z) = −2 for z, taking the larger root (z ≥ xy/2) or the smaller one.
pub fn complete_on_level(x: f64, y: f64, larger: bool) -> Option<f64> {
    let disc = x * x * y * y - 4.0 * (x * x + y * y);
    if disc < 0.0 {
        return None;
    }
    let s = disc.sqrt();
    let big = (x * y + s) / 2.0;
    Some(if larger { big } else { (x * x + y * y) / big })
}

/// The three starting points used throughout: hexagonal torus, square torus, and a long thin one.
pub fn standard_starts() -> [TracePoint; 3] {
    let r2 = 2.0 * std::f64::consts::SQRT_2;
    [
        TracePoint::new(3.0, 3.0, 3.0),
        TracePoint::new(r2, r2, 4.0),
        TracePoint::new(10.0, 10.0, 10.0 * (5.0 - 23f64.sqrt())),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: TracePoint = TracePoint::new(3.0, 3.0, 3.0);

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(V), -2.0);
        assert_eq!(kappa(TracePoint::new(0.0, 0.0, 0.0)), -2.0);
        for s in standard_starts() {
            assert!((kappa(s) + 2.0).abs() < 1e-10, "{s}");
        }
    }

    #[test]
    fn teich_membership() {
        assert!(is_teich(V, TOL_LEVEL));
        assert!(!is_teich(TracePoint::new(0.0, 0.0, 0.0), TOL_LEVEL));
        assert!(!is_teich(TracePoint::new(3.0, 3.0, 4.0), TOL_LEVEL));
        // boundary x = 2 is excluded
        assert!(!is_teich(TracePoint::new(2.0, 2.0, 2.0), TOL_LEVEL));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist(V, CurveName::Alpha, Sign::Plus), TracePoint::new(3.0, 6.0, 3.0));
        assert_eq!(twist(TracePoint::new(3.0, 6.0, 3.0), CurveName::Alpha, Sign::Minus), V);
        assert_eq!(twist(V, CurveName::Beta, Sign::Plus), TracePoint::new(3.0, 3.0, 6.0));
        assert_eq!(twist(V, CurveName::Beta, Sign::Minus), TracePoint::new(6.0, 3.0, 3.0));
        assert_eq!(twist_n(V, CurveName::Alpha, 2), TracePoint::new(3.0, 15.0, 6.0));
        assert_eq!(twist_n(V, CurveName::Alpha, 0), V);
    }

    #[test]
    fn level_twists_agree_with_polynomial_twists() {
        let pts = standard_starts();
        for v in pts {
            for c in CurveName::ALL {
                for d in [Sign::Plus, Sign::Minus] {
                    let a = twist(v, c, d);
                    let b = twist_on_level(v, c, d);
                    assert!(a.rel_dist(&b) < 1e-12, "{v} {c:?} {d:?}");
                }
            }
        }
        // y = 15 comes back to 3 without cancellation
        let w = twist_on_level(TracePoint::new(3.0, 15.0, 6.0), CurveName::Alpha, Sign::Minus);
        assert!(w.rel_dist(&TracePoint::new(3.0, 6.0, 3.0)) < 1e-15);
    }

    #[test]
    fn klein_and_sigma_examples() {
        assert_eq!(klein(V, KleinFlip::Xy), TracePoint::new(-3.0, -3.0, 3.0));
        let p = TracePoint::new(1.0, 2.0, 3.0);
        assert_eq!(sigma(p, Permutation::Rot), TracePoint::new(3.0, 1.0, 2.0));
        assert_eq!(sigma(p, Permutation::Ref1), TracePoint::new(1.0, 3.0, 2.0));
        assert_eq!(sigma(p, Permutation::Ref2), TracePoint::new(3.0, 2.0, 1.0));
        assert_eq!(sigma(p, Permutation::Ref3), TracePoint::new(2.0, 1.0, 3.0));
        assert_eq!(sigma(sigma(p, Permutation::Rot), Permutation::RotInv), p);
    }

    #[test]
    fn level_completion() {
        let z = complete_on_level(10.0, 10.0, false).unwrap();
        assert!((z - 10.0 * (5.0 - 23f64.sqrt())).abs() < 1e-12);
        let z = complete_on_level(3.0, 3.0, true).unwrap();
        assert!((z - 6.0).abs() < 1e-12);
        assert!(complete_on_level(2.5, 2.5, true).is_none());
    }
}
