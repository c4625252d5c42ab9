//! Real SL(2) realizations of trace points and numeric word traces.

use twofloat::TwoFloat;

use crate::charvar::TracePoint;
use crate::error::{Error, Result};
use crate::f2words::{Gen, Word};
use crate::numeric::{half_length, EXP_HORIZON};

/// Real 2×2 matrix (a b; c d).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Inverse assuming unit determinant.
    pub fn inv(&self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    /// G^s for a hyperbolic G with trace > 2, via G^s = (sinh(sL)·G − sinh((s−1)L)·I)/sinh L.
    pub fn frac_pow(&self, s: f64) -> Result<Mat2> {
        let t = self.trace();
        if !(t > 2.0) {
            return Err(Error::NonHyperbolic(t));
        }
        let l = half_length(t);
        if s.abs() * l > EXP_HORIZON {
            return Err(Error::horizon_exp(s.abs() * l));
        }
        let p = sinh_ratio(s, l);
        let q = sinh_ratio(1.0 - s, l);
        Ok(Mat2 { a: p * self.a + q, b: p * self.b, c: p * self.c, d: p * self.d + q })
    }
}

/// sinh(s·l)/sinh(l) without intermediate overflow.
pub fn sinh_ratio(s: f64, l: f64) -> f64 {
    if l < 20.0 {
        (s * l).sinh() / l.sinh()
    } else {
        let e = s.abs();
        s.signum() * ((e - 1.0) * l).exp() * (-(-2.0 * e * l).exp_m1()) / (-(-2.0 * l).exp_m1())
    }
}

/// Images of α and β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rep {
    pub alpha: Mat2,
    pub beta: Mat2,
}

/// Upper/lower triangular pair with traces (x, y, z).
pub fn realize(v: TracePoint) -> Result<Rep> {
    let TracePoint { x, y, z } = v;
    if !(x > 2.0 && y > 2.0) {
        return Err(Error::NonHyperbolicFraming { x, y });
    }
    let lam = x / 2.0 + (x * x / 4.0 - 1.0).sqrt();
    let mu = y / 2.0 + (y * y / 4.0 - 1.0).sqrt();
    let t = z - lam * mu - 1.0 / (lam * mu);
    Ok(Rep {
        alpha: Mat2::new(lam, 1.0, 0.0, 1.0 / lam),
        beta: Mat2::new(mu, 0.0, t, 1.0 / mu),
    })
}

impl Rep {
    fn letter(&self, gen: Gen, inv: bool) -> Mat2 {
        let m = match gen {
            Gen::A => self.alpha,
            Gen::B => self.beta,
        };
        if inv {
            m.inv()
        } else {
            m
        }
    }

    pub fn word_matrix(&self, w: &Word) -> Mat2 {
        w.letters()
            .iter()
            .fold(Mat2::IDENTITY, |acc, l| acc.mul(&self.letter(l.gen, l.inv)))
    }

    pub fn commutator_trace(&self) -> f64 {
        let (a, b) = (self.alpha, self.beta);
        a.mul(&b).mul(&a.inv()).mul(&b.inv()).trace()
    }
}

pub fn word_matrix(r: &Rep, w: &Word) -> Mat2 {
    r.word_matrix(w)
}

pub fn word_trace(r: &Rep, w: &Word) -> f64 {
    r.word_matrix(w).trace()
}

/// Word trace with every product carried in double-double arithmetic.
pub fn word_trace_compensated(r: &Rep, w: &Word) -> f64 {
    type M = [TwoFloat; 4];
    let lift = |m: Mat2| -> M { [m.a.into(), m.b.into(), m.c.into(), m.d.into()] };
    let mul = |x: &M, y: &M| -> M {
        [
            x[0] * y[0] + x[1] * y[2],
            x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3],
        ]
    };
    let one = TwoFloat::from(1.0);
    let zero = TwoFloat::from(0.0);
    let mut acc: M = [one, zero, zero, one];
    for l in w.letters() {
        acc = mul(&acc, &lift(r.letter(l.gen, l.inv)));
    }
    f64::from(acc[0] + acc[3])
}

/// Hyperbolic length 2·acosh(|t|/2) of an element with trace t.
pub fn geodesic_length(trace: f64) -> Result<f64> {
    if !(trace.abs() > 2.0) {
        return Err(Error::NonHyperbolic(trace));
    }
    Ok(2.0 * half_length(trace))
}

/// Traces of w1, w2 and w1·w2.
pub fn char_of_pair(r: &Rep, w1: &Word, w2: &Word) -> TracePoint {
    let m1 = r.word_matrix(w1);
    let m2 = r.word_matrix(w2);
    TracePoint::new(m1.trace(), m2.trace(), r.word_matrix(&w1.concat(w2)).trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::{kappa, standard_starts};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn realize_hexagonal() {
        let r = realize(TracePoint::new(3.0, 3.0, 3.0)).unwrap();
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        assert!((r.alpha.a - golden_sq).abs() < 1e-15);
        assert!((r.beta.a - golden_sq).abs() < 1e-15);
        assert!((r.commutator_trace() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn realize_reproduces_traces() {
        for v in standard_starts() {
            let r = realize(v).unwrap();
            let c = char_of_pair(&r, &Word::alpha(), &Word::beta());
            assert!(c.rel_dist(&v) < 1e-12, "{v}");
            assert!((r.commutator_trace() - kappa(v)).abs() < 1e-8);
            assert!((r.alpha.det() - 1.0).abs() < 1e-12 && (r.beta.det() - 1.0).abs() < 1e-12);
        }
        let sq = standard_starts()[1];
        assert!((word_trace(&realize(sq).unwrap(), &w("a b")) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn realize_rejects_small_traces() {
        assert!(matches!(
            realize(TracePoint::new(2.0, 3.0, 3.0)),
            Err(Error::NonHyperbolicFraming { .. })
        ));
        assert!(realize(TracePoint::new(3.0, 1.5, 3.0)).is_err());
    }

    #[test]
    fn word_trace_examples() {
        let r = realize(TracePoint::new(3.0, 3.0, 3.0)).unwrap();
        assert!((word_trace(&r, &Word::alpha()) - 3.0).abs() < 1e-14);
        assert!((word_trace(&r, &w("a b A B")) + 2.0).abs() < 1e-12);
        // tr(αβα) = tr(α²β) = x·z − y = 6
        assert!((word_trace(&r, &w("a b a")) - 6.0).abs() < 1e-12);
        assert!((word_trace_compensated(&r, &w("a b a")) - 6.0).abs() < 1e-14);
    }

    #[test]
    fn twisted_framing_characters() {
        let r = realize(TracePoint::new(3.0, 3.0, 3.0)).unwrap();
        let c = char_of_pair(&r, &w("a b"), &w("b a b"));
        assert!(c.rel_dist(&TracePoint::new(3.0, 6.0, 15.0)) < 1e-12);
        let v = TracePoint::new(3.0, 4.0, 9.3166247903554);
        let r = realize(v).unwrap();
        let c = char_of_pair(&r, &Word::beta(), &Word::alpha());
        assert!(c.rel_dist(&TracePoint::new(4.0, 3.0, v.z)) < 1e-12);
    }

    #[test]
    fn lengths() {
        assert!((geodesic_length(3.0).unwrap() - 1.9248473002384139).abs() < 1e-14);
        assert!((geodesic_length(2.0 * 2f64.sqrt()).unwrap() - 3f64.acosh()).abs() < 1e-14);
        assert!(geodesic_length(2.0).is_err());
        assert!(geodesic_length(-3.0).is_ok());
    }

    #[test]
    fn fractional_powers() {
        let r = realize(TracePoint::new(3.0, 3.0, 3.0)).unwrap();
        let g = r.word_matrix(&w("a b b"));
        let half = g.frac_pow(0.5).unwrap();
        let sq = half.mul(&half);
        for (x, y) in [(sq.a, g.a), (sq.b, g.b), (sq.c, g.c), (sq.d, g.d)] {
            assert!((x - y).abs() < 1e-12 * g.max_abs());
        }
        let id = g.frac_pow(0.0).unwrap();
        assert!((id.a - 1.0).abs() < 1e-15 && id.b.abs() < 1e-15);
        let inv = g.frac_pow(-1.0).unwrap().mul(&g);
        assert!((inv.trace() - 2.0).abs() < 1e-12);
        assert!(Mat2::IDENTITY.frac_pow(0.5).is_err());
    }

    #[test]
    fn sinh_ratio_large_lengths() {
        for (s, l) in [(0.3f64, 25.0f64), (-0.7, 40.0), (1.5, 100.0)] {
            let direct = (s * l).sinh() / l.sinh();
            assert!((sinh_ratio(s, l) - direct).abs() < 1e-12 * direct.abs().max(1e-300));
        }
    }
}
