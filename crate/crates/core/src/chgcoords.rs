//! Earthquakes about an arbitrary simple closed curve γ through a change of framing.
//!
//! A framing is an automorphism Φ of the free group with Φ(α) = γ and Φ(β) = δ for a
//! dual curve δ. The local coordinates of a point are the traces of (γ, δ, γδ); the
//! earthquake about γ is the α-earthquake in local coordinates, pulled back.

use crate::charvar::{twist_on_level, CurveName, Sign, TracePoint};
use crate::error::{Error, Result};
use crate::f2words::{
    decompose_matrix, framing_class, Gen, IntMatrix2, Slope, TwistWord, Word,
};
use crate::quake::flow_trace_alpha;
use crate::rep::{char_of_pair, realize, Mat2, Rep};

/// Largest trace magnitude accepted from the crossing product.
const TRACE_HORIZON: f64 = 1e300;

#[derive(Debug, Clone, PartialEq)]
pub struct Framing {
    gamma: Word,
    delta: Word,
    m: TwistWord,
    m_inv: TwistWord,
    /// Minus when Φ = M∘ι, ι inverting both generators (M realizes −(p m2; q n2)).
    flip: Sign,
    slope: Slope,
}

impl Framing {
    pub fn identity() -> Framing {
        Framing::from_twist_word(TwistWord::identity(), Sign::Plus)
    }

    /// Framing Φ = M, or Φ = M∘ι when `flip` is Minus.
    pub fn from_twist_word(m: TwistWord, flip: Sign) -> Framing {
        let (ia, ib) = m.images();
        let (gamma, delta) = match flip {
            Sign::Plus => (ia, ib),
            Sign::Minus => (ia.inverse(), ib.inverse()),
        };
        let (p, q) = gamma.abelianize();
        let slope = Slope::new(p, q).expect("image of α is primitive");
        let m_inv = m.inverse();
        Framing { gamma, delta, m, m_inv, flip, slope }
    }

    /// Framing whose homology action is the given SL(2,ℤ) matrix.
    pub fn from_matrix(mat: &IntMatrix2) -> Result<Framing> {
        let (tw, sign) = decompose_matrix(mat)?;
        Ok(Framing::from_twist_word(tw, sign))
    }

    pub fn gamma(&self) -> &Word {
        &self.gamma
    }

    pub fn delta(&self) -> &Word {
        &self.delta
    }

    pub fn m(&self) -> &TwistWord {
        &self.m
    }

    pub fn m_inv(&self) -> &TwistWord {
        &self.m_inv
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    /// Φ⁻¹(α) and Φ⁻¹(β), as words in the local generators.
    pub fn inverse_images(&self) -> (Word, Word) {
        let (ua, ub) = self.m_inv.images();
        match self.flip {
            Sign::Plus => (ua, ub),
            Sign::Minus => (invert_letters(&ua), invert_letters(&ub)),
        }
    }
}

fn invert_letters(w: &Word) -> Word {
    Word::from_letters(w.letters().iter().map(|l| l.inverse()))
}

/// Framing for the (p, q) curve with the canonical dual.
pub fn build_framing(s: Slope) -> Framing {
    let (tw, sign) = framing_class(s);
    Framing::from_twist_word(tw, sign)
}

/// Local trace coordinates (tr γ, tr δ, tr γδ).
///
/// Evaluated as the twist sequence of M acting on traces, one `twist_on_level` per factor,
/// which equals the word traces of γ and δ but never cancels.
pub fn phi(f: &Framing, v: TracePoint) -> Result<TracePoint> {
    act(&f.m, require_teich(v)?)
}

/// Back from local coordinates through the twist sequence of M⁻¹.
pub fn psi(f: &Framing, v_local: TracePoint) -> Result<TracePoint> {
    act(&f.m_inv, require_teich(v_local)?)
}

/// `phi` by realizing a representation and multiplying out γ and δ.
pub fn phi_words(f: &Framing, v: TracePoint) -> Result<TracePoint> {
    let rep = realize(v)?;
    Ok(char_of_pair(&rep, &f.gamma, &f.delta))
}

/// `psi` by re-realizing the local character and evaluating Φ⁻¹(α), Φ⁻¹(β).
/// Badly conditioned once the local traces are large.
pub fn psi_words(f: &Framing, v_local: TracePoint) -> Result<TracePoint> {
    let rep = realize(v_local)?;
    let (ua, ub) = f.inverse_images();
    Ok(char_of_pair(&rep, &ua, &ub))
}

/// Trace action of an automorphism: char(ρ∘M) for M = f₁∘…∘f_k applies f₁ first.
fn act(m: &TwistWord, v: TracePoint) -> Result<TracePoint> {
    let mut out = v;
    for &(c, k) in m.factors() {
        for _ in 0..k.unsigned_abs() {
            out = twist_on_level(out, c, Sign::of(k));
        }
        if !out.is_finite() || out.max_abs() > TRACE_HORIZON {
            return Err(Error::horizon(out.max_abs()));
        }
    }
    Ok(out)
}

fn require_teich(v: TracePoint) -> Result<TracePoint> {
    if !v.is_finite() {
        return Err(Error::Domain(format!("non-finite trace point {v}")));
    }
    if !(v.x > 2.0 && v.y > 2.0 && v.z > 2.0) {
        return Err(Error::NonHyperbolicFraming { x: v.x, y: v.y });
    }
    Ok(v)
}

/// Earthquake of time r about the framing curve γ starting at v: ψ ∘ (α-earthquake) ∘ φ.
pub fn quake_about(f: &Framing, v: TracePoint, r: f64) -> Result<TracePoint> {
    psi(f, flow_trace_alpha(phi(f, v)?, r)?)
}

/// ψ ∘ (α-earthquake) ∘ φ with φ and ψ through word traces.
pub fn quake_about_words(f: &Framing, v: TracePoint, r: f64) -> Result<TracePoint> {
    psi_words(f, flow_trace_alpha(phi_words(f, v)?, r)?)
}

/// Earthquake sampler with the local coordinates of the start computed once.
#[derive(Debug, Clone)]
pub struct LocalPath {
    m_inv: TwistWord,
    local: TracePoint,
}

impl LocalPath {
    pub fn new(f: &Framing, v: TracePoint) -> Result<LocalPath> {
        Ok(LocalPath { m_inv: f.m_inv.clone(), local: phi(f, v)? })
    }

    pub fn local(&self) -> TracePoint {
        self.local
    }

    pub fn gamma_trace(&self) -> f64 {
        self.local.x
    }

    pub fn eval(&self, r: f64) -> Result<TracePoint> {
        act(&self.m_inv, require_teich(flow_trace_alpha(self.local, r)?)?)
    }
}

/// Integer twists about the (p, q) curve through the word automorphism M·T_αⁿ·M⁻¹.
pub fn dehn_twist_about(s: Slope, v: TracePoint, n: i64) -> Result<TracePoint> {
    dehn_twist_about_framing(&build_framing(s), v, n)
}

pub fn dehn_twist_about_framing(f: &Framing, v: TracePoint, n: i64) -> Result<TracePoint> {
    let composite = f.m.compose(&TwistWord::from_factors([(CurveName::Alpha, n)])).compose(&f.m_inv);
    let (wa, wb) = composite.images();
    Ok(char_of_pair(&realize(v)?, &wa, &wb))
}

/// One lift of γ crossed by a framing generator: the conjugate c·g·c⁻¹ of γ, and the
/// side it is crossed from.
#[derive(Debug, Clone, PartialEq)]
struct Crossing {
    conj: Word,
    core: Word,
    sign: f64,
}

/// Crossing sequences for α, β and αβ, reusable across base points and times. An
/// independent evaluation of `quake_about` working on the representation directly.
///
/// With σ(γ) = ρ(γ), σ(δ) = ρ(δ)·ρ(γ)^{−r}, the deformed image of a word u in (γ, δ)
/// telescopes into ∏ (P_i ρ(γ) P_i⁻¹)^{∓r} · ρ(Φ(u)) over the δ-letters of u, where P_i
/// are prefixes. Prefixes that give the same conjugate of γ with opposite signs cancel,
/// leaving one factor per geometric crossing.
#[derive(Debug, Clone)]
pub struct QuakePlan {
    gamma: Word,
    targets: [(Vec<Crossing>, Word); 3],
}

impl QuakePlan {
    pub fn new(f: &Framing) -> QuakePlan {
        let (ua, ub) = f.inverse_images();
        let uab = ua.concat(&ub);
        let build = |u: &Word| crossings(u, &f.gamma, &f.delta);
        QuakePlan { gamma: f.gamma.clone(), targets: [build(&ua), build(&ub), build(&uab)] }
    }

    /// Number of crossing factors for α, β and αβ.
    pub fn crossing_counts(&self) -> [usize; 3] {
        [self.targets[0].0.len(), self.targets[1].0.len(), self.targets[2].0.len()]
    }

    pub fn at(&self, v: TracePoint) -> Result<QuakeAt> {
        let rep = realize(v)?;
        let gamma_trace = rep.word_matrix(&self.gamma).trace();
        if !(gamma_trace > 2.0) {
            return Err(Error::NonHyperbolic(gamma_trace));
        }
        let prepare = |(xs, tail): &(Vec<Crossing>, Word)| -> EvaluatedTarget {
            let factors = xs
                .iter()
                .map(|x| (rep.word_matrix(&x.conj), rep.word_matrix(&x.core), x.sign))
                .collect();
            (factors, rep.word_matrix(tail))
        };
        Ok(QuakeAt {
            rep,
            gamma_trace,
            targets: [prepare(&self.targets[0]), prepare(&self.targets[1]), prepare(&self.targets[2])],
        })
    }
}

fn crossings(u: &Word, gamma: &Word, delta: &Word) -> (Vec<Crossing>, Word) {
    let gamma_inv = gamma.inverse();
    let delta_inv = delta.inverse();
    let mut prefix = Word::empty();
    let mut raw: Vec<(Word, f64)> = Vec::new();
    let conjugate = |p: &Word| p.concat(gamma).concat(&p.inverse());
    for l in u.letters() {
        let (img, is_delta) = match (l.gen, l.inv) {
            (Gen::A, false) => (gamma, false),
            (Gen::A, true) => (&gamma_inv, false),
            (Gen::B, false) => (delta, true),
            (Gen::B, true) => (&delta_inv, true),
        };
        if is_delta && l.inv {
            raw.push((conjugate(&prefix), -1.0));
        }
        prefix = prefix.concat(img);
        if is_delta && !l.inv {
            raw.push((conjugate(&prefix), 1.0));
        }
    }
    let mut kept: Vec<(Word, f64)> = Vec::new();
    for (key, sign) in raw {
        match kept.last() {
            Some((k, s)) if *k == key && *s == -sign => {
                kept.pop();
            }
            _ => kept.push((key, sign)),
        }
    }
    let xs = kept
        .into_iter()
        .map(|(key, sign)| {
            let (conj, core) = key.cyclic_split();
            Crossing { conj, core, sign }
        })
        .collect();
    (xs, prefix)
}

/// Conjugator, core and side of each crossing, then the undeformed image.
type EvaluatedTarget = (Vec<(Mat2, Mat2, f64)>, Mat2);

/// A crossing plan with matrices evaluated at one base point.
#[derive(Debug, Clone)]
pub struct QuakeAt {
    rep: Rep,
    gamma_trace: f64,
    targets: [EvaluatedTarget; 3],
}

impl QuakeAt {
    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn gamma_trace(&self) -> f64 {
        self.gamma_trace
    }

    pub fn eval(&self, r: f64) -> Result<TracePoint> {
        let mut out = [0.0; 3];
        for (slot, (factors, tail)) in out.iter_mut().zip(&self.targets) {
            let mut acc = Mat2::IDENTITY;
            for (conj, core, sign) in factors {
                let h = core.frac_pow(-r * sign)?;
                acc = acc.mul(&conj.mul(&h).mul(&conj.inv()));
            }
            let t = acc.mul(tail).trace();
            if !t.is_finite() || t.abs() > TRACE_HORIZON {
                return Err(Error::horizon(t));
            }
            *slot = t;
        }
        Ok(TracePoint::from(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charvar::{is_teich, kappa, standard_starts, twist, twist_n};
    use crate::f2words::{curve_from_slope, dual_vector, intersection, mcg_matrix};
    use crate::quake::flow_trace;
    use crate::rep::word_trace;

    const V: TracePoint = TracePoint::new(3.0, 3.0, 3.0);

    fn slopes() -> Vec<Slope> {
        [(1, 0), (0, 1), (1, 1), (1, 2), (2, 3), (1, -2), (3, 5), (2, -5), (4, 1), (5, 3)]
            .iter()
            .map(|&(p, q)| Slope::new(p, q).unwrap())
            .collect()
    }

    #[test]
    fn identity_framing() {
        let f = build_framing(Slope::ALPHA);
        assert_eq!(f.gamma(), &Word::alpha());
        assert_eq!(f.delta(), &Word::beta());
        assert!(f.m().is_identity());
        assert_eq!(phi(&f, V).unwrap(), V);
        assert!(psi(&f, V).unwrap().rel_dist(&V) < 1e-15);
        for r in [-1.0, 0.3, 2.0] {
            let q = quake_about(&f, V, r).unwrap();
            assert!(q.rel_dist(&flow_trace_alpha(V, r).unwrap()) < 1e-13);
        }
    }

    #[test]
    fn framing_invariants() {
        let pts = [
            standard_starts()[1],
            standard_starts()[2],
            TracePoint::new(3.0, 4.0, 9.3166247903554),
        ];
        for s in slopes() {
            let f = build_framing(s);
            let (m2, n2) = dual_vector(s);
            assert_eq!(f.gamma(), &curve_from_slope(s), "{s}");
            assert_eq!(f.slope(), s);
            assert_eq!(f.delta().abelianize(), (m2, n2));
            assert_eq!(intersection(s, Slope::new(m2, n2).unwrap()), 1);
            let via_m = f.m().apply(&Word::alpha());
            for v in pts {
                let rep = realize(v).unwrap();
                let (a, b) = (word_trace(&rep, &via_m), word_trace(&rep, f.gamma()));
                assert!((a - b).abs() < 1e-9 * a.abs());
            }
        }
    }

    #[test]
    fn pair_example_framing() {
        let t = TwistWord::from_factors([(CurveName::Beta, 1), (CurveName::Alpha, -1)]);
        let f = Framing::from_twist_word(t, Sign::Plus);
        assert_eq!(f.gamma().to_string(), "a b");
        assert_eq!(f.delta().to_string(), "b a b");
        assert!(phi(&f, V).unwrap().rel_dist(&TracePoint::new(3.0, 6.0, 15.0)) < 1e-13);
        // ψ in closed form: (x′(x′y′ − z′) − y′, x′y′ − z′, x′)
        let l = TracePoint::new(3.0, 6.0, 15.0);
        let (x, y, z) = (l.x, l.y, l.z);
        let want = TracePoint::new(x * (x * y - z) - y, x * y - z, x);
        assert!(psi(&f, l).unwrap().rel_dist(&want) < 1e-12);
        let g = build_framing(Slope::ALPHA_BETA);
        assert!((phi(&g, V).unwrap().x - 3.0).abs() < 1e-13);
    }

    #[test]
    fn psi_inverts_phi() {
        let pts = [V, standard_starts()[1], standard_starts()[2], TracePoint::new(3.0, 4.0, 9.3166247903554)];
        for s in slopes() {
            let f = build_framing(s);
            for v in pts {
                let back = psi(&f, phi(&f, v).unwrap()).unwrap();
                assert!(back.rel_dist(&v) < 1e-12, "{s} {v} {back}");
            }
        }
    }

    #[test]
    fn integer_times_match_word_twists() {
        for s in slopes() {
            let f = build_framing(s);
            for v in [V, standard_starts()[1]] {
                for n in -3i64..=3 {
                    let q = quake_about(&f, v, n as f64).unwrap();
                    let d = dehn_twist_about(s, v, n).unwrap();
                    assert!(q.rel_dist(&d) < 1e-7, "{s} {n}: {q} vs {d}");
                }
            }
        }
    }

    #[test]
    fn framing_twists_reduce_to_automorphisms() {
        assert!(dehn_twist_about(Slope::ALPHA, V, 1).unwrap().rel_dist(&twist(V, CurveName::Alpha, Sign::Plus)) < 1e-13);
        assert!(dehn_twist_about(Slope::BETA, V, -1).unwrap().rel_dist(&twist(V, CurveName::Beta, Sign::Minus)) < 1e-13);
        let v = TracePoint::new(3.0, 4.0, 9.3166247903554);
        for c in CurveName::ALL {
            let s = match c {
                CurveName::Alpha => Slope::ALPHA,
                CurveName::Beta => Slope::BETA,
                CurveName::AlphaBeta => Slope::ALPHA_BETA,
            };
            for n in -2..=2 {
                assert!(dehn_twist_about(s, v, n).unwrap().rel_dist(&twist_n(v, c, n)) < 1e-11);
            }
            let f = build_framing(s);
            for r in [-1.7, -0.4, 0.25, 1.5] {
                let q = quake_about(&f, v, r).unwrap();
                assert!(q.rel_dist(&flow_trace(v, c, r).unwrap()) < 1e-11, "{c:?} {r}");
            }
        }
    }

    #[test]
    fn central_oracle_pair_curve() {
        let f = build_framing(Slope::ALPHA_BETA);
        let q = quake_about(&f, V, 2.0).unwrap();
        let d = dehn_twist_about(Slope::ALPHA_BETA, V, 2).unwrap();
        assert!(q.rel_dist(&d) < 1e-12);
    }

    #[test]
    fn three_evaluations_agree() {
        for s in slopes() {
            let f = build_framing(s);
            let plan = QuakePlan::new(&f).at(V).unwrap();
            for r in [-1.2, -0.3, 0.15, 0.8] {
                let a = quake_about(&f, V, r).unwrap();
                let b = plan.eval(r).unwrap();
                assert!(a.rel_dist(&b) < 1e-7, "{s} {r}: {a} vs {b}");
            }
        }
        let f = build_framing(Slope::new(1, 2).unwrap());
        for r in [-0.6, 0.4] {
            let a = quake_about(&f, V, r).unwrap();
            assert!(a.rel_dist(&quake_about_words(&f, V, r).unwrap()) < 1e-9);
        }
    }

    #[test]
    fn phi_matches_word_traces() {
        let pts = [V, standard_starts()[1], standard_starts()[2], TracePoint::new(3.0, 4.0, 9.3166247903554)];
        for s in slopes() {
            let f = build_framing(s);
            for v in pts {
                let a = phi(&f, v).unwrap();
                let b = phi_words(&f, v).unwrap();
                assert!(a.rel_dist(&b) < 1e-9, "{s} {v}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn word_psi_loses_digits_where_level_psi_does_not() {
        let f = build_framing(Slope::new(5, 8).unwrap());
        let v = TracePoint::new(3.0, 4.0, 9.3166247903554);
        let local = phi(&f, v).unwrap();
        assert!(psi(&f, local).unwrap().rel_dist(&v) < 1e-13);
        let words = psi_words(&f, local);
        assert!(words.map_or(true, |w| w.rel_dist(&v) > 1e-6));
    }

    #[test]
    fn crossing_counts_are_intersection_numbers() {
        for s in slopes() {
            let plan = QuakePlan::new(&build_framing(s));
            let [ca, cb, cab] = plan.crossing_counts();
            assert_eq!(ca as u64, intersection(s, Slope::ALPHA), "{s}");
            assert_eq!(cb as u64, intersection(s, Slope::BETA), "{s}");
            assert_eq!(cab as u64, intersection(s, Slope::ALPHA_BETA), "{s}");
        }
    }

    #[test]
    fn level_is_preserved() {
        for s in slopes() {
            let f = build_framing(s);
            for v in standard_starts() {
                let path = LocalPath::new(&f, v).unwrap();
                for k in -8..=8 {
                    let r = k as f64 * 0.25;
                    match path.eval(r) {
                        Ok(q) => {
                            let scale = q.x * q.y * q.z;
                            assert!((kappa(q) + 2.0).abs() < 1e-7 * scale.max(1.0), "{s} {r}");
                            if q.max_abs() < 1e3 {
                                assert!(is_teich(q, 1e-7), "{s} {r} {q}");
                            }
                            assert!(q.rel_dist(&quake_about(&f, v, r).unwrap()) == 0.0);
                        }
                        Err(e) => assert!(e.is_horizon()),
                    }
                }
            }
        }
    }

    #[test]
    fn dual_choice_does_not_matter() {
        for s in slopes() {
            let (m2, n2) = dual_vector(s);
            let f = build_framing(s);
            for k in [-2i64, 1, 3] {
                let alt = Framing::from_matrix(&IntMatrix2::new(s.p(), m2 + k * s.p(), s.q(), n2 + k * s.q())).unwrap();
                assert_ne!(alt.delta(), f.delta());
                for r in [-1.0, -0.35, 0.5, 1.25] {
                    let a = quake_about(&f, V, r).unwrap();
                    let b = quake_about(&alt, V, r).unwrap();
                    assert!(a.rel_dist(&b) < 1e-7, "{s} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn flow_composition() {
        let f = build_framing(Slope::new(2, 3).unwrap());
        for (r1, r2) in [(0.3, 0.4), (-0.6, 0.25), (1.0, -1.0)] {
            let once = quake_about(&f, V, r1 + r2).unwrap();
            let twice = quake_about(&f, quake_about(&f, V, r1).unwrap(), r2).unwrap();
            assert!(once.rel_dist(&twice) < 1e-8);
        }
    }

    #[test]
    fn flipped_framing_has_trivial_effect_on_characters() {
        let s = Slope::new(1, -2).unwrap();
        let (tw, sign) = framing_class(s);
        let f = build_framing(s);
        assert_eq!(mcg_matrix(&tw).apply((1, 0)), (sign.as_i64() * s.p(), sign.as_i64() * s.q()));
        assert!(phi(&f, V).unwrap().rel_dist(&phi(&Framing::from_twist_word(tw, Sign::Plus), V).unwrap()) < 1e-12);
    }
}
