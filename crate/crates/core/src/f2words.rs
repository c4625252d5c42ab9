//! Words in the free group on α, β, Dehn twists as substitutions and as SL(2,ℤ)
//! matrices, and simple closed curves indexed by coprime slopes.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::charvar::{CurveName, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub inv: bool,
}

impl Letter {
    pub const A: Letter = Letter { gen: Gen::A, inv: false };
    pub const B: Letter = Letter { gen: Gen::B, inv: false };
    pub const A_INV: Letter = Letter { gen: Gen::A, inv: true };
    pub const B_INV: Letter = Letter { gen: Gen::B, inv: true };

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn to_char(self) -> char {
        match (self.gen, self.inv) {
            (Gen::A, false) => 'a',
            (Gen::A, true) => 'A',
            (Gen::B, false) => 'b',
            (Gen::B, true) => 'B',
        }
    }
}

/// Freely reduced word. Every constructor reduces, so the invariant always holds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn alpha() -> Word {
        Word { letters: vec![Letter::A] }
    }

    pub fn beta() -> Word {
        Word { letters: vec![Letter::B] }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// Exponent sums (α-count, β-count).
    pub fn abelianize(&self) -> (i64, i64) {
        self.letters.iter().fold((0, 0), |(a, b), l| {
            let e = if l.inv { -1 } else { 1 };
            match l.gen {
                Gen::A => (a + e, b),
                Gen::B => (a, b + e),
            }
        })
    }

    /// Split as c·g·c⁻¹ with g cyclically reduced; returns (c, g).
    pub fn cyclic_split(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        (
            Word { letters: self.letters[..k].to_vec() },
            Word { letters: self.letters[k..n - k].to_vec() },
        )
    }

    /// Image under the homomorphism a ↦ `img_a`, b ↦ `img_b`.
    pub fn substitute(&self, img_a: &Word, img_b: &Word) -> Word {
        let inv_a = img_a.inverse();
        let inv_b = img_b.inverse();
        let mut w = Word::empty();
        for l in &self.letters {
            let img = match (l.gen, l.inv) {
                (Gen::A, false) => img_a,
                (Gen::A, true) => &inv_a,
                (Gen::B, false) => img_b,
                (Gen::B, true) => &inv_b,
            };
            for &x in &img.letters {
                w.push(x);
            }
        }
        w
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            letters.push(match ch {
                'a' => Letter::A,
                'A' => Letter::A_INV,
                'b' => Letter::B,
                'B' => Letter::B_INV,
                '1' if s.trim() == "1" => continue,
                other => return Err(Error::Domain(format!("unexpected letter {other:?} in word"))),
            });
        }
        Ok(Word::from_letters(letters))
    }
}

/// Free reduction of an arbitrary letter sequence.
pub fn reduce(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

fn twist_images(t: CurveName, dir: Sign) -> (Word, Word) {
    use Letter as L;
    let w = |ls: &[Letter]| Word::from_letters(ls.iter().copied());
    match (t, dir) {
        (CurveName::Alpha, Sign::Plus) => (w(&[L::A]), w(&[L::B, L::A_INV])),
        (CurveName::Alpha, Sign::Minus) => (w(&[L::A]), w(&[L::B, L::A])),
        (CurveName::Beta, Sign::Plus) => (w(&[L::A, L::B]), w(&[L::B])),
        (CurveName::Beta, Sign::Minus) => (w(&[L::A, L::B_INV]), w(&[L::B])),
        (CurveName::AlphaBeta, Sign::Plus) => (w(&[L::A, L::B, L::A]), w(&[L::A_INV])),
        (CurveName::AlphaBeta, Sign::Minus) => (w(&[L::B_INV]), w(&[L::B, L::A, L::B])),
    }
}

/// Substitute the twist automorphism (or its inverse) into a word.
pub fn apply_twist(w: &Word, t: CurveName, dir: Sign) -> Word {
    let (ia, ib) = twist_images(t, dir);
    w.substitute(&ia, &ib)
}

/// 2×2 integer matrix (m1 m2; n1 n2). Columns are the images of α and β in homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub m1: i64,
    pub m2: i64,
    pub n1: i64,
    pub n2: i64,
}

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2 { m1: 1, m2: 0, n1: 0, n2: 1 };

    pub const fn new(m1: i64, m2: i64, n1: i64, n2: i64) -> Self {
        IntMatrix2 { m1, m2, n1, n2 }
    }

    pub fn det(&self) -> i64 {
        self.m1 * self.n2 - self.m2 * self.n1
    }

    pub fn mul(&self, o: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2 {
            m1: self.m1 * o.m1 + self.m2 * o.n1,
            m2: self.m1 * o.m2 + self.m2 * o.n2,
            n1: self.n1 * o.m1 + self.n2 * o.n1,
            n2: self.n1 * o.m2 + self.n2 * o.n2,
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> IntMatrix2 {
        IntMatrix2 { m1: self.n2, m2: -self.m2, n1: -self.n1, n2: self.m1 }
    }

    pub fn neg(&self) -> IntMatrix2 {
        IntMatrix2 { m1: -self.m1, m2: -self.m2, n1: -self.n1, n2: -self.n2 }
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        (self.m1 * v.0 + self.m2 * v.1, self.n1 * v.0 + self.n2 * v.1)
    }

    pub fn pow(&self, k: i64) -> IntMatrix2 {
        let base = if k < 0 { self.inverse() } else { *self };
        (0..k.unsigned_abs()).fold(IntMatrix2::IDENTITY, |acc, _| acc.mul(&base))
    }

    /// Homology action of the forward twist about a framing curve.
    pub fn generator(t: CurveName) -> IntMatrix2 {
        match t {
            CurveName::Alpha => IntMatrix2::new(1, -1, 0, 1),
            CurveName::Beta => IntMatrix2::new(1, 0, 1, 1),
            CurveName::AlphaBeta => IntMatrix2::new(2, -1, 1, 0),
        }
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.m1, self.m2, self.n1, self.n2)
    }
}

/// Composition f₁∘f₂∘…∘f_k of twist powers, stored in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TwistWord {
    factors: Vec<(CurveName, i64)>,
}

impl TwistWord {
    pub fn identity() -> TwistWord {
        TwistWord::default()
    }

    pub fn from_factors<I: IntoIterator<Item = (CurveName, i64)>>(factors: I) -> TwistWord {
        let mut tw = TwistWord::identity();
        for (t, k) in factors {
            tw.push(t, k);
        }
        tw
    }

    /// Append a factor on the right, merging with an equal neighbour.
    pub fn push(&mut self, t: CurveName, k: i64) {
        if k == 0 {
            return;
        }
        match self.factors.last_mut() {
            Some((last, p)) if *last == t => {
                *p += k;
                if *p == 0 {
                    self.factors.pop();
                }
            }
            _ => self.factors.push((t, k)),
        }
    }

    pub fn factors(&self) -> &[(CurveName, i64)] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn inverse(&self) -> TwistWord {
        TwistWord::from_factors(self.factors.iter().rev().map(|&(t, k)| (t, -k)))
    }

    /// self ∘ other
    pub fn compose(&self, other: &TwistWord) -> TwistWord {
        let mut tw = self.clone();
        for &(t, k) in &other.factors {
            tw.push(t, k);
        }
        tw
    }

    pub fn pow(&self, n: i64) -> TwistWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(TwistWord::identity(), |acc, _| acc.compose(&base))
    }

    /// Image of a word under the composite automorphism; the last factor acts first.
    pub fn apply(&self, w: &Word) -> Word {
        let (ia, ib) = self.images();
        w.substitute(&ia, &ib)
    }

    /// Images of α and β under the composite.
    pub fn images(&self) -> (Word, Word) {
        let mut ia = Word::alpha();
        let mut ib = Word::beta();
        // (f∘g)(a) = f(g(a)): build from the left factor's images substituted into the tail.
        for &(t, k) in &self.factors {
            let dir = Sign::of(k);
            for _ in 0..k.unsigned_abs() {
                let (ta, tb) = twist_images(t, dir);
                let na = ta.substitute(&ia, &ib);
                let nb = tb.substitute(&ia, &ib);
                ia = na;
                ib = nb;
            }
        }
        (ia, ib)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(t, k)| {
                let name = match t {
                    CurveName::Alpha => "Ta",
                    CurveName::Beta => "Tb",
                    CurveName::AlphaBeta => "Tab",
                };
                format!("{name}^{k}")
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Product of the generator matrices in factor order.
pub fn mcg_matrix(tw: &TwistWord) -> IntMatrix2 {
    tw.factors
        .iter()
        .fold(IntMatrix2::IDENTITY, |acc, &(t, k)| acc.mul(&IntMatrix2::generator(t).pow(k)))
}

/// Write M = sign · mcg_matrix(word) using the Euclidean algorithm on the first column.
pub fn decompose_matrix(m: &IntMatrix2) -> Result<(TwistWord, Sign)> {
    let det = m.det();
    if det != 1 {
        return Err(Error::NotUnimodular(det));
    }
    // Left-multiply by A^k (row1 -= k row2) and B^k (row2 += k row1) until lower-left is zero.
    let mut r = *m;
    let mut ops: Vec<(CurveName, i64)> = Vec::new();
    while r.n1 != 0 {
        if r.m1.abs() > r.n1.abs() {
            let q = r.m1 / r.n1;
            r = IntMatrix2::generator(CurveName::Alpha).pow(q).mul(&r);
            ops.push((CurveName::Alpha, q));
        } else if r.m1 != 0 {
            let q = r.n1 / r.m1;
            r = IntMatrix2::generator(CurveName::Beta).pow(-q).mul(&r);
            ops.push((CurveName::Beta, -q));
        } else {
            let k = -r.n1;
            r = IntMatrix2::generator(CurveName::Alpha).pow(k).mul(&r);
            ops.push((CurveName::Alpha, k));
        }
    }
    // r = ε·A^j with ε = m1 = n2 = ±1.
    let eps = r.m1;
    let j = -eps * r.m2;
    let mut tw = TwistWord::identity();
    for &(t, k) in &ops {
        tw.push(t, -k);
    }
    tw.push(CurveName::Alpha, j);
    Ok((tw, Sign::of(eps)))
}

/// Homology class of an unoriented simple closed curve: coprime (p, q) with q ≥ 0, p > 0 if q = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const ALPHA: Slope = Slope { p: 1, q: 0 };
    pub const BETA: Slope = Slope { p: 0, q: 1 };
    pub const ALPHA_BETA: Slope = Slope { p: 1, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidSlope(p, q));
        }
        if q < 0 || (q == 0 && p < 0) {
            Ok(Slope { p: -p, q: -q })
        } else {
            Ok(Slope { p, q })
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn framing_curve(&self) -> Option<CurveName> {
        match (self.p, self.q) {
            (1, 0) => Some(CurveName::Alpha),
            (0, 1) => Some(CurveName::Beta),
            (1, 1) => Some(CurveName::AlphaBeta),
            _ => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let bad = || Error::Domain(format!("cannot parse slope {s:?}, expected p/q"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

/// Geometric intersection number of two simple closed curves on the torus.
pub fn intersection(s1: Slope, s2: Slope) -> u64 {
    (s1.p * s2.q - s2.p * s1.q).unsigned_abs()
}

/// Oriented dual (m2, n2) with p·n2 − m2·q = 1, m2 the least non-negative solution.
pub fn dual_vector(s: Slope) -> (i64, i64) {
    let (p, q) = (s.p, s.q);
    if p == 0 {
        return (-1, 0);
    }
    let modulus = p.abs();
    // −q·m2 ≡ 1 (mod |p|)
    let ext = (-q).rem_euclid(modulus).extended_gcd(&modulus);
    let m2 = ext.x.rem_euclid(modulus);
    let n2 = (1 + m2 * q) / p;
    (m2, n2)
}

/// Canonical dual curve: intersection(s, find_dual(s)) = 1.
pub fn find_dual(s: Slope) -> Slope {
    let (m2, n2) = dual_vector(s);
    Slope::new(m2, n2).expect("dual vector is primitive")
}

/// Extended rational: a finite fraction or ∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtRational {
    Finite(Ratio<i64>),
    Infinite,
}

impl ExtRational {
    pub fn recip(self) -> ExtRational {
        match self {
            ExtRational::Infinite => ExtRational::Finite(Ratio::from_integer(0)),
            ExtRational::Finite(r) if *r.numer() == 0 => ExtRational::Infinite,
            ExtRational::Finite(r) => ExtRational::Finite(r.recip()),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ExtRational::Infinite => f64::INFINITY,
            ExtRational::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Infinite => write!(f, "inf"),
            ExtRational::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// sl(γ) = i(γ, α)/i(γ, β) with sign, so that α ↦ 0 and β ↦ ∞.
pub fn slope_of(s: Slope) -> ExtRational {
    if s.p == 0 {
        ExtRational::Infinite
    } else {
        ExtRational::Finite(Ratio::new(s.q, s.p))
    }
}

/// Mapping class taking α to the (p, q) curve and β to its canonical dual, up to ±I.
pub fn framing_class(s: Slope) -> (TwistWord, Sign) {
    let (m2, n2) = dual_vector(s);
    decompose_matrix(&IntMatrix2::new(s.p, m2, s.q, n2)).expect("completed matrix has determinant one")
}

/// Word for the (p, q) curve; its abelianization is exactly (p, q).
pub fn curve_from_slope(s: Slope) -> Word {
    let (tw, sign) = framing_class(s);
    let w = tw.apply(&Word::alpha());
    match sign {
        Sign::Plus => w,
        Sign::Minus => w.inverse(),
    }
}
