//! Invariant suites with a JSON report. Each invariant records its largest observed error
//! against a tolerance.

use std::str::FromStr;

use quake_core::charvar::{
    complete_on_level, kappa, klein, sigma, standard_starts, twist, twist_n, CurveName, KleinFlip, Permutation,
};
use quake_core::chgcoords::{build_framing, dehn_twist_about, phi, psi, quake_about, Framing};
use quake_core::coords::{simplex, zeta};
use quake_core::f2words::{dual_vector, IntMatrix2};
use quake_core::families::{analytic_slope_limit, family1_limit_deviation, family2_path_deviation, slope_limit_table, FnPath};
use quake_core::numeric::acosh;
use quake_core::quake::{flow_trace, nu, projective_limit, quake_lengths};
use quake_core::{Sign, Slope, TracePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::figures::{compute_figure, FigureId};

#[derive(Debug, Clone, Serialize)]
pub struct Invariant {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Invariant {
    /// Passes when the error is finite and strictly below the tolerance.
    pub fn new(name: &str, max_error: f64, tolerance: f64) -> Invariant {
        Invariant { name: name.into(), max_error, tolerance, passed: max_error < tolerance }
    }

    /// An invariant whose computation itself failed.
    fn failed(name: &str, tolerance: f64) -> Invariant {
        Invariant { name: name.into(), max_error: f64::INFINITY, tolerance, passed: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub invariants: Vec<Invariant>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub perturbed: bool,
    pub suites: Vec<SuiteReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kappa,
    Equivalence,
    IntegerTimes,
    FnSign,
    Simplex,
    Limits,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Kappa, Suite::Equivalence, Suite::IntegerTimes, Suite::FnSign, Suite::Simplex, Suite::Limits];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kappa => "kappa",
            Suite::Equivalence => "equivalence",
            Suite::IntegerTimes => "integer-times",
            Suite::FnSign => "fn-sign",
            Suite::Simplex => "simplex",
            Suite::Limits => "limits",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| {
                CliError::Invalid(format!(
                    "unknown suite {s:?}; expected kappa, equivalence, integer-times, fn-sign, simplex, limits or all"
                ))
            })
    }
}

/// Inputs shared by every suite.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub starts: [TracePoint; 3],
    pub seed: u64,
    pub random_points: usize,
}

impl Fixtures {
    pub fn standard() -> Fixtures {
        Fixtures { starts: standard_starts(), seed: 0x5eed_cafe, random_points: 1000 }
    }

    /// Starting points pushed off the level set, for checking that failures are reported.
    pub fn perturbed() -> Fixtures {
        let mut f = Fixtures::standard();
        for v in &mut f.starts {
            v.z *= 1.0 + 1e-4;
        }
        f
    }
}

const CURVES: [CurveName; 3] = [CurveName::Alpha, CurveName::Beta, CurveName::AlphaBeta];

fn rel_kappa_change(before: TracePoint, after: TracePoint) -> f64 {
    (kappa(after) - kappa(before)).abs() / kappa(before).abs().max(1.0)
}

/// Twists, Klein flips and permutations on seeded random points with coordinates in (2, 20].
pub fn kappa_invariance(fx: &Fixtures) -> Invariant {
    let mut rng = ChaCha8Rng::seed_from_u64(fx.seed);
    let mut coord = || 2.0 + 18.0 * (1.0 - rng.gen::<f64>());
    let mut worst = 0.0f64;
    for _ in 0..fx.random_points {
        let v = TracePoint::new(coord(), coord(), coord());
        for c in CURVES {
            for d in [Sign::Plus, Sign::Minus] {
                worst = worst.max(rel_kappa_change(v, twist(v, c, d)));
            }
        }
        for k in [KleinFlip::Xy, KleinFlip::Xz, KleinFlip::Yz] {
            worst = worst.max(rel_kappa_change(v, klein(v, k)));
        }
        for p in [Permutation::Rot, Permutation::RotInv, Permutation::Ref1, Permutation::Ref2, Permutation::Ref3] {
            worst = worst.max(rel_kappa_change(v, sigma(v, p)));
        }
    }
    Invariant::new("kappa_invariance", worst, 1e-9)
}

pub fn anchors(fx: &Fixtures) -> Vec<Invariant> {
    let level = fx.starts.iter().map(|&v| (kappa(v) + 2.0).abs()).fold(0.0, f64::max);
    let want = [2.0 * acosh(1.5), 2.0 * acosh(5f64.sqrt() / 2.0)];
    let fn_err = zeta(fx.starts[0]).map_or(f64::INFINITY, |u| (u.ell - want[0]).abs().max((u.tau - want[1]).abs()));
    vec![Invariant::new("starts_on_level", level, 1e-10), Invariant::new("fn_anchor", fn_err, 1e-12)]
}

fn starts_on_level(fx: &Fixtures) -> Invariant {
    anchors(fx).swap_remove(0)
}

pub fn flows_on_level(fx: &Fixtures) -> Invariant {
    let mut worst = 0.0f64;
    for &v in &fx.starts {
        for c in CURVES {
            for i in -30..=30 {
                match flow_trace(v, c, i as f64 * 0.1) {
                    Ok(q) => {
                        let scale = q.x * q.x + q.y * q.y + q.z * q.z;
                        worst = worst.max((kappa(q) - kappa(v)).abs() / scale);
                    }
                    Err(_) => return Invariant::failed("flows_on_level", 1e-12),
                }
            }
        }
    }
    Invariant::new("flows_on_level", worst, 1e-12)
}

/// flow_trace at integer times against repeated twists.
pub fn flow_twist_agreement(fx: &Fixtures) -> Invariant {
    let mut worst = 0.0f64;
    for &v in &fx.starts {
        for c in CURVES {
            for n in -8i64..=8 {
                let err = flow_trace(v, c, n as f64).map_or(f64::INFINITY, |q| q.rel_dist(&twist_n(v, c, n)));
                worst = worst.max(err);
            }
        }
    }
    Invariant::new("flow_vs_twist", worst, 1e-8)
}

/// Triangle-length earthquakes against the trace flow carried through ν.
pub fn triangle_trace_equivalence(fx: &Fixtures) -> Invariant {
    let mut worst = 0.0f64;
    for &v in &fx.starts {
        let Ok(w) = nu(v) else {
            return Invariant::failed("triangle_vs_trace_flow", 1e-9);
        };
        for c in CURVES {
            for i in -30..=30 {
                let r = i as f64 * 0.1;
                let err = match (quake_lengths(w, c, r), flow_trace(v, c, r).and_then(nu)) {
                    (Ok(a), Ok(b)) => (a.a - b.a).abs().max((a.b - b.b).abs()).max((a.c - b.c).abs()),
                    _ => f64::INFINITY,
                };
                worst = worst.max(err);
            }
        }
    }
    Invariant::new("triangle_vs_trace_flow", worst, 1e-9)
}

pub fn oracle_slopes() -> Vec<Slope> {
    [(1, 1), (1, 2), (2, 3), (1, -2), (3, 5)]
        .iter()
        .map(|&(p, q)| Slope::new(p, q).expect("coprime"))
        .collect()
}

/// Framed earthquakes against word twists, ψ∘φ, and independence from the dual curve.
pub fn change_of_coordinates(fx: &Fixtures) -> Vec<Invariant> {
    let (mut twists, mut inverse, mut dual) = (0.0f64, 0.0f64, 0.0f64);
    for s in oracle_slopes() {
        let f = build_framing(s);
        let (m2, n2) = dual_vector(s);
        let alternates: Vec<Framing> = (-3..=3)
            .filter(|&k| k != 0)
            .filter_map(|k| Framing::from_matrix(&IntMatrix2::new(s.p(), m2 + k * s.p(), s.q(), n2 + k * s.q())).ok())
            .collect();
        for &v in &fx.starts {
            for n in -3i64..=3 {
                let err = match (quake_about(&f, v, n as f64), dehn_twist_about(s, v, n)) {
                    (Ok(a), Ok(b)) => a.rel_dist(&b),
                    _ => f64::INFINITY,
                };
                twists = twists.max(err);
            }
            inverse = inverse.max(phi(&f, v).and_then(|l| psi(&f, l)).map_or(f64::INFINITY, |b| b.rel_dist(&v)));
            for r in [-1.5, -0.7, 0.3, 1.1] {
                let Ok(base) = quake_about(&f, v, r) else {
                    dual = f64::INFINITY;
                    continue;
                };
                for alt in &alternates {
                    dual = dual.max(quake_about(alt, v, r).map_or(f64::INFINITY, |q| q.rel_dist(&base)));
                }
            }
        }
    }
    vec![
        Invariant::new("quake_vs_word_twist", twists, 1e-7),
        Invariant::new("psi_inverts_phi", inverse, 1e-8),
        Invariant::new("dual_independence", dual, 1e-7),
    ]
}

/// In Fenchel-Nielsen coordinates the α-earthquake keeps ℓ and moves τ by arclength.
pub fn fn_structure(fx: &Fixtures) -> Vec<Invariant> {
    let (mut length, mut affine, mut coherence) = (0.0f64, 0.0f64, 0.0f64);
    for &v in &fx.starts {
        let Ok(u) = zeta(v) else {
            return ["alpha_length_constant", "alpha_twist_affine", "signed_twist_coherence"]
                .iter()
                .map(|n| Invariant::failed(n, 1e-9))
                .collect();
        };
        for i in -30..=30 {
            let r = i as f64 * 0.1;
            match flow_trace(v, CurveName::Alpha, r).and_then(zeta) {
                Ok(p) => {
                    length = length.max((p.ell - u.ell).abs());
                    affine = affine.max((p.tau - (u.tau + r * u.ell)).abs());
                }
                Err(_) => {
                    length = f64::INFINITY;
                    affine = f64::INFINITY;
                }
            }
        }
        for n in -4i64..=4 {
            let err = zeta(twist_n(v, CurveName::Alpha, n)).map_or(f64::INFINITY, |w| (w.tau - (u.tau + n as f64 * u.ell)).abs());
            coherence = coherence.max(err);
        }
    }
    vec![
        Invariant::new("alpha_length_constant", length, 1e-10),
        Invariant::new("alpha_twist_affine", affine, 1e-9),
        Invariant::new("signed_twist_coherence", coherence, 1e-8),
    ]
}

pub const SLOPE_GRID: [f64; 3] = [15.0, 30.0, 60.0];

/// τ/ℓ along earthquakes from ζ of the first start tends to 1/sl in both directions.
pub fn slope_asymptotics(fx: &Fixtures) -> Vec<Invariant> {
    let names = ["slope_limit_gap", "slope_gap_shrinks", "alpha_inverse_ratio"];
    let Ok(u) = zeta(fx.starts[0]) else {
        return names.iter().map(|n| Invariant::failed(n, 0.05)).collect();
    };
    let (mut gap, mut shrink, mut alpha) = (0.0f64, 0.0f64, 0.0f64);
    for s in [Slope::BETA, Slope::ALPHA_BETA, Slope::new(2, 3).expect("coprime")] {
        let limit = analytic_slope_limit(s);
        for dir in [Sign::Plus, Sign::Minus] {
            let Ok(rows) = slope_limit_table(s, u, &SLOPE_GRID, dir) else {
                gap = f64::INFINITY;
                continue;
            };
            let d: Vec<f64> = rows.iter().map(|r| (r.ratio - limit).abs()).collect();
            gap = gap.max(d[2]);
            shrink = shrink.max(d[1] / d[0]).max(d[2] / d[1]);
        }
    }
    for dir in [Sign::Plus, Sign::Minus] {
        let ratio = FnPath::new(Slope::ALPHA, u).and_then(|p| p.at(dir.value() * 25.0 * p.gamma_length()));
        alpha = alpha.max(ratio.map_or(f64::INFINITY, |p| (p.ell / p.tau).abs()));
    }
    vec![
        Invariant::new(names[0], gap, 0.05),
        Invariant::new(names[1], shrink, 1.0),
        Invariant::new(names[2], alpha, 0.1),
    ]
}

pub const FAMILY1_ORDERS: [u32; 4] = [4, 8, 16, 32];

pub fn family2_times() -> Vec<f64> {
    (0..=20).map(|i| i as f64 * 0.5).collect()
}

/// Rescaled family paths settle as n grows.
pub fn family_limits(fx: &Fixtures) -> Vec<Invariant> {
    let v = fx.starts[0];
    let dev1: Vec<f64> = FAMILY1_ORDERS
        .iter()
        .map(|&n| nu(v).and_then(|w| family1_limit_deviation(w, n, 1.0)).unwrap_or(f64::INFINITY))
        .collect();
    let shrink1 = dev1.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    let times = family2_times();
    let dev2: Vec<f64> = [2, 3].iter().map(|&n| family2_path_deviation(v, n, &times).unwrap_or(f64::INFINITY)).collect();
    vec![
        Invariant::new("family1_deviation", dev1[3], 0.05),
        Invariant::new("family1_deviation_shrinks", shrink1, 1.0),
        Invariant::new("family2_deviation_shrinks", dev2[1] / dev2[0], 1.0),
    ]
}

/// Points (3, 4, z) on both branches of the level set.
pub fn generic_points() -> Vec<TracePoint> {
    [true, false]
        .iter()
        .filter_map(|&larger| complete_on_level(3.0, 4.0, larger).map(|z| TracePoint::new(3.0, 4.0, z)))
        .collect()
}

pub fn asymptotic_direction() -> Vec<Invariant> {
    let (mut err, mut overlap) = (0.0f64, 0.0f64);
    for v in generic_points() {
        let mut limits = Vec::new();
        for dir in [Sign::Plus, Sign::Minus] {
            let (Ok(q), Ok(want)) = (flow_trace(v, CurveName::Alpha, 40.0 * dir.value()), projective_limit(v, dir)) else {
                err = f64::INFINITY;
                continue;
            };
            let n = (q.x * q.x + q.y * q.y + q.z * q.z).sqrt();
            let got = [q.x / n, q.y / n, q.z / n];
            err = err.max(got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            limits.push(want);
        }
        if let [f, b] = limits[..] {
            let d = f.iter().zip(b).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            overlap = overlap.max(1.0 / d);
        }
    }
    vec![Invariant::new("projective_limit", err, 1e-6), Invariant::new("limit_class_overlap", overlap, 1e3)]
}

/// Simplex sums and the Teichmüller check over every trace sample of every figure.
pub fn figure_samples(cfg: &Settings) -> Vec<Invariant> {
    let (mut sum, mut level) = (0.0f64, 0.0f64);
    for id in FigureId::ALL {
        let Ok(data) = compute_figure(id, cfg) else {
            return vec![Invariant::failed("simplex_sum", 1e-10), Invariant::failed("sample_level", cfg.teich_tol)];
        };
        for s in data.series.iter().flat_map(|s| s.path.samples.iter()) {
            sum = sum.max(simplex(s.trace).map_or(f64::INFINITY, |p| (p.sum() - 1.0).abs()));
            let off = if s.trace.x.min(s.trace.y).min(s.trace.z) > 2.0 { (kappa(s.trace) + 2.0).abs() } else { f64::INFINITY };
            level = level.max(off);
        }
    }
    vec![Invariant::new("simplex_sum", sum, 1e-10), Invariant::new("sample_level", level, cfg.teich_tol)]
}

fn suite_report(suite: Suite, fx: &Fixtures, cfg: &Settings) -> SuiteReport {
    let inv = match suite {
        Suite::Kappa => {
            let mut v = vec![kappa_invariance(fx)];
            v.extend(anchors(fx));
            v.push(flows_on_level(fx));
            v
        }
        Suite::Equivalence => vec![starts_on_level(fx), triangle_trace_equivalence(fx)],
        Suite::IntegerTimes => {
            let mut v = vec![starts_on_level(fx), flow_twist_agreement(fx)];
            v.extend(change_of_coordinates(fx));
            v
        }
        Suite::FnSign => {
            let mut v = vec![starts_on_level(fx)];
            v.extend(fn_structure(fx));
            v
        }
        Suite::Simplex => {
            let mut v = vec![starts_on_level(fx)];
            v.extend(figure_samples(cfg));
            v
        }
        Suite::Limits => {
            let mut v = vec![starts_on_level(fx)];
            v.extend(slope_asymptotics(fx));
            v.extend(family_limits(fx));
            v.extend(asymptotic_direction());
            v
        }
        Suite::All => unreachable!("expanded by run_checks"),
    };
    SuiteReport { suite: suite.name().into(), passed: inv.iter().all(|i| i.passed), invariants: inv }
}

pub fn run_checks(suite: Suite, perturb: bool, cfg: &Settings) -> CheckReport {
    let fx = if perturb { Fixtures::perturbed() } else { Fixtures::standard() };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| suite_report(s, &fx, cfg)).collect();
    CheckReport { passed: reports.iter().all(|r| r.passed), perturbed: perturb, suites: reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(v: &[Invariant]) {
        for i in v {
            assert!(i.passed, "{i:?}");
        }
    }

    #[test]
    fn cheap_suites_pass() {
        let fx = Fixtures::standard();
        all_pass(&[kappa_invariance(&fx), flows_on_level(&fx), flow_twist_agreement(&fx), triangle_trace_equivalence(&fx)]);
        all_pass(&anchors(&fx));
        all_pass(&fn_structure(&fx));
        all_pass(&asymptotic_direction());
    }

    #[test]
    fn perturbed_fixture_names_the_level_check() {
        let r = run_checks(Suite::Equivalence, true, &Settings::default());
        assert!(!r.passed);
        let bad: Vec<&str> = r.suites[0].invariants.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
        assert!(bad.contains(&"starts_on_level"), "{bad:?}");
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn failed_invariants_serialize_infinity_as_null() {
        let s = serde_json::to_string(&Invariant::failed("x", 1.0)).unwrap();
        assert_eq!(s, r#"{"name":"x","max_error":null,"tolerance":1.0,"passed":false}"#);
    }
}
