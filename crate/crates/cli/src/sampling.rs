//! Sampling earthquake paths, in parallel with index-ordered output.

use quake_core::charvar::is_teich;
use quake_core::chgcoords::LocalPath;
use quake_core::numeric::half_length;
use quake_core::{Sign, TracePoint};
use rayon::prelude::*;

use crate::curves::NamedCurve;
use crate::error::{CliError, CliResult};

/// What the sampled parameter measures: multiples of a full twist, or arclength along γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Twist,
    Arclength,
}

impl Param {
    pub fn column(self) -> &'static str {
        match self {
            Param::Twist => "r",
            Param::Arclength => "s",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PathRequest {
    pub curve: NamedCurve,
    pub start: TracePoint,
    pub range: (f64, f64),
    pub samples: usize,
    pub param: Param,
    /// The sample at parameter t is the earthquake at orient·t.
    pub orient: Sign,
    pub trace_cap: f64,
    pub teich_tol: f64,
}

impl PathRequest {
    pub fn validate(&self) -> CliResult<()> {
        if self.samples < 2 {
            return Err(CliError::Invalid(format!("sample count must be at least 2, got {}", self.samples)));
        }
        let (lo, hi) = self.range;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(CliError::Invalid(format!("range [{lo}, {hi}] is empty or not finite")));
        }
        if !is_teich(self.start, self.teich_tol) {
            return Err(CliError::Invalid(format!("start {} is not in the Teichmüller component", self.start)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub trace: TracePoint,
}

#[derive(Debug, Clone)]
pub struct SampledPath {
    pub samples: Vec<Sample>,
    /// Range actually sampled, after shrinking to the trace cap.
    pub range: (f64, f64),
    pub clipped: bool,
}

struct Evaluator {
    path: LocalPath,
    /// parameter units per full twist
    per_twist: f64,
    orient: f64,
}

impl Evaluator {
    fn new(req: &PathRequest) -> CliResult<Evaluator> {
        let path = LocalPath::new(req.curve.framing(), req.start)?;
        let per_twist = match req.param {
            Param::Twist => 1.0,
            Param::Arclength => 2.0 * half_length(path.gamma_trace()),
        };
        Ok(Evaluator { path, per_twist, orient: req.orient.value() })
    }

    fn eval(&self, t: f64) -> quake_core::Result<TracePoint> {
        self.path.eval(self.orient * t / self.per_twist)
    }

    fn within(&self, t: f64, cap: f64) -> bool {
        self.eval(t).is_ok_and(|v| v.is_finite() && v.max_abs() <= cap)
    }
}

const BISECTIONS: usize = 60;

/// Traces are convex along an earthquake, so the points under the cap form an interval around
/// the anchor; each end is found by bisection.
fn clip(ev: &Evaluator, (lo, hi): (f64, f64), cap: f64) -> CliResult<(f64, f64)> {
    let anchor = 0f64.clamp(lo, hi);
    if !ev.within(anchor, cap) {
        let v = ev.eval(anchor)?;
        return Err(quake_core::Error::horizon(v.max_abs()).into());
    }
    let edge = |mut inside: f64, mut outside: f64| {
        if ev.within(outside, cap) {
            return outside;
        }
        for _ in 0..BISECTIONS {
            let mid = 0.5 * (inside + outside);
            if ev.within(mid, cap) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        inside
    };
    let (a, b) = (edge(anchor, lo), edge(anchor, hi));
    if !(a < b) {
        return Err(CliError::Invalid(format!(
            "range [{lo}, {hi}] collapses to a point under trace cap {cap}"
        )));
    }
    Ok((a, b))
}

pub fn grid(range: (f64, f64), n: usize) -> Vec<f64> {
    let (lo, hi) = range;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 })
        .collect()
}

pub fn sample_path(req: &PathRequest) -> CliResult<SampledPath> {
    req.validate()?;
    let ev = Evaluator::new(req)?;
    let range = clip(&ev, req.range, req.trace_cap)?;
    let ts = grid(range, req.samples);
    let samples = ts
        .par_iter()
        .enumerate()
        .map(|(index, &t)| {
            let trace = ev.eval(t).map_err(|source| CliError::Sample { index, t, source })?;
            if !is_teich(trace, req.teich_tol) {
                return Err(CliError::Sample {
                    index,
                    t,
                    source: quake_core::Error::Domain(format!("{trace} fails the Teichmüller check at {}", req.teich_tol)),
                });
            }
            Ok(Sample { t, trace })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SampledPath { samples, range, clipped: range != req.range })
}
