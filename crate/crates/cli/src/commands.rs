//! The verbs other than `figure` and `check`: path sampling, conversion, slope tables and the
//! intersection probe.

use std::path::{Path, PathBuf};

use quake_core::coords::zeta;
use quake_core::families::{analytic_slope_limit, quake_intersection_probe, slope_limit_table, ProbeOutcome};
use quake_core::{Sign, Slope};
use serde::Serialize;

use crate::charts::{convert, Chart, ChartPoint};
use crate::error::{CliError, CliResult};
use crate::figures::chart_rows;
use crate::output::{csv_string, fmt_f64, write_file};
use crate::sampling::{sample_path, PathRequest, SampledPath};

/// One CSV per chart, each with the sampled parameter as its first column.
#[derive(Debug, Clone)]
pub struct FlowOutput {
    pub path: SampledPath,
    pub tables: Vec<(Chart, String)>,
}

pub fn cmd_flow(req: &PathRequest, charts: &[Chart]) -> CliResult<FlowOutput> {
    if charts.is_empty() {
        return Err(CliError::Invalid("no chart requested".into()));
    }
    let path = sample_path(req)?;
    let tables = charts
        .iter()
        .map(|&c| {
            let rows = chart_rows(&path, &[c])?;
            let mut header = vec![req.param.column()];
            header.extend_from_slice(c.columns());
            Ok((c, csv_string(&[], &header, &rows)))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(FlowOutput { path, tables })
}

pub fn write_flow(out: &FlowOutput, dir: &Path, stem: &str) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    out.tables
        .iter()
        .map(|(c, text)| {
            let p = dir.join(format!("{stem}_{}.csv", c.name()));
            write_file(&p, text)?;
            Ok(p)
        })
        .collect()
}

/// Header and value lines for a converted point.
pub fn cmd_convert(p: &ChartPoint, to: Chart) -> CliResult<String> {
    let values = convert(p, to)?;
    let cells: Vec<String> = values.iter().map(|&x| fmt_f64(x)).collect();
    Ok(format!("{}\n{}\n", to.columns().join(","), cells.join(",")))
}

pub fn slope_grid(s_max: f64, steps: usize) -> CliResult<Vec<f64>> {
    if steps == 0 || !(s_max > 0.0) || !s_max.is_finite() {
        return Err(CliError::Invalid(format!("slope table needs s_max > 0 and steps ≥ 1, got {s_max} and {steps}")));
    }
    Ok((1..=steps).map(|i| if i == steps { s_max } else { s_max * i as f64 / steps as f64 }).collect())
}

/// (s, ℓ, τ, τ/ℓ) along the earthquake, with the limit p/q in a leading comment.
pub fn cmd_slope_table(curve: Slope, start: &ChartPoint, grid: &[f64], dir: Sign) -> CliResult<String> {
    let u = zeta(start.to_trace()?)?;
    let rows = slope_limit_table(curve, u, grid, dir)?;
    let limit = analytic_slope_limit(curve);
    let comments = vec![
        format!("curve={curve} direction={}", if dir == Sign::Plus { "+" } else { "-" }),
        format!("limit={}", if limit.is_finite() { limit.to_string() } else { "inf".into() }),
    ];
    let data: Vec<Vec<f64>> = rows.iter().map(|r| vec![r.s, r.ell, r.tau, r.ratio]).collect();
    Ok(csv_string(&comments, &["s", "ell", "tau", "ratio"], &data))
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeReport {
    pub backward: String,
    pub forward: String,
    pub s_max: f64,
    pub found: bool,
    pub s_star: Option<f64>,
    pub residual: Option<f64>,
    pub message: String,
}

/// Looks for a meeting point of the backward `back` path and the forward `fwd` path.
pub fn cmd_intersect_probe(back: Slope, fwd: Slope, start: &ChartPoint, s_max: f64) -> CliResult<ProbeReport> {
    let u = zeta(start.to_trace()?)?;
    let outcome = quake_intersection_probe(back, fwd, u, s_max)?;
    let base = |found, s_star, residual, message: String| ProbeReport {
        backward: back.to_string(),
        forward: fwd.to_string(),
        s_max,
        found,
        s_star,
        residual,
        message,
    };
    Ok(match outcome {
        ProbeOutcome::Candidate { s_star, residual } => {
            base(true, Some(s_star), Some(residual), format!("candidate intersection at s = {s_star}"))
        }
        ProbeOutcome::NoCandidate => base(false, None, None, "no candidate intersection in range".into()),
    })
}
