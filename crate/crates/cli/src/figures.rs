//! Data behind each figure: curves, starting points, charts and sampling ranges.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use quake_core::charvar::{sigma, standard_starts, Permutation};
use quake_core::coords::zeta_inv;
use quake_core::numeric::acosh;
use quake_core::{FNPoint, Sign, TracePoint};
use rayon::prelude::*;

use crate::charts::Chart;
use crate::config::Settings;
use crate::curves::NamedCurve;
use crate::error::{CliError, CliResult};
use crate::output::{csv_string, svg_plot, write_file, Polyline};
use crate::sampling::{sample_path, Param, PathRequest, SampledPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Fig2,
    Fig5,
    Fig6,
    Fig8,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
    Fig13,
    Fig14,
    Fig15,
    Fig16,
    Fig17,
}

impl FigureId {
    pub const ALL: [FigureId; 13] = [
        FigureId::Fig2,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig8,
        FigureId::Fig9,
        FigureId::Fig10,
        FigureId::Fig11,
        FigureId::Fig12,
        FigureId::Fig13,
        FigureId::Fig14,
        FigureId::Fig15,
        FigureId::Fig16,
        FigureId::Fig17,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig8 => "fig8",
            FigureId::Fig9 => "fig9",
            FigureId::Fig10 => "fig10",
            FigureId::Fig11 => "fig11",
            FigureId::Fig12 => "fig12",
            FigureId::Fig13 => "fig13",
            FigureId::Fig14 => "fig14",
            FigureId::Fig15 => "fig15",
            FigureId::Fig16 => "fig16",
            FigureId::Fig17 => "fig17",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<FigureId> {
        FigureId::ALL.into_iter().find(|f| f.name() == s.trim()).ok_or_else(|| {
            let names: Vec<_> = FigureId::ALL.iter().map(|f| f.name()).collect();
            CliError::Invalid(format!("unknown figure {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// α, β, αβ, αβα, αβα², αβα³, T²α, T³α, T⁴α.
pub fn curve_collection() -> Vec<NamedCurve> {
    let mut c = vec![
        "alpha".parse().expect("known curve"),
        "beta".parse().expect("known curve"),
        "alphabeta".parse().expect("known curve"),
    ];
    c.extend((2..=4).map(|n| NamedCurve::ab_power(n).expect("n ≥ 1")));
    c.extend((2..=4).map(NamedCurve::orbit_alpha));
    c
}

/// Starting sets for α, β and αβ: the standard starts, then rotated backwards and forwards.
pub fn start_sets() -> [Vec<TracePoint>; 3] {
    let base = standard_starts().to_vec();
    let rot = |p| base.iter().map(|&v| sigma(v, p)).collect::<Vec<_>>();
    [base.clone(), rot(Permutation::RotInv), rot(Permutation::Rot)]
}

/// (2·acosh(3/2), 2·acosh(√5/2)), the FN image of (3, 3, 3).
pub fn hexagonal_fn_start() -> FNPoint {
    FNPoint::new(2.0 * acosh(1.5), 2.0 * acosh(5f64.sqrt() / 2.0))
}

pub fn forward_fn_starts() -> [FNPoint; 2] {
    [FNPoint::new(acosh(3.0), 0.0), FNPoint::new(acosh(3.0), 1.0)]
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub charts: Vec<Chart>,
    pub param: Param,
    pub range: (f64, f64),
    pub orient: Sign,
    /// (curve, start index, start)
    pub series: Vec<(NamedCurve, usize, TracePoint)>,
    pub svg: Option<Chart>,
}

fn cross(curves: Vec<NamedCurve>, starts: &[TracePoint]) -> Vec<(NamedCurve, usize, TracePoint)> {
    curves
        .into_iter()
        .flat_map(|c| starts.iter().enumerate().map(move |(i, &v)| (c.clone(), i, v)))
        .collect()
}

pub fn layout(id: FigureId, cfg: &Settings) -> CliResult<Layout> {
    let twist = (cfg.r_min, cfg.r_max);
    let arc = (-cfg.s_max, cfg.s_max);
    let framing_curves = || -> Vec<NamedCurve> {
        ["alpha", "beta", "alphabeta"].iter().map(|c| c.parse().expect("known curve")).collect()
    };
    let per_curve_sets = || -> Vec<(NamedCurve, usize, TracePoint)> {
        framing_curves()
            .into_iter()
            .zip(start_sets())
            .flat_map(|(c, set)| cross(vec![c], &set))
            .collect()
    };
    let s_alpha = standard_starts();
    let mk = |charts: Vec<Chart>, param, range, series, svg| Layout { charts, param, range, orient: Sign::Plus, series, svg };
    Ok(match id {
        FigureId::Fig2 => mk(vec![Chart::Trace], Param::Twist, twist, per_curve_sets(), None),
        FigureId::Fig5 => mk(vec![Chart::Triangle], Param::Twist, twist, per_curve_sets(), None),
        FigureId::Fig6 => mk(vec![Chart::Fn], Param::Arclength, arc, per_curve_sets(), Some(Chart::Fn)),
        FigureId::Fig8 => {
            let curves = (1..=4).map(NamedCurve::ab_power).collect::<CliResult<Vec<_>>>()?;
            mk(vec![Chart::Trace, Chart::Triangle], Param::Twist, twist, cross(curves, &s_alpha), None)
        }
        FigureId::Fig9 => {
            let curves = (1..=4).map(NamedCurve::orbit_alpha).collect();
            mk(vec![Chart::Trace, Chart::Triangle], Param::Twist, twist, cross(curves, &s_alpha), None)
        }
        FigureId::Fig10 => {
            let mut curves: Vec<NamedCurve> = (0..=3).map(NamedCurve::orbit_alpha).collect();
            for n in 0..=2 {
                curves.push(NamedCurve::orbit_beta(n)?);
            }
            let start = zeta_inv(hexagonal_fn_start())?;
            mk(vec![Chart::Fn], Param::Arclength, arc, cross(curves, &[start]), Some(Chart::Fn))
        }
        FigureId::Fig11 => mk(vec![Chart::Trace], Param::Twist, twist, cross(curve_collection(), &s_alpha), None),
        FigureId::Fig12 => mk(vec![Chart::Spherical], Param::Twist, twist, cross(curve_collection(), &s_alpha), None),
        FigureId::Fig13 => mk(vec![Chart::Inverted], Param::Twist, twist, cross(curve_collection(), &s_alpha), None),
        FigureId::Fig14 => mk(vec![Chart::Triangle], Param::Twist, twist, cross(curve_collection(), &s_alpha), None),
        FigureId::Fig15 => {
            mk(vec![Chart::Fn], Param::Arclength, arc, cross(curve_collection(), &s_alpha), Some(Chart::Fn))
        }
        FigureId::Fig16 => mk(
            vec![Chart::Simplex, Chart::SimplexPlane],
            Param::Twist,
            twist,
            cross(curve_collection(), &s_alpha),
            Some(Chart::SimplexPlane),
        ),
        FigureId::Fig17 => {
            let starts = forward_fn_starts().map(zeta_inv);
            let starts = starts.into_iter().collect::<quake_core::Result<Vec<_>>>()?;
            mk(vec![Chart::Fn], Param::Arclength, (0.0, cfg.s_max), cross(curve_collection(), &starts), Some(Chart::Fn))
        }
    })
}

#[derive(Debug, Clone)]
pub struct SeriesData {
    pub curve: String,
    pub start_index: usize,
    pub path: SampledPath,
    /// parameter followed by the coordinates in each chart
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct FigureData {
    pub id: FigureId,
    pub layout: Layout,
    pub series: Vec<SeriesData>,
}

impl FigureData {
    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec![self.layout.param.column()];
        for c in &self.layout.charts {
            h.extend_from_slice(c.columns());
        }
        h
    }

    pub fn file_name(&self, s: &SeriesData) -> String {
        format!("{}_{}_{}.csv", self.id, s.curve, s.start_index)
    }
}

pub fn compute_figure(id: FigureId, cfg: &Settings) -> CliResult<FigureData> {
    cfg.validate()?;
    let layout = layout(id, cfg)?;
    let series = layout
        .series
        .par_iter()
        .map(|(curve, start_index, start)| {
            let req = PathRequest {
                curve: curve.clone(),
                start: *start,
                range: layout.range,
                samples: cfg.samples,
                param: layout.param,
                orient: layout.orient,
                trace_cap: cfg.trace_cap,
                teich_tol: cfg.teich_tol,
            };
            let path = sample_path(&req)?;
            let rows = chart_rows(&path, &layout.charts)?;
            Ok(SeriesData { curve: curve.label().to_string(), start_index: *start_index, path, rows })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(FigureData { id, layout, series })
}

pub fn chart_rows(path: &SampledPath, charts: &[Chart]) -> CliResult<Vec<Vec<f64>>> {
    path.samples
        .par_iter()
        .enumerate()
        .map(|(index, s)| {
            let mut row = vec![s.t];
            for c in charts {
                let coords = c.from_trace(s.trace).map_err(|e| match e {
                    CliError::Core(source) => CliError::Sample { index, t: s.t, source },
                    other => other,
                })?;
                row.extend(coords);
            }
            Ok(row)
        })
        .collect()
}

pub fn write_figure(data: &FigureData, out: &Path) -> CliResult<Vec<PathBuf>> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    let header = data.header();
    let mut files = Vec::new();
    for s in &data.series {
        let path = out.join(data.file_name(s));
        write_file(&path, &csv_string(&[], &header, &s.rows))?;
        files.push(path);
    }
    if let Some(chart) = data.layout.svg {
        let offset = 1 + data
            .layout
            .charts
            .iter()
            .take_while(|&&c| c != chart)
            .map(|c| c.dim())
            .sum::<usize>();
        let lines: Vec<Polyline> = data
            .series
            .iter()
            .map(|s| Polyline {
                label: s.curve.clone(),
                points: s.rows.iter().map(|r| (r[offset], r[offset + 1])).collect(),
            })
            .collect();
        let cols = chart.columns();
        let svg = svg_plot(&format!("{} ({} chart)", data.id, chart), (cols[0], cols[1]), &lines);
        let path = out.join(format!("{}.svg", data.id));
        write_file(&path, &svg)?;
        files.push(path);
    }
    Ok(files)
}

pub fn cmd_figure(id: FigureId, cfg: &Settings, out: &Path) -> CliResult<Vec<PathBuf>> {
    write_figure(&compute_figure(id, cfg)?, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Settings {
        Settings { samples: 12, ..Settings::default() }
    }

    #[test]
    fn names_parse_back() {
        for f in FigureId::ALL {
            assert_eq!(f.name().parse::<FigureId>().unwrap(), f);
        }
        assert!("fig3".parse::<FigureId>().is_err());
    }

    #[test]
    fn collection_has_nine_curves() {
        let labels: Vec<String> = curve_collection().iter().map(|c| c.label().to_string()).collect();
        assert_eq!(
            labels,
            ["alpha", "beta", "alphabeta", "abpow2", "abpow3", "abpow4", "T2alpha", "T3alpha", "T4alpha"]
        );
    }

    #[test]
    fn start_sets_lie_on_the_level() {
        for set in start_sets() {
            for v in set {
                assert!(quake_core::charvar::is_teich(v, 1e-10));
            }
        }
    }

    #[test]
    fn fig17_starts_are_forward_fn_paths() {
        let l = layout(FigureId::Fig17, &small()).unwrap();
        assert_eq!(l.range, (0.0, 10.0));
        assert_eq!(l.series.len(), 18);
        let back = quake_core::coords::zeta(l.series[0].2).unwrap();
        assert!(back.dist(&FNPoint::new(3f64.acosh(), 0.0)) < 1e-14);
    }

    #[test]
    fn fig11_uses_the_three_standard_starts() {
        let l = layout(FigureId::Fig11, &small()).unwrap();
        let starts: Vec<TracePoint> = l.series.iter().take(3).map(|s| s.2).collect();
        assert_eq!(starts, standard_starts().to_vec());
    }

    #[test]
    fn figure_rows_match_the_header() {
        let d = compute_figure(FigureId::Fig8, &small()).unwrap();
        assert_eq!(d.header(), ["r", "x", "y", "z", "a", "b", "c"]);
        assert_eq!(d.series.len(), 12);
        assert!(d.series.iter().all(|s| s.rows.iter().all(|r| r.len() == 7)));
        assert_eq!(d.file_name(&d.series[5]), "fig8_abpow2_2.csv");
    }
}
