use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use quake_cli::checks::{run_checks, Suite};
use quake_cli::commands::{cmd_convert, cmd_flow, cmd_intersect_probe, cmd_slope_table, slope_grid, write_flow};
use quake_cli::config::parse_orient;
use quake_cli::curves::parse_slope;
use quake_cli::figures::cmd_figure;
use quake_cli::output::write_file;
use quake_cli::{Chart, ChartPoint, CliError, CliResult, NamedCurve, FigureId, Param, PathRequest, Settings};
use quake_core::Sign;

#[derive(Parser)]
#[command(name = "quake", version, about = "Earthquake deformations on the once-punctured torus")]
struct Cli {
    /// key = value file with defaults for samples, ranges, orient, trace_cap and teich_tol
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Starting point, `chart:c1,c2[,c3]`; a bare triple is a trace point
    #[arg(long, default_value = "3,3,3", allow_hyphen_values = true)]
    start: String,
    /// Earthquake direction, + or -
    #[arg(long, allow_hyphen_values = true)]
    orient: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an earthquake path and write one CSV per chart
    Flow {
        /// Curve as p/q, or alpha, beta, alphabeta, abpowN, TNalpha, TNbeta
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[command(flatten)]
        common: Common,
        /// Parameter range `lo,hi`
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        /// Comma-separated charts: trace, triangle, fn, spherical, inverted, simplex, simplex-plane
        #[arg(long, default_value = "trace")]
        chart: String,
        /// Read the range as arclength along the curve instead of multiples of a full twist
        #[arg(long)]
        arclength: bool,
        #[arg(long)]
        trace_cap: Option<f64>,
        /// Output directory; without it a single chart goes to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a point between charts
    Convert {
        /// Coordinates `c1,c2[,c3]`, or `chart:c1,...` to override --from
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value = "trace")]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Run invariant suites and print a JSON report
    Check {
        /// kappa, equivalence, integer-times, fn-sign, simplex, limits or all
        #[arg(default_value = "all")]
        suite: String,
        /// Push the starting fixtures off the level set; the report must then fail
        #[arg(long)]
        perturb: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the CSV (and SVG for planar charts) behind a figure, or `all`
    Figure {
        id: String,
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// τ/ℓ along an earthquake in Fenchel-Nielsen coordinates
    SlopeTable {
        /// Slope p/q, or alpha, beta, alphabeta
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 60.0)]
        s_max: f64,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a meeting point of a backward and a forward earthquake path
    IntersectProbe {
        /// Slope followed backwards (p/q or alpha, beta, alphabeta)
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// Slope followed forwards
        #[arg(long, allow_hyphen_values = true)]
        other: String,
        #[arg(long, default_value = "3,3,3", allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 10.0)]
        s_max: f64,
    },
}

fn parse_range(s: &str) -> CliResult<(f64, f64)> {
    match quake_cli::charts::parse_list(s)?[..] {
        [lo, hi] => Ok((lo, hi)),
        _ => Err(CliError::Invalid(format!("range needs two numbers, got {s:?}"))),
    }
}

fn parse_charts(s: &str) -> CliResult<Vec<Chart>> {
    s.split(',').map(str::parse).collect()
}

fn orient(flag: &Option<String>, cfg: &Settings) -> CliResult<Sign> {
    flag.as_deref().map_or(Ok(cfg.orient()), parse_orient)
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => write_file(p, text),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let mut cfg = match &cli.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    match cli.command {
        Command::Flow { curve, common, range, samples, chart, arclength, trace_cap, out } => {
            let curve: NamedCurve = curve.parse()?;
            let charts = parse_charts(&chart)?;
            let param = if arclength { Param::Arclength } else { Param::Twist };
            let range = match range {
                Some(r) => parse_range(&r)?,
                None if arclength => (-cfg.s_max, cfg.s_max),
                None => (cfg.r_min, cfg.r_max),
            };
            let req = PathRequest {
                start: common.start.parse::<ChartPoint>()?.to_trace()?,
                orient: orient(&common.orient, &cfg)?,
                curve,
                range,
                samples: samples.unwrap_or(cfg.samples),
                param,
                trace_cap: trace_cap.unwrap_or(cfg.trace_cap),
                teich_tol: cfg.teich_tol,
            };
            let result = cmd_flow(&req, &charts)?;
            if result.path.clipped {
                let (a, b) = result.path.range;
                eprintln!("note: range clipped to [{a}, {b}] to keep traces below {}", req.trace_cap);
            }
            match out {
                Some(dir) => {
                    for p in write_flow(&result, &dir, &format!("flow_{}", req.curve.label()))? {
                        eprintln!("wrote {}", p.display());
                    }
                }
                None if result.tables.len() == 1 => emit(&result.tables[0].1, None)?,
                None => return Err(CliError::Invalid("several charts need --out".into())),
            }
        }
        Command::Convert { point, from, to } => {
            let point: ChartPoint = if point.contains(':') {
                point.parse()?
            } else {
                format!("{}:{point}", from.parse::<Chart>()?).parse()?
            };
            emit(&cmd_convert(&point, to.parse()?)?, None)?;
        }
        Command::Check { suite, perturb, out } => {
            let report = run_checks(suite.parse::<Suite>()?, perturb, &cfg);
            let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            emit(&json, out.as_ref())?;
            if !report.passed {
                return Ok(1);
            }
        }
        Command::Figure { id, out, samples } => {
            if let Some(n) = samples {
                cfg.samples = n;
            }
            let ids: Vec<FigureId> = if id == "all" { FigureId::ALL.to_vec() } else { vec![id.parse()?] };
            for id in ids {
                let files = cmd_figure(id, &cfg, &out)?;
                eprintln!("{id}: wrote {} files to {}", files.len(), out.display());
            }
        }
        Command::SlopeTable { curve, common, s_max, steps, out } => {
            let curve = parse_slope(&curve)?;
            let start: ChartPoint = common.start.parse()?;
            let text = cmd_slope_table(curve, &start, &slope_grid(s_max, steps)?, orient(&common.orient, &cfg)?)?;
            emit(&text, out.as_ref())?;
        }
        Command::IntersectProbe { curve, other, start, s_max } => {
            let report = cmd_intersect_probe(parse_slope(&curve)?, parse_slope(&other)?, &start.parse()?, s_max)?;
            emit(&(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"), None)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
