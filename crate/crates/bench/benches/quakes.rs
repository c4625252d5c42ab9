use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use quake_cli::figures::{compute_figure, FigureId};
use quake_cli::Settings;
use quake_core::charvar::{standard_starts, CurveName};
use quake_core::chgcoords::{build_framing, quake_about, LocalPath, QuakePlan};
use quake_core::families::{family2_framing, family2_quake};
use quake_core::quake::{flow_trace, nu, quake_lengths};
use quake_core::Slope;

fn flows(c: &mut Criterion) {
    let v = standard_starts()[0];
    c.bench_function("flow_trace alpha", |b| b.iter(|| flow_trace(black_box(v), CurveName::Alpha, black_box(0.7))));
    let w = nu(v).unwrap();
    c.bench_function("quake_lengths beta", |b| b.iter(|| quake_lengths(black_box(w), CurveName::Beta, black_box(0.7))));
}

fn framed(c: &mut Criterion) {
    let v = standard_starts()[1];
    let f = build_framing(Slope::new(3, 5).unwrap());
    c.bench_function("quake_about 3/5", |b| b.iter(|| quake_about(&f, black_box(v), black_box(0.4))));
    let path = LocalPath::new(&f, v).unwrap();
    c.bench_function("LocalPath::eval 3/5", |b| b.iter(|| path.eval(black_box(0.4))));
    let plan = QuakePlan::new(&f).at(v).unwrap();
    c.bench_function("crossing oracle 3/5", |b| b.iter(|| plan.eval(black_box(0.4))));
}

fn families(c: &mut Criterion) {
    let v = standard_starts()[0];
    c.bench_function("family2_quake n=4", |b| b.iter(|| family2_quake(black_box(v), 4, black_box(0.25))));
    let path = LocalPath::new(&family2_framing(4), v).unwrap();
    c.bench_function("LocalPath::eval T^4", |b| b.iter(|| path.eval(black_box(0.25))));
}

fn figures(c: &mut Criterion) {
    let cfg = Settings::default();
    let mut g = c.benchmark_group("figures");
    g.sample_size(10);
    g.bench_function("fig11", |b| b.iter(|| compute_figure(FigureId::Fig11, &cfg).unwrap()));
    g.bench_function("fig16", |b| b.iter(|| compute_figure(FigureId::Fig16, &cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, flows, framed, families, figures);
criterion_main!(benches);
