//! Verification suites; each returns a report whose checks decide the
//! exit status.

use std::f64::consts::PI;

use biaxial_core::geometry::{Location, Point};
use biaxial_core::kernel::FundamentalSolution;
use biaxial_core::potential::{Density, DoubleLayer, QuadratureRule, Side};
use biaxial_core::specfun::{appell_f2, appell_f2_series, gauss_2f1, F2Args};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{point, DensitySpec, Setup};
use crate::error::CliError;
use crate::report::{num, Check, Report, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Jumps,
    Flux,
    Gradient,
    Specfun,
}

pub fn verify(setup: &Setup, suite: Suite) -> Result<Report, CliError> {
    match suite {
        Suite::Lemma1 => lemma1(setup),
        Suite::Jumps => jumps(setup),
        Suite::Flux => flux(setup),
        Suite::Gradient => gradient(setup),
        Suite::Specfun => specfun(setup),
    }
}

fn scaled(setup: &Setup, fractions: &[(f64, f64)]) -> Result<Vec<Point>, CliError> {
    let (a, b) = setup.config.domain.extent();
    fractions.iter().map(|&(u, v)| point([u * a, v * b])).collect()
}

fn configured_or(setup: &Setup, list: &[[f64; 2]], fallback: &[(f64, f64)]) -> Result<Vec<Point>, CliError> {
    if list.is_empty() {
        scaled(setup, fallback)
    } else {
        list.iter().map(|&xy| point(xy)).collect()
    }
}

fn lemma1(setup: &Setup) -> Result<Report, CliError> {
    let dl = DoubleLayer::new(setup.params, &setup.curve);
    let l = setup.curve.length();
    let mut points = configured_or(
        setup,
        &setup.config.points,
        &[(0.2, 0.2), (0.5, 0.3), (0.3, 0.7), (0.4, 0.4), (1.5, 1.5), (1.2, 0.3), (0.3, 1.2)],
    )?;
    for f in [0.25, 0.5, 0.75] {
        points.push(setup.curve.point_at(f * l)?.position);
    }
    let tol = setup.config.tolerance.unwrap_or(1e-5);
    let mut table = Table::new("lemma1", &["x0", "y0", "location", "w1", "k", "expected", "residual"]);
    let mut worst = 0.0f64;
    for p in &points {
        let c = dl.gauge_check(p)?;
        worst = worst.max(c.residual.abs());
        table.push(vec![
            num(p.x),
            num(p.y),
            c.location.as_str().to_owned(),
            num(c.potential),
            num(c.gauge),
            num(c.expected),
            num(c.residual),
        ]);
    }
    let mut report = Report::new("verify lemma1");
    report.checks.push(Check::at_most("max |w1 - expected|", worst, tol));
    report.tables.push(table);
    Ok(report)
}

fn jumps(setup: &Setup) -> Result<Report, CliError> {
    let dl = DoubleLayer::new(setup.params, &setup.curve);
    let l = setup.curve.length();
    let mu = match setup.config.density {
        DensitySpec::One => Density::Constant(1.0),
        DensitySpec::Sine => Density::function(move |s| (PI * s / l).sin()),
        DensitySpec::Parabola => Density::function(move |s| s * (l - s) / (l * l)),
    };
    let count = setup.config.arclengths.unwrap_or(20).max(1);
    let tol = setup.config.tolerance.unwrap_or(1e-5);
    let distance = 1e-3;
    let mut table = Table::new(
        "jumps",
        &["s", "w_i", "w_e", "mu", "jump_residual", "limit_i", "limit_e", "approach_residual"],
    );
    let (mut jump, mut approach) = (0.0f64, 0.0f64);
    for k in 0..count {
        let frac = if count == 1 { 0.5 } else { 0.05 + 0.9 * k as f64 / (count - 1) as f64 };
        let s = frac * l;
        let w_i = dl.trace(&mu, s, Side::Interior)?;
        let w_e = dl.trace(&mu, s, Side::Exterior)?;
        let lim_i = dl.approach_limit(&mu, s, Side::Interior, distance)?;
        let lim_e = dl.approach_limit(&mu, s, Side::Exterior, distance)?;
        let m = mu.eval(s);
        let j = lim_e - lim_i - m;
        let a = (lim_i - w_i).abs().max((lim_e - w_e).abs());
        jump = jump.max(j.abs());
        approach = approach.max(a);
        table.push_numbers(&[s, w_i, w_e, m, j, lim_i, lim_e, a]);
    }
    let mut report = Report::new("verify jumps");
    report.checks.push(Check::at_most("max jump residual", jump, tol));
    report.checks.push(Check::at_most("max approach residual", approach, 1e-4));
    report.note("approach_distance", distance);
    report.tables.push(table);
    Ok(report)
}

fn flux(setup: &Setup) -> Result<Report, CliError> {
    let dl = DoubleLayer::new(setup.params, &setup.curve);
    let n = setup.config.nodes.unwrap_or(512);
    let rule = QuadratureRule::with_nodes(setup.curve.length(), n)?;
    let sources = configured_or(setup, &setup.config.sources, &[(1.5, 1.5), (0.3, 1.2), (1.4, 0.4), (0.4, 0.5)])?;
    let mut table = Table::new("flux", &["x0", "y0", "location", "flux", "expected", "residual"]);
    let (mut exterior, mut interior) = (None::<f64>, None::<f64>);
    for q in &sources {
        let location = setup.curve.classify(q)?;
        let expected = match location {
            Location::Outside => 0.0,
            Location::Inside => -1.0,
            Location::On => {
                return Err(CliError::Config(format!("source ({}, {}) lies on the curve", q.x, q.y)));
            }
        };
        let value = dl.boundary_flux(q, &rule)?;
        let residual = (value - expected).abs();
        let slot = if location == Location::Outside { &mut exterior } else { &mut interior };
        *slot = Some(slot.unwrap_or(0.0).max(residual));
        table.push(vec![
            num(q.x),
            num(q.y),
            location.as_str().to_owned(),
            num(value),
            num(expected),
            num(residual),
        ]);
    }
    let mut report = Report::new("verify flux");
    if let Some(e) = exterior {
        report.checks.push(Check::at_most("exterior-source flux", e, 1e-6));
    }
    if let Some(i) = interior {
        report.checks.push(Check::at_most("interior-source |flux + 1|", i, 1e-5));
    }
    report.note("nodes", n);
    report.tables.push(table);
    Ok(report)
}

fn gradient(setup: &Setup) -> Result<Report, CliError> {
    let fs = FundamentalSolution::new(setup.params);
    let (a, b) = setup.config.domain.extent();
    let mut rng = ChaCha8Rng::seed_from_u64(setup.config.seed.unwrap_or(0));
    let cases = setup.config.cases.unwrap_or(100);
    let tol = setup.config.tolerance.unwrap_or(1e-6);
    let h = 1e-5 * a.min(b);
    let mut table = Table::new("gradient", &["x", "y", "x0", "y0", "gx", "gy", "fd_x", "fd_y", "rel_err"]);
    let mut worst = 0.0f64;
    while table.len() < cases {
        let p = point([rng.gen_range(0.1..2.5) * a, rng.gen_range(0.1..2.5) * b])?;
        let q = point([rng.gen_range(0.1..2.5) * a, rng.gen_range(0.1..2.5) * b])?;
        if p.distance(&q) <= 0.1 * a.min(b) {
            continue;
        }
        let g = fs.gradient(&p, &q)?;
        let at = |x: f64, y: f64| -> Result<f64, CliError> { Ok(fs.value(&point([x, y])?, &q)?) };
        let fx = (at(p.x + h, p.y)? - at(p.x - h, p.y)?) / (2.0 * h);
        let fy = (at(p.x, p.y + h)? - at(p.x, p.y - h)?) / (2.0 * h);
        let err = (g[0] - fx).abs().max((g[1] - fy).abs()) / g[0].abs().max(g[1].abs());
        worst = worst.max(err);
        table.push_numbers(&[p.x, p.y, q.x, q.y, g[0], g[1], fx, fy, err]);
    }
    let mut report = Report::new("verify gradient");
    report.checks.push(Check::at_most("max relative gradient error", worst, tol));
    report.tables.push(table);
    Ok(report)
}

fn specfun(setup: &Setup) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(setup.config.seed.unwrap_or(0));
    let cases = setup.config.cases.unwrap_or(200);
    let tol = setup.config.tolerance.unwrap_or(1e-9);
    let mut table = Table::new("specfun", &["identity", "case", "value", "reference", "rel_err"]);
    let mut worst = [0.0f64; 3];
    let mut record = |table: &mut Table, slot: usize, name: &str, case: usize, value: f64, reference: f64| {
        let err = (value - reference).abs() / reference.abs().max(f64::MIN_POSITIVE);
        worst[slot] = worst[slot].max(err);
        table.push(vec![name.to_owned(), case.to_string(), num(value), num(reference), num(err)]);
    };
    for case in 0..cases {
        let a: f64 = rng.gen_range(0.1..2.5);
        let b: f64 = rng.gen_range(0.1..2.5);
        let c = a.max(b) + rng.gen_range(0.1..2.0);
        let z = rng.gen_range(-50.0..0.9);
        let direct = gauss_2f1(a, b, c, z)?;
        let pfaff = (1.0 - z).powf(-b) * gauss_2f1(c - a, b, c, z / (z - 1.0))?;
        record(&mut table, 0, "pfaff", case, direct, pfaff);
    }
    for case in 0..cases {
        let f = random_f2(&mut rng, -30.0);
        let raised = F2Args { a: f.a + 1.0, ..f };
        let base = appell_f2(f)?;
        let up = appell_f2(raised)?;
        let along_x = appell_f2(F2Args { b1: f.b1 + 1.0, c1: f.c1 + 1.0, ..raised })?;
        let along_y = appell_f2(F2Args { b2: f.b2 + 1.0, c2: f.c2 + 1.0, ..raised })?;
        let lhs = f.b1 / f.c1 * f.x * along_x + f.b2 / f.c2 * f.y * along_y;
        record(&mut table, 1, "contiguous", case, lhs + base, up);
    }
    for case in 0..cases {
        let radius = rng.gen_range(0.0..0.9);
        let split = rng.gen_range(0.0..1.0);
        let f = random_f2(&mut rng, 0.0).at(-radius * split, -radius * (1.0 - split));
        record(&mut table, 2, "continuation", case, appell_f2(f)?, appell_f2_series(f)?);
    }
    let mut report = Report::new("verify specfun");
    for (name, w) in ["pfaff", "contiguous", "continuation"].iter().zip(worst) {
        report.checks.push(Check::at_most(*name, w, tol));
    }
    report.tables.push(table);
    Ok(report)
}

/// Parameters in the range met by `q₄` and its derivatives, with
/// arguments in `[lo, 0]`.
fn random_f2(rng: &mut ChaCha8Rng, lo: f64) -> F2Args {
    let b1 = rng.gen_range(0.2..1.5);
    let b2 = rng.gen_range(0.2..1.5);
    let (x, y) = if lo < 0.0 { (rng.gen_range(lo..0.0), rng.gen_range(lo..0.0)) } else { (0.0, 0.0) };
    F2Args::new(
        rng.gen_range(0.5..2.5),
        b1,
        b2,
        b1 + rng.gen_range(0.3..1.5),
        b2 + rng.gen_range(0.3..1.5),
        x,
        y,
    )
}
