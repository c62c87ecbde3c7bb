//! Interior Dirichlet problem with manufactured or zero boundary data.

use biaxial_core::bie::{assemble, evaluate, solve_dirichlet};
use biaxial_core::geometry::{Location, Point};
use biaxial_core::kernel::q4;
use biaxial_core::Error;

use crate::config::{point, DataSpec, Setup};
use crate::error::CliError;
use crate::report::{num, Check, Report, Table};

const MAX_CONDITION: f64 = 1e13;

pub fn solve(setup: &Setup) -> Result<Report, CliError> {
    let (a, b) = setup.config.domain.extent();
    let n = setup.config.nodes.unwrap_or(64);
    let source = point(setup.config.source.unwrap_or([1.5 * a, 1.5 * b]))?;
    if setup.curve.classify(&source)? != Location::Outside {
        return Err(CliError::Config("the manufactured-solution source must lie outside the domain".into()));
    }
    let probes: Vec<Point> = if setup.config.points.is_empty() {
        [(0.3, 0.3), (0.5, 0.2), (0.2, 0.6), (0.6, 0.6)]
            .iter()
            .map(|&(u, v)| point([u * a, v * b]))
            .collect::<Result<_, _>>()?
    } else {
        setup.config.points.iter().map(|&xy| point(xy)).collect::<Result<_, _>>()?
    };
    for p in &probes {
        if setup.curve.classify(p)? != Location::Inside {
            return Err(CliError::Config(format!("probe ({}, {}) is not inside the domain", p.x, p.y)));
        }
    }
    let mut report = Report::new("solve-dirichlet");
    report.note("nodes", n);
    let data = setup.config.data;
    let exact = |p: &Point| match data {
        DataSpec::Manufactured => q4(setup.params, p, &source),
        DataSpec::Zero => Ok(0.0),
    };

    // coarser levels for the convergence study, finest last
    let levels: Vec<usize> = [n / 4, n / 2, n]
        .into_iter()
        .filter(|&m| m >= 16 && m.is_multiple_of(8))
        .collect();
    let mut study = Table::new("convergence", &["n", "max_error", "condition"]);
    let mut errors = Vec::new();
    let mut finest = None;
    for &m in &levels {
        let mut sys = assemble(setup.params, &setup.curve, m)?;
        sys.set_boundary_data(&setup.curve, exact)?;
        let sol = match solve_dirichlet(&sys) {
            Ok(sol) => sol,
            Err(Error::Solver { condition }) => {
                report.note("condition", condition);
                report.checks.push(Check::at_most("condition estimate", condition, MAX_CONDITION));
                return Ok(report);
            }
            Err(e) => return Err(e.into()),
        };
        let mut worst = 0.0f64;
        let mut rows = Vec::new();
        for p in &probes {
            let u = evaluate(setup.params, &setup.curve, &sol.density, p)?;
            let u_exact = exact(p)?;
            worst = worst.max((u - u_exact).abs());
            rows.push((u, u_exact));
        }
        study.push(vec![m.to_string(), num(worst), num(sol.condition)]);
        errors.push(worst);
        finest = Some((sys.rule().nodes().to_vec(), sol, rows));
    }
    let (nodes, sol, rows) = finest.expect("at least one level");

    let mut density = Table::new("density", &["s", "mu"]);
    let mut mu_max = 0.0f64;
    for &s in &nodes {
        let v = sol.density.eval(s);
        mu_max = mu_max.max(v.abs());
        density.push_numbers(&[s, v]);
    }
    let mut probe_table = Table::new("probes", &["probe", "x", "y", "u", "u_exact", "error"]);
    for (i, (p, (u, u_exact))) in probes.iter().zip(&rows).enumerate() {
        probe_table.push(vec![i.to_string(), num(p.x), num(p.y), num(*u), num(*u_exact), num((u - u_exact).abs())]);
    }

    report.note("condition", sol.condition);
    report.note("residual", sol.residual);
    match data {
        DataSpec::Zero => report.checks.push(Check::at_most("max |mu|", mu_max, 1e-10)),
        DataSpec::Manufactured => {
            let tol = setup.config.tolerance.unwrap_or(1e-4);
            report.checks.push(Check::at_most("max probe error", *errors.last().expect("levels"), tol));
            if levels.len() >= 2 {
                let order = fitted_order(&levels, &errors);
                report.note("order", order);
                report.checks.push(Check::at_least("convergence order", order, 2.0));
            }
        }
    }
    report.tables.extend([density, probe_table, study]);
    Ok(report)
}

/// Least-squares slope of `−ln error` against `ln n`.
fn fitted_order(levels: &[usize], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = levels.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    -num / den
}

#[cfg(test)]
mod tests {
    use super::fitted_order;

    #[test]
    fn order_of_a_power_law() {
        let levels = [16, 32, 64];
        let errors: Vec<f64> = levels.iter().map(|&n| 3.0 * (n as f64).powf(-2.5)).collect();
        assert!((fitted_order(&levels, &errors) - 2.5).abs() < 1e-12);
    }
}
