use biaxial_core::kernel::FundamentalSolution;

use crate::config::{point, Setup};
use crate::error::CliError;
use crate::report::{num, Report, Table};

/// `q₄` and `|∇q₄|` for each configured point pair.
pub fn eval_q4(setup: &Setup) -> Result<Report, CliError> {
    if setup.config.pairs.is_empty() {
        return Err(CliError::Config("eval-q4 needs a non-empty `pairs` list".into()));
    }
    let fs = FundamentalSolution::new(setup.params);
    let mut table = Table::new("q4", &["x", "y", "x0", "y0", "q4", "grad_norm"]);
    for pair in &setup.config.pairs {
        let (p, q) = (point(pair.p)?, point(pair.q)?);
        let value = fs.value(&p, &q)?;
        // q₄ ~ x^{1−2α} on the axes, so the gradient blows up there
        let grad_norm = if p.x == 0.0 || p.y == 0.0 {
            f64::INFINITY
        } else {
            let g = fs.gradient(&p, &q)?;
            g[0].hypot(g[1])
        };
        table.push(vec![num(p.x), num(p.y), num(q.x), num(q.y), num(value), num(grad_norm)]);
    }
    let mut report = Report::new("eval-q4");
    report.note("rows", table.len());
    report.tables.push(table);
    Ok(report)
}
