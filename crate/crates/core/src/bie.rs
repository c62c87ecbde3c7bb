//! Nyström discretisation of the interior Dirichlet problem
//! `−½μ(s) + ∫₀ˡ K(s, t) μ(t) dt = f(s)`.
//!
//! The kernel is logarithmically singular on the diagonal, so each row is
//! written with the singularity subtracted,
//! `∫ K(s_i, t) μ(t) dt = Σ_{j≠i} w_j K_ij (μ_j − μ_i) + μ_i R_i`,
//! where the row integral `R_i = ∫ K(s_i, t) dt = k(s_i) − ½` is known in
//! closed form through the gauge function.

use nalgebra::{DMatrix, DVector};

use crate::error::{domain, Error, Result};
use crate::geometry::{Curve, Point};
use crate::kernel::Params;
use crate::potential::{Density, DoubleLayer, QuadratureRule};

/// Largest acceptable condition estimate of the Nyström matrix.
const MAX_CONDITION: f64 = 1e13;
const MIN_NODES: usize = 16;

/// Collocation system `A μ = f`.
#[derive(Debug, Clone)]
pub struct NystromSystem {
    params: Params,
    rule: QuadratureRule,
    matrix: DMatrix<f64>,
    rhs: DVector<f64>,
}

impl NystromSystem {
    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rhs(&self) -> &DVector<f64> {
        &self.rhs
    }

    pub fn size(&self) -> usize {
        self.rhs.len()
    }

    /// Replace the right-hand side by `f` sampled at the nodes.
    pub fn set_rhs(&mut self, values: Vec<f64>) -> Result<()> {
        if values.len() != self.size() {
            return Err(domain("NystromSystem::set_rhs", "one value per node is required"));
        }
        self.rhs = DVector::from_vec(values);
        Ok(())
    }

    /// Sample boundary data `g(point)` at the nodes.
    pub fn set_boundary_data<F>(&mut self, curve: &Curve, mut g: F) -> Result<()>
    where
        F: FnMut(&Point) -> Result<f64>,
    {
        let mut values = Vec::with_capacity(self.size());
        for &s in self.rule.nodes() {
            values.push(g(&curve.point_at(s)?.position)?);
        }
        self.set_rhs(values)
    }

    /// `‖A‖₁ ‖A⁻¹‖₁`, or infinity when `A` is singular.
    pub fn condition_estimate(&self) -> f64 {
        match self.matrix.clone().try_inverse() {
            Some(inv) => one_norm(&self.matrix) * one_norm(&inv),
            None => f64::INFINITY,
        }
    }
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Build the interior Dirichlet system on `n` nodes (a multiple of the
/// panel order, at least 16) with a zero right-hand side.
pub fn assemble(params: Params, curve: &Curve, n: usize) -> Result<NystromSystem> {
    if n < MIN_NODES {
        return Err(domain("assemble", format!("need at least {MIN_NODES} nodes, got {n}")));
    }
    let rule = QuadratureRule::with_nodes(curve.length(), n)?;
    let dl = DoubleLayer::new(params, curve);
    let points: Vec<_> = rule
        .nodes()
        .iter()
        .map(|&s| curve.point_at(s))
        .collect::<Result<_>>()?;
    let mut matrix = DMatrix::zeros(n, n);
    let fs = dl.fundamental();
    for i in 0..n {
        let field = points[i].position;
        let mut off_diagonal = 0.0;
        for j in 0..n {
            if i == j {
                continue;
            }
            let k = fs
                .weighted_directional(&points[j].position, &field, points[j].normal)
                .map_err(|e| Error::Assembly {
                    row: i,
                    col: j,
                    source: Box::new(e),
                })?;
            let entry = rule.weights()[j] * k;
            matrix[(i, j)] = entry;
            off_diagonal += entry;
        }
        let row_integral = dl.gauge(&field).map_err(|e| Error::Assembly {
            row: i,
            col: i,
            source: Box::new(e),
        })? - 0.5;
        matrix[(i, i)] = -0.5 + row_integral - off_diagonal;
    }
    Ok(NystromSystem {
        params,
        rule,
        matrix,
        rhs: DVector::zeros(n),
    })
}

/// Solved density with diagnostics.
#[derive(Debug, Clone)]
pub struct DirichletSolution {
    pub density: Density,
    /// `‖Aμ − f‖∞`.
    pub residual: f64,
    pub condition: f64,
}

/// Dense LU solve of the Nyström system.
pub fn solve_dirichlet(sys: &NystromSystem) -> Result<DirichletSolution> {
    let condition = sys.condition_estimate();
    if !(condition < MAX_CONDITION) {
        return Err(Error::Solver { condition });
    }
    let mu = sys
        .matrix
        .clone()
        .lu()
        .solve(&sys.rhs)
        .ok_or(Error::Solver { condition })?;
    let residual = (&sys.matrix * &mu - &sys.rhs).amax();
    Ok(DirichletSolution {
        density: Density::nodal(sys.rule.clone(), mu.iter().copied().collect())?,
        residual,
        condition,
    })
}

/// Value of the solution `u = w[μ]` at an interior point.
pub fn evaluate(params: Params, curve: &Curve, mu: &Density, p0: &Point) -> Result<f64> {
    let dl = DoubleLayer::new(params, curve);
    let rule = match mu {
        Density::Nodal { rule, .. } => rule.clone(),
        _ => dl.default_rule(),
    };
    dl.value(mu, p0, &rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::superellipse_curve;
    use crate::kernel::q4;

    #[test]
    fn homogeneous_and_linear() {
        let p = Params::new(0.25, 0.25).unwrap();
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        let mut sys = assemble(p, &c, 16).unwrap();
        let zero = solve_dirichlet(&sys).unwrap();
        assert!(zero.condition.is_finite());
        for &s in sys.rule().nodes() {
            assert_eq!(zero.density.eval(s), 0.0);
        }
        let q = Point::new(1.5, 1.5).unwrap();
        sys.set_boundary_data(&c, |pt| q4(p, pt, &q)).unwrap();
        let one = solve_dirichlet(&sys).unwrap();
        assert!(one.residual <= 1e-12 * sys.rhs().amax());
        let doubled: Vec<f64> = sys.rhs().iter().map(|v| 2.0 * v).collect();
        sys.set_rhs(doubled).unwrap();
        let two = solve_dirichlet(&sys).unwrap();
        for &s in sys.rule().nodes() {
            assert!((two.density.eval(s) - 2.0 * one.density.eval(s)).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_nodes() {
        let p = Params::new(0.25, 0.25).unwrap();
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        assert!(assemble(p, &c, 8).is_err());
    }
}
