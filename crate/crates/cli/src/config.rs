//! JSON run configuration.

use std::fs;
use std::path::Path;

use biaxial_core::geometry::{superellipse_curve, Curve, Point};
use biaxial_core::kernel::Params;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for ParamsSpec {
    fn default() -> Self {
        ParamsSpec { alpha: 0.25, beta: 0.25 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainSpec {
    Superellipse { a: f64, b: f64, q: f64 },
}

impl Default for DomainSpec {
    fn default() -> Self {
        DomainSpec::Superellipse { a: 1.0, b: 1.0, q: 3.0 }
    }
}

impl DomainSpec {
    /// Axis intercepts `(a, b)`.
    pub fn extent(&self) -> (f64, f64) {
        match *self {
            DomainSpec::Superellipse { a, b, .. } => (a, b),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub p: [f64; 2],
    pub q: [f64; 2],
}

/// Test density for the jump suite, as a function of `σ = s/l`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensitySpec {
    One,
    #[default]
    Sine,
    Parabola,
}

/// Boundary data for the solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataSpec {
    /// `q₄(·; source)` with an exterior source.
    #[default]
    Manufactured,
    Zero,
}

/// Everything a command may read; unused fields are ignored by the
/// command at hand and defaults cover the rest.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: ParamsSpec,
    pub domain: DomainSpec,
    /// Point pairs for `eval-q4`.
    pub pairs: Vec<PairSpec>,
    /// Field points for `verify lemma1` and solver probes.
    pub points: Vec<[f64; 2]>,
    /// Source points for `verify flux`.
    pub sources: Vec<[f64; 2]>,
    /// Exterior source of the manufactured solution.
    pub source: Option<[f64; 2]>,
    pub data: DataSpec,
    pub density: DensitySpec,
    pub nodes: Option<usize>,
    /// Number of arclengths in `verify jumps`.
    pub arclengths: Option<usize>,
    /// Number of randomized cases in `verify gradient` / `verify specfun`.
    pub cases: Option<usize>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct Setup {
    pub config: RunConfig,
    pub params: Params,
    pub curve: Curve,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(self) -> Result<Setup, CliError> {
        let params = Params::new(self.params.alpha, self.params.beta).map_err(CliError::invalid)?;
        let curve = match self.domain {
            DomainSpec::Superellipse { a, b, q } => superellipse_curve(a, b, q).map_err(CliError::invalid)?,
        };
        for xy in self.points.iter().chain(&self.sources).chain(self.source.iter()) {
            point(*xy)?;
        }
        for pair in &self.pairs {
            point(pair.p)?;
            point(pair.q)?;
        }
        if let Some(n) = self.nodes {
            if n < 16 || !n.is_multiple_of(8) {
                return Err(CliError::Config(format!("nodes = {n} must be a multiple of 8 and at least 16")));
            }
        }
        if matches!(self.tolerance, Some(t) if !(t > 0.0)) {
            return Err(CliError::Config("tolerance must be positive".into()));
        }
        Ok(Setup { config: self, params, curve })
    }
}

/// A point of the closed quadrant.
pub fn point(xy: [f64; 2]) -> Result<Point, CliError> {
    Point::new(xy[0], xy[1]).map_err(CliError::invalid)
}
