//! Double-layer potential
//!
//! `w(x₀, y₀) = ∫₀ˡ μ(t) K(x₀, y₀; t) dt`,  `K = x^{2α} y^{2β} ∂q₄/∂n`,
//!
//! where the integration point `(x(t), y(t))` runs over `Γ` and `n` is the
//! outward normal.  With `μ ≡ 1` the potential equals `k − 1`, `k − ½`
//! and `k` inside, on and outside the domain, `k` being the gauge function
//! collected from the two axis segments.
//!
//! On the curve the kernel `K(s, t)` grows like `c(s) ln|t − s|` with
//! `c(s) = (α n_x/x₀ + β n_y/y₀)/2π`, so integrals through `t = s` are split
//! into a short inner piece handled by that expansion and an outer piece
//! integrated adaptively in `ln|t − s|`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::geometry::{Curve, Location, Point};
use crate::kernel::{Axis, FundamentalSolution, Params};
use crate::quadrature::{self, gauss_legendre};

/// Default panel order of composite Gauss–Legendre rules.
pub const PANEL_ORDER: usize = 8;
const ADAPTIVE_REL: f64 = 1e-12;
const ADAPTIVE_ABS: f64 = 1e-11;
const ADAPTIVE_MAX: usize = 4000;
/// Relative length of the inner piece around a singular point.
const INNER_FRACTION: f64 = 1e-4;
/// Off-curve points farther than this many panel lengths use the plain rule.
const FAR_PANELS: f64 = 5.0;

/// Which kind of integrand a rule is built for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    Smooth,
    /// Graded toward a logarithmic singularity at the given arclength.
    LogSingular { at: f64 },
}

/// Nodes and weights on `[0, l]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panels: Vec<(f64, f64)>,
    order: usize,
    kind: RuleKind,
}

impl QuadratureRule {
    /// Composite Gauss–Legendre rule with `panels` equal panels of `order`
    /// points each.
    pub fn gauss_panels(length: f64, panels: usize, order: usize) -> Result<Self> {
        if !(length > 0.0) || panels == 0 || order == 0 {
            return Err(domain("QuadratureRule", "need a positive length, panels and order"));
        }
        let (x, w) = gauss_legendre(order);
        let h = length / panels as f64;
        let mut rule = QuadratureRule {
            nodes: Vec::with_capacity(panels * order),
            weights: Vec::with_capacity(panels * order),
            panels: Vec::with_capacity(panels),
            order,
            kind: RuleKind::Smooth,
        };
        for p in 0..panels {
            let a = p as f64 * h;
            let b = if p + 1 == panels { length } else { a + h };
            rule.panels.push((a, b));
            for (xi, wi) in x.iter().zip(&w) {
                rule.nodes.push(a + 0.5 * (b - a) * (xi + 1.0));
                rule.weights.push(0.5 * (b - a) * wi);
            }
        }
        Ok(rule)
    }

    /// `n` nodes in panels of [`PANEL_ORDER`]; `n` must be a multiple of it.
    pub fn with_nodes(length: f64, n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(PANEL_ORDER) {
            return Err(domain(
                "QuadratureRule",
                format!("node count {n} is not a positive multiple of {PANEL_ORDER}"),
            ));
        }
        Self::gauss_panels(length, n / PANEL_ORDER, PANEL_ORDER)
    }

    /// Rule for integrands with a logarithmic singularity at `at ∈ (0, l)`:
    /// on each side `t = at ∓ d u³` with a composite rule in `u`.
    pub fn log_graded(length: f64, at: f64, panels: usize, order: usize) -> Result<Self> {
        if !(at > 0.0 && at < length) {
            return Err(domain("QuadratureRule", "singular point must lie inside (0, l)"));
        }
        let base = Self::gauss_panels(1.0, panels, order)?;
        let mut rule = QuadratureRule {
            nodes: Vec::with_capacity(2 * base.len()),
            weights: Vec::with_capacity(2 * base.len()),
            panels: vec![(0.0, at), (at, length)],
            order,
            kind: RuleKind::LogSingular { at },
        };
        for (side, span) in [(-1.0, at), (1.0, length - at)] {
            for (&u, &w) in base.nodes.iter().zip(&base.weights) {
                rule.nodes.push(at + side * span * u.powi(3));
                rule.weights.push(w * span * 3.0 * u * u);
            }
        }
        Ok(rule)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn panels(&self) -> &[(f64, f64)] {
        &self.panels
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn max_panel(&self) -> f64 {
        self.panels.iter().map(|(a, b)| b - a).fold(0.0, f64::max)
    }

    /// Lagrange interpolation of nodal values within the panel holding `s`
    /// (smooth composite rules only).
    fn interpolate(&self, values: &[f64], s: f64) -> f64 {
        let p = self
            .panels
            .partition_point(|&(_, b)| b < s)
            .min(self.panels.len() - 1);
        let lo = p * self.order;
        let xs = &self.nodes[lo..lo + self.order];
        let ys = &values[lo..lo + self.order];
        let mut sum = 0.0;
        for (j, (&xj, &yj)) in xs.iter().zip(ys).enumerate() {
            if s == xj {
                return yj;
            }
            let mut l = 1.0;
            for (m, &xm) in xs.iter().enumerate() {
                if m != j {
                    l *= (s - xm) / (xj - xm);
                }
            }
            sum += l * yj;
        }
        sum
    }
}

/// A density on `Γ` as a function of arclength.
#[derive(Clone)]
pub enum Density {
    Constant(f64),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Values at the nodes of a smooth composite rule, interpolated panelwise.
    Nodal { rule: QuadratureRule, values: Vec<f64> },
}

impl fmt::Debug for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Density::Constant(c) => write!(f, "Density::Constant({c})"),
            Density::Function(_) => write!(f, "Density::Function(..)"),
            Density::Nodal { values, .. } => write!(f, "Density::Nodal({} values)", values.len()),
        }
    }
}

impl Density {
    pub fn function(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Density::Function(Arc::new(f))
    }

    pub fn nodal(rule: QuadratureRule, values: Vec<f64>) -> Result<Self> {
        if rule.len() != values.len() {
            return Err(domain("Density::nodal", "one value per node is required"));
        }
        if rule.kind != RuleKind::Smooth {
            return Err(domain("Density::nodal", "nodal densities need a smooth rule"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(domain("Density::nodal", "non-finite density value"));
        }
        Ok(Density::Nodal { rule, values })
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Density::Constant(c) => *c,
            Density::Function(f) => f(s),
            Density::Nodal { rule, values } => rule.interpolate(values, s),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Density::Constant(c) if *c == 0.0)
    }
}

/// Side from which a boundary value is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// Outcome of a gauge-identity check at one field point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeCheck {
    pub location: Location,
    /// Potential of the unit density.
    pub potential: f64,
    pub gauge: f64,
    /// `k − 1`, `k − ½` or `k` depending on the location.
    pub expected: f64,
    pub residual: f64,
}

/// Double-layer potential on a fixed curve.
#[derive(Debug, Clone, Copy)]
pub struct DoubleLayer<'c> {
    fs: FundamentalSolution,
    curve: &'c Curve,
}

impl<'c> DoubleLayer<'c> {
    pub fn new(params: Params, curve: &'c Curve) -> Self {
        DoubleLayer {
            fs: FundamentalSolution::new(params),
            curve,
        }
    }

    pub fn curve(&self) -> &'c Curve {
        self.curve
    }

    pub fn fundamental(&self) -> &FundamentalSolution {
        &self.fs
    }

    pub fn params(&self) -> Params {
        self.fs.params()
    }

    /// Default smooth rule used for off-curve evaluation.
    pub fn default_rule(&self) -> QuadratureRule {
        QuadratureRule::gauss_panels(self.curve.length(), 32, PANEL_ORDER).expect("valid rule")
    }

    /// `K(field; t)` for a field point anywhere in the quadrant.
    pub fn kernel_at(&self, field: &Point, t: f64) -> Result<f64> {
        let cp = self.curve.point_at(t)?;
        self.fs.weighted_directional(&cp.position, field, cp.normal)
    }

    /// `K(s, t)` for two arclengths; undefined on the diagonal, where the
    /// kernel has a logarithmic singularity.
    pub fn kernel(&self, s: f64, t: f64) -> Result<f64> {
        if s == t {
            return Err(Error::Singular { r2: 0.0 });
        }
        let field = self.curve.point_at(s)?.position;
        self.kernel_at(&field, t)
    }

    /// Coefficient `c(s)` of `ln|t − s|` in `K(s, t)`.
    pub fn log_coefficient(&self, s: f64) -> Result<f64> {
        let cp = self.curve.point_at(s)?;
        let p = self.params();
        let (x, y) = (cp.position.x, cp.position.y);
        if !(x > 0.0 && y > 0.0) {
            return Err(domain("log_coefficient", "curve endpoints have no interior expansion"));
        }
        Ok((p.alpha() * cp.normal[0] / x + p.beta() * cp.normal[1] / y) / (2.0 * PI))
    }

    /// Potential at a point off the curve.  Far from `Γ` the rule is
    /// applied directly; closer in, every panel is refined adaptively.
    pub fn value(&self, mu: &Density, p0: &Point, rule: &QuadratureRule) -> Result<f64> {
        if mu.is_zero() {
            return Ok(0.0);
        }
        if !(p0.x > 0.0 && p0.y > 0.0) {
            return Err(domain("double_layer", "field point must lie in the open quadrant"));
        }
        let (s_near, dist) = self.curve.project(p0);
        if dist < 1e-9 {
            return Err(domain("double_layer", "field point lies on the curve; use the boundary trace"));
        }
        if dist > FAR_PANELS * rule.max_panel() {
            let mut sum = 0.0;
            for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
                sum += w * mu.eval(t) * self.kernel_at(p0, t)?;
            }
            return Ok(sum);
        }
        let mut cuts: Vec<f64> = rule.panels.iter().map(|p| p.0).collect();
        cuts.push(self.curve.length());
        cuts.push(s_near);
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut sum = 0.0;
        for w in cuts.windows(2) {
            let r = quadrature::integrate(
                |t| Ok(mu.eval(t) * self.kernel_at(p0, t)?),
                w[0],
                w[1],
                ADAPTIVE_ABS / cuts.len() as f64,
                ADAPTIVE_REL,
                ADAPTIVE_MAX,
            )?;
            sum += r.value;
        }
        Ok(sum)
    }

    /// Gauge function `k(p0)`: the axis integrals with Gauss-function
    /// integrands.
    pub fn gauge(&self, p0: &Point) -> Result<f64> {
        k_gauge_with(&self.fs, self.curve.a(), self.curve.b(), p0)
    }

    /// `∫₀ˡ μ(t) K(s, t) dt` for `s` strictly inside `(0, l)`.
    pub fn direct_value(&self, mu: &Density, s: f64) -> Result<f64> {
        let l = self.curve.length();
        if !(s > 0.0 && s < l) {
            return Err(domain("boundary_trace", format!("s = {s} must lie in (0, {l})")));
        }
        if mu.is_zero() {
            return Ok(0.0);
        }
        let field = self.curve.point_at(s)?.position;
        let c = self.log_coefficient(s)? * mu.eval(s);
        let delta = (INNER_FRACTION * l).min(0.5 * s).min(0.5 * (l - s));
        let g = |t: f64| -> Result<f64> { Ok(mu.eval(t) * self.kernel_at(&field, t)?) };
        let mut total = 0.0;
        for (side, reach) in [(-1.0, s), (1.0, l - s)] {
            // inner piece: g ≈ c ln τ + A + Bτ fitted at τ = δ, δ/2
            let g1 = g(s + side * delta)? - c * delta.ln();
            let g2 = g(s + side * 0.5 * delta)? - c * (0.5 * delta).ln();
            let slope = (g1 - g2) / (0.5 * delta);
            let intercept = g1 - slope * delta;
            total += c * delta * (delta.ln() - 1.0) + intercept * delta + 0.5 * slope * delta * delta;
            // outer piece in the variable u = ln(τ/δ) / ln(reach/δ)
            let span = (reach / delta).ln();
            let r = quadrature::integrate(
                |u| {
                    let tau = delta * (span * u).exp();
                    let t = (s + side * tau).clamp(0.0, l);
                    Ok(g(t)? * tau * span)
                },
                0.0,
                1.0,
                ADAPTIVE_ABS,
                ADAPTIVE_REL,
                ADAPTIVE_MAX,
            )?;
            total += r.value;
        }
        Ok(total)
    }

    /// Limit of the potential at `Γ(s)` from the given side.
    pub fn trace(&self, mu: &Density, s: f64, side: Side) -> Result<f64> {
        let jump = match side {
            Side::Interior => -0.5,
            Side::Exterior => 0.5,
        };
        Ok(jump * mu.eval(s) + self.direct_value(mu, s)?)
    }

    /// Potential at distance `d` from `Γ(s)` along the normal.
    pub fn value_along_normal(&self, mu: &Density, s: f64, side: Side, d: f64) -> Result<f64> {
        let cp = self.curve.point_at(s)?;
        let sign = match side {
            Side::Interior => -1.0,
            Side::Exterior => 1.0,
        };
        let p0 = Point::new(
            cp.position.x + sign * d * cp.normal[0],
            cp.position.y + sign * d * cp.normal[1],
        )?;
        self.value(mu, &p0, &self.default_rule())
    }

    /// Off-curve limit at `Γ(s)`: values at `4d, 2d, d` along the normal,
    /// Richardson-extrapolated assuming an error `c₁d + c₂d² + …`.
    pub fn approach_limit(&self, mu: &Density, s: f64, side: Side, d: f64) -> Result<f64> {
        let w4 = self.value_along_normal(mu, s, side, 4.0 * d)?;
        let w2 = self.value_along_normal(mu, s, side, 2.0 * d)?;
        let w1 = self.value_along_normal(mu, s, side, d)?;
        let (r2, r1) = (2.0 * w2 - w4, 2.0 * w1 - w2);
        Ok((4.0 * r1 - r2) / 3.0)
    }

    /// Outward flux `∮ x^{2α}y^{2β} ∂q₄(·; q)/∂n` over the whole boundary:
    /// the curve by `rule`, the axis segments adaptively.
    pub fn boundary_flux(&self, q: &Point, rule: &QuadratureRule) -> Result<f64> {
        let mut curve_part = 0.0;
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            curve_part += w * self.kernel_at(q, t)?;
        }
        let mut axis_part = 0.0;
        for (axis, len, peak) in [(Axis::X, self.curve.a(), q.x), (Axis::Y, self.curve.b(), q.y)] {
            axis_part += integrate_with_peak(|t| self.fs.axis_flux_density(axis, t, q), len, peak)?;
        }
        Ok(curve_part + axis_part)
    }

    /// Absolute flux for a source outside the closed domain.
    pub fn flux_residual(&self, q: &Point, rule: &QuadratureRule) -> Result<f64> {
        let outside = q.x >= self.curve.a()
            || q.y >= self.curve.b()
            || self.curve.classify(q)? == Location::Outside;
        if !outside {
            return Err(domain("flux_residual", "source must lie outside the closed domain"));
        }
        Ok(self.boundary_flux(q, rule)?.abs())
    }

    /// Gauge identity at a field point of the open quadrant.
    pub fn gauge_check(&self, p0: &Point) -> Result<GaugeCheck> {
        let location = self.curve.classify(p0)?;
        let gauge = self.gauge(p0)?;
        let unit = Density::Constant(1.0);
        let (potential, expected) = match location {
            Location::Inside => (self.value(&unit, p0, &self.default_rule())?, gauge - 1.0),
            Location::Outside => (self.value(&unit, p0, &self.default_rule())?, gauge),
            Location::On => {
                let (s, _) = self.curve.project(p0);
                (self.direct_value(&unit, s)?, gauge - 0.5)
            }
        };
        Ok(GaugeCheck {
            location,
            potential,
            gauge,
            expected,
            residual: (potential - expected).abs(),
        })
    }

    /// `|∬ x^{2α}y^{2β}|∇u|² − ∮ x^{2α}y^{2β} u ∂u/∂n|` for `u = q₄(·; q)`
    /// with `q` outside the domain, using `n` Gauss points per direction.
    pub fn energy_residual(&self, q: &Point, n: usize) -> Result<f64> {
        let (area, boundary) = self.energy_terms(q, n)?;
        Ok((area - boundary).abs())
    }

    /// Area and boundary sides of the energy identity.
    pub fn energy_terms(&self, q: &Point, n: usize) -> Result<(f64, f64)> {
        let p = self.params();
        let rule = graded_parameter_rule(n, p.alpha(), p.beta());
        let (rx, rw) = gauss_legendre(n);
        let mut area = 0.0;
        let mut boundary = 0.0;
        for (&t, &wt) in rule.0.iter().zip(&rule.1) {
            let (c, dc) = self.curve.at_parameter(t);
            let cross = (c.x * dc[1] - c.y * dc[0]).abs();
            let speed = dc[0].hypot(dc[1]);
            let normal = [-dc[1] / speed, dc[0] / speed];
            let u = self.fs.value(&c, q)?;
            boundary += wt * speed * u * self.fs.weighted_directional(&c, q, normal)?;
            for (&xr, &wr) in rx.iter().zip(&rw) {
                let rho = 0.5 * (xr + 1.0);
                let pt = Point {
                    x: rho * c.x,
                    y: rho * c.y,
                };
                let g = self.fs.gradient(&pt, q)?;
                area += 0.5 * wr * wt * rho * cross * p.weight(&pt) * (g[0] * g[0] + g[1] * g[1]);
            }
        }
        Ok((area, boundary))
    }
}

/// Gauss rule in the curve parameter `τ`, graded as `τ^{1/m}` toward both
/// ends to absorb the `x^{−2α}`, `y^{−2β}` behaviour of the integrands.
fn graded_parameter_rule(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mut nodes = Vec::with_capacity(2 * n);
    let mut weights = Vec::with_capacity(2 * n);
    for (end, m) in [(0.0, 2.0 / (1.0 - 2.0 * alpha)), (1.0, 2.0 / (1.0 - 2.0 * beta))] {
        for (&xi, &wi) in x.iter().zip(&w) {
            let v = 0.5 * (xi + 1.0);
            let offset = 0.5 * v.powf(m);
            let jac = 0.5 * m * v.powf(m - 1.0) * 0.5 * wi;
            nodes.push(if end == 0.0 { offset } else { 1.0 - offset });
            weights.push(jac);
        }
    }
    (nodes, weights)
}

/// Adaptive integral over `[0, len]` with a breakpoint at `peak` when it
/// falls inside.
fn integrate_with_peak<F>(mut f: F, len: f64, peak: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut cuts = vec![0.0, len];
    if peak > 0.0 && peak < len {
        cuts.insert(1, peak);
    }
    let mut sum = 0.0;
    for w in cuts.windows(2) {
        sum += quadrature::integrate(&mut f, w[0], w[1], 1e-13, ADAPTIVE_REL, ADAPTIVE_MAX)?.value;
    }
    Ok(sum)
}

fn k_gauge_with(fs: &FundamentalSolution, a: f64, b: f64, p0: &Point) -> Result<f64> {
    if !(p0.x > 0.0 && p0.y > 0.0) {
        return Err(domain("k_gauge", "field point must lie in the open quadrant"));
    }
    let mut sum = 0.0;
    for (axis, len, peak) in [(Axis::X, a, p0.x), (Axis::Y, b, p0.y)] {
        let hyp = fs.gauge_hypergeometric(axis)?;
        sum += integrate_with_peak(|t| fs.gauge_density(axis, &hyp, t, p0), len, peak)?;
    }
    Ok(sum)
}

/// `K(s, t) = x(t)^{2α} y(t)^{2β} ∂q₄(x(t), y(t); x(s), y(s))/∂n_t`.
pub fn kernel_k4(params: Params, curve: &Curve, s: f64, t: f64) -> Result<f64> {
    DoubleLayer::new(params, curve).kernel(s, t)
}

/// Double-layer potential at an off-curve point.
pub fn double_layer(params: Params, curve: &Curve, mu: &Density, p0: &Point, rule: &QuadratureRule) -> Result<f64> {
    DoubleLayer::new(params, curve).value(mu, p0, rule)
}

/// Gauge function for the domain with axis intercepts `a`, `b`.
pub fn k_gauge(params: Params, a: f64, b: f64, p0: &Point) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(domain("k_gauge", "axis intercepts must be positive"));
    }
    k_gauge_with(&FundamentalSolution::new(params), a, b, p0)
}

/// One-sided boundary value of the potential.
pub fn boundary_trace(params: Params, curve: &Curve, mu: &Density, s: f64, side: Side) -> Result<f64> {
    DoubleLayer::new(params, curve).trace(mu, s, side)
}

/// Absolute full-boundary flux of `q₄(·; q)` for an exterior source.
pub fn flux_residual(params: Params, curve: &Curve, q: &Point, rule: &QuadratureRule) -> Result<f64> {
    DoubleLayer::new(params, curve).flux_residual(q, rule)
}

/// Energy-identity residual for `u = q₄(·; q)`.
pub fn energy_residual(params: Params, curve: &Curve, q: &Point, n: usize) -> Result<f64> {
    DoubleLayer::new(params, curve).energy_residual(q, n)
}

/// Gauge identity for the unit density at `p0`.
pub fn lemma1_verify(params: Params, curve: &Curve, p0: &Point) -> Result<GaugeCheck> {
    DoubleLayer::new(params, curve).gauge_check(p0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::superellipse_curve;
    use approx::assert_relative_eq;

    fn setup() -> (Params, Curve) {
        (Params::new(0.25, 0.25).unwrap(), superellipse_curve(1.0, 1.0, 3.0).unwrap())
    }

    #[test]
    fn rules() {
        let r = QuadratureRule::with_nodes(2.0, 32).unwrap();
        assert_eq!(r.len(), 32);
        assert_relative_eq!(r.weights().iter().sum::<f64>(), 2.0, max_relative = 1e-14);
        assert!(QuadratureRule::with_nodes(2.0, 30).is_err());
        let g = QuadratureRule::log_graded(2.0, 0.7, 4, 8).unwrap();
        assert!(g.weights().iter().all(|&w| w > 0.0));
        let integral: f64 = g.nodes().iter().zip(g.weights()).map(|(t, w)| w * (t - 0.7f64).abs().ln()).sum();
        let exact = 0.7 * (0.7f64.ln() - 1.0) + 1.3 * (1.3f64.ln() - 1.0);
        assert!((integral - exact).abs() < 1e-6);
    }

    #[test]
    fn nodal_density_interpolates_polynomials() {
        let r = QuadratureRule::with_nodes(1.5, 16).unwrap();
        let vals = r.nodes().iter().map(|s| s * s * s - s).collect();
        let d = Density::nodal(r, vals).unwrap();
        for &s in &[0.0, 0.1, 0.75, 1.2, 1.5] {
            assert!((d.eval(s) - (s * s * s - s)).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_density_gives_zero() {
        let (p, c) = setup();
        let dl = DoubleLayer::new(p, &c);
        let z = Density::Constant(0.0);
        assert_eq!(dl.value(&z, &Point::new(0.3, 0.3).unwrap(), &dl.default_rule()).unwrap(), 0.0);
    }

    #[test]
    fn gauge_vanishes_far_away() {
        let (p, _) = setup();
        let near = k_gauge(p, 1.0, 1.0, &Point::new(2.0, 2.0).unwrap()).unwrap();
        let far = k_gauge(p, 1.0, 1.0, &Point::new(200.0, 200.0).unwrap()).unwrap();
        assert!(near > 0.0 && far > 0.0 && far < 1e-3 * near);
        assert!(k_gauge(p, 1.0, 1.0, &Point::new(0.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn kernel_diagonal_is_rejected() {
        let (p, c) = setup();
        assert!(kernel_k4(p, &c, 0.5, 0.5).is_err());
        assert!(kernel_k4(p, &c, 0.5, 0.6).unwrap().is_finite());
    }
}
