//! The fourth fundamental solution
//!
//! `q₄(x, y; x₀, y₀) = k₄ (r²)^{α+β−2} (x x₀)^{1−2α} (y y₀)^{1−2β}
//!                     F₂(2−α−β; 1−α, 1−β; 2−2α, 2−2β; ξ, η)`
//!
//! with `ξ = −4xx₀/r²`, `η = −4yy₀/r²`, together with its gradient in the
//! first point, its normal derivative and a few limits used by the
//! potential module.  The first point is the integration variable and the
//! second one the field point.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{CurvePoint, Point};
use crate::specfun::{appell_f2, ln_gamma, F2Args, Hyp2f1};

/// Pairs closer than this fraction of the image distances are rejected.
const SINGULAR_RATIO: f64 = 1e-12;

/// Exponents of the equation; both must lie in `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    alpha: f64,
    beta: f64,
}

impl Params {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = |v: f64| v > 0.0 && 2.0 * v < 1.0;
        if !ok(alpha) || !ok(beta) {
            return Err(Error::Params(format!(
                "alpha = {alpha}, beta = {beta} must satisfy 0 < 2*alpha, 2*beta < 1"
            )));
        }
        Ok(Params { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Weight `x^{2α} y^{2β}` of the conormal derivative.
    pub fn weight(&self, p: &Point) -> f64 {
        p.x.powf(2.0 * self.alpha) * p.y.powf(2.0 * self.beta)
    }

    /// Exponent `2 − α − β` of the leading parameter of `F₂`.
    fn order(&self) -> f64 {
        2.0 - self.alpha - self.beta
    }
}

/// Squared distances between a pair of points and the `F₂` arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordSet {
    /// `(x − x₀)² + (y − y₀)²`.
    pub dist_sq: f64,
    /// `(x + x₀)² + (y − y₀)²`, distance to the mirror image across `x = 0`.
    pub mirror_x0_sq: f64,
    /// `(x − x₀)² + (y + y₀)²`, distance to the mirror image across `y = 0`.
    pub mirror_y0_sq: f64,
    pub xi: f64,
    pub eta: f64,
}

/// Distances and `F₂` arguments for the pair `(p, q)`.
pub fn chords(p: &Point, q: &Point) -> Result<ChordSet> {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let dist_sq = dx * dx + dy * dy;
    if dist_sq == 0.0 {
        return Err(Error::Singular { r2: 0.0 });
    }
    let cross_x = 4.0 * p.x * q.x;
    let cross_y = 4.0 * p.y * q.y;
    Ok(ChordSet {
        dist_sq,
        mirror_x0_sq: dist_sq + cross_x,
        mirror_y0_sq: dist_sq + cross_y,
        xi: -cross_x / dist_sq,
        eta: -cross_y / dist_sq,
    })
}

/// Normalising constant
/// `k₄ = 2^{4−2α−2β} Γ(1−α)Γ(1−β)Γ(2−α−β) / (4π Γ(2−2α)Γ(2−2β))`.
pub fn k4_constant(p: Params) -> f64 {
    let (a, b) = (p.alpha, p.beta);
    // every argument is positive for valid parameters
    let lg = |x: f64| ln_gamma(x).expect("positive argument");
    let log = (4.0 - 2.0 * a - 2.0 * b) * 2f64.ln() + lg(1.0 - a) + lg(1.0 - b) + lg(2.0 - a - b)
        - lg(2.0 - 2.0 * a)
        - lg(2.0 - 2.0 * b);
    log.exp() / (4.0 * PI)
}

/// The four `F₂` values appearing in the gradient.
#[derive(Debug, Clone, Copy)]
struct F2Values {
    base: f64,
    /// parameters raised along `x`: `(a+1; b₁+1, b₂; c₁+1, c₂)`
    along_x: f64,
    /// parameters raised along `y`: `(a+1; b₁, b₂+1; c₁, c₂+1)`
    along_y: f64,
    /// leading parameter raised: `(a+1; b₁, b₂; c₁, c₂)`
    raised: f64,
}

/// `q₄` with its constant and parameter sets prepared once.
#[derive(Debug, Clone, Copy)]
pub struct FundamentalSolution {
    params: Params,
    k4: f64,
    base: F2Args,
}

impl FundamentalSolution {
    pub fn new(params: Params) -> Self {
        let (a, b) = (params.alpha, params.beta);
        FundamentalSolution {
            params,
            k4: k4_constant(params),
            base: F2Args::new(2.0 - a - b, 1.0 - a, 1.0 - b, 2.0 - 2.0 * a, 2.0 - 2.0 * b, 0.0, 0.0),
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn k4(&self) -> f64 {
        self.k4
    }

    fn checked_chords(&self, p: &Point, q: &Point) -> Result<ChordSet> {
        let c = chords(p, q)?;
        if c.dist_sq < SINGULAR_RATIO * c.mirror_x0_sq.max(c.mirror_y0_sq) {
            return Err(Error::Singular { r2: c.dist_sq });
        }
        Ok(c)
    }

    fn base_args(&self, c: &ChordSet) -> F2Args {
        self.base.at(c.xi, c.eta)
    }

    fn f2_values(&self, c: &ChordSet) -> Result<F2Values> {
        let b = self.base_args(c);
        let raised = F2Args { a: b.a + 1.0, ..b };
        Ok(F2Values {
            base: appell_f2(b)?,
            along_x: appell_f2(F2Args { b1: b.b1 + 1.0, c1: b.c1 + 1.0, ..raised })?,
            along_y: appell_f2(F2Args { b2: b.b2 + 1.0, c2: b.c2 + 1.0, ..raised })?,
            raised: appell_f2(raised)?,
        })
    }

    /// `k₄ (r²)^{-(2−α−β)} x₀^{1−2α} y₀^{1−2β}`, common to all terms.
    fn common(&self, c: &ChordSet, q: &Point) -> f64 {
        let (a, b) = (self.params.alpha, self.params.beta);
        self.k4
            * c.dist_sq.powf(-self.params.order())
            * q.x.powf(1.0 - 2.0 * a)
            * q.y.powf(1.0 - 2.0 * b)
    }

    /// `q₄(p; q)`.
    pub fn value(&self, p: &Point, q: &Point) -> Result<f64> {
        let c = self.checked_chords(p, q)?;
        let (a, b) = (self.params.alpha, self.params.beta);
        let outer = p.x.powf(1.0 - 2.0 * a) * p.y.powf(1.0 - 2.0 * b);
        if outer == 0.0 {
            return Ok(0.0);
        }
        Ok(self.common(&c, q) * outer * appell_f2(self.base_args(&c))?)
    }

    /// Gradient of `q₄` with respect to the first point.
    pub fn gradient(&self, p: &Point, q: &Point) -> Result<[f64; 2]> {
        if !(p.x > 0.0 && p.y > 0.0) {
            return Err(crate::error::domain("grad_q4", "first point must lie in the open quadrant"));
        }
        let c = self.checked_chords(p, q)?;
        let f = self.f2_values(&c)?;
        let scale = self.common(&c, q) * p.x.powf(-2.0 * self.params.alpha) * p.y.powf(-2.0 * self.params.beta);
        Ok([
            scale * self.weighted_terms(p, q, &c, &f, [1.0, 0.0]),
            scale * self.weighted_terms(p, q, &c, &f, [0.0, 1.0]),
        ])
    }

    /// Derivative of `q₄` along the direction `n` at the first point.
    pub fn directional(&self, p: &Point, q: &Point, n: [f64; 2]) -> Result<f64> {
        if !(p.x > 0.0 && p.y > 0.0) {
            return Err(crate::error::domain("dq4_dn", "curve point must lie in the open quadrant"));
        }
        Ok(self.weighted_directional(p, q, n)? / self.params.weight(p))
    }

    /// `x^{2α} y^{2β} ∂q₄/∂n` at the first point; finite on the axes.
    pub fn weighted_directional(&self, p: &Point, q: &Point, n: [f64; 2]) -> Result<f64> {
        let c = self.checked_chords(p, q)?;
        let f = self.f2_values(&c)?;
        Ok(self.common(&c, q) * self.weighted_terms(p, q, &c, &f, n))
    }

    /// The five terms of the normal derivative after multiplication by the
    /// weight and division by the common factor.
    fn weighted_terms(&self, p: &Point, q: &Point, c: &ChordSet, f: &F2Values, n: [f64; 2]) -> f64 {
        let (a, b) = (self.params.alpha, self.params.beta);
        let order = self.params.order();
        let log_r2_dn = 2.0 * ((p.x - q.x) * n[0] + (p.y - q.y) * n[1]) / c.dist_sq;
        let xy = p.x * p.y;
        -order * xy * f.raised * log_r2_dn
            - 2.0 * order * xy * q.x / c.dist_sq * f.along_x * n[0]
            - 2.0 * order * xy * q.y / c.dist_sq * f.along_y * n[1]
            + (1.0 - 2.0 * a) * p.y * f.base * n[0]
            + (1.0 - 2.0 * b) * p.x * f.base * n[1]
    }

    /// `|q₄|` envelope: `(x x₀)^{1−2α}(y y₀)^{1−2β}(r₁²)^{α−1}(r₂²)^{β−1}
    /// |ln(r²/r₁² + r²/r₂² − r⁴/(r₁² r₂²))|`.
    pub fn envelope(&self, p: &Point, q: &Point) -> Result<f64> {
        if !(p.x > 0.0 && p.y > 0.0 && q.x > 0.0 && q.y > 0.0) {
            return Err(crate::error::domain("singularity_envelope", "points must lie in the open quadrant"));
        }
        let c = chords(p, q)?;
        let (a, b) = (self.params.alpha, self.params.beta);
        let u = c.dist_sq / c.mirror_x0_sq;
        let v = c.dist_sq / c.mirror_y0_sq;
        // 1 − (1 − u)(1 − v) written without cancellation
        let arg = u + v * (1.0 - u);
        if !(arg > 0.0) {
            return Err(crate::error::domain("singularity_envelope", format!("log argument {arg} is not positive")));
        }
        Ok((p.x * q.x).powf(1.0 - 2.0 * a)
            * (p.y * q.y).powf(1.0 - 2.0 * b)
            * c.mirror_x0_sq.powf(a - 1.0)
            * c.mirror_y0_sq.powf(b - 1.0)
            * arg.ln().abs())
    }

    /// Outward weighted flux density `x^{2α} y^{2β} ∂q₄/∂n` on the segment
    /// `y = 0` at abscissa `t`, obtained as the limit `y → 0` of the
    /// gradient formula (only the `y^{−2β}` term survives).
    pub fn axis_flux_density(&self, axis: Axis, t: f64, q: &Point) -> Result<f64> {
        let (a, b) = (self.params.alpha, self.params.beta);
        // swap roles so the segment always lies on the first coordinate
        let (qa, qb, ea, eb, along) = match axis {
            Axis::X => (q.x, q.y, a, b, self.base),
            Axis::Y => (
                q.y,
                q.x,
                b,
                a,
                F2Args { b1: self.base.b2, b2: self.base.b1, c1: self.base.c2, c2: self.base.c1, ..self.base },
            ),
        };
        let r2 = (t - qa) * (t - qa) + qb * qb;
        let xi = -4.0 * t * qa / r2;
        let f = appell_f2(along.at(xi, 0.0))?;
        Ok(-(1.0 - 2.0 * eb)
            * self.k4
            * r2.powf(-self.params.order())
            * t
            * qa.powf(1.0 - 2.0 * ea)
            * qb.powf(1.0 - 2.0 * eb)
            * f)
    }

    /// Gauss function `F(2−α−β, 1−α; 2−2α; ·)` (or its `y` counterpart)
    /// entering the gauge integrand on the given axis.
    pub fn gauge_hypergeometric(&self, axis: Axis) -> Result<Hyp2f1> {
        let e = match axis {
            Axis::X => self.params.alpha,
            Axis::Y => self.params.beta,
        };
        Hyp2f1::new(self.params.order(), 1.0 - e, 2.0 - 2.0 * e)
    }

    /// Gauss-function form of [`Self::axis_flux_density`] with the sign
    /// flipped, the integrand of the gauge function; `hyp` comes from
    /// [`Self::gauge_hypergeometric`].
    pub fn gauge_density(&self, axis: Axis, hyp: &Hyp2f1, t: f64, q: &Point) -> Result<f64> {
        let (a, b) = (self.params.alpha, self.params.beta);
        let (qa, qb, ea, eb) = match axis {
            Axis::X => (q.x, q.y, a, b),
            Axis::Y => (q.y, q.x, b, a),
        };
        let r2 = (t - qa) * (t - qa) + qb * qb;
        let z = -4.0 * t * qa / r2;
        Ok((1.0 - 2.0 * eb)
            * self.k4
            * r2.powf(-self.params.order())
            * t
            * qa.powf(1.0 - 2.0 * ea)
            * qb.powf(1.0 - 2.0 * eb)
            * hyp.eval(z)?)
    }
}

/// A coordinate axis bounding the domain: `X` is the segment `y = 0`,
/// `Y` the segment `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// `q₄(p; q)`.
pub fn q4(params: Params, p: &Point, q: &Point) -> Result<f64> {
    FundamentalSolution::new(params).value(p, q)
}

/// `(∂q₄/∂x, ∂q₄/∂y)` at the first point.
pub fn grad_q4(params: Params, p: &Point, q: &Point) -> Result<[f64; 2]> {
    FundamentalSolution::new(params).gradient(p, q)
}

/// Derivative of `q₄` along the outward normal of the curve point.
pub fn dq4_dn(params: Params, cp: &CurvePoint, q: &Point) -> Result<f64> {
    FundamentalSolution::new(params).directional(&cp.position, q, cp.normal)
}

/// Logarithmic envelope used for ratio tests of `|q₄|`.
pub fn singularity_envelope(params: Params, p: &Point, q: &Point) -> Result<f64> {
    FundamentalSolution::new(params).envelope(p, q)
}
