//! Quarter-plane domains bounded by the segments `[0, a]`, `[0, b]` of the
//! axes and a curve from `B(0, b)` to `A(a, 0)`.
//!
//! The curve is the superellipse `(x/a)^q + (y/b)^q = 1`, parametrised by
//! `τ ∈ [0, 1]` through the polar angle `φ = π(1 − τ)/2`.  Arclength is
//! tabulated once; `point_at` inverts the table with a cubic Hermite guess
//! followed by Newton steps on the exact arclength integral.

use std::f64::consts::FRAC_PI_2;

use crate::error::{domain, Error, Result};
use crate::quadrature::gauss_legendre;

const TABLE_CELLS: usize = 2048;
const CELL_GAUSS: usize = 12;
const ON_CURVE_BAND: f64 = 1e-9;
const AMBIGUOUS_DISTANCE: f64 = 1e-6;

/// A point of the closed first quadrant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(domain("Point::new", format!("({x}, {y}) is not in the closed first quadrant")));
        }
        Ok(Point { x, y })
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Position, unit tangent and outward unit normal at arclength `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub s: f64,
    pub position: Point,
    pub tangent: [f64; 2],
    pub normal: [f64; 2],
}

/// Where a point sits relative to the domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    On,
    Outside,
}

impl Location {
    pub fn as_str(&self) -> &'static str {
        match self {
            Location::Inside => "inside",
            Location::On => "on",
            Location::Outside => "outside",
        }
    }
}

/// Raw parametrisation data at one `τ`.
#[derive(Debug, Clone, Copy)]
struct Sample {
    x: f64,
    y: f64,
    dx: f64,
    dy: f64,
}

impl Sample {
    fn speed(&self) -> f64 {
        self.dx.hypot(self.dy)
    }
}

/// The boundary arc `Γ` of a quarter-plane domain.
#[derive(Debug, Clone)]
pub struct Curve {
    a: f64,
    b: f64,
    q: f64,
    tau: Vec<f64>,
    arclength: Vec<f64>,
    speed: Vec<f64>,
    gauss: (Vec<f64>, Vec<f64>),
}

/// The superellipse `(x/a)^q + (y/b)^q = 1` in the first quadrant.
pub fn superellipse_curve(a: f64, b: f64, q: f64) -> Result<Curve> {
    Curve::superellipse(a, b, q)
}

impl Curve {
    pub fn superellipse(a: f64, b: f64, q: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::Curve(format!("intercepts a = {a}, b = {b} must be positive")));
        }
        if !(q >= 2.0) || !q.is_finite() {
            return Err(Error::Curve(format!(
                "exponent q = {q} < 2 violates the endpoint conditions"
            )));
        }
        let gauss = gauss_legendre(CELL_GAUSS);
        let mut curve = Curve {
            a,
            b,
            q,
            tau: Vec::with_capacity(TABLE_CELLS + 1),
            arclength: Vec::with_capacity(TABLE_CELLS + 1),
            speed: Vec::with_capacity(TABLE_CELLS + 1),
            gauss,
        };
        let mut s = 0.0;
        for k in 0..=TABLE_CELLS {
            let t = k as f64 / TABLE_CELLS as f64;
            if k > 0 {
                s += curve.speed_integral(curve.tau[k - 1], t);
            }
            curve.tau.push(t);
            curve.arclength.push(s);
            curve.speed.push(curve.sample(t).speed());
        }
        Ok(curve)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn exponent(&self) -> f64 {
        self.q
    }

    /// Total length `l` of the curve.
    pub fn length(&self) -> f64 {
        *self.arclength.last().unwrap()
    }

    fn sample(&self, t: f64) -> Sample {
        let q = self.q;
        // cos φ = sin(πτ/2), sin φ = sin(π(1 − τ)/2), both free of cancellation
        let c = (FRAC_PI_2 * t).sin();
        let sn = (FRAC_PI_2 * (1.0 - t)).sin();
        let g = c.powf(q) + sn.powf(q);
        let rho = g.powf(-1.0 / q);
        Sample {
            x: self.a * rho * c,
            y: self.b * rho * sn,
            dx: FRAC_PI_2 * self.a * rho * sn.powf(q - 1.0) / g,
            dy: -FRAC_PI_2 * self.b * rho * c.powf(q - 1.0) / g,
        }
    }

    fn speed_integral(&self, t0: f64, t1: f64) -> f64 {
        let (nodes, weights) = &self.gauss;
        let half = 0.5 * (t1 - t0);
        let mid = 0.5 * (t1 + t0);
        nodes
            .iter()
            .zip(weights)
            .map(|(u, w)| w * self.sample(mid + half * u).speed())
            .sum::<f64>()
            * half
    }

    /// Parameter `τ` of the point at arclength `s`.
    fn tau_at(&self, s: f64) -> f64 {
        let l = self.length();
        if s <= 0.0 {
            return 0.0;
        }
        if s >= l {
            return 1.0;
        }
        let k = match self.arclength.binary_search_by(|v| v.total_cmp(&s)) {
            Ok(k) => return self.tau[k],
            Err(k) => k - 1,
        };
        let (t0, t1) = (self.tau[k], self.tau[k + 1]);
        let (s0, s1) = (self.arclength[k], self.arclength[k + 1]);
        let h = s1 - s0;
        // cubic Hermite for τ(s) with dτ/ds = 1/speed
        let u = (s - s0) / h;
        let (m0, m1) = (h / self.speed[k], h / self.speed[k + 1]);
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        let mut t = (h00 * t0 + h10 * m0 + h01 * t1 + h11 * m1).clamp(t0, t1);
        for _ in 0..3 {
            let f = s0 + self.speed_integral(t0, t) - s;
            let step = f / self.sample(t).speed();
            t = (t - step).clamp(t0, t1);
            if step.abs() < 1e-16 {
                break;
            }
        }
        t
    }

    /// Position, tangent and outward normal at arclength `s ∈ [0, l]`.
    pub fn point_at(&self, s: f64) -> Result<CurvePoint> {
        let l = self.length();
        if !(s >= 0.0 && s <= l) {
            return Err(domain("point_at", format!("s = {s} outside [0, {l}]")));
        }
        Ok(self.point_at_tau(self.tau_at(s), s))
    }

    fn point_at_tau(&self, t: f64, s: f64) -> CurvePoint {
        let smp = self.sample(t);
        let sp = smp.speed();
        let tangent = [smp.dx / sp, smp.dy / sp];
        CurvePoint {
            s,
            position: Point {
                x: smp.x.max(0.0),
                y: smp.y.max(0.0),
            },
            tangent,
            // traversal B → A is clockwise, so the outward side is on the left
            normal: [-tangent[1], tangent[0]],
        }
    }

    /// Position and derivative `dC/dτ` at parameter `τ ∈ [0, 1]`.
    pub fn at_parameter(&self, t: f64) -> (Point, [f64; 2]) {
        let smp = self.sample(t.clamp(0.0, 1.0));
        (
            Point {
                x: smp.x.max(0.0),
                y: smp.y.max(0.0),
            },
            [smp.dx, smp.dy],
        )
    }

    /// Implicit function `(x/a)^q + (y/b)^q − 1`, negative inside.
    pub fn implicit(&self, p: &Point) -> f64 {
        (p.x / self.a).powf(self.q) + (p.y / self.b).powf(self.q) - 1.0
    }

    /// Arclength and distance of the nearest curve point.
    pub fn project(&self, p: &Point) -> (f64, f64) {
        let dist2 = |t: f64| {
            let smp = self.sample(t);
            (smp.x - p.x).powi(2) + (smp.y - p.y).powi(2)
        };
        let coarse = 256;
        let (mut best, mut best_d) = (0usize, f64::INFINITY);
        for k in 0..=coarse {
            let d = dist2(k as f64 / coarse as f64);
            if d < best_d {
                best = k;
                best_d = d;
            }
        }
        // golden-section search on the bracketing cells
        let mut lo = (best.saturating_sub(1)) as f64 / coarse as f64;
        let mut hi = ((best + 1).min(coarse)) as f64 / coarse as f64;
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let mut m1 = hi - ratio * (hi - lo);
        let mut m2 = lo + ratio * (hi - lo);
        let (mut f1, mut f2) = (dist2(m1), dist2(m2));
        while hi - lo > 1e-15 {
            if f1 < f2 {
                hi = m2;
                m2 = m1;
                f2 = f1;
                m1 = hi - ratio * (hi - lo);
                f1 = dist2(m1);
            } else {
                lo = m1;
                m1 = m2;
                f1 = f2;
                m2 = lo + ratio * (hi - lo);
                f2 = dist2(m2);
            }
        }
        let t = 0.5 * (lo + hi);
        let k = ((t * TABLE_CELLS as f64) as usize).min(TABLE_CELLS - 1);
        let s = self.arclength[k] + self.speed_integral(self.tau[k], t);
        (s.min(self.length()), dist2(t).sqrt())
    }

    /// Classify a point of the open quadrant against the domain.
    pub fn classify(&self, p: &Point) -> Result<Location> {
        if !(p.x > 0.0 && p.y > 0.0) {
            return Err(domain("classify", "point must lie in the open quadrant"));
        }
        let f = self.implicit(p);
        if f.abs() <= ON_CURVE_BAND {
            return Ok(Location::On);
        }
        let (_, distance) = self.project(p);
        if distance < AMBIGUOUS_DISTANCE {
            return Err(Error::Ambiguous { distance });
        }
        Ok(if f < 0.0 { Location::Inside } else { Location::Outside })
    }

    /// Check the endpoint conditions `|dx/ds| ≤ C y^{1+ε}` near `A` and
    /// `|dy/ds| ≤ C x^{1+ε}` near `B` on dyadic samples starting at
    /// arclength `margin · l` from each endpoint.
    pub fn check_endpoint_conditions(&self, epsilon: f64, margin: f64) -> EndpointReport {
        let l = self.length();
        let samples = 30;
        let mut near_a = Vec::with_capacity(samples);
        let mut near_b = Vec::with_capacity(samples);
        for k in 0..samples {
            let d = margin * l / 2f64.powi(k as i32);
            // near B: x small, the tangent's y component must vanish like x^{1+ε}
            let t = self.tau_at(d);
            let cp = self.point_at_tau(t, d);
            near_b.push((d, cp.tangent[1].abs() / cp.position.x.powf(1.0 + epsilon)));
            let t = self.tau_at(l - d);
            let cp = self.point_at_tau(t, l - d);
            near_a.push((d, cp.tangent[0].abs() / cp.position.y.powf(1.0 + epsilon)));
        }
        let slope_a = tail_slope(&near_a);
        let slope_b = tail_slope(&near_b);
        let bounded = slope_a > -SLOPE_TOL && slope_b > -SLOPE_TOL;
        let constant = if bounded {
            near_a
                .iter()
                .chain(&near_b)
                .map(|&(_, r)| r)
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        EndpointReport {
            holds: bounded,
            constant,
            near_a,
            near_b,
            slope_a,
            slope_b,
        }
    }
}

const SLOPE_TOL: f64 = 1e-2;

/// Log-log slope of the ratio against the distance over the last ten samples.
fn tail_slope(samples: &[(f64, f64)]) -> f64 {
    let tail = &samples[samples.len() - 10..];
    let (d0, r0) = tail[0];
    let (d1, r1) = tail[tail.len() - 1];
    if r0 == 0.0 || r1 == 0.0 {
        return f64::INFINITY;
    }
    (r1.ln() - r0.ln()) / (d1.ln() - d0.ln())
}

/// Outcome of [`Curve::check_endpoint_conditions`].
#[derive(Debug, Clone)]
pub struct EndpointReport {
    pub holds: bool,
    /// Largest sampled ratio, infinite when the ratios diverge.
    pub constant: f64,
    /// `(distance from A, |dx/ds| / y^{1+ε})`.
    pub near_a: Vec<(f64, f64)>,
    /// `(distance from B, |dy/ds| / x^{1+ε})`.
    pub near_b: Vec<(f64, f64)>,
    pub slope_a: f64,
    pub slope_b: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn endpoints_and_length() {
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        let b = c.point_at(0.0).unwrap();
        assert_eq!((b.position.x, b.position.y), (0.0, 1.0));
        let a = c.point_at(c.length()).unwrap();
        assert!(a.position.x == 1.0 && a.position.y.abs() < 1e-16);
        let circle = superellipse_curve(1.0, 1.0, 2.0).unwrap();
        assert!((circle.length() - PI / 2.0).abs() < 1e-12);
        let ellipse = superellipse_curve(2.0, 1.0, 2.0).unwrap();
        // quarter of the ellipse perimeter, complete elliptic integral E(k² = 3/4)
        assert_relative_eq!(ellipse.length(), 2.0 * 1.211_056_027_568_459_5, max_relative = 1e-12);
    }

    #[test]
    fn point_at_is_on_the_curve_with_unit_frame() {
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        for k in 0..=40 {
            let cp = c.point_at(c.length() * (k as f64 / 40.0)).unwrap();
            assert!(c.implicit(&cp.position).abs() < 1e-12);
            let t = cp.tangent;
            assert!((t[0].hypot(t[1]) - 1.0).abs() < 1e-14);
            assert!((t[0] * cp.normal[0] + t[1] * cp.normal[1]).abs() < 1e-15);
        }
        let mid = c.point_at(0.5 * c.length()).unwrap().position;
        assert!((mid.x.powi(3) + mid.y.powi(3) - 1.0).abs() < 1e-10);
        assert_relative_eq!(mid.x, mid.y, max_relative = 1e-12);
    }

    #[test]
    fn normal_points_away_from_the_interior() {
        let c = superellipse_curve(1.0, 1.5, 3.0).unwrap();
        let inner = Point::new(0.25, 0.375).unwrap();
        for k in 0..=20 {
            let cp = c.point_at(c.length() * (k as f64 / 20.0)).unwrap();
            let d = [cp.position.x - inner.x, cp.position.y - inner.y];
            assert!(d[0] * cp.normal[0] + d[1] * cp.normal[1] > 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(superellipse_curve(1.0, 1.0, 1.5).is_err());
        assert!(superellipse_curve(0.0, 1.0, 3.0).is_err());
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        assert!(c.point_at(-1e-3).is_err());
        assert!(c.point_at(c.length() * 1.001).is_err());
        assert!(Point::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn endpoint_conditions() {
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        let r = c.check_endpoint_conditions(0.5, 1e-2);
        assert!(r.holds && r.constant.is_finite());
        let circle = superellipse_curve(1.0, 1.0, 2.0).unwrap();
        let r = circle.check_endpoint_conditions(0.5, 1e-2);
        assert!(!r.holds);
        assert!(r.slope_a < -0.4 && r.slope_b < -0.4);
        let wide = superellipse_curve(2.0, 1.0, 4.0).unwrap();
        assert!(wide.check_endpoint_conditions(0.9, 1e-2).holds);
    }

    #[test]
    fn classification() {
        let c = superellipse_curve(1.0, 1.0, 3.0).unwrap();
        assert_eq!(c.classify(&Point::new(0.3, 0.3).unwrap()).unwrap(), Location::Inside);
        assert_eq!(c.classify(&Point::new(1.2, 0.3).unwrap()).unwrap(), Location::Outside);
        let on = c.point_at(0.4 * c.length()).unwrap().position;
        assert_eq!(c.classify(&on).unwrap(), Location::On);
        let near = Point::new(on.x * (1.0 + 1e-8), on.y).unwrap();
        assert!(matches!(c.classify(&near), Err(Error::Ambiguous { .. })));
        let (s, d) = c.project(&on);
        assert!(d < 1e-12);
        assert_relative_eq!(s, 0.4 * c.length(), max_relative = 1e-9);
    }
}
