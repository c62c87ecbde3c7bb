//! Appell's function `F₂(a; b₁, b₂; c₁, c₂; x, y)` on the quadrant
//! `x ≤ 0, y ≤ 0`.
//!
//! Two routes are used:
//!
//! 1. Burchnall–Chaundy product expansion combined with Pfaff's
//!    transformation,
//!    `F₂ = (1−x)^{-b₁}(1−y)^{-b₂} Σ_i (a)_i(b₁)_i(b₂)_i / ((c₁)_i(c₂)_i i!) (XY)^i
//!          F(c₁−a, b₁+i; c₁+i; X) F(c₂−a, b₂+i; c₂+i; Y)`
//!    with `X = x/(x−1)`, `Y = y/(y−1)` in `[0, 1)`.  The outer series
//!    converges like `(XY)^i`.
//! 2. When `XY` is close to one (large negative arguments, which is where
//!    the fundamental solution is singular) the outer series stalls, and
//!    the Euler integral in one variable is used instead:
//!    `F₂ = B(b₂, c₂−b₂)^{-1} ∫₀¹ v^{b₂−1}(1−v)^{c₂−b₂−1}(1−vy)^{-a}
//!          F(a, b₁; c₁; x/(1−vy)) dv`, valid for `c₂ > b₂ > 0`.

use super::gamma::{gamma_ratio, is_nonpositive_integer, pochhammer};
use super::gauss::{Hyp2f1, UnitEval, MAX_TERMS};
use crate::error::{domain, Error, Result};
use crate::quadrature;

/// Largest `XY` for which the product expansion is used.
const PRODUCT_MAX_XY: f64 = 0.5;
const OUTER_TOL: f64 = 1e-14;
const SERIES_TAIL: f64 = 1e-14;
const INTEGRAL_REL_TOL: f64 = 1e-13;
const INTEGRAL_MAX_INTERVALS: usize = 4000;

/// Parameters and arguments of `F₂(a; b₁, b₂; c₁, c₂; x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F2Args {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub x: f64,
    pub y: f64,
}

impl F2Args {
    pub fn new(a: f64, b1: f64, b2: f64, c1: f64, c2: f64, x: f64, y: f64) -> Self {
        F2Args { a, b1, b2, c1, c2, x, y }
    }

    /// Same parameters at a different argument pair.
    pub fn at(self, x: f64, y: f64) -> Self {
        F2Args { x, y, ..self }
    }

    fn swapped(self) -> Self {
        F2Args {
            a: self.a,
            b1: self.b2,
            b2: self.b1,
            c1: self.c2,
            c2: self.c1,
            x: self.y,
            y: self.x,
        }
    }

    fn check_lower(&self, func: &'static str) -> Result<()> {
        if is_nonpositive_integer(self.c1) || is_nonpositive_integer(self.c2) {
            return Err(domain(func, "c1 or c2 is a nonpositive integer"));
        }
        let all = [self.a, self.b1, self.b2, self.c1, self.c2, self.x, self.y];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(domain(func, "non-finite input"));
        }
        Ok(())
    }
}

/// Direct double series, valid for `|x| + |y| < 1`.
pub fn appell_f2_series(args: F2Args) -> Result<f64> {
    args.check_lower("appell_f2_series")?;
    let F2Args { a, b1, b2, c1, c2, x, y } = args;
    if !(x.abs() + y.abs() < 1.0) {
        return Err(domain(
            "appell_f2_series",
            format!("|x| + |y| = {} outside the convergence domain", x.abs() + y.abs()),
        ));
    }
    // log-magnitudes and signs of u_m = (b1)_m x^m / ((c1)_m m!), likewise v_n
    let mut lu = vec![0.0f64];
    let mut su = vec![1.0f64];
    let mut lv = vec![0.0f64];
    let mut sv = vec![1.0f64];
    let mut lp = 0.0f64; // ln|(a)_N|
    let mut sp = 1.0f64;
    let push = |l: &mut Vec<f64>, s: &mut Vec<f64>, b: f64, c: f64, arg: f64| {
        let m = (l.len() - 1) as f64;
        let r = (b + m) * arg / ((c + m) * (m + 1.0));
        let last = *l.last().unwrap();
        l.push(last + r.abs().ln());
        let sl = *s.last().unwrap();
        s.push(sl * r.signum());
    };
    let mut sum = 0.0;
    let mut quiet = 0;
    for n_tot in 0..MAX_TERMS {
        if n_tot > 0 {
            push(&mut lu, &mut su, b1, c1, x);
            push(&mut lv, &mut sv, b2, c2, y);
            let r = a + (n_tot - 1) as f64;
            lp += r.abs().ln();
            sp *= r.signum();
        }
        let mut block = 0.0;
        let mut block_abs = 0.0;
        for m in 0..=n_tot {
            let n = n_tot - m;
            let t = sp * su[m] * sv[n] * (lp + lu[m] + lv[n]).exp();
            block += t;
            block_abs += t.abs();
        }
        sum += block;
        if block_abs <= SERIES_TAIL * 1e-2 * sum.abs().max(1e-300) || block_abs == 0.0 {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence {
        func: "appell_f2_series",
        terms: MAX_TERMS,
    })
}

/// `F₂` on the quadrant `x ≤ 0, y ≤ 0` by analytic continuation.
pub fn appell_f2(args: F2Args) -> Result<f64> {
    args.check_lower("appell_f2")?;
    if args.x > 0.0 || args.y > 0.0 {
        return Err(domain(
            "appell_f2",
            format!("({}, {}) outside the quadrant x <= 0, y <= 0", args.x, args.y),
        ));
    }
    if args.a == 0.0 || (args.x == 0.0 && args.y == 0.0) {
        return Ok(1.0);
    }
    let xt = -args.x / (1.0 - args.x);
    let yt = -args.y / (1.0 - args.y);
    if xt * yt <= PRODUCT_MAX_XY {
        return product_expansion(args);
    }
    if args.c2 > args.b2 && args.b2 > 0.0 {
        euler_integral(args)
    } else if args.c1 > args.b1 && args.b1 > 0.0 {
        euler_integral(args.swapped())
    } else {
        product_expansion(args)
    }
}

/// Burchnall–Chaundy route; usable on the whole quadrant but slow when
/// `XY → 1`.
pub fn appell_f2_product(args: F2Args) -> Result<f64> {
    args.check_lower("appell_f2_product")?;
    if args.x > 0.0 || args.y > 0.0 {
        return Err(domain("appell_f2_product", "arguments outside the quadrant"));
    }
    product_expansion(args)
}

/// Euler-integral route; requires `c₂ > b₂ > 0`.
pub fn appell_f2_integral(args: F2Args) -> Result<f64> {
    args.check_lower("appell_f2_integral")?;
    if args.x > 0.0 || args.y > 0.0 {
        return Err(domain("appell_f2_integral", "arguments outside the quadrant"));
    }
    if !(args.c2 > args.b2 && args.b2 > 0.0) {
        return Err(domain("appell_f2_integral", "requires c2 > b2 > 0"));
    }
    euler_integral(args)
}

fn product_expansion(args: F2Args) -> Result<f64> {
    let F2Args { a, b1, b2, c1, c2, x, y } = args;
    let wx = 1.0 / (1.0 - x);
    let wy = 1.0 / (1.0 - y);
    let xt = -x * wx;
    let yt = -y * wy;
    let pref = wx.powf(b1) * wy.powf(b2);
    let ratio = xt * yt;
    let mut coef = 1.0;
    let mut sum = 0.0;
    let mut quiet = 0;
    for i in 0..MAX_TERMS {
        let fi = i as f64;
        let fx = if xt == 0.0 {
            1.0
        } else {
            UnitEval::new(c1 - a, b1 + fi, c1 + fi).eval(xt, wx)?
        };
        let fy = if yt == 0.0 {
            1.0
        } else {
            UnitEval::new(c2 - a, b2 + fi, c2 + fi).eval(yt, wy)?
        };
        let term = coef * fx * fy;
        sum += term;
        if term.abs() < OUTER_TOL * sum.abs() || term == 0.0 {
            quiet += 1;
            if quiet == 3 {
                return Ok(pref * sum);
            }
        } else {
            quiet = 0;
        }
        coef *= (a + fi) * (b1 + fi) * (b2 + fi) / ((c1 + fi) * (c2 + fi) * (fi + 1.0)) * ratio;
    }
    Err(Error::Convergence {
        func: "appell_f2 product expansion",
        terms: MAX_TERMS,
    })
}

fn euler_integral(args: F2Args) -> Result<f64> {
    let F2Args { a, b1, b2, c1, c2, x, y } = args;
    let sigma = c2 - b2;
    let norm = gamma_ratio(&[c2], &[b2, sigma])
        .ok_or_else(|| domain("appell_f2", "gamma pole in Euler normalisation"))?;
    let inner = Hyp2f1::new(a, b1, c1)?;
    let g = |v: f64| -> Result<f64> {
        let d = 1.0 - v * y;
        Ok(d.powf(-a) * inner.eval(x / d)?)
    };
    // v = u^{1/b2}/2 on [0, 1/2] and 1 − v = u^{1/σ}/2 on [1/2, 1] absorb
    // the endpoint factors of the Beta weight.
    let left_scale = 0.5f64.powf(b2) / b2;
    let left = quadrature::integrate(
        |u| {
            let v = 0.5 * u.powf(1.0 / b2);
            Ok(left_scale * (1.0 - v).powf(sigma - 1.0) * g(v)?)
        },
        0.0,
        1.0,
        0.0,
        INTEGRAL_REL_TOL,
        INTEGRAL_MAX_INTERVALS,
    )?;
    let right_scale = 0.5f64.powf(sigma) / sigma;
    let right = quadrature::integrate(
        |u| {
            let v = 1.0 - 0.5 * u.powf(1.0 / sigma);
            Ok(right_scale * v.powf(b2 - 1.0) * g(v)?)
        },
        0.0,
        1.0,
        0.0,
        INTEGRAL_REL_TOL,
        INTEGRAL_MAX_INTERVALS,
    )?;
    Ok(norm * (left.value + right.value))
}

/// Parameter shift behind `∂^{m+n}F₂/∂x^m∂y^n = coefficient · F₂(shifted)`.
pub fn f2_param_shift(args: F2Args, m: u32, n: u32) -> (f64, F2Args) {
    let coefficient = pochhammer(args.a, m + n) * pochhammer(args.b1, m) * pochhammer(args.b2, n)
        / (pochhammer(args.c1, m) * pochhammer(args.c2, n));
    let (mf, nf) = (m as f64, n as f64);
    let shifted = F2Args {
        a: args.a + mf + nf,
        b1: args.b1 + mf,
        b2: args.b2 + nf,
        c1: args.c1 + mf,
        c2: args.c2 + nf,
        ..args
    };
    (coefficient, shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss::gauss_2f1;
    use approx::assert_relative_eq;

    fn q4_args(alpha: f64, beta: f64, x: f64, y: f64) -> F2Args {
        F2Args::new(
            2.0 - alpha - beta,
            1.0 - alpha,
            1.0 - beta,
            2.0 - 2.0 * alpha,
            2.0 - 2.0 * beta,
            x,
            y,
        )
    }

    #[test]
    fn trivial_values() {
        let args = q4_args(0.25, 0.25, 0.0, 0.0);
        assert_eq!(appell_f2(args).unwrap(), 1.0);
        assert_eq!(appell_f2_series(args).unwrap(), 1.0);
        let zero_a = F2Args::new(0.0, 0.3, 0.4, 1.2, 1.5, -3.0, -7.0);
        assert_eq!(appell_f2(zero_a).unwrap(), 1.0);
        assert_relative_eq!(appell_f2_series(zero_a.at(-0.3, -0.2)).unwrap(), 1.0);
    }

    #[test]
    fn reduces_to_gauss_on_the_axes() {
        let args = F2Args::new(1.3, 0.4, 0.7, 1.9, 2.2, -0.5, 0.0);
        let expect = 1.5f64.powf(-0.4) * gauss_2f1(1.9 - 1.3, 0.4, 1.9, 1.0 / 3.0).unwrap();
        assert_relative_eq!(appell_f2(args).unwrap(), expect, max_relative = 1e-14);
        assert_relative_eq!(
            appell_f2_series(args.at(-0.4, 0.0)).unwrap(),
            gauss_2f1(1.3, 0.4, 1.9, -0.4).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn continuation_matches_series() {
        let args = q4_args(0.25, 0.25, -0.2, -0.3);
        let s = appell_f2_series(args).unwrap();
        assert_relative_eq!(appell_f2(args).unwrap(), s, max_relative = 1e-12);
        assert_relative_eq!(appell_f2_integral(args).unwrap(), s, max_relative = 1e-12);
    }

    #[test]
    fn routes_agree_away_from_origin() {
        for &(x, y) in &[(-3.0, -2.0), (-20.0, -0.5), (-1.0, -40.0), (-5.0, -5.0)] {
            let args = q4_args(0.1, 0.4, x, y);
            let p = appell_f2_product(args).unwrap();
            let i = appell_f2_integral(args).unwrap();
            assert_relative_eq!(p, i, max_relative = 1e-11);
        }
    }

    #[test]
    fn rejects_outside_quadrant() {
        let args = q4_args(0.25, 0.25, 0.1, -0.2);
        assert!(appell_f2(args).is_err());
        assert!(appell_f2_series(q4_args(0.25, 0.25, -0.6, -0.5)).is_err());
    }

    #[test]
    fn shift_coefficients() {
        let args = F2Args::new(1.5, 0.75, 0.75, 1.5, 1.5, -0.2, -0.3);
        let (c, s) = f2_param_shift(args, 0, 0);
        assert_eq!(c, 1.0);
        assert_eq!(s, args);
        let (c, s) = f2_param_shift(args, 1, 0);
        assert_relative_eq!(c, 1.5 * 0.75 / 1.5);
        assert_eq!((s.a, s.b1, s.b2, s.c1, s.c2), (2.5, 1.75, 0.75, 2.5, 1.5));
    }
}
