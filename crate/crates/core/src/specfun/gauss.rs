//! Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z ≤ 1`.
//!
//! Evaluation strategy:
//! - `0 ≤ z ≤ 1/2`: the defining power series;
//! - `1/2 < z < 1`: the connection formula around `z = 1` (series in
//!   `1 − z`), with the logarithmic form when `c − a − b` is an integer;
//! - `z < 0`: Pfaff's transformation
//!   `F(a, b; c; z) = (1 − z)^{-b} F(c − a, b; c; z/(z − 1))`, which maps the
//!   negative half-line into `[0, 1)`;
//! - `z = 1`: Gauss's summation theorem.

use super::gamma::{digamma, gamma_ratio, is_nonpositive_integer, rgamma};
use crate::error::{domain, Error, Result};

/// Switch point between the direct series and the expansion around `z = 1`.
pub const Z_SWITCH: f64 = 0.5;
/// Terms are dropped once three in a row fall below this fraction of the sum.
const SERIES_TOL: f64 = 1e-16;
pub(crate) const MAX_TERMS: usize = 10_000;
/// `c − a − b` closer than this to an integer is treated as that integer.
const INTEGER_SNAP: f64 = 1e-12;
/// Connection coefficients lose roughly `log10(1/δ)` digits when `c − a − b`
/// is a distance `δ` from an integer; below this the plain series is used.
const NEAR_INTEGER: f64 = 1e-5;

/// Plain power series `Σ (a)_k (b)_k / ((c)_k k!) z^k`.
pub(crate) fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        if term.abs() <= SERIES_TOL * sum.abs() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence {
        func: "gauss_2f1 series",
        terms: MAX_TERMS,
    })
}

#[derive(Debug, Clone)]
enum UnitMethod {
    /// `a` or `b` is a nonpositive integer: finite polynomial.
    Terminating,
    /// `F = c1 F(a, b; a+b−c+1; w) + c2 w^s F(c−a, c−b; s+1; w)`.
    Connection { s: f64, c1: f64, c2: f64 },
    /// `c − a − b = ±m`; after an optional Euler transformation the
    /// function is `w^{power} F(p, q; p + q + m; z)`.
    Integer {
        p: f64,
        q: f64,
        m: u32,
        power: f64,
        finite_pref: f64,
        log_pref: f64,
    },
    /// `c − a − b` within `NEAR_INTEGER` of an integer.
    SeriesOnly,
}

/// Evaluator of `F(a, b; c; z)` on `0 ≤ z < 1` with parameter-dependent
/// constants computed once.
#[derive(Debug, Clone)]
pub(crate) struct UnitEval {
    a: f64,
    b: f64,
    c: f64,
    method: UnitMethod,
}

impl UnitEval {
    pub(crate) fn new(a: f64, b: f64, c: f64) -> Self {
        let method = if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
            UnitMethod::Terminating
        } else {
            let s = c - a - b;
            let m = s.round();
            if (s - m).abs() <= INTEGER_SNAP {
                let (p, q, power) = if m >= 0.0 {
                    (a, b, 0.0)
                } else {
                    (c - a, c - b, m)
                };
                let mu = m.abs() as u32;
                let mf = mu as f64;
                let finite_pref = if mu > 0 {
                    gamma_ratio(&[mf, p + q + mf], &[p + mf, q + mf]).unwrap_or(f64::NAN)
                } else {
                    0.0
                };
                let log_pref = gamma_ratio(&[p + q + mf], &[]).unwrap_or(f64::NAN)
                    * rgamma(p)
                    * rgamma(q);
                UnitMethod::Integer {
                    p,
                    q,
                    m: mu,
                    power,
                    finite_pref,
                    log_pref,
                }
            } else if (s - m).abs() < NEAR_INTEGER {
                UnitMethod::SeriesOnly
            } else {
                let c1 = gamma_ratio(&[c, s], &[c - a, c - b]).unwrap_or(f64::NAN);
                let c2 = gamma_ratio(&[c, -s], &[a, b]).unwrap_or(f64::NAN);
                UnitMethod::Connection { s, c1, c2 }
            }
        };
        UnitEval { a, b, c, method }
    }

    /// `F(a, b; c; z)` for `0 ≤ z < 1`, given `w = 1 − z` computed by the
    /// caller without cancellation.
    pub(crate) fn eval(&self, z: f64, w: f64) -> Result<f64> {
        let (a, b, c) = (self.a, self.b, self.c);
        if z <= Z_SWITCH {
            return series_2f1(a, b, c, z);
        }
        match &self.method {
            UnitMethod::Terminating | UnitMethod::SeriesOnly => series_2f1(a, b, c, z),
            UnitMethod::Connection { s, c1, c2 } => {
                let first = if *c1 == 0.0 {
                    0.0
                } else {
                    c1 * series_2f1(a, b, a + b - c + 1.0, w)?
                };
                let second = if *c2 == 0.0 {
                    0.0
                } else {
                    c2 * w.powf(*s) * series_2f1(c - a, c - b, s + 1.0, w)?
                };
                Ok(first + second)
            }
            UnitMethod::Integer {
                p,
                q,
                m,
                power,
                finite_pref,
                log_pref,
            } => {
                let val = integer_case(*p, *q, *m, w, *finite_pref, *log_pref)?;
                Ok(if *power == 0.0 { val } else { w.powf(*power) * val })
            }
        }
    }
}

/// `F(p, q; p + q + m; 1 − w)` for integer `m ≥ 0` (logarithmic case).
fn integer_case(p: f64, q: f64, m: u32, w: f64, finite_pref: f64, log_pref: f64) -> Result<f64> {
    let mf = m as f64;
    let mut finite = 0.0;
    if m > 0 {
        let mut t = 1.0;
        for n in 0..m {
            finite += t;
            let nf = n as f64;
            t *= (p + nf) * (q + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
        }
        finite *= finite_pref;
    }
    if log_pref == 0.0 {
        return Ok(finite);
    }
    let ln_w = w.ln();
    let mut coef = 1.0 / (1..=m).fold(1.0, |acc, k| acc * k as f64);
    let mut psi_n1 = digamma(1.0);
    let mut psi_nm1 = digamma(mf + 1.0);
    let mut psi_p = digamma(p + mf);
    let mut psi_q = digamma(q + mf);
    let mut power = 1.0;
    let mut sum = 0.0;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let term = coef * power * (ln_w - psi_n1 - psi_nm1 + psi_p + psi_q);
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs() || term == 0.0 {
            small += 1;
            if small == 3 {
                let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
                return Ok(finite - sign * w.powi(m as i32) * log_pref * sum);
            }
        } else {
            small = 0;
        }
        coef *= (p + mf + nf) * (q + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0));
        power *= w;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_p += 1.0 / (p + mf + nf);
        psi_q += 1.0 / (q + mf + nf);
    }
    Err(Error::Convergence {
        func: "gauss_2f1 logarithmic case",
        terms: MAX_TERMS,
    })
}

/// Reusable evaluator of `F(a, b; c; ·)` on `(−∞, 1]`.
#[derive(Debug, Clone)]
pub struct Hyp2f1 {
    a: f64,
    b: f64,
    c: f64,
    terminating: bool,
    direct: UnitEval,
    pfaff: UnitEval,
}

impl Hyp2f1 {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if is_nonpositive_integer(c) || !c.is_finite() {
            return Err(domain("gauss_2f1", format!("c = {c} is a nonpositive integer")));
        }
        if !(a.is_finite() && b.is_finite()) {
            return Err(domain("gauss_2f1", "non-finite parameter"));
        }
        Ok(Hyp2f1 {
            a,
            b,
            c,
            terminating: is_nonpositive_integer(a) || is_nonpositive_integer(b),
            direct: UnitEval::new(a, b, c),
            pfaff: UnitEval::new(c - a, b, c),
        })
    }

    pub fn eval(&self, z: f64) -> Result<f64> {
        let (a, b, c) = (self.a, self.b, self.c);
        if z.is_nan() || z > 1.0 {
            return Err(domain("gauss_2f1", format!("z = {z} outside (-inf, 1]")));
        }
        if z == 0.0 || a == 0.0 || b == 0.0 {
            return Ok(1.0);
        }
        if self.terminating {
            return series_2f1(a, b, c, z);
        }
        if z == 1.0 {
            return gauss_2f1_at_one(a, b, c);
        }
        if z < 0.0 {
            let w = 1.0 / (1.0 - z);
            let zt = -z * w;
            return Ok(w.powf(b) * self.pfaff.eval(zt, w)?);
        }
        self.direct.eval(z, 1.0 - z)
    }
}

/// Gauss hypergeometric function `F(a, b; c; z)` for `z ≤ 1`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    Hyp2f1::new(a, b, c)?.eval(z)
}

/// `F(a, b; c; 1) = Γ(c) Γ(c − a − b) / (Γ(c − a) Γ(c − b))`.
pub fn gauss_2f1_at_one(a: f64, b: f64, c: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(domain("gauss_2f1_at_one", format!("c = {c} is a nonpositive integer")));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series_2f1(a, b, c, 1.0);
    }
    let s = c - a - b;
    if !(s > 0.0) {
        return Err(Error::Divergence {
            func: "gauss_2f1_at_one",
            msg: format!("c - a - b = {s} is not positive"),
        });
    }
    gamma_ratio(&[c, s], &[c - a, c - b])
        .ok_or_else(|| domain("gauss_2f1_at_one", "gamma pole in numerator"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;
    use approx::assert_relative_eq;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(gauss_2f1(0.3, 1.7, 2.2, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn log_closed_form() {
        // F(1,1;2;z) = −ln(1 − z)/z
        for &z in &[0.5f64, 0.9, 0.999, -0.5, -30.0] {
            let expect = -(-z).ln_1p() / z;
            assert_relative_eq!(gauss_2f1(1.0, 1.0, 2.0, z).unwrap(), expect, max_relative = 1e-13);
        }
        assert_relative_eq!(
            gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap(),
            2.0 * 2f64.ln(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn elementary_closed_forms() {
        // F(a, b; b; z) = (1 − z)^{-a}
        for &z in &[0.3, 0.75, 0.99, -4.0] {
            assert_relative_eq!(
                gauss_2f1(0.37, 1.3, 1.3, z).unwrap(),
                (1.0 - z).powf(-0.37),
                max_relative = 1e-12
            );
        }
        // F(1/2, 1; 3/2; −x²) = atan(x)/x
        for &x in &[0.5f64, 2.0, 10.0] {
            assert_relative_eq!(
                gauss_2f1(0.5, 1.0, 1.5, -x * x).unwrap(),
                x.atan() / x,
                max_relative = 1e-12
            );
        }
        // integer case with m = 2: F(1, 1; 4; z) checked against its series at z = 0.45
        let direct = series_2f1(1.0, 1.0, 4.0, 0.7).unwrap();
        assert_relative_eq!(gauss_2f1(1.0, 1.0, 4.0, 0.7).unwrap(), direct, max_relative = 1e-12);
        // negative integer excess via Euler: F(1.5, 1.5; 1; z)
        let direct = series_2f1(1.5, 1.5, 1.0, 0.8).unwrap();
        assert_relative_eq!(gauss_2f1(1.5, 1.5, 1.0, 0.8).unwrap(), direct, max_relative = 1e-11);
    }

    #[test]
    fn gauss_summation_examples() {
        let expect = gamma(1.0) * gamma(0.5) / (gamma(0.7) * gamma(0.8));
        assert_relative_eq!(gauss_2f1_at_one(0.3, 0.2, 1.0).unwrap(), expect, max_relative = 1e-13);
        assert_relative_eq!(gauss_2f1(0.3, 0.2, 1.0, 1.0).unwrap(), expect, max_relative = 1e-13);
        assert_eq!(gauss_2f1_at_one(0.0, 0.4, 1.3).unwrap(), 1.0);
        assert_relative_eq!(gauss_2f1_at_one(-1.0, 0.4, 1.3).unwrap(), 1.0 - 0.4 / 1.3, max_relative = 1e-15);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(gauss_2f1(0.3, 0.2, 1.0, 1.5), Err(Error::Domain { .. })));
        assert!(matches!(gauss_2f1_at_one(0.6, 0.6, 1.0), Err(Error::Divergence { .. })));
        assert!(matches!(gauss_2f1(0.6, 0.6, 1.0, 1.0), Err(Error::Divergence { .. })));
        assert!(matches!(gauss_2f1(0.6, 0.6, -2.0, 0.3), Err(Error::Domain { .. })));
    }

    #[test]
    fn continuity_across_switch() {
        let lo = gauss_2f1(0.7, 1.9, 2.4, Z_SWITCH).unwrap();
        let hi = gauss_2f1(0.7, 1.9, 2.4, Z_SWITCH + 1e-13).unwrap();
        assert_relative_eq!(lo, hi, max_relative = 1e-12);
    }
}
