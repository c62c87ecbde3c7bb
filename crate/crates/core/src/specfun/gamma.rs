//! Gamma-family helpers: log-gamma, reciprocal gamma, digamma and the
//! Pochhammer symbol.
//!
//! `ln_gamma` is built from three pieces: the Taylor series of
//! `ln Γ(1 + ε)` in terms of `ζ(k) − 1` for `|ε| ≤ 1/2`, the recurrence
//! `Γ(x + 1) = x Γ(x)` to move arguments into that window, and the Stirling
//! series for large arguments.  Arguments near the zeros of `ln Γ` (x = 1, 2)
//! never go through a subtraction of large numbers, which keeps the relative
//! error small there as well.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{domain, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const STIRLING_FROM: f64 = 15.0;
const ZETA_TERMS: usize = 64;

/// `ζ(k) − 1` for `k = 0..ZETA_TERMS`; entries 0 and 1 are unused.
fn zeta_minus_one() -> &'static [f64; ZETA_TERMS] {
    static TABLE: OnceLock<[f64; ZETA_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; ZETA_TERMS];
        for (k, slot) in table.iter_mut().enumerate().skip(2) {
            *slot = zeta_minus_one_em(k as f64);
        }
        table
    })
}

/// Euler–Maclaurin evaluation of `Σ_{n≥2} n^{-s}` for `s ≥ 2`.
fn zeta_minus_one_em(s: f64) -> f64 {
    const N: f64 = 30.0;
    let mut head = 0.0;
    let mut n = N - 1.0;
    while n >= 2.0 {
        head += n.powf(-s);
        n -= 1.0;
    }
    let f = N.powf(-s);
    let tail = N * f / (s - 1.0) + 0.5 * f + s / 12.0 * f / N
        - s * (s + 1.0) * (s + 2.0) / 720.0 * f / N.powi(3)
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 30240.0 * f / N.powi(5);
    head + tail
}

/// `ln Γ(1 + ε)` for `|ε| ≤ 1/2`.
fn ln_gamma_1p(eps: f64) -> f64 {
    let zeta = zeta_minus_one();
    let mut sum = 0.0;
    let mut power = -eps;
    for (k, z) in zeta.iter().enumerate().skip(2) {
        power *= -eps;
        let term = z * power / k as f64;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    -eps.ln_1p() + eps * (1.0 - EULER_GAMMA) + sum
}

fn stirling(x: f64) -> f64 {
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in C {
        series += c * p;
        p *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("ln_gamma", format!("argument {x} is not positive")));
    }
    Ok(ln_gamma_pos(x))
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        ln_gamma_1p(x) - x.ln()
    } else if x <= 1.5 {
        ln_gamma_1p(x - 1.0)
    } else if x <= 2.5 {
        (x - 1.0).ln() + ln_gamma_1p(x - 2.0)
    } else if x < STIRLING_FROM {
        // walk down into (1.5, 2.5]; every factor exceeds one
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        prod.ln() + (y - 1.0).ln() + ln_gamma_1p(y - 2.0)
    } else {
        stirling(x)
    }
}

/// `sin(π x)` with exact zeros at the integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        -(PI * (2.0 - r)).sin()
    }
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `(ln|Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub(crate) fn ln_gamma_signed(x: f64) -> Option<(f64, f64)> {
    if x > 0.0 {
        Some((ln_gamma_pos(x), 1.0))
    } else if is_nonpositive_integer(x) {
        None
    } else {
        let s = sin_pi(x);
        Some((PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x), s.signum()))
    }
}

/// `1/Γ(x)`, zero at the poles of `Γ`.
pub fn rgamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Some((l, s)) => s * (-l).exp(),
        None => 0.0,
    }
}

/// `Γ(x)`; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    match ln_gamma_signed(x) {
        Some((l, s)) => s * l.exp(),
        None => f64::INFINITY,
    }
}

/// `Π Γ(num_i) / Π Γ(den_j)` evaluated in log space.  A pole among the
/// denominators makes the ratio zero; a pole among the numerators yields
/// `None`.
pub(crate) fn gamma_ratio(num: &[f64], den: &[f64]) -> Option<f64> {
    let mut log = 0.0;
    let mut sign = 1.0;
    for &d in den {
        match ln_gamma_signed(d) {
            Some((l, s)) => {
                log -= l;
                sign *= s;
            }
            None => return Some(0.0),
        }
    }
    for &n in num {
        let (l, s) = ln_gamma_signed(n)?;
        log += l;
        sign *= s;
    }
    Some(sign * log.exp())
}

/// Digamma function `ψ(x) = Γ'(x)/Γ(x)`; NaN at the poles.
pub fn digamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        // reflection: ψ(1 − x) − ψ(x) = π cot(π x)
        let s = sin_pi(x);
        let c = sin_pi(x + 0.5);
        return digamma(1.0 - x) - PI * c / s;
    }
    let mut acc = 0.0;
    let mut y = x;
    while y < 10.0 {
        acc -= 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    acc + y.ln() - 0.5 / y - series
}

/// Rising factorial `(a)_n = a (a + 1) ⋯ (a + n − 1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(0.7, 0), 1.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
        assert_eq!(pochhammer(-2.0, 5), 0.0);
    }

    #[test]
    fn ln_gamma_integers_and_half() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-16);
        assert_relative_eq!(ln_gamma(5.0).unwrap(), 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(
            ln_gamma(0.5).unwrap(),
            0.5 * PI.ln(),
            max_relative = 1e-14
        );
        let mut fact = 1.0f64;
        for n in 1..40u32 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            assert_relative_eq!(ln_gamma(n as f64).unwrap(), fact.ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn ln_gamma_piece_boundaries_are_continuous() {
        for &x in &[0.5, 1.5, 2.5, STIRLING_FROM] {
            let (xl, xh) = (x * (1.0 - 1e-12), x * (1.0 + 1e-12));
            let lo = ln_gamma(xl).unwrap();
            let hi = ln_gamma(xh).unwrap();
            let jump = hi - lo - digamma(x) * (xh - xl);
            assert!(jump.abs() < 1e-13, "jump at {x}: {lo} vs {hi}");
        }
    }

    #[test]
    fn reflection_and_reciprocal() {
        assert_relative_eq!(gamma(-0.5), -2.0 * PI.sqrt(), max_relative = 1e-14);
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert_relative_eq!(rgamma(4.0), 1.0 / 6.0, max_relative = 1e-14);
        assert_relative_eq!(
            gamma_ratio(&[0.3], &[1.3]).unwrap(),
            1.0 / 0.3,
            max_relative = 1e-14
        );
        assert_eq!(gamma_ratio(&[1.0], &[-2.0]), Some(0.0));
    }

    #[test]
    fn digamma_values() {
        assert_relative_eq!(digamma(1.0), -EULER_GAMMA, max_relative = 1e-14);
        assert_relative_eq!(
            digamma(0.5),
            -EULER_GAMMA - 2.0 * 2f64.ln(),
            max_relative = 1e-14
        );
        // ψ(x + 1) = ψ(x) + 1/x
        for &x in &[-2.3, 0.1, 0.7, 3.3, 12.5] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-12);
        }
    }
}
