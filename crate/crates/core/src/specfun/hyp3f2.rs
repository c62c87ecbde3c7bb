//! Balanced (zero-excess) `₃F₂(a₁, a₂, a₃; b₁, b₂; z)` near `z = 1`.
//!
//! With `w = 1 − z` and `b₁ + b₂ = a₁ + a₂ + a₃` the function has the local
//! form
//!
//! `₃F₂ = P · Σ_N (β_N − α_N ln w) w^N`,  `P = Γ(b₁)Γ(b₂) / (Γ(a₁)Γ(a₂)Γ(a₃))`.
//!
//! The coefficients follow from the differential equation written in `w`:
//! `(−w + 2w² − w³) f''' + (−2 + (K+2)w − Kw²) f'' + (G − Hw) f' − e₃ f = 0`
//! where `e₁, e₂, e₃` are the elementary symmetric functions of the upper
//! parameters, `K = 3 + e₁`, `H = 1 + e₁ + e₂` and `G = H − b₁b₂`.
//! `α_N` solves the homogeneous recurrence from `α₀ = 1`,
//! `α₁ = e₂ − b₁b₂`; `β_N` solves the same recurrence driven by the terms
//! that `ln w` leaves behind.  The two free constants `β₀, β₁` are Nørlund's
//! sums, whose slowly converging tails are extrapolated.

use nalgebra::{Matrix4, Vector4};

use super::gamma::{digamma, gamma_ratio, is_nonpositive_integer};
use super::gauss::MAX_TERMS;
use crate::error::{domain, Error, Result};

const BALANCE_TOL: f64 = 1e-12;
/// Below this `z` the plain power series is used; the expansion in `w`
/// converges like `w^N` and would need too many terms as `w → 1`.
const EXPANSION_FROM: f64 = 0.1;
const TERM_TOL: f64 = 1e-17;
const TAIL_BASE: usize = 4096;

/// `₃F₂(a₁, a₂, a₃; b₁, b₂; z)` for balanced parameters and `0 < z < 1`,
/// through its logarithmic expansion about `z = 1`.
pub fn log_singular_3f2(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    const FUNC: &str = "log_singular_3f2";
    let all = [a1, a2, a3, b1, b2, z];
    if all.iter().any(|v| !v.is_finite()) {
        return Err(domain(FUNC, "non-finite input"));
    }
    let excess = b1 + b2 - a1 - a2 - a3;
    if excess.abs() > BALANCE_TOL {
        return Err(domain(FUNC, format!("parameter excess {excess} is not zero")));
    }
    if !(a1 > 0.0 && a2 > 0.0 && a3 > 0.0) {
        return Err(domain(FUNC, "upper parameters must be positive"));
    }
    if is_nonpositive_integer(b1) || is_nonpositive_integer(b2) {
        return Err(domain(FUNC, "lower parameter is a nonpositive integer"));
    }
    if !(z > 0.0 && z < 1.0) {
        return Err(domain(FUNC, format!("z = {z} outside (0, 1)")));
    }
    if z < EXPANSION_FROM {
        return series_3f2(a1, a2, a3, b1, b2, z);
    }
    // put the largest upper parameter last: the Nørlund tails decay fastest
    let mut a = [a1, a2, a3];
    a.sort_by(|x, y| x.total_cmp(y));
    LogExpansion::new(a, [b1, b2])?.eval(1.0 - z)
}

/// Plain power series of `₃F₂` for `|z| < 1`.
pub fn series_3f2(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut quiet = 0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a1 + nf) * (a2 + nf) * (a3 + nf) / ((b1 + nf) * (b2 + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.abs() <= TERM_TOL * sum.abs() {
            quiet += 1;
            if quiet == 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence {
        func: "series_3f2",
        terms: MAX_TERMS,
    })
}

struct LogExpansion {
    prefactor: f64,
    e3: f64,
    k: f64,
    h: f64,
    g: f64,
    beta0: f64,
    beta1: f64,
    alpha1: f64,
}

impl LogExpansion {
    fn new(a: [f64; 3], b: [f64; 2]) -> Result<Self> {
        let [a1, a2, a3] = a;
        let [b1, b2] = b;
        let e1 = a1 + a2 + a3;
        let e2 = a1 * a2 + a1 * a3 + a2 * a3;
        let e3 = a1 * a2 * a3;
        let h = 1.0 + e1 + e2;
        let prefactor = gamma_ratio(&[b1, b2], &[a1, a2, a3])
            .ok_or_else(|| domain("log_singular_3f2", "gamma pole in prefactor"))?;
        let (beta0, beta1) = norlund_constants(a1, a2, a3, b1, b2);
        Ok(LogExpansion {
            prefactor,
            e3,
            k: 3.0 + e1,
            h,
            g: h - b1 * b2,
            beta0,
            beta1,
            alpha1: e2 - b1 * b2,
        })
    }

    /// Left side of the recurrence at `w^k` with the `γ_{k+2}` term moved
    /// out: returns `(coefficient of γ_{k+2}, rest)`.
    fn step(&self, k: f64, g1: f64, g0: f64) -> (f64, f64) {
        let lead = -(k + 2.0) * (k + 2.0) * (k + 1.0);
        let mid = (k + 1.0) * (2.0 * k * (k - 1.0) + (self.k + 2.0) * k + self.g);
        let low = k * (k - 1.0) * (k - 2.0) + self.k * k * (k - 1.0) + self.h * k + self.e3;
        (lead, mid * g1 - low * g0)
    }

    fn eval(&self, w: f64) -> Result<f64> {
        let lw = w.ln();
        let mut alpha: Vec<f64> = vec![1.0, self.alpha1];
        let mut beta: Vec<f64> = vec![self.beta0, self.beta1];
        let u = |alpha: &[f64], j: isize| -> f64 {
            let idx = j + 3;
            if idx < 0 {
                return 0.0;
            }
            let jf = j as f64;
            alpha[idx as usize] * (3.0 * (jf + 3.0) * (jf + 2.0) - 3.0 * (jf + 3.0) + 2.0)
        };
        let v = |alpha: &[f64], j: isize| -> f64 {
            let idx = j + 2;
            if idx < 0 {
                return 0.0;
            }
            alpha[idx as usize] * (2.0 * j as f64 + 3.0)
        };
        let wt = |alpha: &[f64], j: isize| -> f64 {
            let idx = j + 1;
            if idx < 0 {
                return 0.0;
            }
            alpha[idx as usize]
        };
        let (kk, gg, hh) = (self.k, self.g, self.h);
        let mut sum = beta[0] - alpha[0] * lw + (beta[1] - alpha[1] * lw) * w;
        let mut power = w;
        let mut quiet = 0;
        for n in 0..MAX_TERMS {
            let k = n as isize;
            let kf = n as f64;
            // homogeneous step for α_{k+2}
            let (lead, rest) = self.step(kf, alpha[n + 1], alpha[n]);
            alpha.push(-rest / lead);
            // α_{k+3} is needed by the forcing of β_{k+2}
            let (lead1, rest1) = self.step(kf + 1.0, alpha[n + 2], alpha[n + 1]);
            alpha.push(-rest1 / lead1);
            let rho = -u(&alpha, k - 1) + 2.0 * u(&alpha, k - 2) - u(&alpha, k - 3) - 2.0 * v(&alpha, k)
                + (kk + 2.0) * v(&alpha, k - 1)
                - kk * v(&alpha, k - 2)
                + gg * wt(&alpha, k)
                - hh * wt(&alpha, k - 1);
            alpha.pop();
            let (lead, rest) = self.step(kf, beta[n + 1], beta[n]);
            beta.push((rho - rest) / lead);
            power *= w;
            let term = (beta[n + 2] - alpha[n + 2] * lw) * power;
            sum += term;
            if term.abs() <= TERM_TOL * sum.abs() {
                quiet += 1;
                if quiet == 3 {
                    return Ok(self.prefactor * sum);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Convergence {
            func: "log_singular_3f2",
            terms: MAX_TERMS,
        })
    }
}

/// Constant and linear coefficients of the regular part, `(β₀, β₁)`.
fn norlund_constants(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> (f64, f64) {
    let psi1 = digamma(1.0);
    let psi2 = digamma(2.0);
    let (pa1, pa2) = (digamma(a1 + 1.0), digamma(a2 + 1.0));
    let e1 = (b1 - a3) * (b2 - a3);

    // T₀ = Σ_{m≥1} e_m (m−1)!/((a₁)_m(a₂)_m), T₁ = −a₁a₂ Σ_{m≥2} e_m (m−2)!/((a₁)_m(a₂)_m)
    // with e_m = (b₁−a₃)_m (b₂−a₃)_m / m!
    let mut checkpoints = [TAIL_BASE, 2 * TAIL_BASE, 4 * TAIL_BASE, 8 * TAIL_BASE].into_iter();
    let mut next = checkpoints.next();
    let mut s0 = Vec::with_capacity(4);
    let mut s1 = Vec::with_capacity(4);
    let (c1, c2) = (b1 - a3, b2 - a3);
    // terms at m = 1 and m = 2, then advanced by their ratios
    let mut term0 = c1 * c2 / (a1 * a2);
    let mut term1 = c1 * c2 * (c1 + 1.0) * (c2 + 1.0) / (2.0 * a1 * a2 * (a1 + 1.0) * (a2 + 1.0));
    let (mut t0, mut t1) = (0.0, 0.0);
    let mut m = 1usize;
    while let Some(stop) = next {
        let mf = m as f64;
        t0 += term0;
        if m >= 2 {
            t1 += term1;
        }
        let common = (c1 + mf) * (c2 + mf) / ((mf + 1.0) * (a1 + mf) * (a2 + mf));
        term0 *= common * mf;
        if m >= 2 {
            term1 *= common * (mf - 1.0);
        }
        if m == stop {
            s0.push(t0);
            s1.push(t1);
            next = checkpoints.next();
        }
        m += 1;
    }
    let t0 = extrapolate_tail(&s0, a3);
    let t1 = -a1 * a2 * extrapolate_tail(&s1, a3 + 1.0);

    let d0 = 2.0 * psi1 - digamma(a1) - digamma(a2) + t0;
    let d1 = a1 * a2 * (2.0 * psi2 - pa1 - pa2) - e1 * (psi1 + psi2 - pa1 - pa2) + t1;
    (d0, d1)
}

/// Limit of partial sums `S(K) ≈ S∞ + K^{-p}(C₀ + C₁/K + C₂/K²)` sampled at
/// `K = M, 2M, 4M, 8M`.
fn extrapolate_tail(partial: &[f64], p: f64) -> f64 {
    let mut mat = Matrix4::zeros();
    let mut rhs = Vector4::zeros();
    for (i, &s) in partial.iter().enumerate() {
        let kf = (TAIL_BASE << i) as f64;
        let base = kf.powf(-p);
        mat[(i, 0)] = 1.0;
        mat[(i, 1)] = base;
        mat[(i, 2)] = base / kf;
        mat[(i, 3)] = base / (kf * kf);
        rhs[i] = s;
    }
    match mat.lu().solve(&rhs) {
        Some(sol) => sol[0],
        None => *partial.last().unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn q4_params(alpha: f64, beta: f64) -> (f64, f64, f64, f64, f64) {
        (2.0 - alpha - beta, 1.0 - alpha, 1.0 - beta, 2.0 - 2.0 * alpha, 2.0 - 2.0 * beta)
    }

    #[test]
    fn matches_series_below_half() {
        let (a1, a2, a3, b1, b2) = q4_params(0.25, 0.25);
        for &z in &[0.1, 0.2, 0.3, 0.45, 0.5] {
            let s = series_3f2(a1, a2, a3, b1, b2, z).unwrap();
            let l = log_singular_3f2(a1, a2, a3, b1, b2, z).unwrap();
            assert_relative_eq!(l, s, max_relative = 1e-10);
        }
    }

    #[test]
    fn small_argument_tends_to_one() {
        let (a1, a2, a3, b1, b2) = q4_params(0.1, 0.3);
        let v = log_singular_3f2(a1, a2, a3, b1, b2, 1e-9).unwrap();
        assert!((v - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_unbalanced_parameters() {
        assert!(log_singular_3f2(1.0, 1.0, 1.0, 1.5, 1.6, 0.5).is_err());
        assert!(log_singular_3f2(1.0, 1.0, 1.0, 1.5, 1.5, 1.0).is_err());
        assert!(log_singular_3f2(1.0, 1.0, 1.0, 1.5, 1.5, 0.0).is_err());
    }
}
