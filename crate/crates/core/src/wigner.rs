//! Wigner d-matrices `d^S(θ) = exp(−iθ·S_y)` and Jacobi polynomials.
//!
//! Three independent constructions are offered: the matrix exponential of
//! `F = 2S_y`, the explicit factorial sum, and the Jacobi-polynomial form.
//! All use rows `Δm` and columns `Δk` in ascending order `−S..S`, with the
//! convention `d_{Δm,Δk}(θ) = ⟨Δm| exp(−iθ·S_y) |Δk⟩`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{cos, exp, ln_factorial, powi, sin};
use crate::numkernel::{expm_skew_hermitian, ComplexMatrix};
use crate::spin::Spin;
use crate::su2::build_generators;
use crate::unrestricted::bessel_j;

/// Largest spin accepted by [`wigner_d_factorial`].
pub const FACTORIAL_MAX_TWICE_SPIN: u32 = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WignerMethod {
    Exponential,
    FactorialSum,
    Jacobi,
}

/// Real orthogonal `(2S+1)×(2S+1)` rotation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerMatrix {
    pub spin: Spin,
    pub theta: f64,
    pub method: WignerMethod,
    entries: Vec<f64>,
}

impl WignerMatrix {
    fn from_fn(spin: Spin, theta: f64, method: WignerMethod, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let n = spin.dim();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        WignerMatrix { spin, theta, method, entries }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// Entry at row `i`, column `j` (indices, not offsets).
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim() + j]
    }

    /// Entry `d_{Δm,Δk}` addressed by mode offsets.
    pub fn entry(&self, dm: f64, dk: f64) -> Option<f64> {
        Some(self.get(self.spin.index_of(dm)?, self.spin.index_of(dk)?))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| Complex64::new(self.get(i, j), 0.0))
    }

    /// Matrix product, used to check the one-parameter group property.
    pub fn compose(&self, rhs: &WignerMatrix) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(n, rhs.dim());
        let mut out = alloc::vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    out[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// `max |D·Dᵀ − I|`.
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.get(i, k) * self.get(j, k)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// Largest entrywise difference to another matrix of the same spin.
    pub fn max_deviation(&self, other: &WignerMatrix) -> f64 {
        assert_eq!(self.spin, other.spin);
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// Deviation from `d(π)_{Δm,Δk} = (−1)^{S+Δm}·δ_{Δm,−Δk}`.
    pub fn half_turn_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                // S + Δm = i.
                let want = if i + j + 1 == n {
                    if i % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                } else {
                    0.0
                };
                worst = worst.max((self.get(i, j) - want).abs());
            }
        }
        worst
    }
}

/// `P_n^{(a,b)}(x)` by the degree-ascending three-term recurrence.
pub fn jacobi_poly(n: u32, a: f64, b: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    if n == 1 {
        return p1;
    }
    let (mut prev, mut cur) = (1.0, p1);
    let ab = a + b;
    let a2b2 = a * a - b * b;
    for k in 2..=n {
        let k = k as f64;
        let two_k_ab = 2.0 * k + ab;
        let denom = 2.0 * k * (k + ab) * (two_k_ab - 2.0);
        if denom == 0.0 {
            // a = b = −1 puts a removable zero in the recurrence.
            return jacobi_series(n, a, b, x);
        }
        let next = ((two_k_ab - 1.0) * (two_k_ab * (two_k_ab - 2.0) * x + a2b2) * cur
            - 2.0 * (k + a - 1.0) * (k + b - 1.0) * two_k_ab * prev)
            / denom;
        prev = cur;
        cur = next;
    }
    cur
}

fn binomial_real(r: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (r - i as f64) / (i as f64 + 1.0))
}

fn jacobi_series(n: u32, a: f64, b: f64, x: f64) -> f64 {
    let nf = n as f64;
    let lo = 0.5 * (x - 1.0);
    let hi = 0.5 * (x + 1.0);
    (0..=n)
        .map(|k| {
            binomial_real(nf + a, k) * binomial_real(nf + b, n - k) * powi(lo, (n - k) as i32) * powi(hi, k as i32)
        })
        .sum()
}

/// `d^S(θ)` as `exp(−i(θ/2)·F)` with `F = 2S_y`.
pub fn wigner_d_exponential(spin: Spin, theta: f64) -> WignerMatrix {
    let f = build_generators(spin).f;
    let gen = f.scale(Complex64::new(0.0, -0.5 * theta));
    let d = expm_skew_hermitian(&gen).expect("−i·θ·S_y is skew-Hermitian");
    // The imaginary parts are rounding noise (≲ 1e-13); drop them.
    WignerMatrix::from_fn(spin, theta, WignerMethod::Exponential, |i, j| d[(i, j)].re)
}

/// `d^S(θ)` from the explicit factorial sum, for `S ≤ 25`.
pub fn wigner_d_factorial(spin: Spin, theta: f64) -> Result<WignerMatrix> {
    if spin.twice() > FACTORIAL_MAX_TWICE_SPIN {
        return Err(Error::SpinTooLarge { spin, max: Spin::from_twice(FACTORIAL_MAX_TWICE_SPIN)? });
    }
    let two_j = spin.twice() as i64;
    let (c, s) = (cos(0.5 * theta), sin(0.5 * theta));
    // Offsets as doubled integers: j ± m = (2j ± 2m)/2 are integers.
    Ok(WignerMatrix::from_fn(spin, theta, WignerMethod::FactorialSum, |i, k| {
        let (i, k) = (i as i64, k as i64);
        // j + m' = i, j − m' = 2j − i; likewise for m with k.
        let (jpm1, jmm1) = (i, two_j - i);
        let (jpm, jmm) = (k, two_j - k);
        let diff = i - k; // m' − m
        let prefactor = 0.5
            * (ln_factorial(jpm1 as u32)
                + ln_factorial(jmm1 as u32)
                + ln_factorial(jpm as u32)
                + ln_factorial(jmm as u32));
        let lo = 0.max(-diff);
        let hi = jpm.min(jmm1);
        let mut sum = 0.0;
        for n in lo..=hi {
            let ln_den = ln_factorial((jpm - n) as u32)
                + ln_factorial(n as u32)
                + ln_factorial((diff + n) as u32)
                + ln_factorial((jmm1 - n) as u32);
            let sign = if (diff + n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let cos_pow = (two_j - diff - 2 * n) as i32;
            let sin_pow = (diff + 2 * n) as i32;
            sum += sign * exp(prefactor - ln_den) * powi(c, cos_pow) * powi(s, sin_pow);
        }
        sum
    }))
}

/// `d^S(θ)` from the Jacobi-polynomial form
/// `ξ·√(s!(s+μ+ν)!/((s+μ)!(s+ν)!))·sin^μ(θ/2)·cos^ν(θ/2)·P_s^{(μ,ν)}(cos θ)`
/// with `μ = |Δm−Δk|`, `ν = |Δm+Δk|`, `s = S − (μ+ν)/2`.
///
/// The sign `ξ_{Δm,Δk}` is `1` when `Δk ≥ Δm` and `(−1)^{Δm−Δk}` when
/// `Δm > Δk`; this is the rule that reproduces `exp(−iθ·S_y)` entry by entry
/// (checked against [`wigner_d_exponential`] in the tests). The formula is a
/// polynomial identity in `sin(θ/2)`, `cos(θ/2)` and holds for every real θ.
pub fn wigner_d_jacobi(spin: Spin, theta: f64) -> WignerMatrix {
    let two_j = spin.twice() as i64;
    let (c, s) = (cos(0.5 * theta), sin(0.5 * theta));
    let x = cos(theta);
    WignerMatrix::from_fn(spin, theta, WignerMethod::Jacobi, |i, k| {
        let (i, k) = (i as i64, k as i64);
        // Doubled offsets 2Δm = 2i − 2j, 2Δk = 2k − 2j.
        let mu = (i - k).unsigned_abs() as u32;
        let nu = (i + k - two_j).unsigned_abs() as u32;
        let deg = ((two_j - (mu + nu) as i64) / 2) as u32;
        let ln_norm =
            0.5 * (ln_factorial(deg) + ln_factorial(deg + mu + nu) - ln_factorial(deg + mu) - ln_factorial(deg + nu));
        let xi = if i > k && (i - k) % 2 == 1 { -1.0 } else { 1.0 };
        xi * exp(ln_norm) * powi(s, mu as i32) * powi(c, nu as i32) * jacobi_poly(deg, mu as f64, nu as f64, x)
    })
}

/// Returns `(n^{−α}·P_n^{(α,β)}(cos(z/n)), (z/2)^{−α}·J_α(z))`, the two sides
/// of the large-degree Jacobi → Bessel limit.
pub fn jacobi_bessel_limit_check(alpha: u32, beta_param: f64, z: f64, n: u32) -> (f64, f64) {
    let nf = n as f64;
    let lhs = jacobi_poly(n, alpha as f64, beta_param, cos(z / nf)) / powi(nf, alpha as i32);
    let rhs = bessel_j(alpha as i64, z) / powi(0.5 * z, alpha as i32);
    (lhs, rhs)
}
