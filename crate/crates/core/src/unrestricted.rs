//! The unrestricted (infinitely many equally coupled modes) modulator:
//! integer-order Bessel functions, the modulation index and sideband
//! weights, plus the large-`S` comparison against the restricted model.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dynamics::propagator;
use crate::error::{invalid, Error, Result};
use crate::math::{cabs, ceil, cis, cos, exp, ln_factorial, sin, sqrt, PI};
use crate::su2::ModulatorParams;

/// Series is used below this argument, Miller's recurrence above.
const SERIES_MAX_X: f64 = 2.0;
const RESCALE_ABOVE: f64 = 1e100;
/// Tolerance of the runtime normalization check on truncated sideband sums.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Extra sidebands kept beyond `⌈|μ|⌉` by [`default_cutoff`].
pub const CUTOFF_MARGIN: usize = 30;
/// Minimum sidebands beyond `⌈|μ|⌉` accepted by [`unrestricted_occupations`].
pub const MIN_CUTOFF_MARGIN: usize = 20;

/// Bessel function of the first kind `J_n(x)` for integer order.
pub fn bessel_j(n: i64, x: f64) -> f64 {
    let order = n.unsigned_abs();
    // J_{−n}(x) = (−1)^n J_n(x) and J_n(−x) = (−1)^n J_n(x).
    let mut sign = 1.0;
    if n < 0 && order % 2 == 1 {
        sign = -sign;
    }
    if x < 0.0 && order % 2 == 1 {
        sign = -sign;
    }
    sign * bessel_j_nonneg(order, x.abs())
}

fn bessel_j_nonneg(n: u64, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < SERIES_MAX_X {
        return bessel_series(n, x);
    }
    let mut captured = (0.0, 0);
    let Some((norm, rescales)) = miller(x, miller_start(n, x), |k, v, count| {
        if k == n {
            captured = (v, count);
        }
    }) else {
        return 0.0;
    };
    unscale(captured, rescales) * norm
}

/// `J_0(x), …, J_nmax(x)`.
pub fn bessel_j_sequence(nmax: u64, x: f64) -> Vec<f64> {
    let ax = x.abs();
    if ax < SERIES_MAX_X {
        return (0..=nmax).map(|k| bessel_j(k as i64, x)).collect();
    }
    let mut raw = alloc::vec![(0.0, 0u32); nmax as usize + 1];
    let Some((norm, rescales)) = miller(ax, miller_start(nmax, ax), |k, v, count| {
        if k <= nmax {
            raw[k as usize] = (v, count);
        }
    }) else {
        return alloc::vec![0.0; nmax as usize + 1];
    };
    raw.iter()
        .enumerate()
        .map(|(k, &c)| {
            let v = unscale(c, rescales) * norm;
            if x < 0.0 && k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Applies the rescalings that happened after a value was captured.
fn unscale((v, at): (f64, u32), total: u32) -> f64 {
    (at..total).fold(v, |acc, _| acc / RESCALE_ABOVE)
}

fn miller_start(n: u64, x: f64) -> u64 {
    let top = (n as f64).max(ceil(x));
    let start = top + 20.0 + ceil(sqrt(40.0 * top));
    let start = start as u64;
    start + start % 2
}

/// Backward recurrence `J_{k−1} = (2k/x)·J_k − J_{k+1}` from `start` down to
/// 0, reporting each unnormalized value with the number of rescalings done
/// so far. Returns the factor that normalizes the final scale through
/// `J_0² + 2·Σ J_k² = 1` (signed by `J_0 + 2·Σ J_{2k} = 1`) and the total
/// number of rescalings.
fn miller(x: f64, start: u64, mut visit: impl FnMut(u64, f64, u32)) -> Option<(f64, u32)> {
    let mut above = 0.0; // J_{k+1}
    let mut cur = 1.0; // J_k at k = start
    let mut sum_sq = 0.0;
    let mut sum_even = 0.0;
    let mut rescales = 0;
    let mut k = start;
    loop {
        visit(k, cur, rescales);
        if k == 0 {
            sum_sq += cur * cur;
            sum_even += cur;
            break;
        }
        sum_sq += 2.0 * cur * cur;
        if k.is_multiple_of(2) {
            sum_even += 2.0 * cur;
        }
        let below = (2.0 * k as f64 / x) * cur - above;
        above = cur;
        cur = below;
        k -= 1;
        if cur.abs() > RESCALE_ABOVE {
            cur /= RESCALE_ABOVE;
            above /= RESCALE_ABOVE;
            sum_sq /= RESCALE_ABOVE * RESCALE_ABOVE;
            sum_even /= RESCALE_ABOVE;
            rescales += 1;
        }
    }
    if sum_sq == 0.0 || !sum_sq.is_finite() {
        return None;
    }
    let norm = 1.0 / sqrt(sum_sq);
    Some((if sum_even < 0.0 { -norm } else { norm }, rescales))
}

fn bessel_series(n: u64, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = if n <= 150 {
        (1..=n).fold(1.0, |acc, k| acc * half / k as f64)
    } else {
        exp(n as f64 * libm::log(half) - ln_factorial(n as u32))
    };
    if term == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..200u64 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Depth of the classical phase modulation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModulationIndex {
    pub mu: f64,
    pub omega: f64,
    pub gamma: f64,
    pub t: f64,
}

/// `μ = (4γ/ω)·sin(ωT/2)`, continued to `μ = 2γT` at `ω = 0`.
pub fn modulation_index(omega: f64, gamma: f64, t: f64) -> ModulationIndex {
    let mu = if (omega * t).abs() < 1e-8 { 2.0 * gamma * t } else { 4.0 * gamma / omega * sin(0.5 * omega * t) };
    ModulationIndex { mu, omega, gamma, t }
}

/// Sideband cutoff `⌈|μ|⌉ + 30`.
pub fn default_cutoff(mu: f64) -> usize {
    ceil(mu.abs()) as usize + CUTOFF_MARGIN
}

/// Sideband occupations `J_n(μ)²` for `n = −M..=M`.
pub fn unrestricted_occupations(mu: &ModulationIndex, cutoff: usize) -> Result<Vec<f64>> {
    let required = ceil(mu.mu.abs()) as usize + MIN_CUTOFF_MARGIN;
    if cutoff < required {
        return Err(Error::CutoffTooSmall { cutoff, mu: mu.mu, required });
    }
    let seq = bessel_j_sequence(cutoff as u64, mu.mu);
    let mut weights = Vec::with_capacity(2 * cutoff + 1);
    weights.extend(seq.iter().rev().map(|v| v * v));
    weights.extend(seq.iter().skip(1).map(|v| v * v));
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::TailBound(total));
    }
    Ok(weights)
}

/// Largest deviation between the discrete Fourier coefficients of
/// `t ↦ exp(−iμ·cos t)` and the expansion coefficients `(−i)^n·J_n(μ)`,
/// over `|n| ≤ μ + 10`.
pub fn classical_signal_check(mu: f64, samples: usize) -> Result<f64> {
    if samples < 256 || !samples.is_power_of_two() {
        return Err(invalid!("sample count must be a power of two ≥ 256, got {samples}"));
    }
    let signal: Vec<Complex64> = (0..samples).map(|j| cis(-mu * cos(2.0 * PI * j as f64 / samples as f64))).collect();
    let nmax = (mu.abs() + 10.0) as i64;
    let mut worst = 0.0_f64;
    for n in -nmax..=nmax {
        // Coefficient of e^{−int}.
        let coeff: Complex64 = signal
            .iter()
            .enumerate()
            .map(|(j, &f)| f * cis(2.0 * PI * (n * j as i64).rem_euclid(samples as i64) as f64 / samples as f64))
            .sum::<Complex64>()
            / samples as f64;
        let expected = minus_i_pow(n) * bessel_j(n, mu);
        worst = worst.max(cabs(coeff - expected));
    }
    Ok(worst)
}

fn minus_i_pow(n: i64) -> Complex64 {
    match n.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// One row of [`asymptotic_compare`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticRow {
    pub dm: i64,
    /// `|R_{Δm,0}(T)|` of the restricted model.
    pub restricted: f64,
    /// `|J_{Δm}(μ)|` of the unrestricted model.
    pub bessel: f64,
}

impl AsymptoticRow {
    pub fn difference(&self) -> f64 {
        (self.restricted - self.bessel).abs()
    }
}

/// Pairs restricted amplitudes `|R_{Δm,0}|` at large `S` with the Bessel
/// amplitudes they approach. Requires `ω ≠ 0` and `|Δm| ≤ S/10`.
pub fn asymptotic_compare(p: &ModulatorParams, offsets: &[i64]) -> Result<Vec<AsymptoticRow>> {
    let w = p.detuning();
    if w == 0.0 {
        return Err(invalid!("the large-S limit formula requires a nonzero detuning"));
    }
    let spin = p.spin();
    let center = spin.central_index().ok_or(Error::NoCentralMode(spin))?;
    let limit = spin.value() / 10.0;
    if let Some(bad) = offsets.iter().find(|&&dm| (dm as f64).abs() > limit) {
        return Err(invalid!("offset {bad} exceeds S/10 = {limit}"));
    }
    let r = propagator(p)?;
    let mu = modulation_index(w, p.gamma(), p.t()).mu;
    Ok(offsets
        .iter()
        .map(|&dm| {
            let row = (center as i64 + dm) as usize;
            AsymptoticRow { dm, restricted: cabs(r.matrix()[(row, center)]), bessel: bessel_j(dm, mu).abs() }
        })
        .collect())
}
