//! Gaussian filter and the relative photon counting rate as a function of
//! filter tuning.

use alloc::vec::Vec;

use crate::dynamics::central_probabilities;
use crate::error::{invalid, Error, Result};
use crate::math::exp;
use crate::su2::ModulatorParams;
use crate::unrestricted::{default_cutoff, modulation_index, unrestricted_occupations};

/// Gaussian filter transmission, `1/e` at `center ± half_width`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterSpec {
    pub half_width: f64,
    pub center: f64,
}

impl FilterSpec {
    pub fn new(half_width: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid!("filter half-width must be positive and finite, got {half_width}"));
        }
        Ok(Self { half_width, center: 0.0 })
    }

    pub fn centered_at(self, center: f64) -> Self {
        Self { center, ..self }
    }
}

pub fn filter_kernel(f: &FilterSpec, omega: f64) -> f64 {
    let x = (omega - f.center) / f.half_width;
    exp(-x * x)
}

/// Kernel-weighted sum of sideband weights, the filter tuned to
/// `offset` relative to the carrier and sideband `Δm` sitting at `Ω·Δm`.
fn filtered_sum(f: &FilterSpec, modulation: f64, offset: f64, weights: impl Iterator<Item = (f64, f64)>) -> f64 {
    let tuned = f.centered_at(offset);
    let sum: f64 = weights.map(|(dm, w)| w * filter_kernel(&tuned, modulation * dm)).sum();
    sum.clamp(0.0, 1.0)
}

/// `p_rel = Σ_Δm |R_{Δm,0}|²·K(Ω·Δm, offset)`.
pub fn relative_count_rate(p: &ModulatorParams, f: &FilterSpec, offset: f64) -> Result<f64> {
    let probs = central_probabilities(p)?;
    let spin = p.spin();
    Ok(filtered_sum(f, p.omega(), offset, probs.iter().enumerate().map(|(i, &w)| (spin.offset(i), w))))
}

/// Restricted sideband weights `(Δm, |R_{Δm,0}|²)`.
pub fn restricted_sidebands(p: &ModulatorParams) -> Result<Vec<(i64, f64)>> {
    let spin = p.spin();
    Ok(central_probabilities(p)?.into_iter().enumerate().map(|(i, w)| (spin.offset(i) as i64, w)).collect())
}

/// Unrestricted sideband weights `(n, J_n(μ)²)` for `|n| ≤ M` with the
/// default cutoff.
pub fn unrestricted_sidebands(p: &ModulatorParams) -> Result<Vec<(i64, f64)>> {
    let idx = modulation_index(p.detuning(), p.gamma(), p.t());
    let cutoff = default_cutoff(idx.mu);
    let weights = unrestricted_occupations(&idx, cutoff)?;
    let m = cutoff as i64;
    Ok(weights.into_iter().enumerate().map(|(i, w)| (i as i64 - m, w)).collect())
}

#[derive(Clone, Debug)]
pub struct SpectralScan {
    /// Filter tuning relative to the carrier, absolute angular units.
    pub frequencies: Vec<f64>,
    pub restricted: Vec<f64>,
    pub unrestricted: Vec<f64>,
    pub params: ModulatorParams,
}

pub fn spectral_scan(p: &ModulatorParams, f: &FilterSpec, grid: &[f64]) -> Result<SpectralScan> {
    if grid.is_empty() {
        return Err(invalid!("scan grid is empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(invalid!("scan grid contains non-finite values"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid!("scan grid must be strictly increasing"));
    }
    let spin = p.spin();
    if spin.central_index().is_none() {
        return Err(Error::NoCentralMode(spin));
    }
    let restricted = restricted_sidebands(p)?;
    let unrestricted = unrestricted_sidebands(p)?;
    let curve = |weights: &[(i64, f64)]| -> Vec<f64> {
        grid.iter().map(|&x| filtered_sum(f, p.omega(), x, weights.iter().map(|&(dm, w)| (dm as f64, w)))).collect()
    };
    Ok(SpectralScan {
        frequencies: grid.to_vec(),
        restricted: curve(&restricted),
        unrestricted: curve(&unrestricted),
        params: *p,
    })
}
