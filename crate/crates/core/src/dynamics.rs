//! Single-photon propagator of the restricted model and the observables
//! built from it.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::math::{asin, cabs, cis, sin, sqrt, PI};
use crate::numkernel::ComplexMatrix;
use crate::su2::{mixing_angle, ModulatorParams};
use crate::wigner::wigner_d_exponential;

/// Rotating-frame propagator `R(T)`: output mode amplitudes as a linear map
/// of input mode amplitudes, rows and columns ordered `Δm = −S..S`.
///
/// `R_{Δm,Δp} = Σ_Δk d_{Δm,Δk}(2β)·d_{Δp,Δk}(2β)·exp(−iΔk·2ΓT)`.
/// The lab-frame phase `exp(−i((m̃+Δm)Ω̃ + ωm̃)T)` of output mode `Δm` is
/// not included; see [`PropagatorMatrix::lab_phase`].
#[derive(Clone, Debug)]
pub struct PropagatorMatrix {
    pub params: ModulatorParams,
    matrix: ComplexMatrix,
}

impl PropagatorMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `R_{Δm,Δp}` addressed by mode offsets.
    pub fn amplitude(&self, dm: f64, dp: f64) -> Option<Complex64> {
        let spin = self.params.spin();
        Some(self.matrix[(spin.index_of(dm)?, spin.index_of(dp)?)])
    }

    /// Phase prefactor of output mode `index` that turns `R` into the
    /// lab-frame transformation of the mode operators.
    pub fn lab_phase(&self, index: usize) -> Complex64 {
        let p = &self.params;
        let dm = p.spin().offset(index);
        cis(-((p.m_tilde() + dm) * p.omega_mw() + p.detuning() * p.m_tilde()) * p.t())
    }
}

pub fn propagator(p: &ModulatorParams) -> Result<PropagatorMatrix> {
    let mix = mixing_angle(p)?;
    let spin = p.spin();
    let n = spin.dim();
    let d = wigner_d_exponential(spin, mix.two_beta);
    let phases: Vec<Complex64> = (0..n).map(|k| cis(-spin.offset(k) * 2.0 * mix.rabi * p.t())).collect();
    let mut matrix = ComplexMatrix::zeros(n, n);
    for m in 0..n {
        for q in m..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, phase) in phases.iter().enumerate() {
                acc += phase * (d.get(m, k) * d.get(q, k));
            }
            matrix[(m, q)] = acc;
            matrix[(q, m)] = acc;
        }
    }
    Ok(PropagatorMatrix { params: *p, matrix })
}

/// Angle `2β̃` for which `|R_{Δm,Δp}| = |d_{Δm,Δp}(2β̃)|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormAngles {
    /// In `[0, π]`.
    pub two_beta_tilde: f64,
    /// `sin(2β)·sin(ΓT)`.
    pub sin_product: f64,
}

/// `sin(2β̃) = 2·s·√(1 − s²)` with `s = sin(2β)·sin(ΓT)`; the branch above
/// `π/2` is taken when `s² > 1/2`.
pub fn closed_form_angles(p: &ModulatorParams) -> ClosedFormAngles {
    let sin_product = match mixing_angle(p) {
        Ok(mix) => sin(mix.two_beta) * sin(mix.rabi * p.t()),
        Err(_) => 0.0,
    };
    let s = sin_product.abs().min(1.0);
    let principal = asin((2.0 * s * sqrt(1.0 - s * s)).min(1.0));
    let two_beta_tilde = if s * s <= 0.5 { principal } else { PI - principal };
    ClosedFormAngles { two_beta_tilde, sin_product }
}

/// `|R_{Δm,0}|²` for every output mode. Without detuning and coupling the
/// evolution is trivial and the photon stays in the central mode.
pub fn central_probabilities(p: &ModulatorParams) -> Result<Vec<f64>> {
    let spin = p.spin();
    let center = spin.central_index().ok_or(Error::NoCentralMode(spin))?;
    match propagator(p) {
        Ok(r) => Ok((0..spin.dim()).map(|m| r.matrix[(m, center)].norm_sqr()).collect()),
        Err(Error::Degenerate) => Ok((0..spin.dim()).map(|m| if m == center { 1.0 } else { 0.0 }).collect()),
        Err(e) => Err(e),
    }
}

/// Mean photon numbers `n0·|R_{Δm,0}|²` after the interaction, with `n0`
/// photons initially in the central mode.
pub fn mode_occupations(p: &ModulatorParams, n0: f64) -> Result<Vec<f64>> {
    if !(n0.is_finite() && n0 >= 0.0) {
        return Err(invalid!("mean photon number must be non-negative, got {n0}"));
    }
    Ok(central_probabilities(p)?.into_iter().map(|w| n0 * w).collect())
}

/// `Σ_Δm exp(−iΔm·Ω̃T)·R_{Δm,0}(T)`: the output field envelope for a
/// central-mode input, without the global carrier phase `exp(−iω_opt T)`.
pub fn mean_field_envelope(p: &ModulatorParams) -> Result<Complex64> {
    let spin = p.spin();
    let center = spin.central_index().ok_or(Error::NoCentralMode(spin))?;
    let r = match propagator(p) {
        Ok(r) => r,
        Err(Error::Degenerate) => return Ok(Complex64::new(1.0, 0.0)),
        Err(e) => return Err(e),
    };
    Ok((0..spin.dim()).map(|m| cis(-spin.offset(m) * p.omega_mw() * p.t()) * r.matrix[(m, center)]).sum())
}

/// Central-mode return probability `|R_{0,0}|²` for each coupling in the grid.
pub fn revival_scan(base: &ModulatorParams, gammas: &[f64]) -> Result<Vec<(f64, f64)>> {
    let center = base.spin().central_index().ok_or(Error::NoCentralMode(base.spin()))?;
    gammas.iter().map(|&g| Ok((g, central_probabilities(&base.with_gamma(g)?)?[center]))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RevivalPeak {
    pub gamma: f64,
    pub probability: f64,
}

/// Local maxima of [`revival_scan`] over the grid, each refined by a
/// parabola through the grid maximum and its two neighbours.
pub fn revival_peaks(base: &ModulatorParams, gammas: &[f64]) -> Result<Vec<RevivalPeak>> {
    let scan = revival_scan(base, gammas)?;
    let mut peaks = Vec::new();
    for w in scan.windows(3) {
        let [(x0, f0), (x1, f1), (x2, f2)] = [w[0], w[1], w[2]];
        if !(f1 >= f0 && f1 >= f2 && (f1 > f0 || f1 > f2)) {
            continue;
        }
        let num = (x1 - x0) * (x1 - x0) * (f1 - f2) - (x1 - x2) * (x1 - x2) * (f1 - f0);
        let den = (x1 - x0) * (f1 - f2) - (x1 - x2) * (f1 - f0);
        let mut best = RevivalPeak { gamma: x1, probability: f1 };
        if den != 0.0 {
            let vertex = x1 - 0.5 * num / den;
            if vertex > x0 && vertex < x2 {
                let center = base.spin().central_index().ok_or(Error::NoCentralMode(base.spin()))?;
                let value = central_probabilities(&base.with_gamma(vertex)?)?[center];
                if value > f1 {
                    best = RevivalPeak { gamma: vertex, probability: value };
                }
            }
        }
        peaks.push(best);
    }
    Ok(peaks)
}

/// Largest `||R_{Δm,Δp}| − |d_{Δm,Δp}(2β̃)||` over all entries.
pub fn closed_form_magnitude_error(p: &ModulatorParams) -> Result<f64> {
    let r = propagator(p)?;
    let angles = closed_form_angles(p);
    let d = wigner_d_exponential(p.spin(), angles.two_beta_tilde);
    let n = p.spin().dim();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((cabs(r.matrix[(i, j)]) - d.get(i, j).abs()).abs());
        }
    }
    Ok(worst)
}
