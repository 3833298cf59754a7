//! Restricted-model parameters, the `su(2)` generators of the mode ladder,
//! and the quasi-energy operator of the rotating frame.

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::math::{atan2, hypot, sqrt};
use crate::numkernel::ComplexMatrix;
use crate::spin::Spin;

/// Physical parameters of the restricted modulator.
///
/// Frequencies are angular frequencies in arbitrary but consistent units;
/// `t` is in the reciprocal unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModulatorParams {
    spin: Spin,
    omega: f64,
    omega_mw: f64,
    gamma: f64,
    t: f64,
    m_tilde: f64,
    phi: f64,
}

impl ModulatorParams {
    /// `omega` is the optical mode spacing Ω, `omega_mw` the microwave
    /// frequency Ω̃, `gamma` the effective coupling and `t` the interaction
    /// time.
    pub fn new(spin: Spin, omega: f64, omega_mw: f64, gamma: f64, t: f64) -> Result<Self> {
        let p = ModulatorParams { spin, omega, omega_mw, gamma, t, m_tilde: 0.0, phi: 0.0 };
        p.validate()?;
        Ok(p)
    }

    /// Same as [`ModulatorParams::new`] with the microwave frequency given
    /// through the detuning `ω = Ω − Ω̃`.
    pub fn with_detuning(spin: Spin, omega: f64, detuning: f64, gamma: f64, t: f64) -> Result<Self> {
        Self::new(spin, omega, omega - detuning, gamma, t)
    }

    fn validate(&self) -> Result<()> {
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(invalid!("mode spacing must be positive and finite, got {}", self.omega));
        }
        if !self.omega_mw.is_finite() || !self.detuning().is_finite() {
            return Err(invalid!("microwave frequency must be finite, got {}", self.omega_mw));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return Err(invalid!("coupling must be non-negative and finite, got {}", self.gamma));
        }
        if !(self.t.is_finite() && self.t >= 0.0) {
            return Err(invalid!("interaction time must be non-negative and finite, got {}", self.t));
        }
        if !self.m_tilde.is_finite() {
            return Err(invalid!("central mode index must be finite"));
        }
        if self.phi != 0.0 {
            return Err(invalid!("only microwave phase 0 is supported, got {}", self.phi));
        }
        Ok(())
    }

    pub fn with_gamma(mut self, gamma: f64) -> Result<Self> {
        self.gamma = gamma;
        self.validate()?;
        Ok(self)
    }

    pub fn with_time(mut self, t: f64) -> Result<Self> {
        self.t = t;
        self.validate()?;
        Ok(self)
    }

    pub fn with_spin(mut self, spin: Spin) -> Self {
        self.spin = spin;
        self
    }

    /// Keeps Ω̃ fixed.
    pub fn with_detuning_value(mut self, detuning: f64) -> Result<Self> {
        self.omega_mw = self.omega - detuning;
        self.validate()?;
        Ok(self)
    }

    /// Central mode number `m̃`; only shifts absolute frequencies and global phases.
    pub fn with_m_tilde(mut self, m_tilde: f64) -> Result<Self> {
        self.m_tilde = m_tilde;
        self.validate()?;
        Ok(self)
    }

    /// Microwave phase; anything but 0 is rejected.
    pub fn with_phi(mut self, phi: f64) -> Result<Self> {
        self.phi = phi;
        self.validate()?;
        Ok(self)
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega_mw(&self) -> f64 {
        self.omega_mw
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn m_tilde(&self) -> f64 {
        self.m_tilde
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `ω = Ω − Ω̃`.
    pub fn detuning(&self) -> f64 {
        self.omega - self.omega_mw
    }

    /// Carrier frequency `ω_opt = m̃·Ω`.
    pub fn carrier(&self) -> f64 {
        self.m_tilde * self.omega
    }

    /// `2γ/(2S+1)`: the coupling normalized by `f_max = (2S+1)/2`.
    pub fn effective_coupling(&self) -> f64 {
        2.0 * self.gamma / self.spin.dim() as f64
    }
}

/// Ladder coupling `f(Δm) = √((S+1+Δm)(S−Δm))` between modes `Δm` and `Δm+1`.
pub fn coupling_weight(spin: Spin, dm: f64) -> Result<f64> {
    let s = spin.value();
    match spin.index_of(dm) {
        Some(i) if i + 1 < spin.dim() => Ok(sqrt((s + 1.0 + dm) * (s - dm))),
        _ => Err(invalid!("mode offset {dm} is outside the ladder -{s}..={}", s - 1.0)),
    }
}

/// The `su(2)` generators in the single-photon (spin-`S`) representation,
/// rows and columns ordered `Δm = −S..S`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub spin: Spin,
    /// `diag(−S, …, S)`.
    pub a0: ComplexMatrix,
    /// Raises `Δm → Δm+1` with weight `f(Δm)`.
    pub a_plus: ComplexMatrix,
    pub a_minus: ComplexMatrix,
    /// `F = i(A⁻ − A⁺) = 2S_y`, the generator of the diagonalizing rotation.
    pub f: ComplexMatrix,
}

impl GeneratorSet {
    /// `K² = A₀² + (A⁺A⁻ + A⁻A⁺)/2`.
    pub fn casimir(&self) -> ComplexMatrix {
        let sym = &self.a_plus.matmul(&self.a_minus) + &self.a_minus.matmul(&self.a_plus);
        &self.a0.matmul(&self.a0) + &sym.scale(Complex64::new(0.5, 0.0))
    }

    /// Largest entrywise residual of the three `su(2)` commutation relations.
    pub fn commutator_residual(&self) -> f64 {
        let r1 = &self.a0.commutator(&self.a_plus) - &self.a_plus;
        let r2 = &self.a0.commutator(&self.a_minus) + &self.a_minus;
        let r3 = &self.a_plus.commutator(&self.a_minus) - &self.a0.scale(Complex64::new(2.0, 0.0));
        r1.max_abs().max(r2.max_abs()).max(r3.max_abs())
    }

    /// `max |K² − S(S+1)·I|`.
    pub fn casimir_residual(&self) -> f64 {
        let s = self.spin.value();
        let n = self.spin.dim();
        let target = ComplexMatrix::identity(n).scale(Complex64::new(s * (s + 1.0), 0.0));
        (&self.casimir() - &target).max_abs()
    }
}

pub fn build_generators(spin: Spin) -> GeneratorSet {
    let n = spin.dim();
    let zero = Complex64::new(0.0, 0.0);
    let weight = |j: usize| coupling_weight(spin, spin.offset(j)).expect("index on ladder");

    let a0 = ComplexMatrix::from_fn(n, n, |i, j| if i == j { Complex64::new(spin.offset(i), 0.0) } else { zero });
    let a_plus = ComplexMatrix::from_fn(n, n, |i, j| if i == j + 1 { Complex64::new(weight(j), 0.0) } else { zero });
    let a_minus = a_plus.adjoint();
    // F[Δm][Δm+1] = i·f(Δm), F[Δk+1][Δk] = −i·f(Δk).
    let f = ComplexMatrix::from_fn(n, n, |i, j| {
        if j == i + 1 {
            Complex64::new(0.0, weight(i))
        } else if i == j + 1 {
            Complex64::new(0.0, -weight(j))
        } else {
            zero
        }
    });
    GeneratorSet { spin, a0, a_plus, a_minus, f }
}

/// Rabi-type frequency `Γ` and mixing angle `2β` that diagonalize the
/// quasi-energy operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingAngle {
    /// `Γ = √((ω/2)² + g²)`.
    pub rabi: f64,
    /// `2β ∈ [0, π]` with `sin 2β = g/Γ`, `cos 2β = (ω/2)/Γ`.
    pub two_beta: f64,
    /// `g = 2γ/(2S+1)`.
    pub effective_coupling: f64,
}

pub fn mixing_angle(p: &ModulatorParams) -> Result<MixingAngle> {
    let half_detuning = 0.5 * p.detuning();
    let g = p.effective_coupling();
    if half_detuning == 0.0 && g == 0.0 {
        return Err(Error::Degenerate);
    }
    Ok(MixingAngle { rabi: hypot(half_detuning, g), two_beta: atan2(g, half_detuning), effective_coupling: g })
}

/// Single-photon quasi-energy matrix `ω·m̃·I + ω·A₀ + g·(A⁺ + A⁻)`.
pub fn quasi_energy_matrix(p: &ModulatorParams) -> ComplexMatrix {
    let spin = p.spin();
    let n = spin.dim();
    let w = p.detuning();
    let g = p.effective_coupling();
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::new(w * (p.m_tilde() + spin.offset(i)), 0.0)
        } else if i == j + 1 {
            Complex64::new(g * coupling_weight(spin, spin.offset(j)).unwrap(), 0.0)
        } else if j == i + 1 {
            Complex64::new(g * coupling_weight(spin, spin.offset(i)).unwrap(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}
