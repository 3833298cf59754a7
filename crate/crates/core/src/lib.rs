//! Numerics for an electro-optic phase modulator.
//!
//! Two models are provided side by side:
//!
//! * the *restricted* model, where `2S+1` optical modes couple through a
//!   mode-dependent overlap `f(Δm)` so that the driven Hamiltonian lives in
//!   `su(2)`; single-photon dynamics reduce to Wigner d-matrices, and
//! * the *unrestricted* model with infinitely many equally coupled modes,
//!   whose sideband amplitudes are Bessel functions `J_n(μ)`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line driver live in the `eom-cli` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod detection;
pub mod dynamics;
mod error;
mod math;
pub mod numkernel;
mod spin;
pub mod su2;
pub mod unrestricted;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spin::Spin;

pub use detection::{filter_kernel, relative_count_rate, spectral_scan, FilterSpec, SpectralScan};
pub use dynamics::{
    closed_form_angles, mean_field_envelope, mode_occupations, propagator, revival_peaks, revival_scan,
    ClosedFormAngles, PropagatorMatrix, RevivalPeak,
};
pub use numkernel::{expm_skew_hermitian, hermitian_eigen, ComplexMatrix, EigenDecomposition};
pub use su2::{
    build_generators, coupling_weight, mixing_angle, quasi_energy_matrix, GeneratorSet, MixingAngle, ModulatorParams,
};
pub use unrestricted::{
    asymptotic_compare, bessel_j, classical_signal_check, modulation_index, unrestricted_occupations, ModulationIndex,
};
pub use wigner::{
    jacobi_bessel_limit_check, jacobi_poly, wigner_d_exponential, wigner_d_factorial, wigner_d_jacobi, WignerMatrix,
    WignerMethod,
};
