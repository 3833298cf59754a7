//! The spectral-sum propagator against a brute-force RK4 integration of the
//! rotating-frame Schrödinger equation.

use std::f64::consts::PI;

use eom_core::{propagator, Complex64, ModulatorParams, Spin};

/// Single-photon quasi-energy matrix built directly from the coupling
/// weights, independently of the library's generator construction.
fn oracle_hamiltonian(twice_s: u32, detuning: f64, gamma: f64) -> Vec<Vec<f64>> {
    let s = twice_s as f64 / 2.0;
    let n = twice_s as usize + 1;
    let g = 2.0 * gamma / (2.0 * s + 1.0);
    let mut h = vec![vec![0.0; n]; n];
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = detuning * (i as f64 - s);
    }
    for i in 0..n - 1 {
        let dm = i as f64 - s;
        let w = ((s + 1.0 + dm) * (s - dm)).sqrt();
        h[i + 1][i] = g * w;
        h[i][i + 1] = g * w;
    }
    h
}

fn apply(h: &[Vec<f64>], v: &[Complex64]) -> Vec<Complex64> {
    h.iter().map(|row| -Complex64::i() * row.iter().zip(v).map(|(a, b)| b * a).sum::<Complex64>()).collect()
}

fn axpy(v: &[Complex64], k: &[Complex64], a: f64) -> Vec<Complex64> {
    v.iter().zip(k).map(|(x, y)| x + y * a).collect()
}

/// Columns of `exp(−iHT)` by classical RK4 with `h·‖H‖ ≤ 1e-3`.
fn rk4_propagator(h: &[Vec<f64>], t: f64) -> Vec<Vec<Complex64>> {
    let n = h.len();
    let norm = h.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max).max(1e-12);
    let steps = (t * norm / 1e-3).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    (0..n)
        .map(|col| {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[col] = Complex64::new(1.0, 0.0);
            for _ in 0..steps {
                let k1 = apply(h, &v);
                let k2 = apply(h, &axpy(&v, &k1, dt / 2.0));
                let k3 = apply(h, &axpy(&v, &k2, dt / 2.0));
                let k4 = apply(h, &axpy(&v, &k3, dt));
                for i in 0..n {
                    v[i] += (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (dt / 6.0);
                }
            }
            v
        })
        .collect()
}

fn check(twice_s: u32, detuning: f64, gamma: f64) {
    let omega = 30.0;
    let t = 2.0 * PI / omega;
    let p = ModulatorParams::with_detuning(Spin::from_twice(twice_s).unwrap(), omega, detuning, gamma, t).unwrap();
    let r = propagator(&p).unwrap();
    let cols = rk4_propagator(&oracle_hamiltonian(twice_s, detuning, gamma), t);
    let n = twice_s as usize + 1;
    let mut worst: f64 = 0.0;
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            worst = worst.max((r.matrix()[(i, j)].norm_sqr().sqrt() - v.norm_sqr().sqrt()).abs());
            worst = worst.max((r.matrix()[(i, j)] - v).norm_sqr().sqrt());
        }
    }
    assert!(worst < 1e-8, "2S={twice_s} γ={gamma}: {worst}");
    assert!(r.matrix().unitarity_error() < 1e-12);
    assert_eq!(r.matrix().rows(), n);
}

#[test]
fn matches_rk4_at_figure_parameters() {
    for twice_s in [1, 2, 6, 10] {
        for gamma in [2.0, 10.0, 24.25] {
            check(twice_s, 0.1, gamma);
        }
    }
}

#[test]
fn matches_rk4_off_resonance() {
    check(4, -3.0, 5.0);
    check(3, 7.5, 0.4);
}
