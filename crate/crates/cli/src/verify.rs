//! Self-check suite run by `eom verify`.

use std::f64::consts::PI;
use std::fmt;

use clap::ValueEnum;
use eom_core::dynamics::closed_form_magnitude_error;
use eom_core::unrestricted::bessel_j_sequence;
use eom_core::{
    asymptotic_compare, build_generators, classical_signal_check, hermitian_eigen, jacobi_bessel_limit_check,
    mixing_angle, mode_occupations, propagator, quasi_energy_matrix, wigner_d_exponential, wigner_d_factorial,
    wigner_d_jacobi, ModulatorParams, Spin,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    /// Algebra, unitarity, half-turn identity, revivals, Bessel normalization
    Quick,
    /// Adds Wigner route agreement, closed forms and large-S asymptotics
    Full,
}

/// A measured deviation and the tolerance it must not exceed.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub measured: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status}  {:<44} measured {:.3e}  tolerance {:.0e}", self.name, self.measured, self.tolerance)
    }
}

/// Deterministic angles spread over `[0, π]`.
fn angles(count: usize) -> impl Iterator<Item = f64> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    (1..=count).map(|k| PI * (k as f64 * GOLDEN).fract())
}

fn figure_params(twice_s: u32, detuning: f64, gamma: f64) -> ModulatorParams {
    ModulatorParams::with_detuning(Spin::from_twice(twice_s).expect("positive"), 30.0, detuning, gamma, 2.0 * PI / 30.0)
        .expect("valid preset")
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so a broken computation cannot pass.
    values.into_iter().fold(0.0, |a: f64, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

fn half_turn_deviation(twice_s: u32, sign: f64) -> f64 {
    let d = wigner_d_exponential(Spin::from_twice(twice_s).expect("positive"), PI);
    let n = d.dim();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let want = if i + j + 1 == n { sign * if i % 2 == 0 { 1.0 } else { -1.0 } } else { 0.0 };
            dev = dev.max((d.get(i, j) - want).abs());
        }
    }
    dev
}

fn quick_checks(negative_control: bool) -> Vec<Check> {
    let spins = [1, 2, 3, 4, 6, 10];
    let generators: Vec<_> = spins.iter().map(|&t| build_generators(Spin::from_twice(t).expect("positive"))).collect();
    let mut checks = vec![
        Check {
            name: "su(2) commutation relations, S <= 5",
            tolerance: 1e-12,
            measured: worst(generators.iter().map(|g| g.commutator_residual())),
        },
        Check {
            name: "Casimir equals S(S+1), S <= 5",
            tolerance: 1e-12,
            measured: worst(generators.iter().map(|g| g.casimir_residual())),
        },
    ];
    let unitarity = [1, 2, 6, 10].iter().flat_map(|&t| {
        [2.0, 10.0, 24.25]
            .map(move |g| propagator(&figure_params(t, 0.1, g)).map_or(f64::NAN, |r| r.matrix().unitarity_error()))
    });
    checks.push(Check {
        name: "propagator unitarity, figure parameters",
        tolerance: 1e-12,
        measured: worst(unitarity),
    });
    let sign = if negative_control { -1.0 } else { 1.0 };
    checks.push(Check {
        name: "half-turn Wigner matrix, 2S <= 20",
        tolerance: 1e-12,
        measured: worst((1..=20).map(|t| half_turn_deviation(t, sign))),
    });
    let revival = [6u32, 10].iter().flat_map(|&t| {
        let n = t as f64 + 1.0;
        [30.0 * n / 8.0, 30.0 * n / 4.0].map(move |g| match mode_occupations(&figure_params(t, 0.0, g), 1.0) {
            Ok(occ) => {
                worst(occ.iter().enumerate().map(|(i, w)| (w - if 2 * i == t as usize { 1.0 } else { 0.0 }).abs()))
            }
            Err(_) => f64::NAN,
        })
    });
    checks.push(Check { name: "central-mode revival at zero detuning", tolerance: 1e-10, measured: worst(revival) });
    let normalization = [0.5, 2.0, 7.3, 25.0, 60.0].map(|x: f64| {
        let j = bessel_j_sequence(x as u64 + 40, x);
        (j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>() - 1.0).abs()
    });
    checks.push(Check {
        name: "Bessel normalization J0^2 + 2 sum Jn^2 = 1",
        tolerance: 1e-12,
        measured: worst(normalization),
    });
    let equidistance = [6u32, 10].iter().flat_map(|&t| {
        [(0.1, 2.0), (-1.3, 7.0), (0.0, 24.25), (2.5, 0.3)].map(move |(w, g)| {
            let p = figure_params(t, w, g);
            let (Ok(mix), Ok(eig)) = (mixing_angle(&p), hermitian_eigen(&quasi_energy_matrix(&p))) else {
                return f64::NAN;
            };
            let s = t as f64 / 2.0;
            worst(eig.values.iter().enumerate().map(|(k, e)| (e - 2.0 * mix.rabi * (k as f64 - s)).abs() / mix.rabi))
        })
    });
    checks.push(Check {
        name: "quasi-energy spacing 2*Gamma (relative)",
        tolerance: 1e-10,
        measured: worst(equidistance),
    });
    checks
}

fn full_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    let routes = (1..=20u32).flat_map(|t| {
        let spin = Spin::from_twice(t).expect("positive");
        angles(20).map(move |theta| {
            let e = wigner_d_exponential(spin, theta);
            let Ok(f) = wigner_d_factorial(spin, theta) else { return f64::NAN };
            let j = wigner_d_jacobi(spin, theta);
            e.max_deviation(&f).max(e.max_deviation(&j)).max(f.max_deviation(&j))
        })
    });
    checks.push(Check {
        name: "Wigner d: three constructions agree, 2S <= 20",
        tolerance: 1e-10,
        measured: worst(routes),
    });
    let closed = angles(50).enumerate().map(|(k, theta)| {
        let t = 1 + (k as u32 % 12);
        let p = figure_params(t, (theta - 1.5) * 2.0, 0.5 + 12.0 * theta).with_time(0.05 + 0.3 * theta).expect("valid");
        closed_form_magnitude_error(&p).unwrap_or(f64::NAN)
    });
    checks.push(Check { name: "closed-form propagator magnitudes", tolerance: 1e-9, measured: worst(closed) });
    let fourier = [1.5, 5.0].map(|mu| classical_signal_check(mu, 1024).unwrap_or(f64::NAN));
    checks.push(Check { name: "Bessel expansion of exp(-i mu cos t)", tolerance: 1e-10, measured: worst(fourier) });
    let limit = [2.0, 10.0].map(|g| {
        let offsets: Vec<i64> = (-5..=5).collect();
        asymptotic_compare(&figure_params(400, 0.1, g), &offsets)
            .map_or(f64::NAN, |rows| worst(rows.iter().map(|r| r.difference())))
    });
    checks.push(Check { name: "restricted -> Bessel amplitudes at S = 200", tolerance: 1e-2, measured: worst(limit) });
    let jacobi = [(0u32, 2.0), (1, 2.0), (2, 3.0)].map(|(a, z)| {
        let (lhs, rhs) = jacobi_bessel_limit_check(a, 0.0, z, 500);
        ((lhs - rhs) / rhs).abs()
    });
    checks.push(Check {
        name: "Jacobi -> Bessel limit at n = 500 (relative)",
        tolerance: 1e-2,
        measured: worst(jacobi),
    });
    checks
}

/// Runs the suite. The negative control expects the wrong sign in the
/// half-turn identity and must therefore fail.
pub fn run_suite(level: Level, negative_control: bool) -> Vec<Check> {
    let mut checks = quick_checks(negative_control);
    if level == Level::Full {
        checks.extend(full_checks());
    }
    checks
}
