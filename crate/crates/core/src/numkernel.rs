//! Small dense complex linear algebra: products, Hermitian eigendecomposition
//! by cyclic Jacobi rotations, and exponentials of skew-Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{cabs, cis, sqrt};

/// Relative tolerance for Hermitian / skew-Hermitian input checks.
pub const HERM_TOL: f64 = 1e-12;
/// Relative reconstruction tolerance promised by [`hermitian_eigen`].
pub const RECON_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 100;

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        ComplexMatrix { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::InvalidParameter(alloc::format!(
                "{} entries do not fill a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { Complex64::new(diag[i], 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * factor).collect() }
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self·rhs − rhs·self`.
    pub fn commutator(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|&z| cabs(z)).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// `max |A − A†| / max(max|A|, 1)`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        self.adjoint_deviation(1.0)
    }

    /// `max |A + A†| / max(max|A|, 1)`; infinite for non-square input.
    pub fn skew_hermitian_deviation(&self) -> f64 {
        self.adjoint_deviation(-1.0)
    }

    fn adjoint_deviation(&self, sign: f64) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max(cabs(self[(i, j)] - self[(j, i)].conj() * sign));
            }
        }
        dev / self.max_abs().max(1.0)
    }

    /// `max |A·A† − I|`.
    pub fn unitarity_error(&self) -> f64 {
        (&self.matmul(&self.adjoint()) - &Self::identity(self.rows)).max_abs()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Eigenpairs of a Hermitian matrix, values ascending.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V·f(Λ)·V†` for a scalar function of the eigenvalues.
    pub fn reconstruct_with(&self, mut f: impl FnMut(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let weights: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * weights[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| Complex64::new(l, 0.0))
    }
}

/// Diagonalizes a Hermitian matrix with cyclic complex Jacobi rotations.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let dev = a.hermitian_deviation();
    if dev > HERM_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let n = a.rows;

    // Work on the exactly Hermitian part.
    let mut w = ComplexMatrix::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let norm = w.frobenius_norm();
    if norm > 0.0 {
        let target = (f64::EPSILON * norm) * (f64::EPSILON * norm);
        for _ in 0..MAX_SWEEPS {
            let off = off_diagonal_sq(&w);
            if off <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut w, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let values = order.iter().map(|&k| w[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

fn off_diagonal_sq(w: &ComplexMatrix) -> f64 {
    let n = w.rows;
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            sum += w[(i, j)].norm_sqr();
        }
    }
    2.0 * sum
}

/// Annihilates `w[p][q]` with the unitary
/// `U = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]]` acting on the `(p, q)` plane,
/// `W ← U†WU`, `V ← VU`, where `w[p][q] = |w[p][q]|·e^{iφ}`.
fn rotate(w: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    let mag = cabs(apq);
    if mag == 0.0 {
        return;
    }
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;
    // Skip entries already negligible against both diagonals.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        w[(p, q)] = Complex64::new(0.0, 0.0);
        w[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / sqrt(t * t + 1.0);
    let s = t * c;
    let phase = apq / mag;
    let s_up = phase * s; // U[p][q]
    let s_dn = -phase.conj() * s; // U[q][p]

    let n = w.rows;
    // Columns: W ← W·U.
    for k in 0..n {
        let wkp = w[(k, p)];
        let wkq = w[(k, q)];
        w[(k, p)] = wkp * c + wkq * s_dn;
        w[(k, q)] = wkp * s_up + wkq * c;
    }
    // Rows: W ← U†·W.
    let s_up_c = s_up.conj();
    let s_dn_c = s_dn.conj();
    for k in 0..n {
        let wpk = w[(p, k)];
        let wqk = w[(q, k)];
        w[(p, k)] = wpk * c + wqk * s_dn_c;
        w[(q, k)] = wpk * s_up_c + wqk * c;
    }
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)].im = 0.0;
    w[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * s_dn;
        v[(k, q)] = vkp * s_up + vkq * c;
    }
}

/// `exp(A)` for skew-Hermitian `A`, via the eigendecomposition of `iA`.
pub fn expm_skew_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let dev = a.skew_hermitian_deviation();
    if dev > HERM_TOL {
        return Err(Error::NotSkewHermitian(dev));
    }
    // A = −iH with H = iA Hermitian.
    let h = a.scale(Complex64::new(0.0, 1.0));
    let eig = hermitian_eigen(&h)?;
    Ok(eig.reconstruct_with(|l| cis(-l)))
}
