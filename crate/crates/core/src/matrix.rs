//! Dense complex matrix kernel.
//!
//! Everything downstream (operator bases, POVMs, states, correlation
//! matrices) is carried by [`ComplexMatrix`]: a row-major dense matrix of
//! `Complex<f64>`. Sizes in this crate stay below ~100x100, so the
//! eigensolver and SVD are cyclic Jacobi iterations: simple, and accurate to
//! near machine precision at these sizes.
//!
//! Composite index convention for bipartite systems: the basis ket `|i, mu>`
//! of H_{d1} (x) H_{d2} maps to row `i * d2 + mu` (subsystem A is the slow
//! index). `kron` and `realign` both follow it.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Absolute tolerance for declaring a matrix Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Default tolerance on the minimum eigenvalue for positive semidefiniteness.
pub const PSD_TOL: f64 = 1e-9;

const MAX_JACOBI_SWEEPS: usize = 64;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Build from row-major data; `data.len()` must equal `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "entries length {} != {} rows x {} cols",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        Self::from_fn(r, c, |i, j| Complex64::new(rows[i][j], 0.0))
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    /// Rank-one projector `|v><v|` of a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Hilbert-Schmidt inner product tr(A^dag B).
    pub fn hs_inner(&self, other: &Self) -> Complex64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|a| a.im.abs()).fold(0.0, f64::max)
    }

    /// Worst Hermiticity violation `(i, j, |A[i][j] - conj(A[j][i])|)`.
    pub fn hermiticity_violation(&self) -> (usize, usize, f64) {
        let mut worst = (0, 0, 0.0);
        if !self.is_square() {
            return (0, 0, f64::INFINITY);
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                if dev > worst.2 {
                    worst = (i, j, dev);
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_violation().2 <= tol
    }

    fn require_hermitian(&self) -> Result<()> {
        let (row, col, deviation) = self.hermiticity_violation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NonHermitian {
                row,
                col,
                deviation,
            });
        }
        Ok(())
    }

    /// Kronecker product: block (i, j) of the result equals `self[i][j] * b`.
    pub fn kron(&self, b: &Self) -> Self {
        let (ra, ca, rb, cb) = (self.rows, self.cols, b.rows, b.cols);
        let mut out = Self::zeros(ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let aij = self.get(i, j);
                if aij == Complex64::ZERO {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.data[(i * rb + k) * ca * cb + (j * cb + l)] = aij * b.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Cyclic complex Jacobi.
    ///
    /// Rejects inputs whose worst Hermiticity violation exceeds 1e-10,
    /// naming the offending entry pair.
    pub fn herm_eigenvalues(&self) -> Result<Vec<f64>> {
        self.require_hermitian()?;
        let n = self.rows;
        if n == 0 {
            return Ok(vec![]);
        }
        let mut a = self.data.clone();
        let fro = self.frobenius_norm();
        let stop = 1e-15 * fro.max(f64::MIN_POSITIVE);

        for _ in 0..MAX_JACOBI_SWEEPS {
            let mut rotated = false;
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let g = a[p * n + q];
                    let abs_g = g.norm();
                    if abs_g <= stop {
                        continue;
                    }
                    rotated = true;
                    let (c, s, phase) = jacobi_rotation(a[p * n + p].re, a[q * n + q].re, g);
                    let phase_conj = phase.conj();
                    // A <- A U, with U = [[c, s], [-s conj(phase), c conj(phase)]]
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip * c - aiq * s * phase_conj;
                        a[i * n + q] = aip * s + aiq * c * phase_conj;
                    }
                    // A <- U^dag A
                    for j in 0..n {
                        let apj = a[p * n + j];
                        let aqj = a[q * n + j];
                        a[p * n + j] = apj * c - aqj * s * phase;
                        a[q * n + j] = apj * s + aqj * c * phase;
                    }
                }
            }
            if !rotated {
                break;
            }
        }

        let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(eigs)
    }

    /// Singular values, descending. One-sided Jacobi on the columns, which
    /// keeps small singular values accurate in absolute terms (sums of
    /// singular values come out correct to ~1e-15 relative at these sizes).
    pub fn singular_values(&self) -> Vec<f64> {
        let work = if self.rows >= self.cols {
            self.clone()
        } else {
            self.adjoint()
        };
        let (m, n) = (work.rows, work.cols);
        if n == 0 || m == 0 {
            return vec![];
        }
        // column-major working copy
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..m).map(|i| work.get(i, j)).collect())
            .collect();

        for _ in 0..MAX_JACOBI_SWEEPS {
            let mut rotated = false;
            for p in 0..n - 1 {
                for q in (p + 1)..n {
                    let (head, tail) = cols.split_at_mut(q);
                    let (col_p, col_q) = (&mut head[p], &mut tail[0]);
                    let mut app = 0.0;
                    let mut aqq = 0.0;
                    let mut apq = Complex64::ZERO;
                    for (wp, wq) in col_p.iter().zip(col_q.iter()) {
                        app += wp.norm_sqr();
                        aqq += wq.norm_sqr();
                        apq += wp.conj() * wq;
                    }
                    if apq.norm() <= 1e-15 * (app * aqq).sqrt() + f64::MIN_POSITIVE {
                        continue;
                    }
                    rotated = true;
                    let (c, s, phase) = jacobi_rotation(app, aqq, apq);
                    let phase_conj = phase.conj();
                    for (wp, wq) in col_p.iter_mut().zip(col_q.iter_mut()) {
                        let (old_p, old_q) = (*wp, *wq);
                        *wp = old_p * c - old_q * s * phase_conj;
                        *wq = old_p * s + old_q * c * phase_conj;
                    }
                }
            }
            if !rotated {
                break;
            }
        }

        let mut sv: Vec<f64> = cols
            .iter()
            .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        sv
    }

    /// Trace norm (nuclear norm): sum of singular values.
    pub fn trace_norm(&self) -> f64 {
        self.singular_values().iter().sum()
    }

    /// True iff Hermitian with minimum eigenvalue >= -tol.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        let eigs = self.herm_eigenvalues()?;
        Ok(eigs.first().is_none_or(|&lo| lo >= -tol))
    }

    /// Realignment map for a (d1*d2) x (d1*d2) matrix in the composite index
    /// convention: `R[(i*d1 + j), (mu*d2 + nu)] = <i,mu| M |j,nu>`.
    pub fn realign(&self, d1: usize, d2: usize) -> Result<Self> {
        if self.rows != d1 * d2 || self.cols != d1 * d2 {
            return Err(Error::Dimension(format!(
                "realign: {}x{} matrix does not match local dims ({}, {})",
                self.rows, self.cols, d1, d2
            )));
        }
        let mut out = Self::zeros(d1 * d1, d2 * d2);
        for i in 0..d1 {
            for j in 0..d1 {
                for mu in 0..d2 {
                    for nu in 0..d2 {
                        out.data[(i * d1 + j) * d2 * d2 + (mu * d2 + nu)] =
                            self.get(i * d2 + mu, j * d2 + nu);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Rotation zeroing the off-diagonal entry `g` of the Hermitian 2x2 block
/// [[app, g], [conj(g), aqq]]. Returns (c, s, phase) with `phase = g/|g|`;
/// the diagonalizing unitary is [[c, s], [-s*conj(phase), c*conj(phase)]].
fn jacobi_rotation(app: f64, aqq: f64, g: Complex64) -> (f64, f64, Complex64) {
    let abs_g = g.norm();
    let phase = g / abs_g;
    let tau = (aqq - app) / (2.0 * abs_g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase)
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, other)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, other)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}
