//! Seeded random matrices, unitaries and states.
//!
//! Every generator takes an explicit seed (or a caller-owned RNG) so that
//! property tests and CLI runs are reproducible; nothing here touches global
//! RNG state.

use crate::matrix::ComplexMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Deterministic RNG for a given seed.
pub fn test_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal sample (Box-Muller).
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn standard_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// Matrix with i.i.d. complex Gaussian entries.
pub fn random_complex_with(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

/// Random Hermitian matrix (Gaussian ensemble).
pub fn random_hermitian_with(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_complex_with(n, n, rng);
    g.add(&g.adjoint()).scale_re(0.5)
}

/// Random density matrix: normalized G G^dag of a complex Gaussian G.
pub fn random_density_with(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_complex_with(n, n, rng);
    let rho = g.matmul(&g.adjoint());
    let tr = rho.trace().re;
    rho.scale_re(1.0 / tr)
}

pub fn random_density_matrix(n: usize, seed: u64) -> ComplexMatrix {
    random_density_with(n, &mut test_rng(seed))
}

/// Orthonormalize the columns of a square matrix in place (modified
/// Gram-Schmidt, run twice), then fix each column's phase so its diagonal
/// entry is real and nonnegative.
fn orthonormalize_columns(m: &mut ComplexMatrix) {
    let n = m.rows();
    for k in 0..n {
        for _ in 0..2 {
            for j in 0..k {
                let mut proj = Complex64::ZERO;
                for i in 0..n {
                    proj += m.get(i, j).conj() * m.get(i, k);
                }
                for i in 0..n {
                    let v = m.get(i, k) - proj * m.get(i, j);
                    m.set(i, k, v);
                }
            }
        }
        let norm = (0..n).map(|i| m.get(i, k).norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            let v = m.get(i, k) / norm;
            m.set(i, k, v);
        }
        let dk = m.get(k, k);
        if dk.norm() > 0.0 {
            let phase = dk / dk.norm();
            for i in 0..n {
                let v = m.get(i, k) * phase.conj();
                m.set(i, k, v);
            }
        }
    }
}

/// Random real orthogonal matrix: QR-style orthogonalization of a seeded
/// Gaussian matrix with sign normalization. Entries are real (zero
/// imaginary parts).
pub fn random_orthogonal(n: usize, seed: u64) -> ComplexMatrix {
    random_orthogonal_with(n, &mut test_rng(seed))
}

pub fn random_orthogonal_with(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(standard_normal(rng), 0.0));
    orthonormalize_columns(&mut m);
    m
}

/// Random unitary matrix (orthonormalized complex Gaussian).
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    random_unitary_with(n, &mut test_rng(seed))
}

pub fn random_unitary_with(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut m = random_complex_with(n, n, rng);
    orthonormalize_columns(&mut m);
    m
}

/// Random Schmidt coefficient list of length `r`: positive, descending,
/// unit 2-norm, bounded away from zero so the rank is unambiguous.
pub fn random_schmidt_coefficients(r: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut lambda: Vec<f64> = (0..r).map(|_| rng.random_range(0.3..1.0)).collect();
    let norm = lambda.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut lambda {
        *x /= norm;
    }
    lambda.sort_by(|a, b| b.partial_cmp(a).unwrap());
    lambda
}

/// Coefficient matrix of a random pure state with exact Schmidt rank `r`:
/// C = U diag(lambda) V^T with Haar-ish local unitaries U, V.
pub fn random_rank_r_coefficients(
    d1: usize,
    d2: usize,
    r: usize,
    rng: &mut impl Rng,
) -> ComplexMatrix {
    assert!(r >= 1 && r <= d1.min(d2));
    let lambda = random_schmidt_coefficients(r, rng);
    let u = random_unitary_with(d1, rng);
    let v = random_unitary_with(d2, rng);
    ComplexMatrix::from_fn(d1, d2, |i, j| {
        (0..r)
            .map(|s| u.get(i, s) * Complex64::new(lambda[s], 0.0) * v.get(j, s))
            .sum()
    })
}
