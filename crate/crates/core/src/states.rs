//! Bipartite state families and Schmidt-rank utilities.
//!
//! Factories return validated [`BipartiteDensityMatrix`] values: Hermitian
//! within 1e-10, unit trace within 1e-12, positive semidefinite within 1e-9.
//! Closed-form constructions whose trace drifts from 1 by floating-point
//! dust (< 1e-13) are renormalized to exactly 1; anything larger is treated
//! as a bug and rejected.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HERMITICITY_TOL, PSD_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const TRACE_TOL: f64 = 1e-12;
const CONSTRUCTOR_TRACE_DUST: f64 = 1e-13;

/// Density matrix with declared local dimensions, in the composite index
/// convention `|i, mu> -> i * d2 + mu`.
#[derive(Debug, Clone)]
pub struct BipartiteDensityMatrix {
    d1: usize,
    d2: usize,
    matrix: ComplexMatrix,
}

impl BipartiteDensityMatrix {
    /// Validate and wrap an arbitrary matrix as a bipartite state.
    pub fn new(d1: usize, d2: usize, matrix: ComplexMatrix) -> Result<Self> {
        let n = d1 * d2;
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::Dimension(format!(
                "state matrix is {}x{}, expected {n}x{n} for local dims ({d1}, {d2})",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let (row, col, dev) = matrix.hermiticity_violation();
        if dev > HERMITICITY_TOL {
            return Err(Error::StateInvalid(format!(
                "not Hermitian: |M[{row}][{col}] - conj(M[{col}][{row}])| = {dev:.3e}"
            )));
        }
        let tr = matrix.trace();
        if (tr - Complex64::ONE).norm() > TRACE_TOL {
            return Err(Error::StateInvalid(format!(
                "trace {tr} deviates from 1 by more than 1e-12"
            )));
        }
        let min_eig = matrix.herm_eigenvalues()?[0];
        if min_eig < -PSD_TOL {
            return Err(Error::StateInvalid(format!(
                "not positive semidefinite: minimum eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { d1, d2, matrix })
    }

    /// Internal path for closed-form factories: renormalizes trace dust so
    /// downstream trace-sensitive criteria see exactly unit trace.
    fn from_closed_form(d1: usize, d2: usize, matrix: ComplexMatrix) -> Result<Self> {
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() >= CONSTRUCTOR_TRACE_DUST {
            return Err(Error::Internal(format!(
                "closed-form state has trace {tr}, expected 1 within 1e-13"
            )));
        }
        Self::new(d1, d2, matrix.scale_re(1.0 / tr))
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Realigned matrix R with `R[(i d1 + j), (mu d2 + nu)] = <i,mu|rho|j,nu>`.
    pub fn realign(&self) -> ComplexMatrix {
        self.matrix
            .realign(self.d1, self.d2)
            .expect("dims validated at construction")
    }

    /// Serialize as `{d1, d2, matrix}` with a row-major matrix of `[re, im]`.
    pub fn to_json(&self) -> String {
        let dto = DensityMatrixJson {
            d1: self.d1,
            d2: self.d2,
            matrix: (0..self.matrix.rows())
                .map(|i| {
                    (0..self.matrix.cols())
                        .map(|j| {
                            let z = self.matrix.get(i, j);
                            [z.re, z.im]
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("state serialization cannot fail")
    }

    /// Parse and fully re-validate a state written by [`Self::to_json`].
    pub fn from_json(json: &str) -> Result<Self> {
        let dto: DensityMatrixJson = serde_json::from_str(json)?;
        let matrix = crate::povm::unpack_matrix(&dto.matrix)?;
        Self::new(dto.d1, dto.d2, matrix)
    }
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    d1: usize,
    d2: usize,
    matrix: Vec<Vec<[f64; 2]>>,
}

/// The 3x3 bound entangled family: a 9x9 matrix with prefactor 1/(8x + 1),
/// seven diagonal entries x, the (6,6)/(8,8) block (1 + x)/2 and
/// off-diagonal sqrt(1 - x^2)/2, plus the x-weighted |00>+|11>+|22| coherences.
pub fn bound_entangled_horodecki(x: f64) -> Result<BipartiteDensityMatrix> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParameterRange {
            name: "x",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    let norm = 1.0 / (8.0 * x + 1.0);
    let xe = x * norm;
    let mut m = ComplexMatrix::zeros(9, 9);
    // coherences between |00>, |11>, |22| (rows/cols 0, 4, 8)
    for &i in &[0usize, 4, 8] {
        for &j in &[0usize, 4, 8] {
            m.set(i, j, Complex64::new(xe, 0.0));
        }
    }
    for &i in &[1usize, 2, 3, 5, 7] {
        m.set(i, i, Complex64::new(xe, 0.0));
    }
    let diag = (1.0 + x) / 2.0 * norm;
    let off = (1.0 - x * x).sqrt() / 2.0 * norm;
    m.set(6, 6, Complex64::new(diag, 0.0));
    m.set(8, 8, Complex64::new(diag, 0.0));
    m.set(6, 8, Complex64::new(off, 0.0));
    m.set(8, 6, Complex64::new(off, 0.0));
    BipartiteDensityMatrix::from_closed_form(3, 3, m)
}

/// q rho + (1 - q) I / (d1 d2).
pub fn add_white_noise(rho: &BipartiteDensityMatrix, q: f64) -> Result<BipartiteDensityMatrix> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::ParameterRange {
            name: "q",
            value: q,
            min: 0.0,
            max: 1.0,
        });
    }
    let n = rho.d1 * rho.d2;
    let mixed = rho
        .matrix
        .scale_re(q)
        .add(&ComplexMatrix::identity(n).scale_re((1.0 - q) / n as f64));
    BipartiteDensityMatrix::from_closed_form(rho.d1, rho.d2, mixed)
}

/// Isotropic state v |psi+><psi+| + (1 - v) I / d^2 with
/// |psi+> = sum_i |ii> / sqrt(d). The physical range is v in [0, 1]; the
/// constructor accepts the full PSD range v >= -1/(d^2 - 1).
pub fn isotropic(dim: usize, v: f64) -> Result<BipartiteDensityMatrix> {
    let d = dim as f64;
    let v_min = -1.0 / (d * d - 1.0);
    if !(v_min..=1.0).contains(&v) {
        return Err(Error::ParameterRange {
            name: "v",
            value: v,
            min: v_min,
            max: 1.0,
        });
    }
    let n = dim * dim;
    let mut psi = vec![Complex64::ZERO; n];
    for i in 0..dim {
        psi[i * dim + i] = Complex64::new(1.0 / d.sqrt(), 0.0);
    }
    let m = ComplexMatrix::outer(&psi)
        .scale_re(v)
        .add(&ComplexMatrix::identity(n).scale_re((1.0 - v) / (d * d)));
    BipartiteDensityMatrix::from_closed_form(dim, dim, m)
}

/// Werner state [(d - f) I + (d f - 1) V] / (d (d^2 - 1)) with V the swap
/// operator; f is recovered as tr(rho V).
pub fn werner(dim: usize, f: f64) -> Result<BipartiteDensityMatrix> {
    if !(-1.0..=1.0).contains(&f) {
        return Err(Error::ParameterRange {
            name: "f",
            value: f,
            min: -1.0,
            max: 1.0,
        });
    }
    let d = dim as f64;
    let n = dim * dim;
    let mut m = ComplexMatrix::identity(n).scale_re((d - f) / (d * (d * d - 1.0)));
    let swap_coeff = (d * f - 1.0) / (d * (d * d - 1.0));
    for i in 0..dim {
        for j in 0..dim {
            let row = i * dim + j;
            let col = j * dim + i;
            let v = m.get(row, col) + Complex64::new(swap_coeff, 0.0);
            m.set(row, col, v);
        }
    }
    BipartiteDensityMatrix::from_closed_form(dim, dim, m)
}

/// Swap expectation tr(rho V); recovers the Werner parameter.
pub fn swap_expectation(rho: &BipartiteDensityMatrix) -> Result<f64> {
    if rho.d1 != rho.d2 {
        return Err(Error::Dimension(format!(
            "swap operator needs equal local dims, got ({}, {})",
            rho.d1, rho.d2
        )));
    }
    let d = rho.d1;
    let mut tr = Complex64::ZERO;
    for i in 0..d {
        for j in 0..d {
            tr += rho.matrix.get(i * d + j, j * d + i);
        }
    }
    Ok(tr.re)
}

/// Schmidt coefficient list: positive entries, stored descending, unit
/// 2-norm within 1e-12.
#[derive(Debug, Clone)]
pub struct SchmidtVector {
    coefficients: Vec<f64>,
}

impl SchmidtVector {
    pub fn new(mut coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::ZeroVector);
        }
        if coefficients.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::StateInvalid(
                "Schmidt coefficients must be finite and nonnegative".into(),
            ));
        }
        let norm_sq: f64 = coefficients.iter().map(|x| x * x).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::StateInvalid(format!(
                "Schmidt coefficients have squared norm {norm_sq}, expected 1 within 1e-12"
            )));
        }
        coefficients.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(Self { coefficients })
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Pure state |psi><psi| with |psi> = sum_s lambda_s |ss> in the
/// computational basis.
pub fn pure_from_schmidt(
    coeffs: &SchmidtVector,
    d1: usize,
    d2: usize,
) -> Result<BipartiteDensityMatrix> {
    if coeffs.len() > d1.min(d2) {
        return Err(Error::Dimension(format!(
            "{} Schmidt coefficients do not fit local dims ({d1}, {d2})",
            coeffs.len()
        )));
    }
    let mut psi = vec![Complex64::ZERO; d1 * d2];
    for (s, &lambda) in coeffs.coefficients().iter().enumerate() {
        psi[s * d2 + s] = Complex64::new(lambda, 0.0);
    }
    BipartiteDensityMatrix::from_closed_form(d1, d2, ComplexMatrix::outer(&psi))
}

/// Pure state |psi><psi| from an arbitrary (normalized) coefficient matrix
/// c[i][mu] in |psi> = sum c[i][mu] |i, mu>.
pub fn pure_from_coefficients(coeffs: &ComplexMatrix) -> Result<BipartiteDensityMatrix> {
    let norm_sq: f64 = coeffs.data().iter().map(|z| z.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm_sq.sqrt() - 1.0).abs() > 1e-10 {
        return Err(Error::StateInvalid(format!(
            "coefficient matrix has norm {}, expected 1 within 1e-10",
            norm_sq.sqrt()
        )));
    }
    BipartiteDensityMatrix::from_closed_form(
        coeffs.rows(),
        coeffs.cols(),
        ComplexMatrix::outer(coeffs.data()),
    )
}

/// Number of singular values of the coefficient matrix above `tol`
/// (default 1e-10): the Schmidt rank of the pure state it describes.
pub fn schmidt_rank(coeffs: &ComplexMatrix, tol: Option<f64>) -> Result<usize> {
    let tol = tol.unwrap_or(1e-10);
    let norm_sq: f64 = coeffs.data().iter().map(|z| z.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    if (norm_sq.sqrt() - 1.0).abs() > 1e-10 {
        return Err(Error::StateInvalid(format!(
            "coefficient matrix has norm {}, expected 1 within 1e-10",
            norm_sq.sqrt()
        )));
    }
    Ok(coeffs
        .singular_values()
        .iter()
        .filter(|&&s| s > tol)
        .count())
}

/// Convex decomposition of a Werner state (valid for -1 <= f <= 1/d):
/// the maximally mixed component with weight d(1 + f)/(d + 1) plus the
/// d(d-1)/2 projectors onto (|ij> - |ji>)/sqrt(2), each with weight
/// 2(1 - d f)/(d (d^2 - 1)). Weights sum to 1 and the weighted sum
/// reconstructs `werner(d, f)`.
pub fn werner_decomposition(dim: usize, f: f64) -> Result<Vec<(f64, BipartiteDensityMatrix)>> {
    let d = dim as f64;
    if !(-1.0..=1.0 / d).contains(&f) {
        return Err(Error::ParameterRange {
            name: "f",
            value: f,
            min: -1.0,
            max: 1.0 / d,
        });
    }
    let n = dim * dim;
    let mut ensemble = Vec::with_capacity(1 + dim * (dim - 1) / 2);
    let mixed_weight = d * (1.0 + f) / (d + 1.0);
    ensemble.push((
        mixed_weight,
        BipartiteDensityMatrix::from_closed_form(
            dim,
            dim,
            ComplexMatrix::identity(n).scale_re(1.0 / n as f64),
        )?,
    ));
    let singlet_weight = 2.0 * (1.0 - d * f) / (d * (d * d - 1.0));
    let inv_sqrt2 = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut psi = vec![Complex64::ZERO; n];
            psi[i * dim + j] = inv_sqrt2;
            psi[j * dim + i] = -inv_sqrt2;
            ensemble.push((
                singlet_weight,
                BipartiteDensityMatrix::from_closed_form(dim, dim, ComplexMatrix::outer(&psi))?,
            ));
        }
    }
    Ok(ensemble)
}
