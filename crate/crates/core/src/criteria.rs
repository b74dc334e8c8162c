//! Schmidt-number criteria.
//!
//! The central object is the correlation matrix of joint outcome
//! probabilities `entry(alpha, beta) = tr(rho P_alpha (x) Q_beta)` under
//! local GSIC-POVMs. If a bipartite state has Schmidt number at most r, the
//! trace norm of that matrix is bounded by `M/K + (r - 1) N/K` with
//!
//! ```text
//! K = sqrt(d1 d2 (d1^2 - 1)(d2^2 - 1))
//! M = sqrt((a1 d1^2 + 1)(a2 d2^2 + 1)(d1 - 1)(d2 - 1))
//! N = sqrt((a1 d1^3 - 1)(a2 d2^3 - 1))
//! ```
//!
//! so a measured trace norm strictly above the r-th bound certifies Schmidt
//! number at least r + 1. The criterion is one-sided: it never upper-bounds
//! the Schmidt number (there are pure states of full rank it cannot see).
//!
//! Pairing convention: the isotropic closed form assumes the POVM on B is
//! the entrywise conjugate of the one on A, while the Werner closed form
//! assumes the same POVM on both sides. Both pairings are valid criteria;
//! the functions here take the two POVMs explicitly.

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::povm::Povm;
use crate::states::BipartiteDensityMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

const IMAG_RESIDUE_TOL: f64 = 1e-12;

/// How to evaluate the index of coincidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoincidenceMode {
    /// sum_alpha |tr(P_alpha sigma)|^2 over the elements.
    DirectSum,
    /// The GSIC closed form
    /// [(a d^3 - 1) tr(sigma sigma^dag) + d (1 - a d) |tr sigma|^2] / (d (d^2 - 1)).
    ClosedForm,
}

/// Index of coincidence of a linear operator with respect to a GSIC-POVM.
/// The two modes agree within 1e-12 for valid GSICs.
pub fn index_of_coincidence(
    povm: &Povm,
    sigma: &ComplexMatrix,
    mode: CoincidenceMode,
) -> Result<f64> {
    let d = povm.dim();
    if sigma.rows() != d || sigma.cols() != d {
        return Err(Error::Dimension(format!(
            "operator is {}x{}, POVM dimension is {d}",
            sigma.rows(),
            sigma.cols()
        )));
    }
    match mode {
        CoincidenceMode::DirectSum => Ok(povm
            .elements()
            .iter()
            .map(|el| el.matmul(sigma).trace().norm_sqr())
            .sum()),
        CoincidenceMode::ClosedForm => {
            let a = povm.a();
            let d = d as f64;
            let purity: f64 = sigma.data().iter().map(|z| z.norm_sqr()).sum();
            let trace_sq = sigma.trace().norm_sqr();
            Ok(
                ((a * d.powi(3) - 1.0) * purity + d * (1.0 - a * d) * trace_sq)
                    / (d * (d * d - 1.0)),
            )
        }
    }
}

/// Joint outcome probabilities of a state under a local POVM pair:
/// a real d1^2 x d2^2 matrix.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    d1: usize,
    d2: usize,
    a1: f64,
    a2: f64,
    matrix: ComplexMatrix,
}

impl CorrelationMatrix {
    pub fn entry(&self, alpha: usize, beta: usize) -> f64 {
        self.matrix.get(alpha, beta).re
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn trace_norm(&self) -> f64 {
        self.matrix.trace_norm()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn purities(&self) -> (f64, f64) {
        (self.a1, self.a2)
    }
}

/// Born-rule correlation matrix `entry(alpha, beta) = tr(rho P_alpha (x) Q_beta)`.
///
/// Probabilities are stored as reals after checking the imaginary residue of
/// every entry stays below 1e-12; a larger residue flags a defective
/// (non-Hermitian) input.
pub fn correlation_matrix(
    rho: &BipartiteDensityMatrix,
    povm_a: &Povm,
    povm_b: &Povm,
) -> Result<CorrelationMatrix> {
    let (d1, d2) = (rho.d1(), rho.d2());
    if povm_a.dim() != d1 || povm_b.dim() != d2 {
        return Err(Error::Dimension(format!(
            "POVM dims ({}, {}) do not match state dims ({d1}, {d2})",
            povm_a.dim(),
            povm_b.dim()
        )));
    }
    let m = rho.matrix();
    let mut matrix = ComplexMatrix::zeros(d1 * d1, d2 * d2);
    let mut sum = 0.0;
    for (alpha, pa) in povm_a.elements().iter().enumerate() {
        // partial contraction over A: y[mu][nu] = sum_ij A[j][i] rho[(i mu), (j nu)]
        let mut y = ComplexMatrix::zeros(d2, d2);
        for i in 0..d1 {
            for j in 0..d1 {
                let aji = pa.get(j, i);
                if aji == Complex64::ZERO {
                    continue;
                }
                for mu in 0..d2 {
                    for nu in 0..d2 {
                        let v = y.get(mu, nu) + aji * m.get(i * d2 + mu, j * d2 + nu);
                        y.set(mu, nu, v);
                    }
                }
            }
        }
        for (beta, pb) in povm_b.elements().iter().enumerate() {
            let mut val = Complex64::ZERO;
            for mu in 0..d2 {
                for nu in 0..d2 {
                    val += y.get(mu, nu) * pb.get(nu, mu);
                }
            }
            if val.im.abs() > IMAG_RESIDUE_TOL {
                return Err(Error::ImaginaryResidue {
                    row: alpha,
                    col: beta,
                    residue: val.im.abs(),
                });
            }
            if !(-1e-10..=1.0 + 1e-10).contains(&val.re) {
                return Err(Error::Internal(format!(
                    "correlation entry ({alpha}, {beta}) = {} outside [0, 1]",
                    val.re
                )));
            }
            sum += val.re;
            matrix.set(alpha, beta, Complex64::new(val.re, 0.0));
        }
    }
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::Internal(format!(
            "correlation entries sum to {sum}, expected 1 (POVM completeness)"
        )));
    }
    Ok(CorrelationMatrix {
        d1,
        d2,
        a1: povm_a.a(),
        a2: povm_b.a(),
        matrix,
    })
}

/// The constants (K, M, N) of the trace-norm bound.
pub fn bound_constants(d1: usize, d2: usize, a1: f64, a2: f64) -> (f64, f64, f64) {
    let (x, y) = (d1 as f64, d2 as f64);
    let k = (x * y * (x * x - 1.0) * (y * y - 1.0)).sqrt();
    let m = ((a1 * x * x + 1.0) * (a2 * y * y + 1.0) * (x - 1.0) * (y - 1.0)).sqrt();
    let n = ((a1 * x.powi(3) - 1.0) * (a2 * y.powi(3) - 1.0)).sqrt();
    (k, m, n)
}

/// Largest trace norm compatible with Schmidt number at most r:
/// `M/K + (r - 1) N/K`. For d1 = d2 = d and a1 = a2 = a this reduces to
/// `(a d^2 + 1)/(d (d + 1)) + (r - 1)(a d^3 - 1)/(d (d^2 - 1))`.
pub fn gsic_bound(r: usize, d1: usize, d2: usize, a1: f64, a2: f64) -> Result<f64> {
    if r < 1 || r > d1.min(d2) {
        return Err(Error::Argument(format!(
            "Schmidt number candidate r = {r} outside 1..={}",
            d1.min(d2)
        )));
    }
    let (k, m, n) = bound_constants(d1, d2, a1, a2);
    Ok((m + (r as f64 - 1.0) * n) / k)
}

/// Result of applying the trace-norm criterion: the measured trace norm,
/// the per-r thresholds, and the certified Schmidt-number lower bound.
///
/// `sn_lower_bound = 1 + max{r : trace_norm > bounds[r]}` (strict
/// inequality; meeting a bound exactly certifies nothing), or 1 when no
/// bound is exceeded. K, M, N are the bound constants, shared by every r.
#[derive(Debug, Clone)]
pub struct SchmidtCertificate {
    pub trace_norm: f64,
    pub bounds: BTreeMap<usize, f64>,
    pub sn_lower_bound: usize,
    pub k: f64,
    pub m: f64,
    pub n: f64,
    pub d1: usize,
    pub d2: usize,
    pub a1: f64,
    pub a2: f64,
}

impl SchmidtCertificate {
    pub fn from_correlation(corr: &CorrelationMatrix) -> Self {
        let (d1, d2) = corr.dims();
        let (a1, a2) = corr.purities();
        let (k, m, n) = bound_constants(d1, d2, a1, a2);
        let trace_norm = corr.trace_norm();
        let mut bounds = BTreeMap::new();
        let mut certified = 0;
        for r in 1..=d1.min(d2) {
            let bound = (m + (r as f64 - 1.0) * n) / k;
            if trace_norm > bound {
                certified = r;
            }
            bounds.insert(r, bound);
        }
        Self {
            trace_norm,
            bounds,
            sn_lower_bound: 1 + certified,
            k,
            m,
            n,
            d1,
            d2,
            a1,
            a2,
        }
    }

    /// Export as `{trace_norm, bounds, sn_lower_bound, a1, a2, d1, d2}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct CertificateJson<'a> {
            trace_norm: f64,
            bounds: &'a BTreeMap<usize, f64>,
            sn_lower_bound: usize,
            a1: f64,
            a2: f64,
            d1: usize,
            d2: usize,
        }
        serde_json::to_string_pretty(&CertificateJson {
            trace_norm: self.trace_norm,
            bounds: &self.bounds,
            sn_lower_bound: self.sn_lower_bound,
            a1: self.a1,
            a2: self.a2,
            d1: self.d1,
            d2: self.d2,
        })
        .expect("certificate serialization cannot fail")
    }
}

/// Apply the trace-norm criterion to a state under a POVM pair.
pub fn certify_schmidt_number(
    rho: &BipartiteDensityMatrix,
    povm_a: &Povm,
    povm_b: &Povm,
) -> Result<SchmidtCertificate> {
    let corr = correlation_matrix(rho, povm_a, povm_b)?;
    Ok(SchmidtCertificate::from_correlation(&corr))
}

/// CCNR (realignment) value: the trace norm of the realigned state.
/// Values above 1 witness entanglement. Equals the trace norm of the
/// correlation matrix taken in full orthonormal Hermitian operator bases on
/// both sides.
pub fn ccnr_value(rho: &BipartiteDensityMatrix) -> f64 {
    rho.realign().trace_norm()
}

/// Closed-form trace norm of the isotropic-state correlation matrix under a
/// (P, conj P) GSIC pair: `1/d^2 + |v| (a d^3 - 1)/d^2`. The correlation
/// matrix has one eigenvalue 1/d^2 and d^2 - 1 eigenvalues
/// `v (a d^3 - 1)/(d^2 (d^2 - 1))`.
pub fn isotropic_trace_norm(dim: usize, a: f64, v: f64) -> f64 {
    let d = dim as f64;
    1.0 / (d * d) + v.abs() * (a * d.powi(3) - 1.0) / (d * d)
}

/// Closed-form trace norm of the Werner-state correlation matrix under a
/// (P, P) GSIC pair: `1/d^2 + |d f - 1| (a d^3 - 1)/(d^2 (d^2 - 1))`. The
/// correlation matrix is symmetric with eigenvalues 1/d^2 and (d^2 - 1
/// copies of) `(d f - 1)(a d^3 - 1)/(d^2 (d^2 - 1)^2)`, so its singular
/// values are their absolute values.
pub fn werner_trace_norm(dim: usize, a: f64, f: f64) -> f64 {
    let d = dim as f64;
    1.0 / (d * d) + (d * f - 1.0).abs() * (a * d.powi(3) - 1.0) / (d * d * (d * d - 1.0))
}

/// Comparison criteria whose isotropic-state critical visibilities have
/// closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisibilityCriterion {
    /// Fidelity witness: v > (r d - 1)/(d^2 - 1) certifies SN >= r + 1.
    Fidelity,
    /// This crate's trace-norm criterion; identical threshold to Fidelity.
    Gsic,
    /// m mutually unbiased bases: (d - r + m (r - 1)) / (m (d - 1)).
    Mub,
    /// Equiangular measurement with n elements (as in the cited
    /// comparison): (d - r)/(n - 1) + (r - 1)/(d - 1).
    Eam,
}

/// Critical visibility above which the given criterion certifies the
/// isotropic state has Schmidt number at least r + 1. `count` is the number
/// of bases m (MUB) or of measurement elements n (EAM) and is required for
/// those kinds.
pub fn critical_visibility(
    kind: VisibilityCriterion,
    dim: usize,
    r: usize,
    count: Option<usize>,
) -> Result<f64> {
    if r < 1 || r >= dim {
        return Err(Error::Argument(format!(
            "r = {r} outside 1..{dim} for critical visibility"
        )));
    }
    let d = dim as f64;
    let rr = r as f64;
    match kind {
        VisibilityCriterion::Fidelity | VisibilityCriterion::Gsic => {
            Ok((rr * d - 1.0) / (d * d - 1.0))
        }
        VisibilityCriterion::Mub => {
            let m = count.ok_or_else(|| {
                Error::Argument("MUB visibility needs the number of bases m".into())
            })?;
            if m < 2 {
                return Err(Error::Argument(format!("need m >= 2 bases, got {m}")));
            }
            let m = m as f64;
            Ok((d - rr + m * (rr - 1.0)) / (m * (d - 1.0)))
        }
        VisibilityCriterion::Eam => {
            let n = count.ok_or_else(|| {
                Error::Argument("EAM visibility needs the number of elements n".into())
            })?;
            if n < 2 {
                return Err(Error::Argument(format!("need n >= 2 elements, got {n}")));
            }
            let n = n as f64;
            Ok((d - rr) / (n - 1.0) + (rr - 1.0) / (d - 1.0))
        }
    }
}

/// The GSIC criterion certifies a Werner state has Schmidt number at least
/// r + 1 exactly when f < 2/d - r.
pub fn werner_detection_threshold(dim: usize, r: usize) -> f64 {
    2.0 / dim as f64 - r as f64
}
