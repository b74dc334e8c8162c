//! Hermitian operator bases and GSIC/SIC POVMs.
//!
//! A GSIC-POVM on H_d is a set of d^2 positive operators P_a with
//! sum(P_a) = I, tr(P_a) = 1/d, tr(P_a^2) = a and equal pairwise overlaps
//! tr(P_a P_b) = (1 - a d) / (d (d^2 - 1)), where 1/d^3 < a <= 1/d^2.
//! The a = 1/d^2 boundary is the rank-one (SIC) case.
//!
//! GSICs are built here in two ways: from an orthonormal traceless Hermitian
//! operator basis together with a strength parameter `t`, and as the
//! Weyl-Heisenberg orbit of a fiducial vector (rank-one case).

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HERMITICITY_TOL};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Tolerance for accepting externally supplied or fiducial-generated POVMs.
const CONSTRUCTION_TOL: f64 = 1e-8;

/// Orthonormal Hermitian operator basis of H_d: the identity component
/// I/sqrt(d) plus d^2 - 1 traceless generators.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    dim: usize,
    generators: Vec<ComplexMatrix>,
}

impl HermitianBasis {
    /// Generalized Gell-Mann basis of H_d, d >= 2.
    ///
    /// Generator ordering: symmetric pairs (i, j) in lexicographic order,
    /// then antisymmetric pairs in the same order, then the d - 1 diagonal
    /// generators with increasing support. For d = 2 this is
    /// {sigma_x, sigma_y, sigma_z} / sqrt(2).
    pub fn gell_mann(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::ParameterRange {
                name: "dim",
                value: dim as f64,
                min: 2.0,
                max: f64::INFINITY,
            });
        }
        let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
        let mut generators = Vec::with_capacity(dim * dim - 1);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let mut m = ComplexMatrix::zeros(dim, dim);
                m.set(i, j, Complex64::new(inv_sqrt2, 0.0));
                m.set(j, i, Complex64::new(inv_sqrt2, 0.0));
                generators.push(m);
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let mut m = ComplexMatrix::zeros(dim, dim);
                m.set(i, j, Complex64::new(0.0, -inv_sqrt2));
                m.set(j, i, Complex64::new(0.0, inv_sqrt2));
                generators.push(m);
            }
        }
        for l in 1..dim {
            let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
            let mut m = ComplexMatrix::zeros(dim, dim);
            for k in 0..l {
                m.set(k, k, Complex64::new(norm, 0.0));
            }
            m.set(l, l, Complex64::new(-(l as f64) * norm, 0.0));
            generators.push(m);
        }
        Self::from_generators(dim, generators)
    }

    /// Wrap and validate a generator list: each traceless within 1e-12,
    /// pairwise Hilbert-Schmidt orthonormal within 1e-10.
    pub fn from_generators(dim: usize, generators: Vec<ComplexMatrix>) -> Result<Self> {
        if generators.len() != dim * dim - 1 {
            return Err(Error::Dimension(format!(
                "expected {} generators for d = {}, got {}",
                dim * dim - 1,
                dim,
                generators.len()
            )));
        }
        for (alpha, g) in generators.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!(
                    "generator {alpha} is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            let (row, col, deviation) = g.hermiticity_violation();
            if deviation > HERMITICITY_TOL {
                return Err(Error::NonHermitian {
                    row,
                    col,
                    deviation,
                });
            }
            let tr = g.trace().norm();
            if tr > 1e-12 {
                return Err(Error::DegenerateBasis(format!(
                    "generator {alpha} has trace magnitude {tr:.3e} > 1e-12"
                )));
            }
        }
        for a in 0..generators.len() {
            for b in a..generators.len() {
                let inner = generators[a].hs_inner(&generators[b]);
                let expect = if a == b { 1.0 } else { 0.0 };
                if (inner - Complex64::new(expect, 0.0)).norm() > 1e-10 {
                    return Err(Error::DegenerateBasis(format!(
                        "generators {a}, {b} have Hilbert-Schmidt inner product {inner} (expected {expect})"
                    )));
                }
            }
        }
        Ok(Self { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// The identity component G_0 = I / sqrt(d).
    pub fn identity_component(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim).scale_re(1.0 / (self.dim as f64).sqrt())
    }

    /// Entrywise sum of the traceless generators.
    pub fn sum_operator(&self) -> ComplexMatrix {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for g in &self.generators {
            sum = sum.add(g);
        }
        sum
    }

    /// Valid closed interval for the GSIC construction parameter `t`.
    ///
    /// The endpoints are -(1/d^2)/lambda_max and (1/d^2)/|lambda_min| where
    /// lambda_max / lambda_min are the extreme eigenvalues over the combined
    /// spectra of {G - d(d+1) G_alpha} and (d+1) G, with G the generator sum.
    pub fn t_range(&self) -> Result<(f64, f64)> {
        let d = self.dim as f64;
        let g = self.sum_operator();
        let mut lambda_max = f64::NEG_INFINITY;
        let mut lambda_min = f64::INFINITY;
        for gen in &self.generators {
            let op = g.sub(&gen.scale_re(d * (d + 1.0)));
            let eigs = op.herm_eigenvalues()?;
            lambda_min = lambda_min.min(eigs[0]);
            lambda_max = lambda_max.max(*eigs.last().unwrap());
        }
        let eigs = g.scale_re(d + 1.0).herm_eigenvalues()?;
        lambda_min = lambda_min.min(eigs[0]);
        lambda_max = lambda_max.max(*eigs.last().unwrap());
        if lambda_max < 1e-12 || lambda_min > -1e-12 {
            return Err(Error::DegenerateBasis(format!(
                "construction operators have one-sided spectrum: lambda_min = {lambda_min:.3e}, lambda_max = {lambda_max:.3e}"
            )));
        }
        Ok((
            -1.0 / (d * d * lambda_max),
            1.0 / (d * d * lambda_min.abs()),
        ))
    }

    /// Apply a real orthogonal mixing to the generators.
    pub fn rotate(&self, o: &ComplexMatrix) -> Result<Self> {
        let n = self.generators.len();
        if o.rows() != n || o.cols() != n {
            return Err(Error::Dimension(format!(
                "rotation matrix is {}x{}, expected {n}x{n}",
                o.rows(),
                o.cols()
            )));
        }
        let gram = o.transpose().matmul(o);
        let mut worst = (0, 0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                let dev = (gram.get(i, j) - Complex64::new(expect, 0.0)).norm();
                let im = o.get(i, j).im.abs();
                let dev = dev.max(im);
                if dev > worst.2 {
                    worst = (i, j, dev);
                }
            }
        }
        if worst.2 > 1e-10 {
            return Err(Error::NotOrthogonal {
                row: worst.0,
                col: worst.1,
                deviation: worst.2,
            });
        }
        let rotated: Vec<ComplexMatrix> = (0..n)
            .map(|alpha| {
                let mut m = ComplexMatrix::zeros(self.dim, self.dim);
                for beta in 0..n {
                    m = m.add(&self.generators[beta].scale_re(o.get(alpha, beta).re));
                }
                m
            })
            .collect();
        Self::from_generators(self.dim, rotated)
    }
}

/// Purity parameter of the basis construction:
/// a = 1/d^3 + t^2 (d - 1)(d + 1)^3.
pub fn a_from_t(dim: usize, t: f64) -> f64 {
    let d = dim as f64;
    1.0 / d.powi(3) + t * t * (d - 1.0) * (d + 1.0).powi(3)
}

/// How a POVM was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PovmKind {
    GsicFromBasis,
    SicWeylHeisenberg,
    External,
}

/// An ordered set of d^2 measurement operators with GSIC metadata.
#[derive(Debug, Clone)]
pub struct Povm {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    a: f64,
    t: Option<f64>,
    kind: PovmKind,
}

impl Povm {
    /// GSIC construction from an orthonormal traceless basis:
    /// P_alpha = I/d^2 + t (G - d(d+1) G_alpha) for alpha < d^2 - 1 and
    /// P_{d^2} = I/d^2 + t (d+1) G.
    ///
    /// `t` must lie in the closed interval from [`HermitianBasis::t_range`];
    /// t = 0 is rejected because the resulting purity a = 1/d^3 sits on the
    /// excluded boundary of the GSIC family.
    pub fn gsic_from_basis(basis: &HermitianBasis, t: f64) -> Result<Self> {
        let dim = basis.dim();
        let d = dim as f64;
        if t == 0.0 {
            return Err(Error::InvalidPurity {
                a: a_from_t(dim, 0.0),
                dim,
                min: 1.0 / d.powi(3),
                max: 1.0 / (d * d),
            });
        }
        let (t_min, t_max) = basis.t_range()?;
        let identity_part = ComplexMatrix::identity(dim).scale_re(1.0 / (d * d));
        let g = basis.sum_operator();
        let mut elements: Vec<ComplexMatrix> = basis
            .generators()
            .iter()
            .map(|gen| identity_part.add(&g.sub(&gen.scale_re(d * (d + 1.0))).scale_re(t)))
            .collect();
        elements.push(identity_part.add(&g.scale_re(t * (d + 1.0))));

        let slack = 1e-12 * t_max.abs().max(t_min.abs());
        if t < t_min - slack || t > t_max + slack {
            let mut worst = f64::INFINITY;
            for el in &elements {
                worst = worst.min(el.herm_eigenvalues()?[0]);
            }
            return Err(Error::TOutOfRange {
                t,
                t_min,
                t_max,
                worst_eigenvalue: worst,
            });
        }
        Ok(Self {
            dim,
            elements,
            a: a_from_t(dim, t),
            t: Some(t),
            kind: PovmKind::GsicFromBasis,
        })
    }

    /// SIC-POVM as the Weyl-Heisenberg orbit of a fiducial vector:
    /// elements |psi_pq><psi_pq| / d with psi_pq = X^p Z^q |fiducial>,
    /// X the cyclic shift and Z = diag(omega^k), omega = exp(2 pi i / d).
    ///
    /// The fiducial must be normalized within 1e-12 and must actually
    /// generate a SIC; the orbit is validated before being accepted.
    pub fn sic_weyl_heisenberg(dim: usize, fiducial: &[Complex64]) -> Result<Self> {
        if fiducial.len() != dim {
            return Err(Error::InvalidFiducial(format!(
                "fiducial has {} components, expected {dim}",
                fiducial.len()
            )));
        }
        let norm: f64 = fiducial.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidFiducial(format!(
                "fiducial norm {norm} deviates from 1 by more than 1e-12"
            )));
        }
        let d = dim as f64;
        let mut elements = Vec::with_capacity(dim * dim);
        for p in 0..dim {
            for q in 0..dim {
                let mut psi = vec![Complex64::ZERO; dim];
                for (k, slot) in psi.iter_mut().enumerate() {
                    let src = (k + dim - p) % dim;
                    let phase = Complex64::from_polar(1.0, 2.0 * PI * (q * src) as f64 / d);
                    *slot = phase * fiducial[src];
                }
                elements.push(ComplexMatrix::outer(&psi).scale_re(1.0 / d));
            }
        }
        let povm = Self {
            dim,
            elements,
            a: 1.0 / (d * d),
            t: None,
            kind: PovmKind::SicWeylHeisenberg,
        };
        let report = povm.validate(CONSTRUCTION_TOL);
        if !report.passes(CONSTRUCTION_TOL) {
            return Err(Error::InvalidFiducial(format!(
                "orbit is not a SIC: {}",
                report.failure_summary(CONSTRUCTION_TOL)
            )));
        }
        Ok(povm)
    }

    /// Wrap externally supplied elements, measuring the purity `a` from them
    /// and validating the GSIC conditions.
    pub fn external(dim: usize, elements: Vec<ComplexMatrix>) -> Result<Self> {
        if elements.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} elements for d = {dim}, got {}",
                dim * dim,
                elements.len()
            )));
        }
        for (i, el) in elements.iter().enumerate() {
            if el.rows() != dim || el.cols() != dim {
                return Err(Error::Dimension(format!(
                    "element {i} is {}x{}, expected {dim}x{dim}",
                    el.rows(),
                    el.cols()
                )));
            }
        }
        let a = elements
            .iter()
            .map(|el| el.matmul(el).trace().re)
            .sum::<f64>()
            / (dim * dim) as f64;
        check_purity_range(dim, a)?;
        let povm = Self {
            dim,
            elements,
            a,
            t: None,
            kind: PovmKind::External,
        };
        let report = povm.validate(CONSTRUCTION_TOL);
        if !report.passes(CONSTRUCTION_TOL) {
            return Err(Error::PovmInvalid(report.failure_summary(CONSTRUCTION_TOL)));
        }
        Ok(povm)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn t(&self) -> Option<f64> {
        self.t
    }

    pub fn kind(&self) -> PovmKind {
        self.kind
    }

    /// Check the five GSIC conditions, returning worst-case deviations.
    pub fn validate(&self, psd_tol: f64) -> ValidationReport {
        let d = self.dim as f64;
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for el in &self.elements {
            sum = sum.add(el);
        }
        let completeness_dev = sum.max_abs_diff(&ComplexMatrix::identity(self.dim));

        let mut trace_dev: f64 = 0.0;
        let mut purity_dev: f64 = 0.0;
        let mut measured_a = 0.0;
        let mut min_eigenvalue = f64::INFINITY;
        for el in &self.elements {
            trace_dev = trace_dev.max((el.trace() - Complex64::new(1.0 / d, 0.0)).norm());
            let purity = el.matmul(el).trace().re;
            measured_a += purity;
            purity_dev = purity_dev.max((purity - self.a).abs());
            match el.herm_eigenvalues() {
                Ok(eigs) => min_eigenvalue = min_eigenvalue.min(eigs[0]),
                Err(_) => min_eigenvalue = f64::NEG_INFINITY,
            }
        }
        measured_a /= (self.dim * self.dim) as f64;

        let expected_overlap = (1.0 - self.a * d) / (d * (d * d - 1.0));
        let mut overlap_dev: f64 = 0.0;
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let overlap = self.elements[i].matmul(&self.elements[j]).trace().re;
                overlap_dev = overlap_dev.max((overlap - expected_overlap).abs());
            }
        }

        ValidationReport {
            completeness_dev,
            trace_dev,
            purity_dev,
            overlap_dev,
            min_eigenvalue,
            declared_a: self.a,
            measured_a,
            psd_tol_used: psd_tol,
        }
    }

    /// Entrywise complex conjugate of every element; the result is another
    /// GSIC with the same purity.
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            elements: self.elements.iter().map(|el| el.conj()).collect(),
            a: self.a,
            t: self.t,
            kind: self.kind,
        }
    }

    /// Dual-frame reconstruction of an operator from its measurement values:
    /// sigma = sum_alpha d(d^2-1)/(a d^3 - 1) tr(P_alpha sigma) P_alpha
    ///         - (d - a d^2)/(a d^3 - 1) tr(sigma) I.
    pub fn reconstruct(&self, sigma: &ComplexMatrix) -> Result<ComplexMatrix> {
        if sigma.rows() != self.dim || sigma.cols() != self.dim {
            return Err(Error::Dimension(format!(
                "operator is {}x{}, POVM dimension is {}",
                sigma.rows(),
                sigma.cols(),
                self.dim
            )));
        }
        let d = self.dim as f64;
        let denom = self.a * d.powi(3) - 1.0;
        let frame_coeff = d * (d * d - 1.0) / denom;
        let trace_coeff = (d - self.a * d * d) / denom;
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for el in &self.elements {
            let weight = el.matmul(sigma).trace() * frame_coeff;
            out = out.add(&el.scale(weight));
        }
        let correction = ComplexMatrix::identity(self.dim)
            .scale(sigma.trace() * Complex64::new(trace_coeff, 0.0));
        Ok(out.sub(&correction))
    }

    /// Orthonormal Hermitian operator basis built from the POVM elements:
    /// F_alpha = sqrt(d(d^2-1)/(a d^3 - 1)) P_alpha
    ///           + (1/(d sqrt(d))) (1 - sqrt((d^2-1)/(a d^3 - 1))) I.
    pub fn f_basis(&self) -> Result<Vec<ComplexMatrix>> {
        let d = self.dim as f64;
        let denom = self.a * d.powi(3) - 1.0;
        if denom <= 0.0 {
            return Err(Error::InvalidPurity {
                a: self.a,
                dim: self.dim,
                min: 1.0 / d.powi(3),
                max: 1.0 / (d * d),
            });
        }
        let scale = (d * (d * d - 1.0) / denom).sqrt();
        let shift = (1.0 - ((d * d - 1.0) / denom).sqrt()) / (d * d.sqrt());
        let identity = ComplexMatrix::identity(self.dim);
        Ok(self
            .elements
            .iter()
            .map(|el| el.scale_re(scale).add(&identity.scale_re(shift)))
            .collect())
    }

    /// Serialize as JSON: `{dim, a, t?, kind, elements}` with each element a
    /// row-major matrix of `[re, im]` pairs.
    pub fn to_json(&self) -> String {
        let dto = PovmJson {
            dim: self.dim,
            a: self.a,
            t: self.t,
            kind: self.kind,
            elements: self
                .elements
                .iter()
                .map(|el| {
                    (0..el.rows())
                        .map(|i| (0..el.cols()).map(|j| pack(el.get(i, j))).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("POVM serialization cannot fail")
    }

    /// Parse and re-validate a POVM from [`Povm::to_json`] output.
    pub fn from_json(json: &str) -> Result<Self> {
        let dto: PovmJson = serde_json::from_str(json)?;
        let elements = dto
            .elements
            .iter()
            .map(|rows| unpack_matrix(rows))
            .collect::<Result<Vec<_>>>()?;
        let povm = Self {
            dim: dto.dim,
            elements,
            a: dto.a,
            t: dto.t,
            kind: dto.kind,
        };
        if povm.elements.len() != dto.dim * dto.dim {
            return Err(Error::Dimension(format!(
                "expected {} elements, file has {}",
                dto.dim * dto.dim,
                povm.elements.len()
            )));
        }
        check_purity_range(dto.dim, dto.a)?;
        let report = povm.validate(CONSTRUCTION_TOL);
        if !report.passes(CONSTRUCTION_TOL) {
            return Err(Error::PovmInvalid(report.failure_summary(CONSTRUCTION_TOL)));
        }
        Ok(povm)
    }
}

/// The GSIC purity must lie strictly above 1/d^3 (the flat-POVM boundary,
/// where the dual-frame formulas degenerate) and at most 1/d^2.
fn check_purity_range(dim: usize, a: f64) -> Result<()> {
    let d = dim as f64;
    let min = 1.0 / d.powi(3);
    let max = 1.0 / (d * d);
    if a <= min + 1e-12 || a > max + 1e-12 {
        return Err(Error::InvalidPurity { a, dim, min, max });
    }
    Ok(())
}

fn pack(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub(crate) fn unpack_matrix(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix> {
    let r = rows.len();
    let c = rows.first().map_or(0, |row| row.len());
    if rows.iter().any(|row| row.len() != c) {
        return Err(Error::Dimension("ragged matrix rows in JSON".into()));
    }
    ComplexMatrix::from_vec(
        r,
        c,
        rows.iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
struct PovmJson {
    dim: usize,
    a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    kind: PovmKind,
    elements: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Worst-case deviations from the five GSIC conditions.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// max |sum(P) - I| entrywise
    pub completeness_dev: f64,
    /// max_alpha |tr(P_alpha) - 1/d|
    pub trace_dev: f64,
    /// max_alpha |tr(P_alpha^2) - a|
    pub purity_dev: f64,
    /// max over pairs |tr(P_alpha P_beta) - (1 - a d)/(d (d^2 - 1))|
    pub overlap_dev: f64,
    /// most negative eigenvalue over all elements
    pub min_eigenvalue: f64,
    /// purity the POVM claims
    pub declared_a: f64,
    /// mean of tr(P_alpha^2) over the elements
    pub measured_a: f64,
    /// PSD tolerance the report was produced with
    pub psd_tol_used: f64,
}

impl ValidationReport {
    pub fn conditions(&self, tol: f64) -> [(&'static str, bool); 5] {
        [
            ("completeness", self.completeness_dev <= tol),
            ("equal trace 1/d", self.trace_dev <= tol),
            ("equal purity a", self.purity_dev <= tol),
            ("equal pairwise overlap", self.overlap_dev <= tol),
            ("positive semidefinite", self.min_eigenvalue >= -tol),
        ]
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.conditions(tol).iter().all(|(_, ok)| *ok)
    }

    pub fn failure_summary(&self, tol: f64) -> String {
        let failed: Vec<&str> = self
            .conditions(tol)
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect();
        format!(
            "violated conditions at tol {tol:.1e}: [{}]; deviations: completeness {:.3e}, trace {:.3e}, purity {:.3e}, overlap {:.3e}, min eigenvalue {:.3e}",
            failed.join(", "),
            self.completeness_dev,
            self.trace_dev,
            self.purity_dev,
            self.overlap_dev,
            self.min_eigenvalue,
        )
    }
}

/// Built-in SIC fiducial vectors.
///
/// Only d = 2 and d = 3 ship with the library; for other dimensions the
/// caller must supply (and we will validate) a fiducial vector, since no
/// general closed-form family is known.
pub fn builtin_sic_fiducial(dim: usize) -> Option<Vec<Complex64>> {
    match dim {
        2 => {
            let c0 = ((3.0 + 3.0_f64.sqrt()) / 6.0).sqrt();
            let c1 = ((3.0 - 3.0_f64.sqrt()) / 6.0).sqrt();
            Some(vec![
                Complex64::new(c0, 0.0),
                Complex64::from_polar(c1, PI / 4.0),
            ])
        }
        3 => {
            let s = 1.0 / 2.0_f64.sqrt();
            Some(vec![
                Complex64::ZERO,
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ])
        }
        _ => None,
    }
}
