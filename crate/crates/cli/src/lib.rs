//! Library half of the `schmidt-scope` command-line tool: everything the
//! binary does is a pure function from a config to output text, so the
//! integration tests can drive it without spawning processes.
//!
//! Exit-code convention: 0 success, 1 criterion/validation failure (output
//! is still well formed), 2 malformed input or unusable configuration.

use schmidt_scope::criteria::{
    ccnr_value, certify_schmidt_number, critical_visibility, VisibilityCriterion,
};
use schmidt_scope::povm::{builtin_sic_fiducial, HermitianBasis, Povm};
use schmidt_scope::sample::random_orthogonal;
use schmidt_scope::states::{
    add_white_noise, bound_entangled_horodecki, isotropic, werner, BipartiteDensityMatrix,
};
use schmidt_scope::{Complex64, Error};

/// Failure carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub code: u8,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Fixed float formatting for CSV output: 17 significant digits, so runs
/// are byte-identical and values round-trip exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Default seed: the SCHMIDT_SCOPE_SEED environment variable, else 0.
pub fn default_seed() -> u64 {
    std::env::var("SCHMIDT_SCOPE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// 3x3 bound entangled family mixed with white noise at strength 1 - q;
    /// the scan parameter is x.
    BoundEntangled { q: f64 },
    /// Isotropic states on d x d; the scan parameter is the visibility v.
    Isotropic { d: usize },
    /// Werner states on d x d; the scan parameter is f.
    Werner { d: usize },
}

impl Family {
    fn dim(&self) -> usize {
        match self {
            Family::BoundEntangled { .. } => 3,
            Family::Isotropic { d } | Family::Werner { d } => *d,
        }
    }

    fn default_grid(&self) -> (f64, f64) {
        match self {
            // the open-endpoint behavior of the bound entangled family is
            // not asserted, so the default grid stays inside (0, 1)
            Family::BoundEntangled { .. } => (0.001, 0.999),
            Family::Isotropic { .. } => (0.0, 1.0),
            Family::Werner { .. } => (-1.0, 1.0),
        }
    }

    fn state(&self, param: f64) -> Result<BipartiteDensityMatrix, Error> {
        match self {
            Family::BoundEntangled { q } => add_white_noise(&bound_entangled_horodecki(param)?, *q),
            Family::Isotropic { d } => isotropic(*d, param),
            Family::Werner { d } => werner(*d, param),
        }
    }

    /// The POVM on B: the conjugate pairing for the bound entangled and
    /// isotropic families, the direct pairing for Werner states (whose
    /// closed form is derived for it).
    fn pair(&self, povm: &Povm) -> Povm {
        match self {
            Family::Werner { .. } => povm.clone(),
            _ => povm.conjugate(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    /// Trace-norm criterion with the basis-built GSIC at strength t.
    Gsic { t: f64 },
    /// Trace-norm criterion with the built-in SIC (d = 2, 3 only).
    Sic,
    /// Realignment criterion.
    Ccnr,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Gsic { .. } => "gsic",
            Criterion::Sic => "sic",
            Criterion::Ccnr => "ccnr",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub family: Family,
    pub criterion: Criterion,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub seed: u64,
    /// Rotate the operator basis by a seeded random orthogonal matrix
    /// before building the GSIC (demonstrates rotation invariance).
    pub rotate: bool,
}

impl ScanConfig {
    pub fn new(family: Family, criterion: Criterion) -> Self {
        let (min, max) = family.default_grid();
        Self {
            family,
            criterion,
            min,
            max,
            steps: 200,
            seed: default_seed(),
            rotate: false,
        }
    }
}

fn build_scan_povm(cfg: &ScanConfig) -> Result<Option<Povm>, CliError> {
    let d = cfg.family.dim();
    match cfg.criterion {
        Criterion::Ccnr => Ok(None),
        Criterion::Sic => {
            if cfg.rotate {
                return Err(CliError::malformed(
                    "--rotate applies to the basis-built GSIC only",
                ));
            }
            let fiducial = builtin_sic_fiducial(d).ok_or_else(|| {
                CliError::malformed(format!("no built-in SIC fiducial for d = {d}"))
            })?;
            Povm::sic_weyl_heisenberg(d, &fiducial)
                .map(Some)
                .map_err(|e| CliError::malformed(e.to_string()))
        }
        Criterion::Gsic { t } => {
            let mut basis =
                HermitianBasis::gell_mann(d).map_err(|e| CliError::malformed(e.to_string()))?;
            if cfg.rotate {
                basis = basis
                    .rotate(&random_orthogonal(d * d - 1, cfg.seed))
                    .map_err(|e| CliError::malformed(e.to_string()))?;
            }
            Povm::gsic_from_basis(&basis, t)
                .map(Some)
                .map_err(|e| CliError::malformed(e.to_string()))
        }
    }
}

/// Run a parameter scan and return the CSV text
/// (`param,value,criterion,a,t` with one row per grid point).
///
/// The value column is the detection margin: `||P||_tr` minus the r = 1
/// bound for the trace-norm criteria, and `||C||_tr - 1` for CCNR; positive
/// values certify Schmidt number >= 2.
pub fn run_scan(cfg: &ScanConfig) -> Result<String, CliError> {
    if cfg.steps < 2 {
        return Err(CliError::malformed(format!(
            "steps = {} must be at least 2",
            cfg.steps
        )));
    }
    if cfg.min.is_nan() || cfg.max.is_nan() || cfg.min >= cfg.max {
        return Err(CliError::malformed(format!(
            "empty grid: min = {} must be below max = {}",
            cfg.min, cfg.max
        )));
    }
    let povm = build_scan_povm(cfg)?;
    let pair = povm.as_ref().map(|p| cfg.family.pair(p));

    let mut out = String::from("param,value,criterion,a,t\n");
    for i in 0..cfg.steps {
        let param = cfg.min + (cfg.max - cfg.min) * i as f64 / (cfg.steps - 1) as f64;
        let rho = cfg
            .family
            .state(param)
            .map_err(|e| CliError::malformed(e.to_string()))?;
        let (value, a_col, t_col) = match (&cfg.criterion, &povm, &pair) {
            (Criterion::Ccnr, _, _) => (ccnr_value(&rho) - 1.0, String::new(), String::new()),
            (crit, Some(p), Some(q)) => {
                let cert = certify_schmidt_number(&rho, p, q)
                    .map_err(|e| CliError::malformed(e.to_string()))?;
                let t_col = match crit {
                    Criterion::Gsic { t } => fmt_float(*t),
                    _ => String::new(),
                };
                (cert.trace_norm - cert.bounds[&1], fmt_float(p.a()), t_col)
            }
            _ => unreachable!("trace-norm criteria always carry a POVM"),
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_float(param),
            fmt_float(value),
            cfg.criterion.name(),
            a_col,
            t_col
        ));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// POVM on B is the entrywise conjugate of the one on A (the pairing
    /// the isotropic and bound-entangled reproductions use).
    Conjugate,
    /// Same POVM on both sides (the pairing the Werner closed form uses).
    Direct,
}

#[derive(Debug, Clone, Copy)]
pub enum MeasurementChoice {
    Gsic { t: f64 },
    Sic,
}

/// Certify a state loaded from density-matrix JSON. Returns the
/// human-readable summary and the certificate JSON.
pub fn run_certify(
    state_json: &str,
    choice: MeasurementChoice,
    pairing: Pairing,
) -> Result<(String, String), CliError> {
    let rho = BipartiteDensityMatrix::from_json(state_json)
        .map_err(|e| CliError::malformed(e.to_string()))?;
    let (d1, d2) = (rho.d1(), rho.d2());

    let build = |d: usize| -> Result<Povm, CliError> {
        match choice {
            MeasurementChoice::Gsic { t } => {
                let basis =
                    HermitianBasis::gell_mann(d).map_err(|e| CliError::malformed(e.to_string()))?;
                Povm::gsic_from_basis(&basis, t).map_err(|e| CliError::malformed(e.to_string()))
            }
            MeasurementChoice::Sic => {
                let fiducial = builtin_sic_fiducial(d).ok_or_else(|| {
                    CliError::malformed(format!(
                        "no built-in SIC fiducial for d = {d}; use --t instead"
                    ))
                })?;
                Povm::sic_weyl_heisenberg(d, &fiducial)
                    .map_err(|e| CliError::malformed(e.to_string()))
            }
        }
    };
    let povm_a = build(d1)?;
    let povm_b = match pairing {
        Pairing::Conjugate => build(d2)?.conjugate(),
        Pairing::Direct => build(d2)?,
    };
    let cert = certify_schmidt_number(&rho, &povm_a, &povm_b)
        .map_err(|e| CliError::malformed(e.to_string()))?;

    let mut summary = String::new();
    summary.push_str(&format!("state: d1 = {d1}, d2 = {d2}\n"));
    let side_b = match pairing {
        Pairing::Conjugate => "conjugate POVM on B",
        Pairing::Direct => "same POVM on B",
    };
    match choice {
        MeasurementChoice::Gsic { t } => summary.push_str(&format!(
            "measurement: GSIC t = {t} (a = {:.10}), {side_b}\n",
            povm_a.a()
        )),
        MeasurementChoice::Sic => summary.push_str(&format!(
            "measurement: SIC (a = {:.10}), {side_b}\n",
            povm_a.a()
        )),
    }
    summary.push_str(&format!("trace norm = {:.12}\n", cert.trace_norm));
    for (r, bound) in &cert.bounds {
        let verdict = if cert.trace_norm > *bound {
            "exceeded -> Schmidt number > r"
        } else {
            "not exceeded"
        };
        summary.push_str(&format!("  r = {r}: bound {bound:.12}  {verdict}\n"));
    }
    summary.push_str(&format!(
        "certified Schmidt number >= {}\n",
        cert.sn_lower_bound
    ));
    Ok((summary, cert.to_json()))
}

/// Generate a POVM and return its JSON. Construction failures (t outside
/// the valid interval, fiducial not generating a SIC) are reported with
/// exit code 1 and the validation detail in the message.
pub fn run_povm_gen(
    d: usize,
    choice: MeasurementChoice,
    rotate_seed: Option<u64>,
) -> Result<String, CliError> {
    let povm = match choice {
        MeasurementChoice::Gsic { t } => {
            let mut basis =
                HermitianBasis::gell_mann(d).map_err(|e| CliError::malformed(e.to_string()))?;
            if let Some(seed) = rotate_seed {
                basis = basis
                    .rotate(&random_orthogonal(d * d - 1, seed))
                    .map_err(|e| CliError::malformed(e.to_string()))?;
            }
            Povm::gsic_from_basis(&basis, t).map_err(|e| CliError::failed(e.to_string()))?
        }
        MeasurementChoice::Sic => {
            if rotate_seed.is_some() {
                return Err(CliError::malformed(
                    "--rotate-seed applies to the basis-built GSIC only",
                ));
            }
            let fiducial = builtin_sic_fiducial(d).ok_or_else(|| {
                CliError::malformed(format!("no built-in SIC fiducial for d = {d}"))
            })?;
            Povm::sic_weyl_heisenberg(d, &fiducial).map_err(|e| CliError::failed(e.to_string()))?
        }
    };
    Ok(povm.to_json())
}

/// Generate a SIC from a user-supplied fiducial (JSON list of [re, im]).
pub fn run_povm_gen_fiducial(d: usize, fiducial_json: &str) -> Result<String, CliError> {
    let parsed: Vec<[f64; 2]> = serde_json::from_str(fiducial_json)
        .map_err(|e| CliError::malformed(format!("bad fiducial JSON: {e}")))?;
    let fiducial: Vec<Complex64> = parsed
        .into_iter()
        .map(|[re, im]| Complex64::new(re, im))
        .collect();
    let povm =
        Povm::sic_weyl_heisenberg(d, &fiducial).map_err(|e| CliError::failed(e.to_string()))?;
    Ok(povm.to_json())
}

/// Validate a POVM JSON file against the GSIC conditions at the given
/// tolerance. Returns (report text, all passed).
pub fn run_povm_validate(povm_json: &str, tol: f64) -> Result<(String, bool), CliError> {
    // distinguish malformed files (exit 2) from well-formed POVMs that fail
    // the conditions (exit 1 with the report)
    let povm = match Povm::from_json(povm_json) {
        Ok(p) => p,
        Err(Error::Json(e)) => return Err(CliError::malformed(format!("bad JSON: {e}"))),
        Err(Error::Dimension(e)) => return Err(CliError::malformed(e)),
        Err(Error::PovmInvalid(detail)) => {
            return Ok((format!("POVM validation FAILED: {detail}\n"), false))
        }
        Err(e) => return Err(CliError::malformed(e.to_string())),
    };
    let report = povm.validate(tol);
    let mut text = String::new();
    text.push_str(&format!(
        "dim = {}, kind = {:?}, declared a = {:.12}, measured a = {:.12}\n",
        povm.dim(),
        povm.kind(),
        report.declared_a,
        report.measured_a
    ));
    for (name, ok) in report.conditions(tol) {
        text.push_str(&format!(
            "  {:<24} {}\n",
            name,
            if ok { "pass" } else { "FAIL" }
        ));
    }
    text.push_str(&format!(
        "deviations: completeness {:.3e}, trace {:.3e}, purity {:.3e}, overlap {:.3e}, min eigenvalue {:.3e}\n",
        report.completeness_dev,
        report.trace_dev,
        report.purity_dev,
        report.overlap_dev,
        report.min_eigenvalue
    ));
    let passes = report.passes(tol);
    text.push_str(if passes {
        "all conditions pass\n"
    } else {
        "validation FAILED\n"
    });
    Ok((text, passes))
}

/// The valid t interval of the basis construction for dimension d.
pub fn run_povm_range(d: usize) -> Result<String, CliError> {
    let basis = HermitianBasis::gell_mann(d).map_err(|e| CliError::malformed(e.to_string()))?;
    let (t_min, t_max) = basis
        .t_range()
        .map_err(|e| CliError::malformed(e.to_string()))?;
    Ok(format!(
        "t_min = {}\nt_max = {}\n",
        fmt_float(t_min),
        fmt_float(t_max)
    ))
}

/// Comparison table of critical visibilities for the isotropic family:
/// CSV `criterion,d,r,count,visibility` over r = 1..d-1 for the GSIC,
/// fidelity, MUB (count = m) and EAM (count = n) criteria.
pub fn run_compare(d: usize, m: usize, n: usize) -> Result<String, CliError> {
    if d < 2 {
        return Err(CliError::malformed(format!("d = {d} must be at least 2")));
    }
    let mut out = String::from("criterion,d,r,count,visibility\n");
    for r in 1..d {
        let rows: [(&str, Option<usize>, VisibilityCriterion); 4] = [
            ("gsic", None, VisibilityCriterion::Gsic),
            ("fidelity", None, VisibilityCriterion::Fidelity),
            ("mub", Some(m), VisibilityCriterion::Mub),
            ("eam", Some(n), VisibilityCriterion::Eam),
        ];
        for (name, count, kind) in rows {
            let v = critical_visibility(kind, d, r, count)
                .map_err(|e| CliError::malformed(e.to_string()))?;
            out.push_str(&format!(
                "{name},{d},{r},{},{}\n",
                count.map(|c| c.to_string()).unwrap_or_default(),
                fmt_float(v)
            ));
        }
    }
    Ok(out)
}
