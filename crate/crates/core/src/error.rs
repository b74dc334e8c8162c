use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian: |A[{row}][{col}] - conj(A[{col}][{row}])| = {deviation:.3e} exceeds 1e-10")]
    NonHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("parameter {name} = {value} outside valid range [{min}, {max}]")]
    ParameterRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("construction parameter t = {t} outside [{t_min}, {t_max}]: most negative element eigenvalue {worst_eigenvalue:.3e}")]
    TOutOfRange {
        t: f64,
        t_min: f64,
        t_max: f64,
        worst_eigenvalue: f64,
    },

    #[error("purity a = {a} must lie in (1/d^3, 1/d^2] = ({min:.6e}, {max:.6e}] for d = {dim}")]
    InvalidPurity {
        a: f64,
        dim: usize,
        min: f64,
        max: f64,
    },

    #[error("operator basis is degenerate: {0}")]
    DegenerateBasis(String),

    #[error(
        "rotation matrix is not orthogonal: max |(O^T O - I)[{row}][{col}]| = {deviation:.3e}"
    )]
    NotOrthogonal {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("POVM validation failed: {0}")]
    PovmInvalid(String),

    #[error("state validation failed: {0}")]
    StateInvalid(String),

    #[error("fiducial vector invalid: {0}")]
    InvalidFiducial(String),

    #[error("correlation entry ({row}, {col}) has imaginary residue {residue:.3e} > 1e-12")]
    ImaginaryResidue {
        row: usize,
        col: usize,
        residue: f64,
    },

    #[error("zero vector has no Schmidt decomposition")]
    ZeroVector,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
