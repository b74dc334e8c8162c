//! Certification of the Schmidt number (entanglement dimensionality) of
//! bipartite quantum states from the trace norm of measurement correlation
//! matrices built with general symmetric informationally complete POVMs,
//! alongside CCNR, fidelity, MUB and EAM comparison baselines.
//!
//! The crate is organized as:
//!
//! - [`matrix`]: dense complex matrix kernel (Kronecker products, Hermitian
//!   eigenvalues, singular values / trace norm, realignment map);
//! - [`povm`]: Hermitian operator bases and GSIC/SIC POVM construction,
//!   validation, conjugation and rotation;
//! - [`states`]: the state families under study (bound entangled, isotropic,
//!   Werner, pure states from Schmidt coefficients) and Schmidt-rank tools;
//! - [`criteria`]: index of coincidence, correlation matrices, the
//!   trace-norm Schmidt-number bound and certification, CCNR, and the
//!   closed-form visibility thresholds;
//! - [`sample`]: seeded random matrices and states for reproducible
//!   property tests.
//!
//! All computations are pure functions on immutable values and safe to use
//! concurrently; randomness only enters through explicit seeds.

pub mod criteria;
pub mod error;
pub mod matrix;
pub mod povm;
pub mod sample;
pub mod states;

pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
pub use num_complex::Complex64;
