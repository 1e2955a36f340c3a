//! Operators on the exterior algebra of Euclidean space and the model
//! oscillator at a nondegenerate zero.
//!
//! Forms on `R^m` are indexed by bitmask: basis vector `b` is `e^S` with bit
//! `i - 1` set iff `i ∈ S`. Wedge and contraction by `e_i` carry the sign
//! `(-1)^{#{j ∈ S : j < i}}`, so `ι_{e_i}` is the transpose of `e^i∧`.
//!
//! The oscillator is handled after conjugating by the Gaussian
//! `exp(-T/2 xᵗSx)`, which turns it into an operator on polynomial-coefficient
//! forms that never raises polynomial degree.

mod extop;
mod field;
mod gaussian;
mod identities;
mod oscillator;
pub mod samples;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use extop::{
    basis_vector, clifford, clifford_basis, contract, degree_indices, dvol_action, form_degree,
    hodge_star, omega_contract, omega_skew, omega_wedge, wedge, CliffordKind, ExtOp,
};
pub use field::{Field, FLOAT_TOL};
pub use gaussian::{linear_form_norm_sq, moment_1d, second_moments};
pub use identities::{
    check_size, random_unit_vector, run_checks, verify_car, verify_complex_structure,
    verify_lemma_omega, verify_lemma_star, verify_star, CheckKind, IdentityCheck, EXACT_LIMIT,
    FLOAT_LIMIT,
};
pub use oscillator::{
    d_tilde, eta_scaling, kernel_and_parity, l_tilde, model_l, spectrum_scaling, verify_square,
    EtaPoint, EtaReport, GaussianSector, KernelParity, ModelOperator, Parity, SpectrumReport,
    SECTOR_LIMIT,
};

/// Arithmetic used by operator computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode {other:?} (expected exact or float)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is not a positive multiple of 4")]
    BadDimension(usize),
    #[error("vector is not a unit vector (|v|² = {0})")]
    NotUnit(String),
    #[error("matrix A is singular")]
    Singular,
    #[error("AᵗA has no rational square root; use float mode")]
    NoRationalRoot,
    #[error("polynomial degree cap {cap} is too small (need at least {needed})")]
    TruncationTooSmall { cap: usize, needed: usize },
    #[error("dimension {m} exceeds the {mode} limit of {limit}")]
    TooLarge { m: usize, limit: usize, mode: Mode },
    #[error("sector dimension {dim} exceeds the limit of {limit}")]
    SectorTooLarge { dim: usize, limit: usize },
    #[error("invalid T: {0}")]
    InvalidT(String),
}
