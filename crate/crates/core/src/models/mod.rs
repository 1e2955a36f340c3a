//! Builders for cochain models: free graded-commutative algebras with a
//! Leibniz differential, Chevalley–Eilenberg complexes of nilpotent Lie
//! algebras, formal models, tensor products, and the five named examples.
//!
//! Sign conventions: monomials are stored with generator indices in
//! increasing order and the Koszul sign of a product is computed by counting
//! inversions among odd generators. The Kodaira–Thurston builtin uses
//! `d e4 = -e2 e3` with `ω = e1 e2 + e3 e4`; the mirrored convention
//! `d e4 = +e2 e3` gives the same cone Betti numbers.

mod builders;
mod cdga;
mod random;

use thiserror::Error;

pub use builders::{
    builtin, ce_complex, check_symplectic, formal_model, kodaira_thurston_with_sign,
    omega_power_from_map, point, sphere2, t4_alternative_form, tensor_complexes, tensor_product,
    torus, StructureConstants, SymplecticModel, SymplecticVerdict, BUILTIN_NAMES,
};
pub use cdga::{CdgaModel, Element, Generator, Monomial};
pub use random::{random_nilpotent, random_nilpotent_model};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("structure constants violate the Jacobi identity: d²({generator}) = {d_squared}")]
    JacobiViolation {
        generator: String,
        d_squared: String,
    },
    #[error("differential does not square to zero: d²({generator}) = {d_squared}")]
    NotSquareZero {
        generator: String,
        d_squared: String,
    },
    #[error("form is not closed: dω = {d_omega}")]
    NotClosed { d_omega: String },
    #[error("expected a degree-2 element, got degree {0}")]
    NotDegreeTwo(u32),
    #[error("d({generator}) has degree {found}, expected {expected}")]
    DegreeMismatch {
        generator: String,
        expected: u32,
        found: u32,
    },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("bad generator: {0}")]
    BadGenerator(String),
    #[error("unknown builtin model {0:?} (known: cp2, s2xs2, t2, t4, kodaira_thurston)")]
    UnknownName(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}
