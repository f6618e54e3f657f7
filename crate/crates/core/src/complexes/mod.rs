//! Bounded complexes over finite-dimensional algebras and their homotopy
//! category.
//!
//! Grading is cohomological. The shift is `X[1]^n = X^{n+1}` with
//! differential `-d`, and the cone of `φ: X → Y` is
//! `C(φ)^n = X^{n+1} ⊕ Y^n` with differential `[[-d_X, 0], [φ, d_Y]]`.

mod algebra;
mod complex;
mod homotopy;
mod module;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use algebra::{AlgebraFile, FinAlgebra};
pub use complex::{
    corrupted_mapping_cone, cycles, joint_window, mapping_cone, ChainComplex, ChainMap, ConeTriangle,
};
pub use homotopy::{
    compose_classes, find_homotopy_iso, find_homotopy_iso_with, homotopy_inverse, is_contractible,
    is_homotopy_equivalence, HomSpace,
};
pub use module::{indecomposable_projectives, primitive_idempotents, FinModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("complexes are over different algebras")]
    AlgebraMismatch,
}
