//! Finite models of homotopy categories `K^b(proj A)` and the triangulated
//! machinery on top of them: axiom checks, thick closures, Verdier
//! quotients, orthogonals, Bousfield localization and recollements.
//!
//! A model holds every complex of indecomposable projectives concentrated
//! in degrees `[0, window]` with at most `dim_cap` indecomposable summands
//! in total, one per isomorphism class. Objects are minimal complexes, so
//! homotopy equivalence between them is decided by the multiplicity vector
//! `μ(Z)(n, j) = dim H^n Hom_A(Z, S_j)` followed by an explicit search.

mod axioms;
mod bousfield;
mod cohomological;
mod model;
mod recollement;
mod thick;
mod verdier;

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::fractions::FractionError;

pub use axioms::{
    check_rotations, is_exact_triangle, octahedron, verify_axioms, AxiomReport, AxiomWitness, Octahedron, Triangle,
};
pub use bousfield::{
    bousfield_harness, colocalization_check, cone_preservation, gamma_triangle, local_acyclic_equivalence,
    orthogonal_pair_check, quotient_comparison, BousfieldVerdict, GammaTriangle,
    Localization,
};
pub use cohomological::{sigma_of_h, CohomologicalFunctor, SigmaHVerdict};
pub use model::{Caps, Located, ModelCategory, ModelMorphism, Multiplicity, ObjId, TriangulatedModel};
pub use recollement::{recollement_from_idempotent, tor_vanishes, ModuleFunctor, Recollement, RecollementReport};
pub use thick::{perp_left, perp_right, sigma_of_s, thick_closure, ThickSubcat};
pub use verdier::{verdier_quotient, VerdierQuotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulatedError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error("caps must satisfy dim_cap >= 1")]
    InvalidCaps,
    #[error("caps too small: {0}")]
    CapsTooSmall(String),
    #[error("object set is not thick: {0}")]
    NotThick(String),
    #[error("multiplicative system check fails: {0}")]
    MultiplicativeSystemFails(String),
    #[error("functor is not cohomological on the cone triangle of {morphism}")]
    NotCohomological { morphism: String },
    #[error("not an idempotent")]
    NotIdempotent,
    #[error("not a localization: {0}")]
    NotLocalization(String),
}
