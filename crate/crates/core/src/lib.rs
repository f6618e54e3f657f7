//! Computable localization theory for finite categories and for homotopy
//! categories of bounded complexes over finite-dimensional algebras.

pub mod abelianization;
#[cfg(doctest)]
pub mod book;
pub mod cli;
pub mod complexes;
pub mod dsu;
pub mod fincat;
pub mod fractions;
pub mod linalg;
pub mod modloc;
pub mod triangulated;
