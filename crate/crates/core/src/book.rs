//! Guide chapters, compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/finite-categories.md")]
pub mod finite_categories {}
#[doc = include_str!("../../../book/src/fractions.md")]
pub mod fractions {}
#[doc = include_str!("../../../book/src/local-objects.md")]
pub mod local_objects {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("../../../book/src/triangulated.md")]
pub mod triangulated {}
#[doc = include_str!("../../../book/src/bousfield.md")]
pub mod bousfield {}
#[doc = include_str!("../../../book/src/abelianization.md")]
pub mod abelianization {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
