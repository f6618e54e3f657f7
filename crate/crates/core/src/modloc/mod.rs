//! Localization of finite commutative rings and their modules at a
//! multiplicative set, with the adjunction between `S⁻¹(-)` and
//! restriction of scalars checked by enumeration.

mod adjunction;
mod fractions;
mod module;
mod ring;

use thiserror::Error;

pub use adjunction::{describe, verify_localization_adjunction, AdjunctionReport};
pub use fractions::{localize_module, localize_ring, FractionClasses, FractionModule, FractionRing};
pub use module::{enumerate_modules, group_types, is_bijective, AbGroup, RingModule};
pub use ring::{FinCommRing, MultSet, RingFile};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModlocError {
    #[error("not a commutative ring: {0}")]
    NotARing(String),
    #[error("not a multiplicative set: {0}")]
    NotMultiplicative(String),
    #[error("module order cap {cap} is below the ring order {needed}")]
    CapTooSmall { cap: usize, needed: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_away_from_three_is_a_localization() {
        let a = FinCommRing::zmod(6);
        let s = MultSet::new(&a, [1, 3]).unwrap();
        let r = verify_localization_adjunction(&a, &s, 6).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.localized_order, 2);
        // local modules: those on which 3 is invertible, i.e. 2-groups
        assert_eq!(r.local_modules, vec!["0", "Z/2", "Z/2xZ/2"]);
    }

    #[test]
    fn trivial_and_unit_sets_give_the_identity() {
        let a = FinCommRing::zmod(4);
        for s in [MultSet::trivial(&a), MultSet::units(&a)] {
            let r = verify_localization_adjunction(&a, &s, 4).unwrap();
            assert!(r.passes());
            assert_eq!(r.local_modules.len(), r.modules);
        }
    }

    #[test]
    fn dual_numbers_at_the_nilpotent() {
        let a = FinCommRing::truncated_polynomial(2, 2);
        let s = MultSet::generated(&a, [2]).unwrap();
        let r = verify_localization_adjunction(&a, &s, 8).unwrap();
        assert!(r.passes());
        assert_eq!(r.localized_order, 1);
        assert_eq!(r.local_modules, vec!["0"]);
    }

    #[test]
    fn cap_below_ring_order() {
        let a = FinCommRing::zmod(6);
        let s = MultSet::trivial(&a);
        assert_eq!(verify_localization_adjunction(&a, &s, 4), Err(ModlocError::CapTooSmall { cap: 4, needed: 6 }));
    }
}
