//! Adjoints by exhaustive universal-arrow search.

use super::{FinCategory, FinFunctor, MorId, NatTransformation, ObjId};

/// Outcome of an adjoint search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjointSearch {
    /// The adjoint functor together with the unit (left adjoint) or counit
    /// (right adjoint).
    Found(FinFunctor, NatTransformation),
    /// No universal arrow exists at this object.
    Missing { object: ObjId },
}

impl AdjointSearch {
    pub fn found(self) -> Option<(FinFunctor, NatTransformation)> {
        match self {
            AdjointSearch::Found(f, t) => Some((f, t)),
            AdjointSearch::Missing { .. } => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, AdjointSearch::Found(..))
    }
}

/// Whether `h ↦ G(h) ∘ eta` is a bijection `D(dobj, y) → C(x, G y)` for all `y`.
fn is_universal(d: &FinCategory, c: &FinCategory, g: &FinFunctor, x: ObjId, dobj: ObjId, eta: MorId) -> bool {
    let mut seen = vec![false; c.num_morphisms()];
    for y in d.objects() {
        let target = c.hom(x, g.obj(y));
        let source = d.hom(dobj, y);
        if source.len() != target.len() {
            return false;
        }
        for &h in source {
            let k = c.compose(g.mor(h), eta);
            if seen[k] {
                return false;
            }
            seen[k] = true;
        }
    }
    true
}

/// Left adjoint `F: C → D` of `G: D → C` with unit `η: Id ⇒ GF`.
///
/// For each object `X` of `C` the first pair `(D, η_X)` in id order that is
/// a universal arrow is chosen.
pub fn find_left_adjoint(d: &FinCategory, c: &FinCategory, g: &FinFunctor) -> AdjointSearch {
    let mut obj_map = Vec::with_capacity(c.num_objects());
    let mut unit = Vec::with_capacity(c.num_objects());
    for x in c.objects() {
        let found = d.objects().find_map(|dobj| {
            c.hom(x, g.obj(dobj))
                .iter()
                .copied()
                .find(|&eta| is_universal(d, c, g, x, dobj, eta))
                .map(|eta| (dobj, eta))
        });
        match found {
            Some((dobj, eta)) => {
                obj_map.push(dobj);
                unit.push(eta);
            }
            None => return AdjointSearch::Missing { object: x },
        }
    }
    let mor_map = c
        .morphism_ids()
        .map(|u| {
            let (x, x2) = (c.src(u), c.dst(u));
            let want = c.compose(unit[x2], u);
            *d.hom(obj_map[x], obj_map[x2])
                .iter()
                .find(|&&h| c.compose(g.mor(h), unit[x]) == want)
                .expect("universal arrow factorization")
        })
        .collect();
    AdjointSearch::Found(FinFunctor { obj_map, mor_map }, NatTransformation { components: unit })
}

/// Right adjoint `H: C → D` of `G: D → C` with counit `ε: GH ⇒ Id`.
pub fn find_right_adjoint(d: &FinCategory, c: &FinCategory, g: &FinFunctor) -> AdjointSearch {
    find_left_adjoint(&d.opposite(), &c.opposite(), g)
}

/// Checks `h ↦ G(h) ∘ η_X` is a bijection `D(FX, Y) → C(X, GY)` for all pairs.
pub fn check_hom_bijections(
    d: &FinCategory,
    c: &FinCategory,
    f: &FinFunctor,
    g: &FinFunctor,
    unit: &NatTransformation,
) -> bool {
    c.objects().all(|x| is_universal(d, c, g, x, f.obj(x), unit.component(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    #[test]
    fn reflection_onto_terminal_object() {
        let c = interval();
        let (d, inc) = c.full_subcategory(&[1]);
        let (f, eta) = find_left_adjoint(&d, &c, &inc).found().unwrap();
        assert_eq!(f.obj_map, vec![0, 0]);
        assert_eq!(c.name(eta.component(0)), "s");
        assert_eq!(c.name(eta.component(1)), "id_Y");
        assert!(f.validate(&c, &d).is_ok());
        assert!(check_hom_bijections(&d, &c, &f, &inc, &eta));
    }

    #[test]
    fn identity_is_self_adjoint() {
        let c = chain3();
        let id = FinFunctor::identity(&c);
        let (f, eta) = find_left_adjoint(&c, &c, &id).found().unwrap();
        assert_eq!(f, id);
        assert_eq!(eta, NatTransformation::identity(&c, &id));
    }

    #[test]
    fn inclusion_of_initial_object_has_no_left_adjoint() {
        let c = interval();
        let (d, inc) = c.full_subcategory(&[0]);
        assert_eq!(find_left_adjoint(&d, &c, &inc), AdjointSearch::Missing { object: 1 });
        // It has a right adjoint instead, sending both objects to X.
        let (h, eps) = find_right_adjoint(&d, &c, &inc).found().unwrap();
        assert_eq!(h.obj_map, vec![0, 0]);
        assert_eq!(c.name(eps.component(1)), "s");
    }
}
