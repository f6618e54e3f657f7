//! Thick subcategories of a model, `Σ(S)` and orthogonal subcategories.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::complexes::{ChainComplex, HomSpace};
use crate::fincat::MorphismSet;

use super::{ModelCategory, ObjId, TriangulatedError, TriangulatedModel};

/// A thick subcategory, recorded by its members among the model objects
/// and by the indecomposable members. By Krull-Schmidt a complex lies in
/// the subcategory iff all its indecomposable summands do.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThickSubcat {
    members: Vec<bool>,
    indecomposables: BTreeSet<ObjId>,
}

impl ThickSubcat {
    /// The zero objects.
    pub fn zero(model: &TriangulatedModel) -> Self {
        let members = model.object_ids().map(|x| model.is_zero_object(x)).collect();
        Self { members, indecomposables: BTreeSet::new() }
    }

    /// Every object of the model.
    pub fn all(model: &TriangulatedModel) -> Self {
        Self { members: vec![true; model.len()], indecomposables: model.indecomposables().iter().copied().collect() }
    }

    /// Accepts `ids` only if they already form a thick subcategory.
    pub fn from_members(model: &TriangulatedModel, ids: &[ObjId]) -> Result<Self, TriangulatedError> {
        let closed = thick_closure(model, ids)?;
        let given: BTreeSet<ObjId> = ids.iter().copied().chain(std::iter::once(model.zero_object())).collect();
        if let Some(x) = closed.members().into_iter().find(|x| !given.contains(x)) {
            return Err(TriangulatedError::NotThick(format!("closure adds {}", model.name(x))));
        }
        Ok(closed)
    }

    pub fn contains(&self, x: ObjId) -> bool {
        self.members[x]
    }

    pub fn members(&self) -> Vec<ObjId> {
        (0..self.members.len()).filter(|&x| self.members[x]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indecomposables(&self) -> Vec<ObjId> {
        self.indecomposables.iter().copied().collect()
    }

    /// Membership of an arbitrary complex, decided by decomposing it into
    /// shifted indecomposables of the model.
    pub fn contains_complex(&self, model: &TriangulatedModel, z: &ChainComplex) -> Result<bool, TriangulatedError> {
        let pieces = model.decompose(z)?;
        Ok(pieces.iter().all(|(d, _)| self.indecomposables.contains(d)))
    }

    pub fn names(&self, model: &TriangulatedModel) -> Vec<String> {
        self.members().into_iter().map(|x| model.name(x).to_string()).collect()
    }
}

fn pieces_of(model: &TriangulatedModel, x: ObjId) -> Vec<ObjId> {
    model.decompose(model.object(x)).expect("model objects decompose").into_iter().map(|(d, _)| d).collect()
}

/// Least subcategory containing `generators` and closed under shifts,
/// cones and summands, computed on indecomposables.
pub fn thick_closure(model: &TriangulatedModel, generators: &[ObjId]) -> Result<ThickSubcat, TriangulatedError> {
    let pieces: Vec<Vec<ObjId>> = model.object_ids().map(|x| pieces_of(model, x)).collect();
    let mut indec: BTreeSet<ObjId> = generators.iter().flat_map(|&g| pieces[g].iter().copied()).collect();
    let w = model.caps().window as i32;
    let mut done: BTreeSet<(ObjId, ObjId)> = BTreeSet::new();
    loop {
        let mut frontier: Vec<ObjId> = indec.iter().copied().collect();
        while let Some(d) = frontier.pop() {
            for k in -w..=w {
                if let Some(l) = model.shift_object(d, k) {
                    if indec.insert(l.id) {
                        frontier.push(l.id);
                    }
                }
            }
        }
        let members: Vec<ObjId> = model.object_ids().filter(|&x| pieces[x].iter().all(|d| indec.contains(d))).collect();
        let pairs: Vec<(ObjId, ObjId)> = members
            .iter()
            .flat_map(|&x| members.iter().map(move |&y| (x, y)))
            .filter(|pair| !done.contains(pair))
            .collect();
        let found: Vec<Result<Vec<ObjId>, TriangulatedError>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let mut out = Vec::new();
                for m in model.hom_morphisms(x, y) {
                    let f = model.representative(&m);
                    let cone = model.cone(&f, model.object(x), model.object(y)).cone;
                    out.extend(model.decompose(&cone)?.into_iter().map(|(d, _)| d));
                }
                Ok(out)
            })
            .collect();
        done.extend(pairs);
        let before = indec.len();
        for r in found {
            indec.extend(r?);
        }
        if indec.len() == before {
            let mask = model.object_ids().map(|x| pieces[x].iter().all(|d| indec.contains(d))).collect();
            return Ok(ThickSubcat { members: mask, indecomposables: indec });
        }
    }
}

/// `Σ(S)`: morphisms whose cone lies in `S`.
pub fn sigma_of_s(model: &TriangulatedModel, mc: &ModelCategory, s: &ThickSubcat) -> Result<MorphismSet, TriangulatedError> {
    let c = &mc.category;
    let flags: Vec<Result<bool, TriangulatedError>> = c
        .morphism_ids()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&id| {
            let m = mc.morphism(id);
            let f = model.representative(&m);
            let cone = model.cone(&f, model.object(m.src), model.object(m.dst)).cone;
            s.contains_complex(model, &cone)
        })
        .collect();
    Ok(MorphismSet::from_mask(flags.into_iter().collect::<Result<Vec<bool>, _>>()?))
}

/// Shifts `k` for which `a[k]` and `b` share a degree.
fn overlapping_shifts(a: &ChainComplex, b: &ChainComplex) -> Vec<i32> {
    match (a.support(), b.support()) {
        (Some((a0, a1)), Some((b0, b1))) => (a0 - b1..=a1 - b0).collect(),
        _ => Vec::new(),
    }
}

fn no_maps_into(model: &TriangulatedModel, gens: &[ObjId], y: &ChainComplex) -> bool {
    gens.iter().all(|&d| {
        let dc = model.object(d);
        overlapping_shifts(dc, y).into_iter().all(|k| HomSpace::new(&dc.shift(k), y).dim() == 0)
    })
}

fn no_maps_from(model: &TriangulatedModel, gens: &[ObjId], x: &ChainComplex) -> bool {
    gens.iter().all(|&d| {
        let dc = model.object(d);
        overlapping_shifts(dc, x).into_iter().all(|k| HomSpace::new(x, &dc.shift(k)).dim() == 0)
    })
}

/// `S⊥ = {Y : Hom(X, Y) = 0 for all X ∈ S}`, with all shifts of members.
pub fn perp_right(model: &TriangulatedModel, s: &ThickSubcat) -> Result<ThickSubcat, TriangulatedError> {
    let gens = s.indecomposables();
    let ids: Vec<ObjId> = model.object_ids().filter(|&y| no_maps_into(model, &gens, model.object(y))).collect();
    ThickSubcat::from_members(model, &ids)
}

/// `⊥S = {X : Hom(X, Y) = 0 for all Y ∈ S}`.
pub fn perp_left(model: &TriangulatedModel, s: &ThickSubcat) -> Result<ThickSubcat, TriangulatedError> {
    let gens = s.indecomposables();
    let ids: Vec<ObjId> = model.object_ids().filter(|&x| no_maps_from(model, &gens, model.object(x))).collect();
    ThickSubcat::from_members(model, &ids)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complexes::FinAlgebra;
    use crate::triangulated::Caps;

    fn model(a: FinAlgebra) -> TriangulatedModel {
        TriangulatedModel::build(Arc::new(a), Caps::new(1, 2)).unwrap()
    }

    #[test]
    fn closure_of_nothing_is_zero() {
        let m = model(FinAlgebra::field(2).unwrap());
        assert_eq!(thick_closure(&m, &[]).unwrap(), ThickSubcat::zero(&m));
    }

    #[test]
    fn field_generates_everything() {
        let m = model(FinAlgebra::field(2).unwrap());
        let g = m.find("P1@0").unwrap();
        assert_eq!(thick_closure(&m, &[g]).unwrap().len(), m.len());
    }

    #[test]
    fn first_factor_generates_its_complexes() {
        let m = model(FinAlgebra::product(2, 2).unwrap());
        let s = thick_closure(&m, &[m.find("P1@0").unwrap()]).unwrap();
        let expected: Vec<ObjId> = m.object_ids().filter(|&x| m.multiplicity_of(x).keys().all(|&(_, j)| j == 0)).collect();
        assert_eq!(s.members(), expected);
        assert_eq!(s.len(), 6);
        let perp = perp_right(&m, &s).unwrap();
        let on_second: Vec<ObjId> = m.object_ids().filter(|&x| m.multiplicity_of(x).keys().all(|&(_, j)| j == 1)).collect();
        assert_eq!(perp.members(), on_second);
        assert_eq!(perp_left(&m, &s).unwrap().members(), on_second);
    }

    #[test]
    fn trivial_orthogonals() {
        let m = model(FinAlgebra::product(2, 2).unwrap());
        assert_eq!(perp_right(&m, &ThickSubcat::zero(&m)).unwrap().len(), m.len());
        assert_eq!(perp_right(&m, &ThickSubcat::all(&m)).unwrap().members(), vec![0]);
    }

    #[test]
    fn non_thick_sets_are_rejected() {
        let m = model(FinAlgebra::product(2, 2).unwrap());
        assert!(matches!(
            ThickSubcat::from_members(&m, &[m.find("P1@0").unwrap()]),
            Err(TriangulatedError::NotThick(_))
        ));
    }

    #[test]
    fn sigma_of_zero_is_isomorphisms() {
        let m = model(FinAlgebra::field(2).unwrap());
        let mc = m.to_category();
        let sigma = sigma_of_s(&m, &mc, &ThickSubcat::zero(&m)).unwrap();
        for id in mc.category.morphism_ids() {
            assert_eq!(sigma.contains(id), mc.category.is_iso(id));
        }
        let all = sigma_of_s(&m, &mc, &ThickSubcat::all(&m)).unwrap();
        assert_eq!(all.len(), mc.category.num_morphisms());
    }
}
