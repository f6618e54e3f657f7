//! Bousfield localization on a model: the six equivalent conditions, the
//! functorial triangle `ΓX → X → LX → ΓX[1]` and the orthogonality
//! properties of acyclic and local objects.

use crate::complexes::{find_homotopy_iso, ChainMap, is_homotopy_equivalence, HomSpace};
use crate::fincat::{find_left_adjoint, find_right_adjoint, is_local, is_localization_functor, FinFunctor, NatTransformation};
use crate::linalg::Matrix;

use super::axioms::Triangle;
use super::{perp_left, perp_right, verdier_quotient, ModelCategory, ObjId, ThickSubcat, TriangulatedError, TriangulatedModel, VerdierQuotient};

/// An endofunctor of the model category with its unit (or counit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Localization {
    pub functor: FinFunctor,
    pub unit: NatTransformation,
}

/// The six conditions for `S ⊆ T`, in order:
/// 1. an exact localization functor with kernel `S` exists;
/// 2. the inclusion `S → T` has a right adjoint;
/// 3. every `X` sits in a triangle `X' → X → X'' → X'[1]` with `X' ∈ S`, `X'' ∈ S⊥`;
/// 4. the quotient functor `T → T/S` has a right adjoint;
/// 5. `S⊥ → T → T/S` is an equivalence;
/// 6. the inclusion `S⊥ → T` has a left adjoint and `⊥(S⊥) = S`.
#[derive(Clone, Debug)]
pub struct BousfieldVerdict {
    pub conditions: [bool; 6],
    /// `L` and `η`, built from the right adjoint of the quotient functor.
    pub localization: Option<Localization>,
    /// `Γ` and its counit, built from the right adjoint of `S → T`.
    pub colocalization: Option<Localization>,
    pub acyclic: Vec<ObjId>,
    pub local: Vec<ObjId>,
    pub quotient: Option<VerdierQuotient>,
}

impl BousfieldVerdict {
    /// All six conditions agree.
    pub fn consistent(&self) -> bool {
        self.conditions.iter().all(|&c| c == self.conditions[0])
    }
}

/// Evaluates the six conditions by finite search.
pub fn bousfield_harness(model: &TriangulatedModel, mc: &ModelCategory, s: &ThickSubcat) -> Result<BousfieldVerdict, TriangulatedError> {
    let t = &mc.category;
    let s_ids = s.members();
    let (s_cat, s_inc) = t.full_subcategory(&s_ids);
    let perp = perp_right(model, s)?;
    let perp_ids = perp.members();
    let (p_cat, p_inc) = t.full_subcategory(&perp_ids);
    let quotient = match verdier_quotient(model, mc, s) {
        Ok(q) => Some(q),
        Err(TriangulatedError::MultiplicativeSystemFails(_)) => None,
        Err(e) => return Err(e),
    };

    let colocalization = find_right_adjoint(&s_cat, t, &s_inc)
        .found()
        .map(|(r, counit)| Localization { functor: r.then(&s_inc), unit: counit });
    let c2 = colocalization.is_some();

    let mut c3 = true;
    for x in model.object_ids() {
        let mut found = false;
        'search: for &xs in &s_ids {
            for m in model.hom_morphisms(xs, x) {
                let tri = Triangle::of_cone(model, &model.representative(&m), model.object(xs), model.object(x));
                if perp.contains_complex(model, &tri.z)? {
                    found = true;
                    break 'search;
                }
            }
        }
        if !found {
            c3 = false;
            break;
        }
    }

    let mut localization = None;
    let (mut c1, mut c4, mut c5) = (false, false, false);
    if let Some(vq) = &quotient {
        let q = &vq.fractions.category;
        let qf = &vq.fractions.functor;
        if let Some((h, counit)) = find_right_adjoint(t, q, qf).found() {
            c4 = true;
            let l = qf.then(&h);
            let unit: Option<Vec<_>> = t
                .objects()
                .map(|x| {
                    t.hom(x, l.obj(x))
                        .iter()
                        .copied()
                        .find(|&u| q.compose(counit.component(qf.obj(x)), qf.mor(u)) == q.id(qf.obj(x)))
                })
                .collect();
            if let Some(components) = unit {
                let loc = Localization { functor: l, unit: NatTransformation { components } };
                let kernel: Vec<ObjId> = t.objects().filter(|&x| model.is_zero_object(loc.functor.obj(x))).collect();
                c1 = is_localization_functor(t, &loc.functor, &loc.unit).holds()
                    && kernel == s_ids
                    && commutes_with_shift(model, &loc.functor)
                    && cone_preservation(model, mc, &loc.functor).is_ok();
                localization = Some(loc);
            }
        }
        c5 = p_inc.then(qf).is_equivalence(&p_cat, q);
    }

    let c6 = find_left_adjoint(&p_cat, t, &p_inc).is_found() && perp_left(model, &perp)?.members() == s_ids;

    Ok(BousfieldVerdict {
        conditions: [c1, c2, c3, c4, c5, c6],
        localization,
        colocalization,
        acyclic: s_ids,
        local: perp_ids,
        quotient,
    })
}

/// `F(X[1]) ≅ F(X)[1]` whenever both shifts lie in the model.
fn commutes_with_shift(model: &TriangulatedModel, f: &FinFunctor) -> bool {
    model.object_ids().all(|x| match (model.shift_object(x, 1), model.shift_object(f.obj(x), 1)) {
        (Some(a), Some(b)) => f.obj(a.id) == b.id,
        _ => true,
    })
}

/// For every morphism whose cone lies in the model, `F(cone φ) ≅ cone(F φ)`.
/// Returns the first failing morphism.
pub fn cone_preservation(model: &TriangulatedModel, mc: &ModelCategory, f: &FinFunctor) -> Result<(), String> {
    for id in mc.category.morphism_ids() {
        let m = mc.morphism(id);
        let tri = Triangle::of_cone(model, &model.representative(&m), model.object(m.src), model.object(m.dst));
        let Ok(located) = model.locate(&tri.z) else { continue };
        let fm = mc.morphism(f.mor(id));
        let image = Triangle::of_cone(model, &model.representative(&fm), model.object(fm.src), model.object(fm.dst));
        if find_homotopy_iso(&image.z, model.object(f.obj(located.id))).is_none() {
            return Err(model.describe(&m));
        }
    }
    Ok(())
}

/// The triangle `ΓX → X → LX → ΓX[1]` for one object.
#[derive(Clone, Debug)]
pub struct GammaTriangle {
    pub object: ObjId,
    /// Model object isomorphic to `ΓX`, when it fits the caps.
    pub gamma: Option<ObjId>,
    pub local: ObjId,
    pub gamma_acyclic: bool,
    pub local_is_local: bool,
    /// Number of other acyclic/local triangles on `X` found by search.
    pub compared: usize,
    /// Each comparison isomorphism exists and is unique.
    pub unique: bool,
}

impl GammaTriangle {
    pub fn holds(&self) -> bool {
        self.gamma_acyclic && self.local_is_local && self.unique
    }
}

/// Completes `ηX` to an exact triangle and compares it with every other
/// triangle `X' → X → X''` with `X' ∈ S` and `X'' ∈ S⊥`.
pub fn gamma_triangle(
    model: &TriangulatedModel,
    mc: &ModelCategory,
    loc: &Localization,
    s: &ThickSubcat,
    perp: &ThickSubcat,
    x: ObjId,
) -> Result<GammaTriangle, TriangulatedError> {
    let t = &mc.category;
    let verdict = is_localization_functor(t, &loc.functor, &loc.unit);
    if !verdict.holds() {
        return Err(TriangulatedError::NotLocalization(format!("{verdict:?}")));
    }
    let eta = mc.morphism(loc.unit.component(x));
    let lx = eta.dst;
    let (xc, lxc) = (model.object(x), model.object(lx));
    let eta_rep = model.representative(&eta);
    let tri = Triangle::standard(&eta_rep, xc, lxc);
    let gamma = tri.z.shift(-1);
    let gamma_acyclic = s.contains_complex(model, &gamma)?;
    let local_is_local = perp.contains(lx);
    let mut compared = 0;
    let mut unique = true;
    for xs in s.members() {
        for m in model.hom_morphisms(xs, x) {
            let other = Triangle::standard(&model.representative(&m), model.object(xs), xc);
            if !perp.contains_complex(model, &other.z)? {
                continue;
            }
            compared += 1;
            let h1 = HomSpace::new(lxc, &other.z);
            let h2 = HomSpace::new(xc, &other.z);
            let rhs = h2.coords(&other.g, xc, &other.z);
            let basis = h1.basis();
            let ok = if basis.is_empty() {
                rhs.iter().all(|&v| v == 0) && is_homotopy_equivalence(&ChainMap::zero(lxc, &other.z), lxc, &other.z)
            } else {
                let cols: Vec<Vec<u32>> = basis.iter().map(|phi| h2.coords(&eta_rep.then(phi, xc, lxc, &other.z), xc, &other.z)).collect();
                let a = Matrix::new(model.modulus(), cols.len(), h2.dim(), cols.concat()).expect("shape").transpose();
                match a.solve_vec(&rhs) {
                    Some(sol) => a.rank() == basis.len() && is_homotopy_equivalence(&h1.representative(&sol), lxc, &other.z),
                    None => false,
                }
            };
            unique &= ok;
        }
    }
    Ok(GammaTriangle { object: x, gamma: model.find_object(&gamma), local: lx, gamma_acyclic, local_is_local, compared, unique })
}

/// `Ker L = ⊥(Im L)` and `(Ker L)⊥ = Im L` as sets of model objects.
pub fn orthogonal_pair_check(model: &TriangulatedModel, loc: &Localization) -> Result<bool, TriangulatedError> {
    let kernel: Vec<ObjId> = model.object_ids().filter(|&x| model.is_zero_object(loc.functor.obj(x))).collect();
    let mut image: Vec<ObjId> = loc.functor.obj_map.clone();
    image.sort_unstable();
    image.dedup();
    let ker = ThickSubcat::from_members(model, &kernel)?;
    let im = ThickSubcat::from_members(model, &image)?;
    Ok(perp_left(model, &im)?.members() == kernel && perp_right(model, &ker)?.members() == image)
}

/// `Γ` is a colocalization (its opposite is a localization of `T^op`)
/// with `Ker Γ = Im L` and `Im Γ = Ker L`.
pub fn colocalization_check(model: &TriangulatedModel, mc: &ModelCategory, loc: &Localization, coloc: &Localization) -> bool {
    let t = &mc.category;
    if !is_localization_functor(&t.opposite(), &coloc.functor.opposite(), &coloc.unit).holds() {
        return false;
    }
    let zeros = |f: &FinFunctor| -> Vec<ObjId> { model.object_ids().filter(|&x| model.is_zero_object(f.obj(x))).collect() };
    let image = |f: &FinFunctor| -> Vec<ObjId> {
        let mut v = f.obj_map.clone();
        v.sort_unstable();
        v.dedup();
        v
    };
    zeros(&coloc.functor) == image(&loc.functor) && image(&coloc.functor) == zeros(&loc.functor)
}

/// `L` induces bijections `T/Ker L (X, Y) → T(LX, LY)`: the class of
/// `σ⁻¹α` goes to `L(σ)⁻¹ ∘ L(α)`.
pub fn quotient_comparison(mc: &ModelCategory, vq: &VerdierQuotient, loc: &Localization) -> bool {
    let t = &mc.category;
    let q = &vq.fractions.category;
    let l = &loc.functor;
    for x in q.objects() {
        for y in q.objects() {
            let target = t.hom(l.obj(x), l.obj(y));
            if target.len() != q.hom(x, y).len() {
                return false;
            }
            let mut seen = vec![false; target.len()];
            for &cls in q.hom(x, y) {
                let r = vq.fractions.classes[cls].representative;
                let Some(inv) = t.inverse(l.mor(r.denominator)) else { return false };
                let img = t.compose(inv, l.mor(r.numerator));
                let k = t.local_index(img);
                if seen[k] {
                    return false;
                }
                seen[k] = true;
            }
        }
    }
    true
}

/// Per object: `Y ∈ S⊥` iff `Y` is `Σ(S)`-local iff `T(X, Y) → T/S(X, Y)`
/// is bijective for all `X`. Returns the first object where they disagree.
pub fn local_acyclic_equivalence(mc: &ModelCategory, vq: &VerdierQuotient, perp: &ThickSubcat) -> Result<(), ObjId> {
    let t = &mc.category;
    let q = &vq.fractions.category;
    let qf = &vq.fractions.functor;
    for y in t.objects() {
        let a = perp.contains(y);
        let b = is_local(t, &vq.sigma, y);
        let c = t.objects().all(|x| {
            let mut seen = vec![false; q.hom(x, y).len()];
            t.hom(x, y).len() == seen.len()
                && t.hom(x, y).iter().all(|&m| {
                    let k = q.local_index(qf.mor(m));
                    !std::mem::replace(&mut seen[k], true)
                })
        });
        if a != b || b != c {
            return Err(y);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complexes::FinAlgebra;
    use crate::triangulated::{thick_closure, Caps};

    #[test]
    fn idempotent_fixture_passes_all_conditions() {
        let m = TriangulatedModel::build(Arc::new(FinAlgebra::product(2, 2).unwrap()), Caps::new(1, 2)).unwrap();
        let mc = m.to_category();
        let s = thick_closure(&m, &[m.find("P1@0").unwrap()]).unwrap();
        let v = bousfield_harness(&m, &mc, &s).unwrap();
        assert_eq!(v.conditions, [true; 6]);
        let loc = v.localization.as_ref().unwrap();
        assert!(orthogonal_pair_check(&m, loc).unwrap());
        assert!(colocalization_check(&m, &mc, loc, v.colocalization.as_ref().unwrap()));
        let vq = v.quotient.as_ref().unwrap();
        assert!(quotient_comparison(&mc, vq, loc));
        let perp = perp_right(&m, &s).unwrap();
        assert!(local_acyclic_equivalence(&mc, vq, &perp).is_ok());
        let x = m.find("P1@0+P2@0").unwrap();
        let g = gamma_triangle(&m, &mc, loc, &s, &perp, x).unwrap();
        assert!(g.holds());
        assert_eq!(g.gamma, m.find("P1@0"));
        assert_eq!(g.local, m.find("P2@0").unwrap());
    }
}
