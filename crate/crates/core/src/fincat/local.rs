//! Local objects and localization functors on finite categories.

use super::{FinCategory, FinFunctor, MorId, MorphismSet, NatTransformation, ObjId};

/// Whether `C(W', X) → C(W, X)`, `h ↦ h ∘ σ`, is bijective for every
/// `σ: W → W'` in `sigma`.
pub fn is_local(c: &FinCategory, sigma: &MorphismSet, x: ObjId) -> bool {
    sigma.ids().all(|s| precompose_bijective(c, s, x))
}

fn precompose_bijective(c: &FinCategory, s: MorId, x: ObjId) -> bool {
    let (w, w2) = (c.src(s), c.dst(s));
    let source = c.hom(w2, x);
    let target = c.hom(w, x);
    if source.len() != target.len() {
        return false;
    }
    let mut seen = vec![false; target.len()];
    for &h in source {
        let k = c.local_index(c.compose(h, s));
        if seen[k] {
            return false;
        }
        seen[k] = true;
    }
    true
}

/// All objects local with respect to `sigma`.
pub fn local_objects(c: &FinCategory, sigma: &MorphismSet) -> Vec<ObjId> {
    c.objects().filter(|&x| is_local(c, sigma, x)).collect()
}

/// Verdict of [`is_localization_functor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalizationVerdict {
    Holds,
    /// `η` is not a natural transformation `Id ⇒ L`; the offending morphism.
    NotNatural { morphism: MorId },
    /// `Lη_X` is not invertible at this object.
    NotInvertible { object: ObjId },
    /// `Lη_X ≠ η_{LX}` at this object.
    Mismatch { object: ObjId },
    /// No candidate `η` exists; the object where the search failed.
    NoUnit { object: ObjId },
}

impl LocalizationVerdict {
    pub fn holds(&self) -> bool {
        *self == LocalizationVerdict::Holds
    }

    pub fn witness_object(&self) -> Option<ObjId> {
        match *self {
            LocalizationVerdict::NotInvertible { object }
            | LocalizationVerdict::Mismatch { object }
            | LocalizationVerdict::NoUnit { object } => Some(object),
            _ => None,
        }
    }
}

/// Checks that `Lη` is invertible and `Lη = ηL` object by object.
pub fn is_localization_functor(c: &FinCategory, l: &FinFunctor, eta: &NatTransformation) -> LocalizationVerdict {
    if let Err(m) = eta.validate(c, c, &FinFunctor::identity(c), l) {
        return LocalizationVerdict::NotNatural { morphism: m };
    }
    for x in c.objects() {
        let leta = l.mor(eta.component(x));
        if !c.is_iso(leta) {
            return LocalizationVerdict::NotInvertible { object: x };
        }
        if leta != eta.component(l.obj(x)) {
            return LocalizationVerdict::Mismatch { object: x };
        }
    }
    LocalizationVerdict::Holds
}

/// Searches, in id order, for `η: Id ⇒ L` making `L` a localization
/// functor. On failure returns the object at which the search got stuck.
pub fn find_localization_unit(c: &FinCategory, l: &FinFunctor) -> Result<NatTransformation, ObjId> {
    let n = c.num_objects();
    // Per-object candidates satisfying the pointwise conditions.
    let mut candidates: Vec<Vec<MorId>> = Vec::with_capacity(n);
    for x in c.objects() {
        let cands: Vec<MorId> = c.hom(x, l.obj(x)).iter().copied().filter(|&e| c.is_iso(l.mor(e))).collect();
        if cands.is_empty() {
            return Err(x);
        }
        candidates.push(cands);
    }
    let mut choice = vec![0usize; n];
    let mut depth = 0usize;
    let mut deepest = 0usize;
    // Backtracking over objects in id order.
    loop {
        if depth == n {
            let eta = NatTransformation { components: (0..n).map(|x| candidates[x][choice[x]]).collect() };
            if is_localization_functor(c, l, &eta).holds() {
                return Ok(eta);
            }
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        if choice[depth] >= candidates[depth].len() {
            if depth == 0 {
                return Err(deepest);
            }
            choice[depth] = 0;
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        if consistent(c, l, &candidates, &choice, depth) {
            depth += 1;
            deepest = deepest.max(depth.min(n - 1));
        } else {
            choice[depth] += 1;
        }
    }
}

/// Naturality on morphisms between objects `0..=depth`.
fn consistent(c: &FinCategory, l: &FinFunctor, cands: &[Vec<MorId>], choice: &[usize], depth: usize) -> bool {
    let comp = |x: ObjId| cands[x][choice[x]];
    (0..=depth).all(|x| {
        let pairs = [(x, depth), (depth, x)];
        pairs.iter().all(|&(a, b)| {
            c.hom(a, b).iter().all(|&m| c.compose(comp(b), m) == c.compose(l.mor(m), comp(a)))
        })
    })
}

/// `Σ(L)`: morphisms inverted by the endofunctor.
pub fn inverted_by(c: &FinCategory, l: &FinFunctor) -> MorphismSet {
    MorphismSet::from_ids(c, c.morphism_ids().filter(|&m| c.is_iso(l.mor(m))))
}

/// The five characterizations of local objects, evaluated independently.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalConditions {
    /// Local with respect to the morphisms `L` inverts.
    pub local: bool,
    /// Precomposition with `η_W` is bijective on `C(LW, X) → C(W, X)`.
    pub unit_bijective: bool,
    /// `η_X` is invertible.
    pub unit_invertible: bool,
    /// `L` is bijective on `C(W, X) → C(LW, LX)`.
    pub functor_bijective: bool,
    /// `X` is isomorphic to some `LX'`.
    pub in_image: bool,
}

impl LocalConditions {
    pub fn agree(&self) -> bool {
        let v = [self.local, self.unit_bijective, self.unit_invertible, self.functor_bijective, self.in_image];
        v.iter().all(|&b| b == v[0])
    }
}

pub fn local_object_conditions(c: &FinCategory, l: &FinFunctor, eta: &NatTransformation, x: ObjId) -> LocalConditions {
    let sigma = inverted_by(c, l);
    let local = is_local(c, &sigma, x);
    let unit_bijective = c.objects().all(|w| precompose_bijective(c, eta.component(w), x));
    let unit_invertible = c.is_iso(eta.component(x));
    let functor_bijective = c.objects().all(|w| {
        let src = c.hom(w, x);
        let dst = c.hom(l.obj(w), l.obj(x));
        let mut seen = vec![false; dst.len()];
        src.len() == dst.len()
            && src.iter().all(|&m| {
                let k = c.local_index(l.mor(m));
                !std::mem::replace(&mut seen[k], true)
            })
    });
    let in_image = c.objects().any(|x2| c.isomorphic(x, l.obj(x2)));
    LocalConditions { local, unit_bijective, unit_invertible, functor_bijective, in_image }
}

/// For all `η₁: X → Y₁`, `η₂: X → Y₂` in `inverted` with `Y₁, Y₂` local,
/// there is exactly one `φ: Y₁ → Y₂` with `η₂ = φ ∘ η₁`, and it is an
/// isomorphism. Returns the first failing pair.
pub fn local_uniqueness(c: &FinCategory, inverted: &MorphismSet) -> Result<(), (MorId, MorId)> {
    let local: Vec<bool> = c.objects().map(|x| is_local(c, inverted, x)).collect();
    for e1 in inverted.ids().filter(|&m| local[c.dst(m)]) {
        for e2 in inverted.ids().filter(|&m| c.src(m) == c.src(e1) && local[c.dst(m)]) {
            let phis: Vec<MorId> =
                c.hom(c.dst(e1), c.dst(e2)).iter().copied().filter(|&p| c.compose(p, e1) == e2).collect();
            if phis.len() != 1 || !c.is_iso(phis[0]) {
                return Err((e1, e2));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    #[test]
    fn local_objects_of_interval() {
        let c = interval();
        let s = MorphismSet::from_names(&c, &["s"]).unwrap();
        assert_eq!(local_objects(&c, &s), vec![1]);
        assert_eq!(local_objects(&c, &c.identity_set()), vec![0, 1]);
    }

    #[test]
    fn local_objects_of_chain() {
        let c = chain3();
        let s = MorphismSet::from_names(&c, &["YZ"]).unwrap();
        assert_eq!(local_objects(&c, &s), vec![0, 2]);
    }

    #[test]
    fn reflection_is_a_localization_functor() {
        let c = interval();
        let s = c.find_morphism("s").unwrap();
        let l = FinFunctor { obj_map: vec![1, 1], mor_map: vec![c.id(1), c.id(1), c.id(1)] };
        let eta = NatTransformation { components: vec![s, c.id(1)] };
        assert!(is_localization_functor(&c, &l, &eta).holds());
        assert_eq!(find_localization_unit(&c, &l), Ok(eta.clone()));
        for x in c.objects() {
            assert!(local_object_conditions(&c, &l, &eta, x).agree());
        }
    }

    #[test]
    fn identity_is_a_localization_functor() {
        let c = chain3();
        let id = FinFunctor::identity(&c);
        assert!(is_localization_functor(&c, &id, &NatTransformation::identity(&c, &id)).holds());
    }

    #[test]
    fn constant_at_source_has_no_unit() {
        let c = interval();
        let l = FinFunctor { obj_map: vec![0, 0], mor_map: vec![c.id(0), c.id(0), c.id(0)] };
        assert_eq!(find_localization_unit(&c, &l), Err(1));
    }

    #[test]
    fn uniqueness_of_local_replacements() {
        let c = chain3();
        let s = MorphismSet::from_names(&c, &["id_X", "id_Y", "id_Z", "YZ"]).unwrap();
        assert!(local_uniqueness(&c, &s).is_ok());
    }
}
