//! Calculus of left fractions on finite categories.
//!
//! A left fraction `X --α--> Y' <--σ-- Y` with `σ ∈ Σ` represents
//! `σ⁻¹ ∘ α`. Two fractions are equivalent when they are joined by a chain of
//! refinements `(α, σ) ~ (uα, uσ)` with `uσ ∈ Σ`.

mod calculus;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::dsu::Dsu;
use crate::fincat::{FinCategory, FinFunctor, MorId, Morphism, MorphismSet, ObjId};

pub use calculus::{check_calculus_left, check_calculus_right, LFReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FractionError {
    #[error("fractions do not share source and target")]
    SourceTargetMismatch,
    #[error("fractions are not composable")]
    NotComposable,
    #[error("no completion of the span ({sigma}, {alpha}) exists")]
    LF2CompletionMissing { sigma: MorId, alpha: MorId },
    #[error("the morphism set does not admit a calculus of left fractions: {0}")]
    CalculusFails(LFReport),
    #[error("denominator {0} is not in the designated set")]
    NotInSigma(MorId),
    #[error("malformed fraction")]
    Malformed,
}

/// `source --numerator--> apex <--denominator-- target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeftFraction {
    pub numerator: MorId,
    pub denominator: MorId,
}

impl LeftFraction {
    pub fn new(numerator: MorId, denominator: MorId) -> Self {
        Self { numerator, denominator }
    }

    pub fn source(&self, c: &FinCategory) -> ObjId {
        c.src(self.numerator)
    }

    pub fn apex(&self, c: &FinCategory) -> ObjId {
        c.dst(self.numerator)
    }

    pub fn target(&self, c: &FinCategory) -> ObjId {
        c.src(self.denominator)
    }

    pub fn is_wellformed(&self, c: &FinCategory, sigma: &MorphismSet) -> bool {
        c.dst(self.numerator) == c.dst(self.denominator) && sigma.contains(self.denominator)
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        DisplayFraction { f: self, c }
    }
}

struct DisplayFraction<'a> {
    f: &'a LeftFraction,
    c: &'a FinCategory,
}

impl fmt::Display for DisplayFraction<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.c;
        write!(
            out,
            "{} --{}--> {} <--{}-- {}",
            c.object_name(self.f.source(c)),
            c.name(self.f.numerator),
            c.object_name(self.f.apex(c)),
            c.name(self.f.denominator),
            c.object_name(self.f.target(c))
        )
    }
}

/// An equivalence class of left fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionClass {
    /// The minimal member in `(numerator, denominator)` id order.
    pub representative: LeftFraction,
    pub members: Vec<LeftFraction>,
}

/// All fraction classes between a fixed pair of objects.
#[derive(Clone, Debug)]
pub(crate) struct HomClasses {
    pub fractions: Vec<LeftFraction>,
    pub labels: Vec<usize>,
    pub count: usize,
}

/// Enumerates the fractions `x → y` and closes them under refinement.
pub(crate) fn hom_classes(c: &FinCategory, sigma: &MorphismSet, x: ObjId, y: ObjId) -> HomClasses {
    let mut fractions = Vec::new();
    let mut offset: HashMap<MorId, usize> = HashMap::new();
    for apex in c.objects() {
        for &s in c.hom(y, apex) {
            if !sigma.contains(s) {
                continue;
            }
            offset.insert(s, fractions.len());
            for &a in c.hom(x, apex) {
                fractions.push(LeftFraction::new(a, s));
            }
        }
    }
    let mut dsu = Dsu::new(fractions.len());
    for (i, f) in fractions.iter().enumerate() {
        let apex = c.dst(f.denominator);
        for z in c.objects() {
            for &u in c.hom(apex, z) {
                let us = c.compose(u, f.denominator);
                if let Some(&off) = offset.get(&us) {
                    let ua = c.compose(u, f.numerator);
                    dsu.union(i, off + c.local_index(ua));
                }
            }
        }
    }
    let (labels, count) = dsu.labels();
    HomClasses { fractions, labels, count }
}

/// Whether two fractions with the same source and target are equivalent.
pub fn fraction_equivalent(
    c: &FinCategory,
    sigma: &MorphismSet,
    f1: &LeftFraction,
    f2: &LeftFraction,
) -> Result<bool, FractionError> {
    let (sigma, _) = sigma.with_identities(c);
    for f in [f1, f2] {
        if c.dst(f.numerator) != c.dst(f.denominator) {
            return Err(FractionError::Malformed);
        }
        if !sigma.contains(f.denominator) {
            return Err(FractionError::NotInSigma(f.denominator));
        }
    }
    if f1.source(c) != f2.source(c) || f1.target(c) != f2.target(c) {
        return Err(FractionError::SourceTargetMismatch);
    }
    let hc = hom_classes(c, &sigma, f1.source(c), f1.target(c));
    let pos = |f: &LeftFraction| hc.fractions.iter().position(|g| g == f).expect("fraction enumerated");
    Ok(hc.labels[pos(f1)] == hc.labels[pos(f2)])
}

/// The first completion in id order of the span `Y' <--σ-- Y --β--> Z'`
/// to a square `β' ∘ σ = σ' ∘ β` with `σ' ∈ Σ`. Returns `(β', σ')`.
pub fn lf2_completion(c: &FinCategory, sigma: &MorphismSet, s: MorId, beta: MorId) -> Option<(MorId, MorId)> {
    completions(c, sigma, s, beta).next()
}

/// Every completion of the span, in id order of `(σ', β')`.
pub fn completions<'a>(
    c: &'a FinCategory,
    sigma: &'a MorphismSet,
    s: MorId,
    beta: MorId,
) -> impl Iterator<Item = (MorId, MorId)> + 'a {
    let (yp, zp) = (c.dst(s), c.dst(beta));
    c.objects().flat_map(move |z2| {
        c.hom(zp, z2).iter().copied().filter(move |&s2| sigma.contains(s2)).flat_map(move |s2| {
            let target = c.compose(s2, beta);
            c.hom(yp, z2).iter().copied().filter(move |&b2| c.compose(b2, s) == target).map(move |b2| (b2, s2))
        })
    })
}

/// Composite fraction `second ∘ first` via the first completion.
pub fn compose_representatives(
    c: &FinCategory,
    sigma: &MorphismSet,
    first: &LeftFraction,
    second: &LeftFraction,
) -> Result<LeftFraction, FractionError> {
    if first.target(c) != second.source(c) {
        return Err(FractionError::NotComposable);
    }
    let (b2, s2) = lf2_completion(c, sigma, first.denominator, second.numerator).ok_or(
        FractionError::LF2CompletionMissing { sigma: first.denominator, alpha: second.numerator },
    )?;
    Ok(LeftFraction::new(c.compose(b2, first.numerator), c.compose(s2, second.denominator)))
}

/// Composite of two classes, returned as a full class.
pub fn compose_fractions(
    c: &FinCategory,
    sigma: &MorphismSet,
    first: &FractionClass,
    second: &FractionClass,
) -> Result<FractionClass, FractionError> {
    let (sigma, _) = sigma.with_identities(c);
    let f = compose_representatives(c, &sigma, &first.representative, &second.representative)?;
    let hc = hom_classes(c, &sigma, f.source(c), f.target(c));
    let pos = hc.fractions.iter().position(|g| *g == f).expect("fraction enumerated");
    Ok(class_from(&hc, hc.labels[pos]))
}

fn all_classes(hc: &HomClasses) -> Vec<FractionClass> {
    let mut buckets: Vec<Vec<LeftFraction>> = vec![Vec::new(); hc.count];
    for (f, &l) in hc.fractions.iter().zip(&hc.labels) {
        buckets[l].push(*f);
    }
    buckets
        .into_iter()
        .map(|mut members| {
            members.sort();
            FractionClass { representative: members[0], members }
        })
        .collect()
}

fn class_from(hc: &HomClasses, label: usize) -> FractionClass {
    let mut members: Vec<LeftFraction> =
        hc.fractions.iter().zip(&hc.labels).filter(|(_, &l)| l == label).map(|(f, _)| *f).collect();
    members.sort();
    FractionClass { representative: members[0], members }
}

/// The class of `f` as computed from scratch.
pub fn fraction_class(c: &FinCategory, sigma: &MorphismSet, f: &LeftFraction) -> Result<FractionClass, FractionError> {
    let (sigma, _) = sigma.with_identities(c);
    if !f.is_wellformed(c, &sigma) {
        return Err(FractionError::Malformed);
    }
    let hc = hom_classes(c, &sigma, f.source(c), f.target(c));
    let pos = hc.fractions.iter().position(|g| g == f).expect("fraction enumerated");
    Ok(class_from(&hc, hc.labels[pos]))
}

/// `Σ⁻¹C` together with `P_Σ`.
#[derive(Clone, Debug)]
pub struct FractionCategory {
    pub category: FinCategory,
    pub functor: FinFunctor,
    /// Indexed by morphism id of `category`.
    pub classes: Vec<FractionClass>,
    /// The designated set after adding identities.
    pub sigma: MorphismSet,
    pub identities_added: bool,
    lookup: HashMap<LeftFraction, MorId>,
}

impl FractionCategory {
    /// Morphism of `Σ⁻¹C` represented by `f`.
    pub fn class_of(&self, f: &LeftFraction) -> Option<MorId> {
        self.lookup.get(f).copied()
    }

    /// Number of morphisms `x → y` in `Σ⁻¹C`.
    pub fn hom_size(&self, x: ObjId, y: ObjId) -> usize {
        self.category.hom(x, y).len()
    }
}

/// Builds `Σ⁻¹C`. The calculus is checked first.
pub fn build_fraction_category(c: &FinCategory, sigma: &MorphismSet) -> Result<FractionCategory, FractionError> {
    let report = check_calculus_left(c, sigma);
    if !report.passes() {
        return Err(FractionError::CalculusFails(report));
    }
    build_fraction_category_unchecked(c, sigma)
}

/// Builds `Σ⁻¹C` assuming the calculus holds. Used where the calculus is
/// known to hold and an exhaustive check would dominate the cost.
pub fn build_fraction_category_unchecked(c: &FinCategory, sigma: &MorphismSet) -> Result<FractionCategory, FractionError> {
    let (sigma, identities_added) = sigma.with_identities(c);
    let n = c.num_objects();
    let pairs: Vec<(ObjId, ObjId)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let per_pair: Vec<HomClasses> = pairs.par_iter().map(|&(x, y)| hom_classes(c, &sigma, x, y)).collect();

    let mut morphisms = Vec::new();
    let mut classes = Vec::new();
    let mut lookup = HashMap::new();
    for (&(x, y), hc) in pairs.iter().zip(&per_pair) {
        let base = morphisms.len();
        let mut reps: Vec<Option<FractionClass>> = all_classes(hc).into_iter().map(Some).collect();
        // Order classes by representative.
        let mut order: Vec<usize> = (0..hc.count).collect();
        order.sort_by_key(|&l| reps[l].as_ref().map(|r| r.representative));
        let mut new_index = vec![0; hc.count];
        for (i, &l) in order.iter().enumerate() {
            new_index[l] = base + i;
        }
        for &l in &order {
            let cls = reps[l].take().expect("class");
            let r = cls.representative;
            let name = if c.is_identity(r.denominator) {
                c.name(r.numerator).to_string()
            } else {
                format!("[{},{}]", c.name(r.numerator), c.name(r.denominator))
            };
            morphisms.push(Morphism { name, src: x, dst: y });
            classes.push(cls);
        }
        for (f, &l) in hc.fractions.iter().zip(&hc.labels) {
            lookup.insert(*f, new_index[l]);
        }
    }
    let identities: Vec<Option<MorId>> =
        c.objects().map(|x| Some(lookup[&LeftFraction::new(c.id(x), c.id(x))])).collect();
    let mut hom_list = vec![Vec::new(); n * n];
    for (i, m) in morphisms.iter().enumerate() {
        hom_list[m.src * n + m.dst].push(i);
    }
    let mut err = None;
    let table: Vec<Vec<(MorId, MorId, MorId)>> = (0..classes.len())
        .into_par_iter()
        .map(|f| {
            let mut out = Vec::new();
            let rf = classes[f].representative;
            let y = rf.target(c);
            for z in c.objects() {
                for &g in &hom_list[y * n + z] {
                    let rg = classes[g].representative;
                    match compose_representatives(c, &sigma, &rf, &rg) {
                        Ok(h) => out.push((g, f, lookup[&h])),
                        Err(_) => out.push((g, f, usize::MAX)),
                    }
                }
            }
            out
        })
        .collect();
    let mut comp: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for (g, f, h) in table.into_iter().flatten() {
        if h == usize::MAX {
            err.get_or_insert(FractionError::LF2CompletionMissing {
                sigma: classes[f].representative.denominator,
                alpha: classes[g].representative.numerator,
            });
        } else {
            comp.insert((g, f), h);
        }
    }
    if let Some(e) = err {
        return Err(e);
    }
    let category = FinCategory::assemble(c.object_names().to_vec(), morphisms, identities, |g, f| comp.get(&(g, f)).copied());
    let functor = FinFunctor {
        obj_map: c.objects().collect(),
        mor_map: c.morphism_ids().map(|m| lookup[&LeftFraction::new(m, c.id(c.dst(m)))]).collect(),
    };
    Ok(FractionCategory { category, functor, classes, sigma, identities_added, lookup })
}

/// Checks that every completion of every composable pair of classes yields
/// the same class. Returns the first disagreeing pair.
pub fn completion_independence(c: &FinCategory, fc: &FractionCategory) -> Result<(), (MorId, MorId)> {
    let q = &fc.category;
    for f in q.morphism_ids() {
        for z in q.objects() {
            for &g in q.hom(q.dst(f), z) {
                let expected = q.compose(g, f);
                for rf in &fc.classes[f].members {
                    for rg in &fc.classes[g].members {
                        for (b2, s2) in completions(c, &fc.sigma, rf.denominator, rg.numerator) {
                            let h = LeftFraction::new(c.compose(b2, rf.numerator), c.compose(s2, rg.denominator));
                            if fc.class_of(&h) != Some(expected) {
                                return Err((g, f));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `Σ̄`: all morphisms that become invertible in `Σ⁻¹C`. The set is first
/// closed under composition, which does not change the localization.
pub fn saturation(c: &FinCategory, sigma: &MorphismSet) -> Result<MorphismSet, FractionError> {
    let fc = build_fraction_category(c, &sigma.composition_closure(c))?;
    Ok(MorphismSet::from_ids(c, c.morphism_ids().filter(|&m| fc.category.is_iso(fc.functor.mor(m)))))
}

/// Result of comparing fractions on a full subcategory with fractions on
/// the whole category.
#[derive(Clone, Debug)]
pub struct SubcategoryComparison {
    pub sub: FractionCategory,
    pub whole: FractionCategory,
    /// `D[(Σ∩D)⁻¹] → C[Σ⁻¹]`.
    pub functor: FinFunctor,
    pub fully_faithful: bool,
    /// `None` when every `σ: Y → Y'` in `Σ` with `Y ∈ D` extends by some `τ`
    /// with `τσ ∈ Σ ∩ D`; otherwise the first offending `σ`.
    pub hypothesis_witness: Option<MorId>,
}

pub fn induced_subcategory_functor(
    c: &FinCategory,
    sigma: &MorphismSet,
    objs: &[ObjId],
) -> Result<SubcategoryComparison, FractionError> {
    let (sigma, _) = sigma.with_identities(c);
    let (d, inc) = c.full_subcategory(objs);
    let sigma_d = MorphismSet::from_ids(&d, d.morphism_ids().filter(|&m| sigma.contains(inc.mor(m))));
    let whole = build_fraction_category(c, &sigma)?;
    let sub = build_fraction_category(&d, &sigma_d)?;
    let mut in_d = vec![false; c.num_objects()];
    for &x in objs {
        in_d[x] = true;
    }
    let hypothesis_witness = sigma.ids().find(|&s| {
        in_d[c.src(s)]
            && !c.objects().any(|z| c.hom(c.dst(s), z).iter().any(|&t| {
                let ts = c.compose(t, s);
                sigma.contains(ts) && in_d[c.dst(ts)]
            }))
    });
    let mor_map = sub
        .classes
        .iter()
        .map(|cls| {
            let r = cls.representative;
            whole.class_of(&LeftFraction::new(inc.mor(r.numerator), inc.mor(r.denominator))).expect("fraction")
        })
        .collect();
    let functor = FinFunctor { obj_map: objs.to_vec(), mor_map };
    let fully_faithful = functor.is_fully_faithful(&sub.category, &whole.category);
    Ok(SubcategoryComparison { sub, whole, functor, fully_faithful, hypothesis_witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::fincat::{path_localization_oracle, validate_category};

    fn set(c: &FinCategory, names: &[&str]) -> MorphismSet {
        MorphismSet::from_names(c, names).unwrap()
    }

    #[test]
    fn interval_fraction_category_collapses() {
        let c = interval();
        let fc = build_fraction_category(&c, &set(&c, &["s"])).unwrap();
        assert!(validate_category(&fc.category).is_valid());
        assert_eq!(fc.category.num_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(fc.hom_size(x, y), 1);
            }
        }
        assert!(fc.identities_added);
    }

    #[test]
    fn identities_only_is_isomorphic() {
        let c = chain3();
        let fc = build_fraction_category(&c, &c.identity_set()).unwrap();
        assert!(fc.functor.is_fully_faithful(&c, &fc.category));
        assert!(!fc.identities_added);
    }

    #[test]
    fn chain_fractions() {
        let c = chain3();
        let fc = build_fraction_category(&c, &set(&c, &["YZ"])).unwrap();
        let q = &fc.category;
        assert!(validate_category(q).is_valid());
        assert!(q.isomorphic(1, 2));
        assert_eq!(q.hom(1, 0).len(), 0);
        assert_eq!(q.hom(0, 1).len(), 1);
        assert!(completion_independence(&c, &fc).is_ok());
    }

    #[test]
    fn equivalence_through_a_refinement() {
        let c = chain3();
        let s = set(&c, &["YZ"]);
        let xy = c.find_morphism("XY").unwrap();
        let xz = c.find_morphism("XZ").unwrap();
        let yz = c.find_morphism("YZ").unwrap();
        let f1 = LeftFraction::new(xy, c.id(1));
        let f2 = LeftFraction::new(xz, yz);
        assert!(fraction_equivalent(&c, &s, &f1, &f2).unwrap());
        assert!(fraction_equivalent(&c, &s, &f1, &f1).unwrap());
        let bad = LeftFraction::new(c.id(0), c.id(0));
        assert_eq!(fraction_equivalent(&c, &s, &f1, &bad), Err(FractionError::SourceTargetMismatch));
    }

    #[test]
    fn parallel_arrows_stay_distinct() {
        let c = parallel();
        let f = LeftFraction::new(c.find_morphism("f").unwrap(), c.id(1));
        let g = LeftFraction::new(c.find_morphism("g").unwrap(), c.id(1));
        assert!(!fraction_equivalent(&c, &c.identity_set(), &f, &g).unwrap());
    }

    #[test]
    fn composition_inverts_sigma() {
        let c = interval();
        let s = c.find_morphism("s").unwrap();
        let sigma = set(&c, &["s"]);
        let forward = fraction_class(&c, &sigma, &LeftFraction::new(s, c.id(1))).unwrap();
        let back = fraction_class(&c, &sigma, &LeftFraction::new(c.id(1), s)).unwrap();
        let comp = compose_fractions(&c, &sigma, &forward, &back).unwrap();
        let idx = fraction_class(&c, &sigma, &LeftFraction::new(c.id(0), c.id(0))).unwrap();
        assert_eq!(comp, idx);
    }

    #[test]
    fn identity_denominators_compose_plainly() {
        let c = chain3();
        let ids = c.identity_set();
        let xy = c.find_morphism("XY").unwrap();
        let yz = c.find_morphism("YZ").unwrap();
        let a = fraction_class(&c, &ids, &LeftFraction::new(xy, c.id(1))).unwrap();
        let b = fraction_class(&c, &ids, &LeftFraction::new(yz, c.id(2))).unwrap();
        let comp = compose_fractions(&c, &ids, &a, &b).unwrap();
        assert_eq!(comp.representative, LeftFraction::new(c.compose(yz, xy), c.id(2)));
    }

    #[test]
    fn agrees_with_path_oracle_on_chain() {
        let c = chain3();
        let sigma = set(&c, &["YZ"]);
        let fc = build_fraction_category(&c, &sigma).unwrap();
        let po = path_localization_oracle(&c, &sigma, 6).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(fc.hom_size(x, y), po.category.hom(x, y).len());
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let c = chain3();
        assert_eq!(saturation(&c, &c.identity_set()).unwrap(), c.identity_set());
        let i = interval();
        assert_eq!(saturation(&i, &set(&i, &["s"])).unwrap().len(), 3);
        let both = set(&c, &["XY", "YZ"]);
        let sat = saturation(&c, &both).unwrap();
        assert!(sat.contains(c.find_morphism("XZ").unwrap()));
        assert_eq!(saturation(&c, &sat).unwrap(), sat);
    }

    #[test]
    fn subcategory_comparison() {
        let c = chain3();
        let sigma = set(&c, &["YZ"]);
        let all = induced_subcategory_functor(&c, &sigma, &[0, 1, 2]).unwrap();
        assert!(all.fully_faithful && all.hypothesis_witness.is_none());
        let upper = induced_subcategory_functor(&c, &sigma, &[1, 2]).unwrap();
        assert!(upper.fully_faithful && upper.hypothesis_witness.is_none());
        let lower = induced_subcategory_functor(&c, &sigma, &[0, 1]).unwrap();
        assert_eq!(lower.hypothesis_witness, c.find_morphism("YZ"));
    }
}
