//! Finite categories, functors and natural transformations.
//!
//! A [`FinCategory`] stores every morphism explicitly together with a total
//! composition table. Morphism ids are globally ordered and every search in
//! the crate iterates in id order, so all "choose some completion" steps are
//! deterministic.

mod adjoint;
pub mod format;
mod local;
mod paths;
pub mod random;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use adjoint::{check_hom_bijections, find_left_adjoint, find_right_adjoint, AdjointSearch};
pub use local::{
    find_localization_unit, inverted_by, is_localization_functor, is_local, local_object_conditions, local_objects,
    local_uniqueness, LocalConditions, LocalizationVerdict,
};
pub use paths::{path_localization_oracle, OracleError, PathLocalization};

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("invalid category: {0}")]
    Invalid(String),
    #[error("morphism id {0} is out of range")]
    MorphismOutOfRange(MorId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

/// A finite category with an explicit composition table.
#[derive(Clone)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
    hom: Vec<Vec<MorId>>,
    local: Vec<usize>,
    comp_offset: Vec<usize>,
    comp: Vec<Option<MorId>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.objects)
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

/// Incremental construction of a [`FinCategory`].
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<MorId>>,
    compose: HashMap<(MorId, MorId), MorId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> ObjId {
        self.objects.push(name.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, src: ObjId, dst: ObjId) -> MorId {
        self.morphisms.push(Morphism { name: name.into(), src, dst });
        self.morphisms.len() - 1
    }

    /// Adds a morphism and declares it the identity of `obj`.
    pub fn add_identity(&mut self, name: impl Into<String>, obj: ObjId) -> MorId {
        let id = self.add_morphism(name, obj, obj);
        self.identities[obj] = Some(id);
        id
    }

    pub fn set_identity(&mut self, obj: ObjId, mor: MorId) {
        self.identities[obj] = Some(mor);
    }

    /// Records `g ∘ f = h`.
    pub fn set_compose(&mut self, g: MorId, f: MorId, h: MorId) {
        self.compose.insert((g, f), h);
    }

    pub fn identity(&self, obj: ObjId) -> Option<MorId> {
        self.identities[obj]
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m]
    }

    /// Fills composites involving an identity wherever they are missing.
    pub fn fill_identity_composites(&mut self) {
        for (f, m) in self.morphisms.iter().enumerate() {
            if let Some(i) = self.identities[m.dst] {
                self.compose.entry((i, f)).or_insert(f);
            }
            if let Some(i) = self.identities[m.src] {
                self.compose.entry((f, i)).or_insert(f);
            }
        }
    }

    /// Builds without checking the axioms. Missing composites stay empty and
    /// are reported by [`validate_category`].
    pub fn build_unchecked(self) -> FinCategory {
        let compose = self.compose;
        FinCategory::assemble(self.objects, self.morphisms, self.identities, |g, f| compose.get(&(g, f)).copied())
    }

    pub fn build(self) -> Result<FinCategory, CategoryError> {
        let c = self.build_unchecked();
        let report = validate_category(&c);
        if let Some(v) = report.violations.first() {
            return Err(CategoryError::Invalid(v.describe(&c)));
        }
        Ok(c)
    }
}

impl FinCategory {
    /// Assembles a category from its morphisms and a composition function.
    /// The function is queried once for every composable pair.
    pub fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<Option<MorId>>,
        mut compose: impl FnMut(MorId, MorId) -> Option<MorId>,
    ) -> Self {
        let n = objects.len();
        let mut hom = vec![Vec::new(); n * n];
        let mut local = vec![0; morphisms.len()];
        for (id, m) in morphisms.iter().enumerate() {
            let h = &mut hom[m.src * n + m.dst];
            local[id] = h.len();
            h.push(id);
        }
        let mut comp_offset = vec![0; n * n * n];
        let mut total = 0;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    comp_offset[(x * n + y) * n + z] = total;
                    total += hom[x * n + y].len() * hom[y * n + z].len();
                }
            }
        }
        let mut comp = vec![None; total];
        for x in 0..n {
            for y in 0..n {
                let fs = &hom[x * n + y];
                if fs.is_empty() {
                    continue;
                }
                for z in 0..n {
                    let gs = &hom[y * n + z];
                    let off = comp_offset[(x * n + y) * n + z];
                    for (lg, &g) in gs.iter().enumerate() {
                        for (lf, &f) in fs.iter().enumerate() {
                            comp[off + lg * fs.len() + lf] = compose(g, f);
                        }
                    }
                }
            }
        }
        Self { objects, morphisms, identities, hom, local, comp_offset, comp }
    }

    /// The poset category on `names` with `x → y` iff `leq(x, y)`.
    /// `leq` must be reflexive and transitive.
    pub fn preorder(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut b = CategoryBuilder::new();
        for n in names {
            b.add_object(*n);
        }
        let n = names.len();
        let mut arrow = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    let name = if x == y { format!("id_{}", names[x]) } else { format!("{}{}", names[x], names[y]) };
                    let m = b.add_morphism(name, x, y);
                    if x == y {
                        b.set_identity(x, m);
                    }
                    arrow.insert((x, y), m);
                }
            }
        }
        for (&(x, y), &f) in &arrow {
            for z in 0..n {
                if let (Some(&g), Some(&h)) = (arrow.get(&(y, z)), arrow.get(&(x, z))) {
                    b.set_compose(g, f, h);
                }
            }
        }
        b.build_unchecked()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, m: MorId) -> &Morphism {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn name(&self, m: MorId) -> &str {
        &self.morphisms[m].name
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m].src
    }

    pub fn dst(&self, m: MorId) -> ObjId {
        self.morphisms[m].dst
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name)
    }

    /// Identity of `x`. Panics if the category has no identity at `x`, which
    /// cannot happen for a validated category.
    pub fn id(&self, x: ObjId) -> MorId {
        self.identities[x].expect("object without identity")
    }

    pub fn identity_opt(&self, x: ObjId) -> Option<MorId> {
        self.identities[x]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.src(m)] == Some(m)
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        &self.hom[x * self.objects.len() + y]
    }

    /// Position of `m` within its hom-set.
    pub fn local_index(&self, m: MorId) -> usize {
        self.local[m]
    }

    /// `g ∘ f`, or `None` when not composable or missing from the table.
    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        let (x, y) = (self.src(f), self.dst(f));
        if self.src(g) != y {
            return None;
        }
        let n = self.objects.len();
        let z = self.dst(g);
        let off = self.comp_offset[(x * n + y) * n + z];
        self.comp[off + self.local[g] * self.hom(x, y).len() + self.local[f]]
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!("cannot compose {} after {}", self.name(g), self.name(f))
        })
    }

    /// Composite of a chain given in application order.
    pub fn compose_path(&self, path: &[MorId]) -> MorId {
        let mut acc = path[0];
        for &m in &path[1..] {
            acc = self.compose(m, acc);
        }
        acc
    }

    /// Two-sided inverse of `f`, first in id order.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (x, y) = (self.src(f), self.dst(f));
        let (ix, iy) = (self.id(x), self.id(y));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == ix && self.compose(f, g) == iy)
    }

    pub fn is_iso(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    /// First isomorphism `x → y` in id order.
    pub fn find_iso(&self, x: ObjId, y: ObjId) -> Option<MorId> {
        self.hom(x, y).iter().copied().find(|&f| self.is_iso(f))
    }

    pub fn isomorphic(&self, x: ObjId, y: ObjId) -> bool {
        self.find_iso(x, y).is_some()
    }

    /// All identities as a morphism set.
    pub fn identity_set(&self) -> MorphismSet {
        MorphismSet::from_ids(self, self.objects().map(|x| self.id(x)))
    }

    /// The opposite category; morphism and object ids are preserved.
    pub fn opposite(&self) -> Self {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism { name: m.name.clone(), src: m.dst, dst: m.src })
            .collect();
        Self::assemble(self.objects.clone(), morphisms, self.identities.clone(), |g, f| self.try_compose(f, g))
    }

    /// Full subcategory on `objs` (kept in the given order) with the
    /// inclusion functor.
    pub fn full_subcategory(&self, objs: &[ObjId]) -> (Self, FinFunctor) {
        let mut obj_index = vec![None; self.num_objects()];
        for (i, &x) in objs.iter().enumerate() {
            obj_index[x] = Some(i);
        }
        let mut mor_map = Vec::new();
        let mut new_id = vec![None; self.num_morphisms()];
        let mut morphisms = Vec::new();
        for (m, mm) in self.morphisms.iter().enumerate() {
            if let (Some(s), Some(d)) = (obj_index[mm.src], obj_index[mm.dst]) {
                new_id[m] = Some(morphisms.len());
                morphisms.push(Morphism { name: mm.name.clone(), src: s, dst: d });
                mor_map.push(m);
            }
        }
        let identities = objs.iter().map(|&x| self.identities[x].and_then(|i| new_id[i])).collect();
        let names = objs.iter().map(|&x| self.objects[x].clone()).collect();
        let sub = Self::assemble(names, morphisms, identities, |g, f| {
            self.try_compose(mor_map[g], mor_map[f]).and_then(|h| new_id[h])
        });
        let functor = FinFunctor { obj_map: objs.to_vec(), mor_map };
        (sub, functor)
    }

    pub fn is_poset(&self) -> bool {
        self.objects().all(|x| self.objects().all(|y| self.hom(x, y).len() <= 1 && (x == y || self.hom(x, y).is_empty() || self.hom(y, x).is_empty())))
    }
}

/// A set of morphisms of a fixed category, stored as a membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorphismSet {
    members: Vec<bool>,
}

impl MorphismSet {
    pub fn empty(c: &FinCategory) -> Self {
        Self { members: vec![false; c.num_morphisms()] }
    }

    pub fn all(c: &FinCategory) -> Self {
        Self { members: vec![true; c.num_morphisms()] }
    }

    pub fn from_ids(c: &FinCategory, ids: impl IntoIterator<Item = MorId>) -> Self {
        let mut s = Self::empty(c);
        for m in ids {
            s.members[m] = true;
        }
        s
    }

    pub fn from_mask(members: Vec<bool>) -> Self {
        Self { members }
    }

    /// Resolves names against `c`.
    pub fn from_names(c: &FinCategory, names: &[&str]) -> Result<Self, CategoryError> {
        let mut s = Self::empty(c);
        for n in names {
            let m = c.find_morphism(n).ok_or_else(|| CategoryError::UnknownMorphism(n.to_string()))?;
            s.members[m] = true;
        }
        Ok(s)
    }

    pub fn contains(&self, m: MorId) -> bool {
        self.members.get(m).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, m: MorId) {
        self.members[m] = true;
    }

    pub fn ids(&self) -> impl Iterator<Item = MorId> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    /// Checks that the set belongs to `c` (every member id exists).
    pub fn belongs_to(&self, c: &FinCategory) -> bool {
        self.members.len() == c.num_morphisms()
    }

    /// Adds every identity; returns whether anything was added.
    pub fn with_identities(&self, c: &FinCategory) -> (Self, bool) {
        let mut s = self.clone();
        let mut added = false;
        for x in c.objects() {
            let i = c.id(x);
            if !s.members[i] {
                s.members[i] = true;
                added = true;
            }
        }
        (s, added)
    }

    /// Smallest superset containing the identities and closed under
    /// composition.
    pub fn composition_closure(&self, c: &FinCategory) -> Self {
        let (mut s, _) = self.with_identities(c);
        loop {
            let members: Vec<MorId> = s.ids().collect();
            let mut added = false;
            for &f in &members {
                for &g in &members {
                    if c.src(g) == c.dst(f) {
                        let h = c.compose(g, f);
                        if !s.members[h] {
                            s.members[h] = true;
                            added = true;
                        }
                    }
                }
            }
            if !added {
                return s;
            }
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn names(&self, c: &FinCategory) -> Vec<String> {
        self.ids().map(|m| c.name(m).to_string()).collect()
    }
}

/// A violated category axiom with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingIdentity { object: ObjId },
    BadIdentityType { object: ObjId, morphism: MorId },
    MissingComposite { g: MorId, f: MorId },
    CompositeType { g: MorId, f: MorId, h: MorId },
    LeftUnit { f: MorId },
    RightUnit { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl Violation {
    pub fn describe(&self, c: &FinCategory) -> String {
        match *self {
            Violation::MissingIdentity { object } => format!("object {} has no identity", c.object_name(object)),
            Violation::BadIdentityType { object, morphism } => {
                format!("identity {} of {} is not an endomorphism", c.name(morphism), c.object_name(object))
            }
            Violation::MissingComposite { g, f } => format!("composite ({}, {}) is undefined", c.name(g), c.name(f)),
            Violation::CompositeType { g, f, h } => {
                format!("composite ({}, {}) = {} has the wrong source or target", c.name(g), c.name(f), c.name(h))
            }
            Violation::LeftUnit { f } => format!("identity is not a left unit for {}", c.name(f)),
            Violation::RightUnit { f } => format!("identity is not a right unit for {}", c.name(f)),
            Violation::Associativity { h, g, f } => {
                format!("associativity fails on ({}, {}, {})", c.name(h), c.name(g), c.name(f))
            }
        }
    }

    /// Witness ids, outermost morphism first.
    pub fn witness(&self) -> Vec<MorId> {
        match *self {
            Violation::MissingIdentity { .. } => vec![],
            Violation::BadIdentityType { morphism, .. } => vec![morphism],
            Violation::MissingComposite { g, f } | Violation::CompositeType { g, f, .. } => vec![g, f],
            Violation::LeftUnit { f } | Violation::RightUnit { f } => vec![f],
            Violation::Associativity { h, g, f } => vec![h, g, f],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks typing, units and associativity by full enumeration.
pub fn validate_category(c: &FinCategory) -> ValidationReport {
    let mut violations = Vec::new();
    for x in c.objects() {
        match c.identity_opt(x) {
            None => violations.push(Violation::MissingIdentity { object: x }),
            Some(i) if c.src(i) != x || c.dst(i) != x => {
                violations.push(Violation::BadIdentityType { object: x, morphism: i })
            }
            _ => {}
        }
    }
    let mut typed = true;
    for f in c.morphism_ids() {
        for &g in c.morphism_ids().filter(|&g| c.src(g) == c.dst(f)).collect::<Vec<_>>().iter() {
            match c.try_compose(g, f) {
                None => {
                    typed = false;
                    violations.push(Violation::MissingComposite { g, f });
                }
                Some(h) if c.src(h) != c.src(f) || c.dst(h) != c.dst(g) => {
                    typed = false;
                    violations.push(Violation::CompositeType { g, f, h });
                }
                _ => {}
            }
        }
    }
    if !violations.is_empty() && !typed {
        return ValidationReport { violations };
    }
    if violations.is_empty() {
        for f in c.morphism_ids() {
            if c.try_compose(c.id(c.dst(f)), f) != Some(f) {
                violations.push(Violation::LeftUnit { f });
            }
            if c.try_compose(f, c.id(c.src(f))) != Some(f) {
                violations.push(Violation::RightUnit { f });
            }
        }
    }
    if typed {
        for f in c.morphism_ids() {
            let y = c.dst(f);
            for z in c.objects() {
                for &g in c.hom(y, z) {
                    let gf = c.compose(g, f);
                    for w in c.objects() {
                        for &h in c.hom(z, w) {
                            if c.compose(h, gf) != c.compose(c.compose(h, g), f) {
                                violations.push(Violation::Associativity { h, g, f });
                            }
                        }
                    }
                }
            }
        }
    }
    ValidationReport { violations }
}

/// A functor between finite categories, given by its tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinFunctor {
    pub obj_map: Vec<ObjId>,
    pub mor_map: Vec<MorId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Shape,
    Typing { morphism: MorId },
    Identity { object: ObjId },
    Composition { g: MorId, f: MorId },
}

impl FinFunctor {
    pub fn identity(c: &FinCategory) -> Self {
        Self { obj_map: c.objects().collect(), mor_map: c.morphism_ids().collect() }
    }

    pub fn obj(&self, x: ObjId) -> ObjId {
        self.obj_map[x]
    }

    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            obj_map: self.obj_map.iter().map(|&x| other.obj(x)).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.mor(m)).collect(),
        }
    }

    /// Checks identities, typing and composition by enumeration.
    pub fn validate(&self, src: &FinCategory, dst: &FinCategory) -> Result<(), FunctorViolation> {
        if self.obj_map.len() != src.num_objects()
            || self.mor_map.len() != src.num_morphisms()
            || self.obj_map.iter().any(|&x| x >= dst.num_objects())
            || self.mor_map.iter().any(|&m| m >= dst.num_morphisms())
        {
            return Err(FunctorViolation::Shape);
        }
        for m in src.morphism_ids() {
            let fm = self.mor(m);
            if dst.src(fm) != self.obj(src.src(m)) || dst.dst(fm) != self.obj(src.dst(m)) {
                return Err(FunctorViolation::Typing { morphism: m });
            }
        }
        for x in src.objects() {
            if self.mor(src.id(x)) != dst.id(self.obj(x)) {
                return Err(FunctorViolation::Identity { object: x });
            }
        }
        for f in src.morphism_ids() {
            for z in src.objects() {
                for &g in src.hom(src.dst(f), z) {
                    if self.mor(src.compose(g, f)) != dst.compose(self.mor(g), self.mor(f)) {
                        return Err(FunctorViolation::Composition { g, f });
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the functor is bijective on every hom-set.
    pub fn is_fully_faithful(&self, src: &FinCategory, dst: &FinCategory) -> bool {
        src.objects().all(|x| {
            src.objects().all(|y| {
                let image: std::collections::BTreeSet<MorId> = src.hom(x, y).iter().map(|&m| self.mor(m)).collect();
                image.len() == src.hom(x, y).len() && image.len() == dst.hom(self.obj(x), self.obj(y)).len()
            })
        })
    }

    /// Every object of `dst` is isomorphic to some image object.
    pub fn is_essentially_surjective(&self, src: &FinCategory, dst: &FinCategory) -> bool {
        dst.objects().all(|d| src.objects().any(|x| dst.isomorphic(self.obj(x), d)))
    }

    pub fn is_equivalence(&self, src: &FinCategory, dst: &FinCategory) -> bool {
        self.is_fully_faithful(src, dst) && self.is_essentially_surjective(src, dst)
    }

    /// The same functor viewed between opposite categories.
    pub fn opposite(&self) -> Self {
        self.clone()
    }
}

/// A natural transformation `F ⇒ G` between functors `C → D`, stored by its
/// components (morphism ids of `D`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTransformation {
    pub components: Vec<MorId>,
}

impl NatTransformation {
    /// Identity transformation of `f`, where `target` is its target category.
    pub fn identity(target: &FinCategory, f: &FinFunctor) -> Self {
        Self { components: f.obj_map.iter().map(|&y| target.id(y)).collect() }
    }

    pub fn component(&self, x: ObjId) -> MorId {
        self.components[x]
    }

    /// Checks typing and every naturality square; returns the first
    /// offending morphism of `src`.
    pub fn validate(
        &self,
        src: &FinCategory,
        dst: &FinCategory,
        from: &FinFunctor,
        to: &FinFunctor,
    ) -> Result<(), MorId> {
        for x in src.objects() {
            let c = self.component(x);
            if dst.src(c) != from.obj(x) || dst.dst(c) != to.obj(x) {
                return Err(src.id(x));
            }
        }
        for m in src.morphism_ids() {
            let (x, y) = (src.src(m), src.dst(m));
            let lhs = dst.compose(self.component(y), from.mor(m));
            let rhs = dst.compose(to.mor(m), self.component(x));
            if lhs != rhs {
                return Err(m);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// X → Y
    pub fn interval() -> FinCategory {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("X");
        let y = b.add_object("Y");
        b.add_identity("id_X", x);
        b.add_identity("id_Y", y);
        b.add_morphism("s", x, y);
        b.fill_identity_composites();
        b.build().unwrap()
    }

    /// X → Y → Z with the composite.
    pub fn chain3() -> FinCategory {
        FinCategory::preorder(&["X", "Y", "Z"], |a, b| a <= b)
    }

    /// X → Y, X → Z and nothing else.
    pub fn span() -> FinCategory {
        FinCategory::preorder(&["X", "Y", "Z"], |a, b| a == b || (a == 0))
    }

    /// Two parallel arrows X ⇉ Y.
    pub fn parallel() -> FinCategory {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("X");
        let y = b.add_object("Y");
        b.add_identity("id_X", x);
        b.add_identity("id_Y", y);
        b.add_morphism("f", x, y);
        b.add_morphism("g", x, y);
        b.fill_identity_composites();
        b.build().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn interval_is_valid() {
        assert!(validate_category(&interval()).is_valid());
        assert!(validate_category(&chain3()).is_valid());
    }

    #[test]
    fn corrupted_composition_is_reported() {
        let mut b = CategoryBuilder::new();
        let x = b.add_object("X");
        let y = b.add_object("Y");
        let idx = b.add_identity("id_X", x);
        let idy = b.add_identity("id_Y", y);
        let s = b.add_morphism("s", x, y);
        b.fill_identity_composites();
        b.set_compose(s, idx, idy);
        let c = b.build_unchecked();
        let report = validate_category(&c);
        assert!(!report.is_valid());
        assert_eq!(report.violations[0], Violation::CompositeType { g: s, f: idx, h: idy });
        assert_eq!(report.violations[0].witness(), vec![s, idx]);
    }

    #[test]
    fn opposite_is_valid_and_involutive() {
        let c = chain3();
        let op = c.opposite();
        assert!(validate_category(&op).is_valid());
        let opop = op.opposite();
        for g in c.morphism_ids() {
            for f in c.morphism_ids() {
                assert_eq!(c.try_compose(g, f), opop.try_compose(g, f));
            }
        }
    }

    #[test]
    fn full_subcategory_inclusion_is_a_functor() {
        let c = chain3();
        let (d, inc) = c.full_subcategory(&[1, 2]);
        assert!(validate_category(&d).is_valid());
        assert!(inc.validate(&d, &c).is_ok());
        assert!(inc.is_fully_faithful(&d, &c));
    }

    #[test]
    fn identity_functor_and_naturality() {
        let c = interval();
        let id = FinFunctor::identity(&c);
        assert!(id.validate(&c, &c).is_ok());
        let eta = NatTransformation::identity(&c, &id);
        assert!(eta.validate(&c, &c, &id, &id).is_ok());
    }

    #[test]
    fn isomorphisms_in_posets_are_identities() {
        let c = chain3();
        for m in c.morphism_ids() {
            assert_eq!(c.is_iso(m), c.is_identity(m));
        }
    }
}
