//! Enumerated models of `K^b(proj A)` within caps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    corrupted_mapping_cone, find_homotopy_iso, mapping_cone, primitive_idempotents, ChainComplex, ChainMap,
    ConeTriangle, FinAlgebra, FinModule, HomSpace,
};
use crate::fincat::{FinCategory, MorId, Morphism};
use crate::linalg::{all_vectors, combine, vector_index, Matrix, Subspace};

use super::TriangulatedError;

pub type ObjId = usize;

/// `(degree, projective index) ↦ multiplicity`, nonzero entries only.
pub type Multiplicity = BTreeMap<(i32, usize), usize>;

/// Size limits of a model: degrees `[0, window]` and at most `dim_cap`
/// indecomposable projective summands in total.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub window: usize,
    pub dim_cap: usize,
}

impl Caps {
    pub fn new(window: usize, dim_cap: usize) -> Self {
        Self { window, dim_cap }
    }
}

/// A morphism of the model: a homotopy class in coordinates of the
/// hom-space basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelMorphism {
    pub src: ObjId,
    pub dst: ObjId,
    pub coords: Vec<u32>,
}

/// A model object homotopy equivalent to a given complex `Z`.
#[derive(Clone, Debug)]
pub struct Located {
    pub id: ObjId,
    /// `Z → object`
    pub to: ChainMap,
    /// `object → Z`
    pub from: ChainMap,
}

#[derive(Clone, Debug)]
struct Simple {
    module: FinModule,
    end_dim: usize,
}

/// A finite full subcategory of `K^b(proj A)`, one object per isomorphism
/// class within the caps, with all hom-spaces and composition tensors.
#[derive(Clone, Debug)]
pub struct TriangulatedModel {
    alg: Arc<FinAlgebra>,
    caps: Caps,
    idempotents: Vec<Vec<u32>>,
    projectives: Vec<FinModule>,
    simples: Vec<Simple>,
    objects: Vec<ChainComplex>,
    mult: Vec<Multiplicity>,
    names: Vec<String>,
    homs: Vec<HomSpace>,
    bases: Vec<Vec<ChainMap>>,
    /// Per triple `(x, y, z)`: entry `a * dim(y, z) + b` holds `g_b ∘ f_a`.
    tensors: Vec<Vec<Vec<u32>>>,
    indecomposables: Vec<ObjId>,
    corrupt: bool,
}

impl TriangulatedModel {
    pub fn build(alg: Arc<FinAlgebra>, caps: Caps) -> Result<Self, TriangulatedError> {
        if caps.dim_cap == 0 {
            return Err(TriangulatedError::InvalidCaps);
        }
        let prims = primitive_idempotents(&alg);
        let simples: Vec<Simple> = prims
            .iter()
            .map(|(_, p)| {
                let module = p.top();
                let end_dim = module.hom_basis(&module).len();
                Simple { module, end_dim }
            })
            .collect();
        let radical = alg.radical();
        let r = prims.len();
        let slots: Vec<(i32, usize)> = (0..=caps.window as i32).flat_map(|n| (0..r).map(move |j| (n, j))).collect();
        let mut configs = Vec::new();
        multisets(&slots, 0, caps.dim_cap, &mut Vec::new(), &mut configs);
        configs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let projectives: Vec<FinModule> = prims.iter().map(|(_, p)| p.clone()).collect();
        let found: Vec<Vec<ChainComplex>> = configs
            .par_iter()
            .map(|cfg| minimal_complexes(&alg, &projectives, &radical, cfg, caps.window))
            .collect();
        let mut objects = Vec::new();
        let mut mult = Vec::new();
        let mut names = Vec::new();
        for (cfg, cands) in configs.iter().zip(found) {
            let base = config_name(cfg);
            let mut m = Multiplicity::new();
            for &slot in cfg {
                *m.entry(slot).or_insert(0) += 1;
            }
            for (k, c) in cands.into_iter().enumerate() {
                names.push(if k == 0 { base.clone() } else { format!("{base}#{k}") });
                objects.push(c);
                mult.push(m.clone());
            }
        }
        let mut model = Self {
            alg,
            caps,
            idempotents: prims.into_iter().map(|(e, _)| e).collect(),
            projectives,
            simples,
            objects,
            mult,
            names,
            homs: Vec::new(),
            bases: Vec::new(),
            tensors: Vec::new(),
            indecomposables: Vec::new(),
            corrupt: false,
        };
        model.compute_homs();
        model.indecomposables = (0..model.len()).filter(|&x| model.is_indecomposable(x)).collect();
        Ok(model)
    }

    fn compute_homs(&mut self) {
        let n = self.len();
        let objs = &self.objects;
        self.homs = (0..n * n).into_par_iter().map(|k| HomSpace::new(&objs[k / n], &objs[k % n])).collect();
        self.bases = self.homs.iter().map(|h| h.basis()).collect();
        let (homs, bases) = (&self.homs, &self.bases);
        self.tensors = (0..n * n * n)
            .into_par_iter()
            .map(|k| {
                let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
                let (fs, gs) = (&bases[x * n + y], &bases[y * n + z]);
                let mut out = Vec::with_capacity(fs.len() * gs.len());
                for f in fs {
                    for g in gs {
                        let h = f.then(g, &objs[x], &objs[y], &objs[z]);
                        out.push(homs[x * n + z].coords(&h, &objs[x], &objs[z]));
                    }
                }
                out
            })
            .collect();
    }

    /// The same model whose cone oracle negates the connecting component.
    pub fn with_corrupted_cones(mut self) -> Self {
        self.corrupt = true;
        self
    }

    pub fn is_corrupted(&self) -> bool {
        self.corrupt
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.alg
    }

    pub fn modulus(&self) -> u32 {
        self.alg.modulus()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_ids(&self) -> std::ops::Range<ObjId> {
        0..self.objects.len()
    }

    pub fn object(&self, x: ObjId) -> &ChainComplex {
        &self.objects[x]
    }

    pub fn name(&self, x: ObjId) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<ObjId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn projectives(&self) -> &[FinModule] {
        &self.projectives
    }

    /// Primitive idempotents `e_j` with `P_j = A e_j`.
    pub fn idempotents(&self) -> &[Vec<u32>] {
        &self.idempotents
    }

    pub fn multiplicity_of(&self, x: ObjId) -> &Multiplicity {
        &self.mult[x]
    }

    /// The zero object, always the first.
    pub fn zero_object(&self) -> ObjId {
        0
    }

    pub fn is_zero_object(&self, x: ObjId) -> bool {
        self.mult[x].is_empty()
    }

    pub fn indecomposables(&self) -> &[ObjId] {
        &self.indecomposables
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &HomSpace {
        &self.homs[x * self.len() + y]
    }

    pub fn hom_dim(&self, x: ObjId, y: ObjId) -> usize {
        self.hom(x, y).dim()
    }

    /// Chain map representing a morphism.
    pub fn representative(&self, m: &ModelMorphism) -> ChainMap {
        self.hom(m.src, m.dst).representative(&m.coords)
    }

    /// Coordinates of a chain map between model objects.
    pub fn coords_of(&self, x: ObjId, y: ObjId, f: &ChainMap) -> Vec<u32> {
        self.hom(x, y).coords(f, &self.objects[x], &self.objects[y])
    }

    pub fn identity(&self, x: ObjId) -> ModelMorphism {
        let c = self.coords_of(x, x, &ChainMap::identity(&self.objects[x]));
        ModelMorphism { src: x, dst: x, coords: c }
    }

    pub fn zero_morphism(&self, x: ObjId, y: ObjId) -> ModelMorphism {
        ModelMorphism { src: x, dst: y, coords: vec![0; self.hom_dim(x, y)] }
    }

    /// `g ∘ f` in coordinates.
    pub fn compose_coords(&self, x: ObjId, y: ObjId, z: ObjId, f: &[u32], g: &[u32]) -> Vec<u32> {
        let n = self.len();
        let p = self.modulus();
        let t = &self.tensors[(x * n + y) * n + z];
        let dyz = self.hom_dim(y, z);
        let mut coeffs = Vec::with_capacity(t.len());
        for &fa in f {
            for &gb in g {
                coeffs.push(crate::linalg::mul_mod(fa, gb, p));
            }
        }
        debug_assert_eq!(coeffs.len(), f.len() * dyz);
        combine(p, &coeffs, t, self.hom_dim(x, z))
    }

    pub fn compose(&self, f: &ModelMorphism, g: &ModelMorphism) -> ModelMorphism {
        assert_eq!(f.dst, g.src, "morphisms are not composable");
        ModelMorphism { src: f.src, dst: g.dst, coords: self.compose_coords(f.src, f.dst, g.dst, &f.coords, &g.coords) }
    }

    /// Matrix of `f ↦ g ∘ f` from `Hom(x, y)` to `Hom(x, z)`.
    pub fn post_matrix(&self, x: ObjId, g: &ModelMorphism) -> Matrix {
        let (y, z) = (g.src, g.dst);
        let p = self.modulus();
        let d = self.hom_dim(x, y);
        let mut m = Matrix::zeros(p, self.hom_dim(x, z), d);
        for a in 0..d {
            let mut e = vec![0; d];
            e[a] = 1;
            for (r, v) in self.compose_coords(x, y, z, &e, &g.coords).into_iter().enumerate() {
                m.set(r, a, v);
            }
        }
        m
    }

    /// Matrix of `g ↦ g ∘ f` from `Hom(y, z)` to `Hom(x, z)`.
    pub fn pre_matrix(&self, f: &ModelMorphism, z: ObjId) -> Matrix {
        let (x, y) = (f.src, f.dst);
        let p = self.modulus();
        let d = self.hom_dim(y, z);
        let mut m = Matrix::zeros(p, self.hom_dim(x, z), d);
        for b in 0..d {
            let mut e = vec![0; d];
            e[b] = 1;
            for (r, v) in self.compose_coords(x, y, z, &f.coords, &e).into_iter().enumerate() {
                m.set(r, b, v);
            }
        }
        m
    }

    /// Two-sided inverse, found by solving `g ∘ f = 1` and checking `f ∘ g = 1`.
    pub fn inverse(&self, f: &ModelMorphism) -> Option<ModelMorphism> {
        let (x, y) = (f.src, f.dst);
        let id_x = self.identity(x).coords;
        let a = self.pre_matrix(f, x);
        let g = if a.cols() == 0 {
            if id_x.iter().any(|&v| v != 0) {
                return None;
            }
            Vec::new()
        } else {
            a.solve_vec(&id_x)?
        };
        let g = ModelMorphism { src: y, dst: x, coords: g };
        (self.compose(&g, f).coords == self.identity(y).coords).then_some(g)
    }

    pub fn is_iso(&self, f: &ModelMorphism) -> bool {
        self.inverse(f).is_some()
    }

    /// All morphisms `x → y` in enumeration order.
    pub fn hom_morphisms(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = ModelMorphism> + '_ {
        all_vectors(self.modulus(), self.hom_dim(x, y)).map(move |c| ModelMorphism { src: x, dst: y, coords: c })
    }

    /// Every morphism of the model, grouped by `(source, target)`.
    pub fn all_morphisms(&self) -> Vec<ModelMorphism> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).flat_map(move |y| self.hom_morphisms(x, y))).collect()
    }

    pub fn describe(&self, m: &ModelMorphism) -> String {
        let mut s = format!("{} -> {} [", self.names[m.src], self.names[m.dst]);
        for (i, c) in m.coords.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "{c}");
        }
        s.push(']');
        s
    }

    /// The cone triangle supplied by the model's oracle.
    pub fn cone(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> ConeTriangle {
        if self.corrupt {
            corrupted_mapping_cone(f, x, y)
        } else {
            mapping_cone(f, x, y)
        }
    }

    /// `μ(Z)(n, j) = dim H^n Hom_A(Z, S_j) / dim End(S_j)`. On complexes of
    /// projectives this counts the summands `P_j` in degree `n` of a minimal
    /// model of `Z`.
    pub fn multiplicity(&self, z: &ChainComplex) -> Multiplicity {
        let mut out = Multiplicity::new();
        if z.is_zero_complex() {
            return out;
        }
        let p = self.modulus();
        for (j, s) in self.simples.iter().enumerate() {
            let homs: Vec<(i32, Vec<Matrix>)> = (z.lo() - 1..=z.hi() + 1).map(|n| (n, z.term(n).hom_basis(&s.module))).collect();
            for k in 1..homs.len() - 1 {
                let (n, basis) = (&homs[k].0, &homs[k].1);
                if basis.is_empty() {
                    continue;
                }
                let out_len = z.dim(n - 1) * s.module.dim();
                let outgoing: Vec<Vec<u32>> = basis.iter().map(|b| b.dot(&z.diff(n - 1)).to_vec()).collect();
                let incoming: Vec<Vec<u32>> = homs[k + 1].1.iter().map(|g| g.dot(&z.diff(*n)).to_vec()).collect();
                let r_out = Subspace::from_vectors(p, out_len, &outgoing).dim();
                let r_in = Subspace::from_vectors(p, basis[0].rows() * basis[0].cols(), &incoming).dim();
                let h = basis.len() - r_out - r_in;
                if h > 0 {
                    out.insert((*n, j), h / s.end_dim);
                }
            }
        }
        out
    }

    /// Whether a multiplicity vector fits inside the caps.
    pub fn fits(&self, m: &Multiplicity) -> bool {
        m.keys().all(|&(n, _)| n >= 0 && n <= self.caps.window as i32) && m.values().sum::<usize>() <= self.caps.dim_cap
    }

    /// The model object homotopy equivalent to `z`.
    pub fn locate(&self, z: &ChainComplex) -> Result<Located, TriangulatedError> {
        let m = self.multiplicity(z);
        if !self.fits(&m) {
            return Err(TriangulatedError::CapsTooSmall(format!("complex with multiplicities {} lies outside the model", show_mult(&m))));
        }
        for x in (0..self.len()).filter(|&x| self.mult[x] == m) {
            if let Some((to, from)) = find_homotopy_iso(z, &self.objects[x]) {
                return Ok(Located { id: x, to, from });
            }
        }
        Err(TriangulatedError::CapsTooSmall(format!(
            "no model object is homotopy equivalent to the complex with multiplicities {}",
            show_mult(&m)
        )))
    }

    /// A model object located at itself by identities.
    pub fn located(&self, x: ObjId) -> Located {
        let id = ChainMap::identity(&self.objects[x]);
        Located { id: x, to: id.clone(), from: id }
    }

    pub fn find_object(&self, z: &ChainComplex) -> Option<ObjId> {
        self.locate(z).ok().map(|l| l.id)
    }

    /// The object isomorphic to `x[k]`, if it lies in the model.
    pub fn shift_object(&self, x: ObjId, k: i32) -> Option<Located> {
        let m: Multiplicity = self.mult[x].iter().map(|(&(n, j), &c)| ((n - k, j), c)).collect();
        if !self.fits(&m) {
            return None;
        }
        self.locate(&self.objects[x].shift(k)).ok()
    }

    /// The image of a chain map `Z → W` between arbitrary complexes that
    /// are located in the model.
    pub fn transport(&self, f: &ChainMap, z: (&ChainComplex, &Located), w: (&ChainComplex, &Located)) -> ModelMorphism {
        let (zc, zl) = z;
        let (wc, wl) = w;
        let g = zl.from.then(f, &self.objects[zl.id], zc, wc).then(&wl.to, &self.objects[zl.id], wc, &self.objects[wl.id]);
        ModelMorphism { src: zl.id, dst: wl.id, coords: self.coords_of(zl.id, wl.id, &g) }
    }

    /// No idempotent endomorphism besides `0` and `1`, and nonzero.
    pub fn is_indecomposable(&self, x: ObjId) -> bool {
        if self.is_zero_object(x) {
            return false;
        }
        let id = self.identity(x);
        let zero = vec![0; self.hom_dim(x, x)];
        !self.hom_morphisms(x, x).any(|e| {
            e.coords != zero && e.coords != id.coords && self.compose(&e, &e).coords == e.coords
        })
    }

    /// Whether `y` is a direct summand of `x`: some `f: y → x` has a left
    /// inverse, found by linear solving.
    pub fn is_summand(&self, y: ObjId, x: ObjId) -> bool {
        if self.is_zero_object(y) {
            return true;
        }
        let my = &self.mult[y];
        if my.iter().any(|(k, &c)| self.mult[x].get(k).copied().unwrap_or(0) < c) {
            return false;
        }
        let id_y = self.identity(y).coords;
        self.hom_morphisms(y, x).any(|f| {
            let a = self.pre_matrix(&f, y);
            a.cols() > 0 && a.solve_vec(&id_y).is_some()
        })
    }

    /// Writes `z ≅ ⊕ D_i[k_i]` with `D_i` indecomposable model objects.
    /// Pieces are `(object, shift)`.
    pub fn decompose(&self, z: &ChainComplex) -> Result<Vec<(ObjId, i32)>, TriangulatedError> {
        let target = self.multiplicity(z);
        let mut pieces = Vec::new();
        let mut remaining = target.clone();
        if self.decompose_rec(z, &mut remaining, &mut pieces) {
            Ok(pieces)
        } else {
            Err(TriangulatedError::CapsTooSmall(format!(
                "complex with multiplicities {} is not a sum of shifted indecomposables of the model",
                show_mult(&target)
            )))
        }
    }

    fn decompose_rec(&self, z: &ChainComplex, remaining: &mut Multiplicity, pieces: &mut Vec<(ObjId, i32)>) -> bool {
        let Some((&(n, j), _)) = remaining.iter().next() else {
            let sum = pieces
                .iter()
                .fold(ChainComplex::zero(self.alg.clone()), |acc, &(d, k)| acc.direct_sum(&self.objects[d].shift(k)));
            return find_homotopy_iso(z, &sum).is_some();
        };
        for &d in &self.indecomposables {
            let (&(n0, j0), _) = self.mult[d].iter().next().expect("nonzero object");
            if j0 != j {
                continue;
            }
            let k = n0 - n;
            let shifted: Vec<((i32, usize), usize)> = self.mult[d].iter().map(|(&(m, i), &c)| ((m - k, i), c)).collect();
            if shifted.iter().any(|(key, c)| remaining.get(key).copied().unwrap_or(0) < *c) {
                continue;
            }
            for (key, c) in &shifted {
                let e = remaining.get_mut(key).expect("checked");
                *e -= c;
                if *e == 0 {
                    remaining.remove(key);
                }
            }
            pieces.push((d, k));
            if self.decompose_rec(z, remaining, pieces) {
                return true;
            }
            pieces.pop();
            for (key, c) in shifted {
                *remaining.entry(key).or_insert(0) += c;
            }
        }
        false
    }

    /// The model as a finite category with one morphism per homotopy class.
    pub fn to_category(&self) -> ModelCategory {
        let n = self.len();
        let p = self.modulus();
        let mut offsets = vec![0; n * n];
        let mut morphisms = Vec::new();
        for x in 0..n {
            for y in 0..n {
                offsets[x * n + y] = morphisms.len();
                for m in self.hom_morphisms(x, y) {
                    let name = self.describe(&m);
                    morphisms.push(Morphism { name, src: x, dst: y });
                }
            }
        }
        let dims: Vec<usize> = (0..n * n).map(|k| self.homs[k].dim()).collect();
        let decode = |id: MorId, x: ObjId, y: ObjId| -> Vec<u32> {
            let mut k = id - offsets[x * n + y];
            (0..dims[x * n + y])
                .map(|_| {
                    let d = (k % p as usize) as u32;
                    k /= p as usize;
                    d
                })
                .collect()
        };
        let identities = (0..n).map(|x| Some(offsets[x * n + x] + vector_index(p, &self.identity(x).coords))).collect();
        let srcs: Vec<(ObjId, ObjId)> = morphisms.iter().map(|m| (m.src, m.dst)).collect();
        let category = FinCategory::assemble(self.names.clone(), morphisms, identities, |g, f| {
            let (x, y) = srcs[f];
            let (y2, z) = srcs[g];
            if y != y2 {
                return None;
            }
            let h = self.compose_coords(x, y, z, &decode(f, x, y), &decode(g, y, z));
            Some(offsets[x * n + z] + vector_index(p, &h))
        });
        ModelCategory { category, offsets, dims, n, p }
    }
}

/// The model viewed as a [`FinCategory`], with the coordinate encoding of
/// morphism ids.
#[derive(Clone, Debug)]
pub struct ModelCategory {
    pub category: FinCategory,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    n: usize,
    p: u32,
}

impl ModelCategory {
    pub fn id_of(&self, m: &ModelMorphism) -> MorId {
        self.offsets[m.src * self.n + m.dst] + vector_index(self.p, &m.coords)
    }

    pub fn morphism(&self, id: MorId) -> ModelMorphism {
        let (x, y) = (self.category.src(id), self.category.dst(id));
        let mut k = id - self.offsets[x * self.n + y];
        let coords = (0..self.dims[x * self.n + y])
            .map(|_| {
                let d = (k % self.p as usize) as u32;
                k /= self.p as usize;
                d
            })
            .collect();
        ModelMorphism { src: x, dst: y, coords }
    }
}

/// Multisets of size at most `cap` drawn from `slots[start..]`.
fn multisets<T: Clone>(slots: &[T], start: usize, cap: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    out.push(cur.clone());
    if cur.len() == cap {
        return;
    }
    for i in start..slots.len() {
        cur.push(slots[i].clone());
        multisets(slots, i, cap, cur, out);
        cur.pop();
    }
}

fn config_name(cfg: &[(i32, usize)]) -> String {
    if cfg.is_empty() {
        return "0".into();
    }
    let mut counts: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    for &s in cfg {
        *counts.entry(s).or_insert(0) += 1;
    }
    counts
        .iter()
        .map(|(&(n, j), &c)| if c == 1 { format!("P{}@{n}", j + 1) } else { format!("P{}^{c}@{n}", j + 1) })
        .collect::<Vec<_>>()
        .join("+")
}

fn show_mult(m: &Multiplicity) -> String {
    let cfg: Vec<(i32, usize)> = m.iter().flat_map(|(&k, &c)| std::iter::repeat(k).take(c)).collect();
    config_name(&cfg)
}

/// Minimal complexes with the given summands, one per isomorphism class.
fn minimal_complexes(
    alg: &Arc<FinAlgebra>,
    projectives: &[FinModule],
    radical: &Subspace,
    cfg: &[(i32, usize)],
    window: usize,
) -> Vec<ChainComplex> {
    let p = alg.modulus();
    let terms: Vec<FinModule> = (0..=window as i32)
        .map(|n| {
            let parts: Vec<&FinModule> = cfg.iter().filter(|s| s.0 == n).map(|s| &projectives[s.1]).collect();
            FinModule::direct_sum_all(alg, &parts)
        })
        .collect();
    let radical_maps: Vec<Vec<Matrix>> = (0..window)
        .map(|n| {
            let (src, dst) = (&terms[n], &terms[n + 1]);
            let basis = src.hom_basis(dst);
            if basis.is_empty() {
                return Vec::new();
            }
            let rad = dst.ideal_times(radical);
            let cols: Vec<Vec<u32>> = basis
                .iter()
                .map(|b| (0..b.cols()).flat_map(|c| rad.reduce(&b.col_vec(c))).collect())
                .collect();
            let len = cols[0].len();
            let flat: Vec<Vec<u32>> = basis.iter().map(|b| b.to_vec()).collect();
            let sys = Matrix::from_flat(p, cols.len(), len, &cols.concat()).transpose();
            sys.kernel()
                .basis_vectors()
                .iter()
                .map(|c| Matrix::from_flat(p, dst.dim(), src.dim(), &combine(p, c, &flat, dst.dim() * src.dim())))
                .collect()
        })
        .collect();
    let mut out: Vec<ChainComplex> = Vec::new();
    let choice_counts: Vec<usize> = radical_maps.iter().map(|r| r.len()).collect();
    let total: usize = choice_counts.iter().sum();
    for c in all_vectors(p, total) {
        let mut off = 0;
        let diffs: Vec<Matrix> = (0..window)
            .map(|n| {
                let k = choice_counts[n];
                let (src, dst) = (&terms[n], &terms[n + 1]);
                let flat: Vec<Vec<u32>> = radical_maps[n].iter().map(|b| b.to_vec()).collect();
                let m = Matrix::from_flat(p, dst.dim(), src.dim(), &combine(p, &c[off..off + k], &flat, dst.dim() * src.dim()));
                off += k;
                m
            })
            .collect();
        if diffs.windows(2).any(|w| !w[1].dot(&w[0]).is_zero()) {
            continue;
        }
        let Ok(cx) = ChainComplex::new(alg.clone(), 0, terms.clone(), diffs) else { continue };
        let cx = cx.trimmed();
        if !out.iter().any(|o| find_homotopy_iso(o, &cx).is_some()) {
            out.push(cx);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn model(alg: FinAlgebra, w: usize, cap: usize) -> TriangulatedModel {
        TriangulatedModel::build(Arc::new(alg), Caps::new(w, cap)).unwrap()
    }

    #[test]
    fn object_counts_at_small_caps() {
        assert_eq!(model(FinAlgebra::field(2).unwrap(), 1, 2).len(), 6);
        assert_eq!(model(FinAlgebra::product(2, 2).unwrap(), 1, 2).len(), 15);
        assert_eq!(model(FinAlgebra::truncated_polynomial(2, 2).unwrap(), 1, 2).len(), 7);
    }

    #[test]
    fn multiplicities_match_configurations() {
        let m = model(FinAlgebra::truncated_polynomial(2, 2).unwrap(), 1, 2);
        for x in m.object_ids() {
            assert_eq!(&m.multiplicity(m.object(x)), m.multiplicity_of(x));
        }
    }

    #[test]
    fn composition_is_associative_and_unital() {
        let m = model(FinAlgebra::truncated_polynomial(2, 2).unwrap(), 1, 2);
        let c = m.to_category();
        assert!(crate::fincat::validate_category(&c.category).is_valid());
    }

    #[test]
    fn contractible_cone_has_zero_multiplicity() {
        let m = model(FinAlgebra::field(3).unwrap(), 1, 2);
        let x = m.object(1);
        let cone = mapping_cone(&ChainMap::identity(x), x, x).cone;
        assert!(m.multiplicity(&cone).is_empty());
        assert_eq!(m.locate(&cone).unwrap().id, 0);
    }

    #[test]
    fn decomposition_into_shifted_stalks() {
        let m = model(FinAlgebra::product(2, 2).unwrap(), 1, 2);
        let x = m.find("P1@0+P2@1").unwrap();
        let z = m.object(x).shift(-3);
        let pieces = m.decompose(&z).unwrap();
        assert_eq!(pieces.len(), 2);
        assert!(m.locate(&z).is_err());
    }

    #[test]
    fn indecomposables_of_dual_numbers() {
        let m = model(FinAlgebra::truncated_polynomial(2, 2).unwrap(), 1, 2);
        let names: Vec<&str> = m.indecomposables().iter().map(|&x| m.name(x)).collect();
        assert_eq!(names, vec!["P1@0", "P1@1", "P1@0+P1@1#1"]);
    }
}
