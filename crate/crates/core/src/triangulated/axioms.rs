//! Verification of the triangulated axioms on a model.
//!
//! Exactness of a triangle `X → Y → Z → X[1]` is decided against the
//! standard cone of its first map: the triangle is exact iff some
//! `(1, 1, c)` into the standard triangle exists with `c` invertible. The
//! model's own cone oracle supplies the triangles under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complexes::{is_homotopy_equivalence, is_contractible, mapping_cone, ChainComplex, ChainMap, HomSpace};
use crate::linalg::Matrix;

use super::{ModelMorphism, TriangulatedModel};

/// Witnesses kept per axiom for TR3.
const WITNESS_CAP: usize = 32;

/// `x --f--> y --g--> z --h--> x[1]`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub x: ChainComplex,
    pub y: ChainComplex,
    pub z: ChainComplex,
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
}

impl Triangle {
    /// The cone triangle of `f` built by the model's oracle.
    pub fn of_cone(model: &TriangulatedModel, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Self {
        let c = model.cone(f, x, y);
        Self { x: x.clone(), y: y.clone(), z: c.cone, f: f.clone(), g: c.inclusion, h: c.projection }
    }

    /// The standard cone triangle.
    pub fn standard(f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Self {
        let c = mapping_cone(f, x, y);
        Self { x: x.clone(), y: y.clone(), z: c.cone, f: f.clone(), g: c.inclusion, h: c.projection }
    }

    /// `y --g--> z --h--> x[1] --(-f[1])--> y[1]`.
    pub fn rotate(&self) -> Self {
        Self {
            x: self.y.clone(),
            y: self.z.clone(),
            z: self.x.shift(1),
            f: self.g.clone(),
            g: self.h.clone(),
            h: self.f.shift(1).neg(),
        }
    }

    /// `z[-1] --(-h[-1])--> x --f--> y --g--> z`.
    pub fn rotate_back(&self) -> Self {
        Self {
            x: self.z.shift(-1),
            y: self.x.clone(),
            z: self.y.clone(),
            f: self.h.shift(-1).neg(),
            g: self.f.clone(),
            h: self.g.clone(),
        }
    }

    /// Consecutive composites vanish up to homotopy.
    pub fn composites_vanish(&self) -> bool {
        let x1 = self.x.shift(1);
        let y1 = self.y.shift(1);
        is_zero_class(&self.f.then(&self.g, &self.x, &self.y, &self.z), &self.x, &self.z)
            && is_zero_class(&self.g.then(&self.h, &self.y, &self.z, &x1), &self.y, &x1)
            && is_zero_class(&self.h.then(&self.f.shift(1), &self.z, &x1, &y1), &self.z, &y1)
    }
}

fn is_zero_class(f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> bool {
    HomSpace::new(x, y).is_null_homotopic(f, x, y)
}

fn homotopic(f: &ChainMap, g: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> bool {
    is_zero_class(&f.add(&g.neg(), x, y), x, y)
}

/// A map `c: t1.z → t2.z` with `c ∘ g1 ≃ g2 ∘ b` and `h2 ∘ c ≃ a[1] ∘ h1`,
/// found by linear solving.
pub(crate) fn fill_third(t1: &Triangle, t2: &Triangle, a: &ChainMap, b: &ChainMap) -> Option<ChainMap> {
    let x2s = t2.x.shift(1);
    let x1s = t1.x.shift(1);
    let hzz = HomSpace::new(&t1.z, &t2.z);
    let hyz = HomSpace::new(&t1.y, &t2.z);
    let hzx = HomSpace::new(&t1.z, &x2s);
    let p = t1.x.modulus();
    let rhs: Vec<u32> = hyz
        .coords(&b.then(&t2.g, &t1.y, &t2.y, &t2.z), &t1.y, &t2.z)
        .into_iter()
        .chain(hzx.coords(&t1.h.then(&a.shift(1), &t1.z, &x1s, &x2s), &t1.z, &x2s))
        .collect();
    let basis = hzz.basis();
    if basis.is_empty() {
        return rhs.iter().all(|&v| v == 0).then(|| ChainMap::zero(&t1.z, &t2.z));
    }
    let cols: Vec<Vec<u32>> = basis
        .iter()
        .map(|c| {
            hyz.coords(&t1.g.then(c, &t1.y, &t1.z, &t2.z), &t1.y, &t2.z)
                .into_iter()
                .chain(hzx.coords(&c.then(&t2.h, &t1.z, &t2.z, &x2s), &t1.z, &x2s))
                .collect()
        })
        .collect();
    if rhs.is_empty() {
        return Some(ChainMap::zero(&t1.z, &t2.z));
    }
    let m = Matrix::from_flat(p, cols.len(), rhs.len(), &cols.concat()).transpose();
    let sol = m.solve_vec(&rhs)?;
    Some(hzz.representative(&sol))
}

/// For cone triangles of model morphisms `m1`, `m2` and a commuting square
/// `(a, b)`, the filler `[[a[1], 0], [h, b]]` where `h` is a homotopy
/// `s·b∘f1 - s·f2∘a ≃ 0` and `s` is the sign of the oracle's cone. Falls
/// back to [`fill_third`] when the block map is not a chain map.
fn fill_cone_square(
    model: &TriangulatedModel,
    m1: &ModelMorphism,
    m2: &ModelMorphism,
    t1: &Triangle,
    t2: &Triangle,
    a: &ChainMap,
    b: &ChainMap,
) -> Option<ChainMap> {
    let p = t1.x.modulus();
    let (x1, y1, x2, y2) = (&t1.x, &t1.y, &t2.x, &t2.y);
    let defect = t1.f.then(b, x1, y1, y2).add(&a.then(&t2.f, x1, x2, y2).neg(), x1, y2);
    let defect = if model.is_corrupted() { defect.neg() } else { defect };
    let h = model.hom(m1.src, m2.dst).homotopy(&defect, x1, y2)?;
    let c = ChainMap::from_fn(&t1.z, &t2.z, |n| {
        let hn = h.get(&(n + 1)).cloned().unwrap_or_else(|| Matrix::zeros(p, y2.dim(n), x1.dim(n + 1)));
        let an = a.comp(n + 1, x1, x2);
        let bn = b.comp(n, y1, y2);
        let top = an.hstack(&Matrix::zeros(p, x2.dim(n + 1), y1.dim(n))).expect("shape");
        let bottom = hn.hstack(&bn).expect("shape");
        top.vstack(&bottom).expect("shape")
    });
    if c.is_chain_map(&t1.z, &t2.z) {
        Some(c)
    } else {
        fill_third(t1, t2, a, b)
    }
}

/// Whether the triangle is isomorphic to the standard cone triangle of its
/// first map.
pub fn is_exact_triangle(t: &Triangle) -> bool {
    let std = Triangle::standard(&t.f, &t.x, &t.y);
    match fill_third(t, &std, &ChainMap::identity(&t.x), &ChainMap::identity(&t.y)) {
        Some(c) => is_homotopy_equivalence(&c, &t.z, &std.z),
        None => false,
    }
}

/// A failing instance with the morphisms involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomWitness {
    pub morphisms: Vec<String>,
    pub reason: String,
}

/// Outcome of [`verify_axioms`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub morphisms: usize,
    pub tr3_pairs: usize,
    pub tr4_samples: usize,
    pub tr1: Vec<AxiomWitness>,
    pub tr2: Vec<AxiomWitness>,
    pub tr3: Vec<AxiomWitness>,
    pub tr4: Vec<AxiomWitness>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.tr1.is_empty() && self.tr2.is_empty() && self.tr3.is_empty() && self.tr4.is_empty()
    }
}

/// The octahedron on composable `u: X → Y`, `v: Y → Z`.
#[derive(Clone, Debug)]
pub struct Octahedron {
    pub u: Triangle,
    pub vu: Triangle,
    pub v: Triangle,
    /// `C(u) → C(vu)`
    pub d1: ChainMap,
    /// `C(vu) → C(v)`
    pub d2: ChainMap,
    /// `C(v) → C(u)[1]`
    pub d3: ChainMap,
}

impl Octahedron {
    /// Commutativity of the four squares and exactness of `(d1, d2, d3)`.
    pub fn check(&self, v: &ChainMap) -> Result<(), &'static str> {
        let (tu, tvu, tv) = (&self.u, &self.vu, &self.v);
        let (x, y) = (&tu.x, &tu.y);
        let (cu, cvu, cv) = (&tu.z, &tvu.z, &tv.z);
        let (x1, y1) = (x.shift(1), y.shift(1));
        if !homotopic(&tu.g.then(&self.d1, y, cu, cvu), &v.then(&tvu.g, y, &tv.y, cvu), y, cvu) {
            return Err("square Y → C(vu) fails");
        }
        if !homotopic(&self.d1.then(&tvu.h, cu, cvu, &x1), &tu.h, cu, &x1) {
            return Err("square C(u) → X[1] fails");
        }
        if !homotopic(&tvu.g.then(&self.d2, &tv.y, cvu, cv), &tv.g, &tv.y, cv) {
            return Err("square Z → C(v) fails");
        }
        if !homotopic(&self.d2.then(&tv.h, cvu, cv, &y1), &tvu.h.then(&tu.f.shift(1), cvu, &x1, &y1), cvu, &y1) {
            return Err("square C(vu) → Y[1] fails");
        }
        let t = Triangle { x: cu.clone(), y: cvu.clone(), z: cv.clone(), f: self.d1.clone(), g: self.d2.clone(), h: self.d3.clone() };
        if !is_exact_triangle(&t) {
            return Err("third triangle is not exact");
        }
        Ok(())
    }
}

/// Builds the octahedron with explicit block maps
/// `d1 = diag(1, v)`, `d2 = diag(u[1], 1)` and `d3 = i_u[1] ∘ q_v`.
pub fn octahedron(model: &TriangulatedModel, u: &ChainMap, v: &ChainMap, x: &ChainComplex, y: &ChainComplex, z: &ChainComplex) -> Octahedron {
    let p = x.modulus();
    let vu = u.then(v, x, y, z);
    let tu = Triangle::of_cone(model, u, x, y);
    let tvu = Triangle::of_cone(model, &vu, x, z);
    let tv = Triangle::of_cone(model, v, y, z);
    let d1 = ChainMap::from_fn(&tu.z, &tvu.z, |n| {
        let a = x.dim(n + 1);
        Matrix::identity(p, a).block_diag(&v.comp(n, y, z))
    });
    let d2 = ChainMap::from_fn(&tvu.z, &tv.z, |n| u.comp(n + 1, x, y).block_diag(&Matrix::identity(p, z.dim(n))));
    let y1 = y.shift(1);
    let cu1 = tu.z.shift(1);
    let d3 = tv.h.then(&tu.g.shift(1), &tv.z, &y1, &cu1);
    Octahedron { u: tu, vu: tvu, v: tv, d1, d2, d3 }
}

/// TR1 and TR2 on every morphism of the model.
pub fn check_rotations(model: &TriangulatedModel) -> (Vec<AxiomWitness>, Vec<AxiomWitness>) {
    let morphisms = model.all_morphisms();
    let triangles: Vec<Triangle> = morphisms
        .par_iter()
        .map(|m| Triangle::of_cone(model, &model.representative(m), model.object(m.src), model.object(m.dst)))
        .collect();
    rotation_checks(model, &morphisms, &triangles)
}

fn rotation_checks(model: &TriangulatedModel, morphisms: &[ModelMorphism], triangles: &[Triangle]) -> (Vec<AxiomWitness>, Vec<AxiomWitness>) {
    let mut tr1 = Vec::new();
    let mut tr2 = Vec::new();
    for x in model.object_ids() {
        let o = model.object(x);
        let t = Triangle::of_cone(model, &ChainMap::identity(o), o, o);
        if !is_contractible(&t.z) {
            tr1.push(AxiomWitness { morphisms: vec![model.describe(&model.identity(x))], reason: "cone of the identity is not zero".into() });
        }
    }
    let tr12: Vec<(Option<AxiomWitness>, Option<AxiomWitness>)> = morphisms
        .par_iter()
        .zip(triangles)
        .map(|(m, t)| {
            let w1 = (!t.composites_vanish())
                .then(|| AxiomWitness { morphisms: vec![model.describe(m)], reason: "composite in the cone triangle is nonzero".into() });
            let w2 = if !is_exact_triangle(&t.rotate()) {
                Some(AxiomWitness { morphisms: vec![model.describe(m)], reason: "rotated cone triangle is not exact".into() })
            } else if !is_exact_triangle(&t.rotate_back()) {
                Some(AxiomWitness { morphisms: vec![model.describe(m)], reason: "inverse rotation is not exact".into() })
            } else {
                None
            };
            (w1, w2)
        })
        .collect();
    for (a, b) in tr12 {
        tr1.extend(a);
        tr2.extend(b);
    }
    (tr1, tr2)
}

/// TR1-TR3 over every morphism (and pair of morphisms for TR3) of the
/// model; TR4 on `budget` seeded samples of composable pairs.
pub fn verify_axioms(model: &TriangulatedModel, budget: usize, seed: u64) -> AxiomReport {
    let morphisms = model.all_morphisms();
    let mut report = AxiomReport { morphisms: morphisms.len(), ..Default::default() };
    let triangles: Vec<Triangle> = morphisms
        .par_iter()
        .map(|m| Triangle::of_cone(model, &model.representative(m), model.object(m.src), model.object(m.dst)))
        .collect();

    let (tr1, tr2) = rotation_checks(model, &morphisms, &triangles);
    report.tr1 = tr1;
    report.tr2 = tr2;

    let n = morphisms.len();
    let (checked, tr3): (usize, Vec<AxiomWitness>) = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let (m1, m2) = (&morphisms[i], &morphisms[j]);
            let squares = commuting_squares(model, m1, m2);
            if squares.is_empty() {
                return (false, None);
            }
            for (a, b) in squares {
                let (ar, br) = (model.representative(&a), model.representative(&b));
                if fill_cone_square(model, m1, m2, &triangles[i], &triangles[j], &ar, &br).is_none() {
                    return (
                        true,
                        Some(AxiomWitness {
                            morphisms: vec![model.describe(m1), model.describe(m2), model.describe(&a), model.describe(&b)],
                            reason: "no third map completes the morphism of triangles".into(),
                        }),
                    );
                }
            }
            (true, None)
        })
        .fold(
            || (0, Vec::new()),
            |(c, mut ws), (checked, w)| {
                if ws.len() < WITNESS_CAP {
                    ws.extend(w);
                }
                (c + checked as usize, ws)
            },
        )
        .reduce(
            || (0, Vec::new()),
            |(a, mut wa), (b, wb)| {
                wa.extend(wb);
                wa.truncate(WITNESS_CAP);
                (a + b, wa)
            },
        );
    report.tr3_pairs = checked;
    report.tr3 = tr3;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(ModelMorphism, ModelMorphism)> = (0..budget)
        .map(|_| {
            let (x, y, z) = (rng.gen_range(0..model.len()), rng.gen_range(0..model.len()), rng.gen_range(0..model.len()));
            let p = model.modulus();
            let u = (0..model.hom_dim(x, y)).map(|_| rng.gen_range(0..p)).collect();
            let v = (0..model.hom_dim(y, z)).map(|_| rng.gen_range(0..p)).collect();
            (ModelMorphism { src: x, dst: y, coords: u }, ModelMorphism { src: y, dst: z, coords: v })
        })
        .collect();
    report.tr4_samples = samples.len();
    let tr4: Vec<Option<AxiomWitness>> = samples
        .par_iter()
        .map(|(u, v)| {
            let (x, y, z) = (model.object(u.src), model.object(u.dst), model.object(v.dst));
            let (ur, vr) = (model.representative(u), model.representative(v));
            let oct = octahedron(model, &ur, &vr, x, y, z);
            oct.check(&vr).err().map(|reason| AxiomWitness { morphisms: vec![model.describe(u), model.describe(v)], reason: reason.into() })
        })
        .collect();
    report.tr4.extend(tr4.into_iter().flatten());
    report
}

/// Basis of pairs `(a, b)` with `b ∘ m1 = m2 ∘ a`.
pub(crate) fn commuting_squares(model: &TriangulatedModel, m1: &ModelMorphism, m2: &ModelMorphism) -> Vec<(ModelMorphism, ModelMorphism)> {
    let (x, y, x2, y2) = (m1.src, m1.dst, m2.src, m2.dst);
    let (da, db) = (model.hom_dim(x, x2), model.hom_dim(y, y2));
    if da + db == 0 {
        return Vec::new();
    }
    let pre = model.pre_matrix(m1, y2);
    let post = model.post_matrix(x, m2).neg();
    let sys = post.hstack(&pre).expect("same row count");
    sys.kernel()
        .basis_vectors()
        .into_iter()
        .map(|v| {
            (
                ModelMorphism { src: x, dst: x2, coords: v[..da].to_vec() },
                ModelMorphism { src: y, dst: y2, coords: v[da..].to_vec() },
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complexes::FinAlgebra;
    use crate::triangulated::Caps;

    #[test]
    fn vector_spaces_satisfy_the_axioms() {
        let m = TriangulatedModel::build(Arc::new(FinAlgebra::field(2).unwrap()), Caps::new(1, 2)).unwrap();
        let r = verify_axioms(&m, 10, 7);
        assert!(r.passes(), "{r:?}");
        assert!(r.tr3_pairs > 0);
    }

    #[test]
    fn corrupted_cones_fail_rotation() {
        let m = TriangulatedModel::build(Arc::new(FinAlgebra::truncated_polynomial(3, 2).unwrap()), Caps::new(1, 2)).unwrap().with_corrupted_cones();
        let (tr1, tr2) = check_rotations(&m);
        assert!(tr1.is_empty(), "{tr1:?}");
        assert!(!tr2.is_empty());
    }
}
