//! Cohomological functors into `F_p`-vector spaces and the multiplicative
//! system `Σ(H)` of morphisms inverted by all their shifts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complexes::{ChainComplex, ChainMap, HomSpace};
use crate::fincat::MorphismSet;
use crate::fractions::{check_calculus_left, check_calculus_right, LFReport};
use crate::linalg::{all_vectors, Matrix};

use super::axioms::{commuting_squares, fill_third, Triangle};
use super::{ModelCategory, ModelMorphism, TriangulatedError, TriangulatedModel};

/// An additive functor `K^b(proj A) → mod F_p` built from representables.
#[derive(Clone, Debug)]
pub enum CohomologicalFunctor {
    Zero,
    /// `X ↦ Hom(U, X)`.
    Representable(ChainComplex),
    Sum(Vec<CohomologicalFunctor>),
}

impl CohomologicalFunctor {
    /// The sum of `Hom(D[k], -)` over the indecomposables `D` of the model
    /// and `|k| ≤ reach`. Faithful enough to detect isomorphisms.
    pub fn detecting(model: &TriangulatedModel, reach: i32) -> Self {
        let mut parts = Vec::new();
        for &d in model.indecomposables() {
            for k in -reach..=reach {
                parts.push(CohomologicalFunctor::Representable(model.object(d).shift(k)));
            }
        }
        CohomologicalFunctor::Sum(parts)
    }

    pub fn dim(&self, x: &ChainComplex) -> usize {
        match self {
            CohomologicalFunctor::Zero => 0,
            CohomologicalFunctor::Representable(u) => HomSpace::new(u, x).dim(),
            CohomologicalFunctor::Sum(parts) => parts.iter().map(|h| h.dim(x)).sum(),
        }
    }

    /// `H(f)` as a `dim H(y) × dim H(x)` matrix.
    pub fn apply(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Matrix {
        let p = x.modulus();
        match self {
            CohomologicalFunctor::Zero => Matrix::zeros(p, 0, 0),
            CohomologicalFunctor::Representable(u) => {
                let (hx, hy) = (HomSpace::new(u, x), HomSpace::new(u, y));
                let cols: Vec<Vec<u32>> = hx.basis().iter().map(|b| hy.coords(&b.then(f, u, x, y), u, y)).collect();
                if cols.is_empty() || hy.dim() == 0 {
                    return Matrix::zeros(p, hy.dim(), hx.dim());
                }
                Matrix::from_flat(p, cols.len(), hy.dim(), &cols.concat()).transpose()
            }
            CohomologicalFunctor::Sum(parts) => {
                parts.iter().map(|h| h.apply(f, x, y)).fold(Matrix::zeros(p, 0, 0), |acc, m| acc.block_diag(&m))
            }
        }
    }

    /// `H(f)` is invertible.
    pub fn inverts(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> bool {
        let m = self.apply(f, x, y);
        m.rows() == m.cols() && m.rank() == m.rows()
    }

    /// `H(f[n])` is invertible for every `n` with `|n| ≤ reach`.
    pub fn inverts_shifts(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex, reach: i32) -> bool {
        (-reach..=reach).all(|n| self.inverts(&f.shift(n), &x.shift(n), &y.shift(n)))
    }

    /// Exactness of `H(X) → H(Y) → H(Z)` at each vertex of every standard
    /// cone triangle on a model morphism and of its rotations.
    pub fn validate(&self, model: &TriangulatedModel) -> Result<(), TriangulatedError> {
        let failure = model.all_morphisms().into_par_iter().find_first(|m| {
            let (x, y) = (model.object(m.src), model.object(m.dst));
            let t = Triangle::standard(&model.representative(m), x, y);
            let r = t.rotate();
            let rr = r.rotate();
            ![&t, &r, &rr].iter().all(|t| self.exact_at_middle(t))
        });
        match failure {
            Some(m) => Err(TriangulatedError::NotCohomological { morphism: model.describe(&m) }),
            None => Ok(()),
        }
    }

    fn exact_at_middle(&self, t: &Triangle) -> bool {
        let hf = self.apply(&t.f, &t.x, &t.y);
        let hg = self.apply(&t.g, &t.y, &t.z);
        let dy = self.dim(&t.y);
        if dy == 0 {
            return true;
        }
        let composite_zero = hf.cols() == 0 || hg.rows() == 0 || hg.dot(&hf).is_zero();
        let rank_f = if hf.cols() == 0 { 0 } else { hf.rank() };
        let rank_g = if hg.rows() == 0 { 0 } else { hg.rank() };
        composite_zero && rank_f + rank_g == dy
    }
}

/// `Σ(H)` on a model together with the multiplicative-system verdict.
#[derive(Clone, Debug)]
pub struct SigmaHVerdict {
    pub sigma: MorphismSet,
    pub left: LFReport,
    pub right: LFReport,
    /// `σ ∈ Σ ⇒ σ[±1] ∈ Σ` whenever the shifts lie in the model.
    pub shift_closed: bool,
    /// Sampled morphisms of triangles `(φ1, φ2, φ3)` with `φ1, φ2 ∈ Σ`
    /// admit `φ3 ∈ Σ`.
    pub triangle_compatible: bool,
    pub squares_checked: usize,
}

impl SigmaHVerdict {
    pub fn passes(&self) -> bool {
        self.left.passes() && self.right.passes() && self.shift_closed && self.triangle_compatible
    }
}

/// Shifts far enough that every model object is moved off its own support.
fn reach(model: &TriangulatedModel) -> i32 {
    2 * model.caps().window as i32 + 2
}

fn shift_morphism(model: &TriangulatedModel, m: &ModelMorphism, k: i32) -> Option<ModelMorphism> {
    let lx = model.shift_object(m.src, k)?;
    let ly = model.shift_object(m.dst, k)?;
    let f = model.representative(m).shift(k);
    let (x, y) = (model.object(m.src).shift(k), model.object(m.dst).shift(k));
    Some(model.transport(&f, (&x, &lx), (&y, &ly)))
}

/// Computes `Σ(H)` after validating `H`. Compatibility with triangles is
/// checked on up to `budget` commuting squares drawn from seeded pairs of
/// model morphisms.
pub fn sigma_of_h(
    model: &TriangulatedModel,
    mc: &ModelCategory,
    h: &CohomologicalFunctor,
    budget: usize,
    seed: u64,
) -> Result<SigmaHVerdict, TriangulatedError> {
    h.validate(model)?;
    let c = &mc.category;
    let r = reach(model);
    let flags: Vec<bool> = c
        .morphism_ids()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&id| {
            let m = mc.morphism(id);
            h.inverts_shifts(&model.representative(&m), model.object(m.src), model.object(m.dst), r)
        })
        .collect();
    let sigma = MorphismSet::from_mask(flags);
    let left = check_calculus_left(c, &sigma);
    let right = check_calculus_right(c, &sigma);
    let shift_closed = sigma.ids().all(|id| {
        let m = mc.morphism(id);
        [-1, 1].iter().all(|&k| shift_morphism(model, &m, k).map_or(true, |s| sigma.contains(mc.id_of(&s))))
    });

    let morphisms = model.all_morphisms();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = model.modulus();
    let mut squares_checked = 0;
    let mut triangle_compatible = true;
    let mut attempts = 0;
    while squares_checked < budget && attempts < 50 * budget.max(1) && !morphisms.is_empty() {
        attempts += 1;
        let m1 = &morphisms[rng.gen_range(0..morphisms.len())];
        let m2 = &morphisms[rng.gen_range(0..morphisms.len())];
        let basis = commuting_squares(model, m1, m2);
        if basis.is_empty() || basis.len() > 8 {
            continue;
        }
        let (x1, y1, x2, y2) = (model.object(m1.src), model.object(m1.dst), model.object(m2.src), model.object(m2.dst));
        let t1 = Triangle::standard(&model.representative(m1), x1, y1);
        let t2 = Triangle::standard(&model.representative(m2), x2, y2);
        for coeffs in all_vectors(p, basis.len()) {
            let mut a = model.zero_morphism(m1.src, m2.src);
            let mut b = model.zero_morphism(m1.dst, m2.dst);
            for (k, (ba, bb)) in coeffs.iter().zip(&basis) {
                for (ac, v) in a.coords.iter_mut().zip(&ba.coords) {
                    *ac = (*ac + k * v) % p;
                }
                for (bc, v) in b.coords.iter_mut().zip(&bb.coords) {
                    *bc = (*bc + k * v) % p;
                }
            }
            if !sigma.contains(mc.id_of(&a)) || !sigma.contains(mc.id_of(&b)) {
                continue;
            }
            squares_checked += 1;
            let ok = fill_third(&t1, &t2, &model.representative(&a), &model.representative(&b))
                .is_some_and(|c3| h.inverts_shifts(&c3, &t1.z, &t2.z, r));
            if !ok {
                triangle_compatible = false;
            }
        }
    }
    Ok(SigmaHVerdict { sigma, left, right, shift_closed, triangle_compatible, squares_checked })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complexes::{FinAlgebra, FinModule};
    use crate::triangulated::Caps;

    fn vect() -> TriangulatedModel {
        TriangulatedModel::build(Arc::new(FinAlgebra::field(2).unwrap()), Caps::new(1, 2)).unwrap()
    }

    #[test]
    fn zero_functor_inverts_everything() {
        let m = vect();
        let mc = m.to_category();
        let v = sigma_of_h(&m, &mc, &CohomologicalFunctor::Zero, 20, 1).unwrap();
        assert_eq!(v.sigma.len(), mc.category.num_morphisms());
        assert!(v.passes());
    }

    #[test]
    fn detecting_functor_gives_isomorphisms() {
        let m = vect();
        let mc = m.to_category();
        let h = CohomologicalFunctor::detecting(&m, 1);
        let v = sigma_of_h(&m, &mc, &h, 20, 2).unwrap();
        for id in mc.category.morphism_ids() {
            assert_eq!(v.sigma.contains(id), mc.category.is_iso(id));
        }
        assert!(v.passes(), "{v:?}");
    }

    #[test]
    fn stalk_representable_gives_quasi_isomorphisms() {
        let m = vect();
        let mc = m.to_category();
        let alg = m.algebra().clone();
        let h = CohomologicalFunctor::Representable(ChainComplex::stalk(FinModule::regular(alg), 0));
        let v = sigma_of_h(&m, &mc, &h, 20, 3).unwrap();
        for id in mc.category.morphism_ids() {
            let mm = mc.morphism(id);
            let qis = m.representative(&mm).is_quasi_iso(m.object(mm.src), m.object(mm.dst));
            assert_eq!(v.sigma.contains(id), qis);
        }
        assert!(v.passes());
    }
}
