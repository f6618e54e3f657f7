use std::sync::atomic::{AtomicUsize, Ordering};

use crate::complexes::{ChainComplex, ChainMap};
use crate::linalg::{mul_mod, Matrix};
use crate::triangulated::{ModelMorphism, ObjId, TriangulatedError, TriangulatedModel};

use super::{AbelError, AddMorphism, AddObject, LinearCategory};

/// `vect(F_p)` as the additive closure of the one-dimensional space.
#[derive(Clone, Copy, Debug)]
pub struct VectAmbient {
    pub p: u32,
}

impl VectAmbient {
    pub fn new(p: u32) -> Self {
        Self { p }
    }

    /// `F_p^n` as a formal sum.
    pub fn space(&self, n: usize) -> AddObject {
        AddObject(vec![0; n])
    }

    /// A matrix `rows × cols` as a morphism `F_p^cols → F_p^rows`.
    pub fn morphism(&self, m: &Matrix) -> AddMorphism {
        AddMorphism { src: self.space(m.cols()), dst: self.space(m.rows()), coords: m.data().to_vec() }
    }
}

impl LinearCategory for VectAmbient {
    fn modulus(&self) -> u32 {
        self.p
    }

    fn num_generators(&self) -> usize {
        1
    }

    fn generator_name(&self, _g: usize) -> String {
        format!("F{}", self.p)
    }

    fn hom_dim(&self, _a: usize, _b: usize) -> usize {
        1
    }

    fn compose(&self, _a: usize, _b: usize, _c: usize, f: &[u32], g: &[u32]) -> Vec<u32> {
        vec![mul_mod(f[0], g[0], self.p)]
    }

    fn identity(&self, _a: usize) -> Vec<u32> {
        vec![1]
    }

    fn indecomposables(&self) -> Vec<usize> {
        vec![0]
    }
}

/// Counts of weak kernels by construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WeakKernelStats {
    /// Built from a cone triangle inside the model.
    pub triangle: usize,
    /// Built from kernels on indecomposables because a cone left the model.
    pub approximate: usize,
}

/// The additive closure of a triangulated model. Weak kernels come from
/// cone triangles whenever the cone lies in the model.
#[derive(Debug)]
pub struct ModelAmbient<'a> {
    pub model: &'a TriangulatedModel,
    triangle: AtomicUsize,
    approximate: AtomicUsize,
}

impl<'a> ModelAmbient<'a> {
    pub fn new(model: &'a TriangulatedModel) -> Self {
        Self { model, triangle: AtomicUsize::new(0), approximate: AtomicUsize::new(0) }
    }

    pub fn stats(&self) -> WeakKernelStats {
        WeakKernelStats { triangle: self.triangle.load(Ordering::Relaxed), approximate: self.approximate.load(Ordering::Relaxed) }
    }

    pub fn morphism(&self, m: &ModelMorphism) -> AddMorphism {
        AddMorphism { src: AddObject::single(m.src), dst: AddObject::single(m.dst), coords: m.coords.clone() }
    }

    /// The direct sum complex of a formal sum.
    pub fn realize(&self, x: &AddObject) -> ChainComplex {
        let alg = self.model.algebra().clone();
        x.0.iter().fold(ChainComplex::zero(alg), |acc, &g| acc.direct_sum(self.model.object(g)))
    }

    /// The chain map between realized sums.
    pub fn realize_map(&self, m: &AddMorphism) -> ChainMap {
        let (sx, sy) = (self.realize(&m.src), self.realize(&m.dst));
        let p = self.model.modulus();
        let reps: Vec<Vec<ChainMap>> = (0..m.dst.len())
            .map(|i| {
                (0..m.src.len())
                    .map(|j| {
                        let f = ModelMorphism { src: m.src.0[j], dst: m.dst.0[i], coords: m.block(self, i, j).to_vec() };
                        self.model.representative(&f)
                    })
                    .collect()
            })
            .collect();
        ChainMap::from_fn(&sx, &sy, |n| {
            let heights: Vec<usize> = m.dst.0.iter().map(|&g| self.model.object(g).dim(n)).collect();
            let widths: Vec<usize> = m.src.0.iter().map(|&g| self.model.object(g).dim(n)).collect();
            let comps: Vec<Vec<Matrix>> = (0..m.dst.len())
                .map(|i| {
                    (0..m.src.len())
                        .map(|j| reps[i][j].comp(n, self.model.object(m.src.0[j]), self.model.object(m.dst.0[i])))
                        .collect()
                })
                .collect();
            let blocks: Vec<Vec<Option<&Matrix>>> = comps.iter().map(|row| row.iter().map(Some).collect()).collect();
            Matrix::from_blocks(p, &heights, &widths, &blocks)
        })
    }

    /// Projection of a realized sum onto its `j`-th summand.
    fn projection(&self, x: &AddObject, j: usize) -> ChainMap {
        let sx = self.realize(x);
        let target = self.model.object(x.0[j]);
        let p = self.model.modulus();
        ChainMap::from_fn(&sx, target, |n| {
            let before: usize = x.0[..j].iter().map(|&g| self.model.object(g).dim(n)).sum();
            let d = target.dim(n);
            let mut m = Matrix::zeros(p, d, sx.dim(n));
            for r in 0..d {
                m.set(r, before + r, 1);
            }
            m
        })
    }

    fn triangle_kernel(&self, m: &AddMorphism) -> Result<AddMorphism, TriangulatedError> {
        let model = self.model;
        let (sy, sz) = (self.realize(&m.src), self.realize(&m.dst));
        let ly = model.locate(&sy)?;
        let lz = model.locate(&sz)?;
        let phi = model.transport(&self.realize_map(m), (&sy, &ly), (&sz, &lz));
        let (w, k) = weak_kernel(model, &phi)?;
        let to_sum = model.representative(&k).then(&ly.from, model.object(w), model.object(ly.id), &sy);
        let mut out = AddMorphism::zero(self, &AddObject::single(w), &m.src);
        let mut coords = Vec::new();
        for j in 0..m.src.len() {
            let g = m.src.0[j];
            let comp = to_sum.then(&self.projection(&m.src, j), model.object(w), &sy, model.object(g));
            coords.extend(model.coords_of(w, g, &comp));
        }
        out.coords = coords;
        Ok(out)
    }
}

/// `cone(φ)[-1] → X` for `φ: X → Y`, located in the model.
pub fn weak_kernel(model: &TriangulatedModel, phi: &ModelMorphism) -> Result<(ObjId, ModelMorphism), TriangulatedError> {
    let (x, y) = (model.object(phi.src), model.object(phi.dst));
    let cone = model.cone(&model.representative(phi), x, y);
    let w = cone.cone.shift(-1);
    let located = model.locate(&w)?;
    let to_x = cone.projection.shift(-1).neg();
    let k = located.from.then(&to_x, model.object(located.id), &w, x);
    Ok((located.id, ModelMorphism { src: located.id, dst: phi.src, coords: model.coords_of(located.id, phi.src, &k) }))
}

impl LinearCategory for ModelAmbient<'_> {
    fn modulus(&self) -> u32 {
        self.model.modulus()
    }

    fn num_generators(&self) -> usize {
        self.model.len()
    }

    fn generator_name(&self, g: usize) -> String {
        self.model.name(g).to_string()
    }

    fn hom_dim(&self, a: usize, b: usize) -> usize {
        self.model.hom_dim(a, b)
    }

    fn compose(&self, a: usize, b: usize, c: usize, f: &[u32], g: &[u32]) -> Vec<u32> {
        self.model.compose_coords(a, b, c, f, g)
    }

    fn identity(&self, a: usize) -> Vec<u32> {
        self.model.identity(a).coords
    }

    fn indecomposables(&self) -> Vec<usize> {
        self.model.indecomposables().to_vec()
    }

    fn structural_weak_kernel(&self, m: &AddMorphism) -> Option<Result<AddMorphism, AbelError>> {
        match self.triangle_kernel(m) {
            Ok(k) => {
                self.triangle.fetch_add(1, Ordering::Relaxed);
                Some(Ok(k))
            }
            Err(TriangulatedError::CapsTooSmall(msg)) => {
                self.approximate.fetch_add(1, Ordering::Relaxed);
                Some(Err(AbelError::NoWeakKernels(msg)))
            }
            Err(e) => Some(Err(e.into())),
        }
    }
}
