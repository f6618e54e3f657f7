//! The Freyd abelianization of a finite `F_p`-linear category: coherent
//! functors as presentations `C(-, X) → C(-, Y) → F → 0`, their hom-spaces,
//! cokernels and kernels, and the universal cohomological functor of a
//! triangulated model.
//!
//! The ambient category is the additive closure of finitely many
//! generators. Objects are formal direct sums, morphisms are block
//! matrices of generator morphisms stored as flat coordinate vectors.

mod ambient;
mod presentation;
mod universal;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, Subspace};
use crate::triangulated::TriangulatedError;

pub use ambient::{weak_kernel, ModelAmbient, VectAmbient, WeakKernelStats};
pub use presentation::{
    check_cokernel, check_kernel, cokernel_pres, find_isomorphism, hom_coherent, is_weak_kernel, kernel_pres,
    post_compose, pre_compose, sample_coherent_maps, test_objects, CoherentMap, HomCoherent, Presentation,
};
pub use universal::{
    exact_at_middle, extend_cohomological, universal_cohomological, ExtensionReport, UniversalReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelError {
    #[error("presentations live over different ambient objects")]
    AmbientMismatch,
    #[error("no weak kernel available: {0}")]
    NoWeakKernels(String),
    #[error(transparent)]
    Triangulated(#[from] TriangulatedError),
    #[error("square does not commute")]
    NotASquare,
}

/// A finite `F_p`-linear category given by generators, hom dimensions and
/// bilinear composition in coordinates.
pub trait LinearCategory: Sync {
    fn modulus(&self) -> u32;
    fn num_generators(&self) -> usize;
    fn generator_name(&self, g: usize) -> String;
    fn hom_dim(&self, a: usize, b: usize) -> usize;
    /// `g ∘ f` for `f: a → b`, `g: b → c`.
    fn compose(&self, a: usize, b: usize, c: usize, f: &[u32], g: &[u32]) -> Vec<u32>;
    fn identity(&self, a: usize) -> Vec<u32>;
    /// Generators whose sums exhaust all objects up to isomorphism.
    fn indecomposables(&self) -> Vec<usize>;
    /// A weak kernel of `m` built from the ambient's own structure, when
    /// available.
    fn structural_weak_kernel(&self, _m: &AddMorphism) -> Option<Result<AddMorphism, AbelError>> {
        None
    }
}

/// A formal direct sum of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AddObject(pub Vec<usize>);

impl AddObject {
    pub fn zero() -> Self {
        AddObject(Vec::new())
    }

    pub fn single(g: usize) -> Self {
        AddObject(vec![g])
    }

    pub fn sum(&self, other: &Self) -> Self {
        AddObject(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn describe(&self, c: &dyn LinearCategory) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0.iter().map(|&g| c.generator_name(g)).collect::<Vec<_>>().join(" (+) ")
    }
}

/// A morphism of formal sums. Block `(i, j)` holds coordinates of
/// `src[j] → dst[i]`; blocks are laid out row-major over `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AddMorphism {
    pub src: AddObject,
    pub dst: AddObject,
    pub coords: Vec<u32>,
}

/// Offsets of the blocks of `Hom(src, dst)`.
fn layout(c: &dyn LinearCategory, src: &AddObject, dst: &AddObject) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(src.len() * dst.len());
    let mut off = 0;
    for &d in &dst.0 {
        for &s in &src.0 {
            offs.push(off);
            off += c.hom_dim(s, d);
        }
    }
    (offs, off)
}

/// Dimension of `Hom(src, dst)`.
pub fn hom_len(c: &dyn LinearCategory, src: &AddObject, dst: &AddObject) -> usize {
    layout(c, src, dst).1
}

impl AddMorphism {
    pub fn zero(c: &dyn LinearCategory, src: &AddObject, dst: &AddObject) -> Self {
        AddMorphism { src: src.clone(), dst: dst.clone(), coords: vec![0; hom_len(c, src, dst)] }
    }

    pub fn identity(c: &dyn LinearCategory, x: &AddObject) -> Self {
        let mut m = Self::zero(c, x, x);
        let (offs, _) = layout(c, x, x);
        let n = x.len();
        for (i, &g) in x.0.iter().enumerate() {
            let off = offs[i * n + i];
            let id = c.identity(g);
            m.coords[off..off + id.len()].copy_from_slice(&id);
        }
        m
    }

    pub fn from_basis_vector(c: &dyn LinearCategory, src: &AddObject, dst: &AddObject, k: usize) -> Self {
        let mut m = Self::zero(c, src, dst);
        m.coords[k] = 1;
        m
    }

    pub fn block(&self, c: &dyn LinearCategory, i: usize, j: usize) -> &[u32] {
        let (offs, _) = layout(c, &self.src, &self.dst);
        let off = offs[i * self.src.len() + j];
        &self.coords[off..off + c.hom_dim(self.src.0[j], self.dst.0[i])]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&v| v == 0)
    }

    /// `g ∘ self`.
    pub fn then(&self, c: &dyn LinearCategory, g: &AddMorphism) -> AddMorphism {
        debug_assert_eq!(self.dst, g.src);
        let p = c.modulus();
        let mut out = AddMorphism::zero(c, &self.src, &g.dst);
        let (offs, _) = layout(c, &self.src, &g.dst);
        let ns = self.src.len();
        for (i, &z) in g.dst.0.iter().enumerate() {
            for (j, &x) in self.src.0.iter().enumerate() {
                let off = offs[i * ns + j];
                let len = c.hom_dim(x, z);
                for (k, &y) in self.dst.0.iter().enumerate() {
                    let f = self.block(c, k, j);
                    let gk = g.block(c, i, k);
                    if f.iter().all(|&v| v == 0) || gk.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let comp = c.compose(x, y, z, f, gk);
                    for t in 0..len {
                        out.coords[off + t] = (out.coords[off + t] + comp[t]) % p;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, p: u32, other: &AddMorphism) -> AddMorphism {
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| (a + b) % p).collect();
        AddMorphism { src: self.src.clone(), dst: self.dst.clone(), coords }
    }

    pub fn neg(&self, p: u32) -> AddMorphism {
        let coords = self.coords.iter().map(|&a| (p - a) % p).collect();
        AddMorphism { src: self.src.clone(), dst: self.dst.clone(), coords }
    }

    /// `[f, g]: A ⊕ B → C`.
    pub fn hjoin(c: &dyn LinearCategory, f: &AddMorphism, g: &AddMorphism) -> AddMorphism {
        debug_assert_eq!(f.dst, g.dst);
        let src = f.src.sum(&g.src);
        let mut out = AddMorphism::zero(c, &src, &f.dst);
        let (offs, _) = layout(c, &src, &f.dst);
        let (nf, ns) = (f.src.len(), src.len());
        for i in 0..f.dst.len() {
            for j in 0..ns {
                let b = if j < nf { f.block(c, i, j) } else { g.block(c, i, j - nf) };
                let off = offs[i * ns + j];
                out.coords[off..off + b.len()].copy_from_slice(b);
            }
        }
        out
    }

    /// `(f; g): A → B ⊕ C`.
    pub fn vjoin(c: &dyn LinearCategory, f: &AddMorphism, g: &AddMorphism) -> AddMorphism {
        debug_assert_eq!(f.src, g.src);
        let dst = f.dst.sum(&g.dst);
        let mut out = AddMorphism::zero(c, &f.src, &dst);
        let (offs, _) = layout(c, &f.src, &dst);
        let (nf, ns) = (f.dst.len(), f.src.len());
        for i in 0..dst.len() {
            for j in 0..ns {
                let b = if i < nf { f.block(c, i, j) } else { g.block(c, i - nf, j) };
                let off = offs[i * ns + j];
                out.coords[off..off + b.len()].copy_from_slice(b);
            }
        }
        out
    }

    /// Restriction to summands `rows` of the target and `cols` of the source.
    pub fn sub_block(&self, c: &dyn LinearCategory, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> AddMorphism {
        let src = AddObject(self.src.0[cols.clone()].to_vec());
        let dst = AddObject(self.dst.0[rows.clone()].to_vec());
        let mut out = AddMorphism::zero(c, &src, &dst);
        let (offs, _) = layout(c, &src, &dst);
        for (ii, i) in rows.enumerate() {
            for (jj, j) in cols.clone().enumerate() {
                let b = self.block(c, i, j);
                let off = offs[ii * src.len() + jj];
                out.coords[off..off + b.len()].copy_from_slice(b);
            }
        }
        out
    }
}

/// Matrix of `v ↦ f ∘ v` on `Hom(w, src f) → Hom(w, dst f)`.
pub(crate) fn post_matrix(c: &dyn LinearCategory, w: &AddObject, f: &AddMorphism) -> Matrix {
    let p = c.modulus();
    let n = hom_len(c, w, &f.src);
    let m = hom_len(c, w, &f.dst);
    let mut out = Matrix::zeros(p, m, n);
    for k in 0..n {
        let v = AddMorphism::from_basis_vector(c, w, &f.src, k).then(c, f);
        for (r, &x) in v.coords.iter().enumerate() {
            out.set(r, k, x);
        }
    }
    out
}

/// Matrix of `v ↦ v ∘ f` on `Hom(dst f, w) → Hom(src f, w)`.
pub(crate) fn pre_matrix(c: &dyn LinearCategory, f: &AddMorphism, w: &AddObject) -> Matrix {
    let p = c.modulus();
    let n = hom_len(c, &f.dst, w);
    let m = hom_len(c, &f.src, w);
    let mut out = Matrix::zeros(p, m, n);
    for k in 0..n {
        let v = f.then(c, &AddMorphism::from_basis_vector(c, &f.dst, w, k));
        for (r, &x) in v.coords.iter().enumerate() {
            out.set(r, k, x);
        }
    }
    out
}

/// Column span of a matrix with possibly zero dimensions.
pub(crate) fn image(m: &Matrix) -> Subspace {
    if m.cols() == 0 || m.rows() == 0 {
        return Subspace::zero(m.modulus(), m.rows());
    }
    m.image()
}

/// Kernel of a matrix with possibly zero dimensions.
pub(crate) fn kernel(m: &Matrix) -> Subspace {
    if m.cols() == 0 {
        return Subspace::zero(m.modulus(), 0);
    }
    if m.rows() == 0 {
        return Subspace::full(m.modulus(), m.cols());
    }
    m.kernel()
}

pub(crate) fn rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        m.rank()
    }
}

#[cfg(test)]
mod tests;
