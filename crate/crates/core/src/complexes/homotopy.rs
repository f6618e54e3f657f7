//! Morphisms in the homotopy category: chain maps modulo null-homotopic maps.

use std::collections::BTreeMap;

use crate::linalg::{combine, quotient_basis, Matrix, Quotient, Subspace};

use super::{joint_window, ChainComplex, ChainMap};

/// Coordinates for `Hom_K(X, Y)`.
///
/// Chain maps are flattened degreewise into `⊕_n Mat(Y^n × X^n)`; the chain
/// maps form a subspace `Z`, null-homotopic maps a subspace `N ⊆ Z`, and
/// `Hom_K(X, Y) = Z / N`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    lo: i32,
    hi: i32,
    /// (offset, rows, cols) per degree in `[lo, hi]`
    layout: Vec<(usize, usize, usize)>,
    len: usize,
    chain_maps: Subspace,
    null: Subspace,
    quotient: Quotient,
    /// Generators `h ∈ Hom_A(X^n, Y^{n-1})` of the null-homotopic maps and
    /// their flattened images as columns.
    null_gens: Vec<(i32, Matrix)>,
    null_images: Option<Matrix>,
    p: u32,
}

impl HomSpace {
    pub fn new(x: &ChainComplex, y: &ChainComplex) -> Self {
        let p = x.modulus();
        let (lo, hi) = joint_window(x, y);
        let mut layout = Vec::new();
        let mut len = 0;
        for n in lo..=hi {
            let (r, c) = (y.dim(n), x.dim(n));
            layout.push((len, r, c));
            len += r * c;
        }
        let hs = HomSpace {
            lo,
            hi,
            layout,
            len,
            chain_maps: Subspace::zero(p, len),
            null: Subspace::zero(p, len),
            quotient: quotient_basis(&Subspace::zero(p, len), &Subspace::zero(p, len)).expect("trivial"),
            null_gens: Vec::new(),
            null_images: None,
            p,
        };
        hs.compute(x, y)
    }

    fn compute(mut self, x: &ChainComplex, y: &ChainComplex) -> Self {
        let p = self.p;
        let (lo, hi) = (self.lo, self.hi);
        // Module maps per degree, flattened into the ambient space.
        let mut params: Vec<(i32, Matrix)> = Vec::new();
        for n in lo..=hi {
            for b in x.term(n).hom_basis(&y.term(n)) {
                params.push((n, b));
            }
        }
        // Commutation defect d_Y f^n - f^{n+1} d_X, laid out over degrees n in [lo-1, hi].
        let defect_layout: Vec<(i32, usize, usize, usize)> = {
            let mut v = Vec::new();
            let mut off = 0;
            for n in (lo - 1)..=hi {
                let (r, c) = (y.dim(n + 1), x.dim(n));
                v.push((n, off, r, c));
                off += r * c;
            }
            v
        };
        let defect_len: usize = defect_layout.iter().map(|&(_, _, r, c)| r * c).sum();
        let mut columns = Vec::with_capacity(params.len());
        for (n, b) in &params {
            let mut col = vec![0u32; defect_len];
            // contribution to degree n: d_Y^n b
            let top = y.diff(*n).dot(b);
            write_block(&mut col, &defect_layout, *n, &top, p, false);
            // contribution to degree n-1: -b d_X^{n-1}
            let bottom = b.dot(&x.diff(*n - 1));
            write_block(&mut col, &defect_layout, *n - 1, &bottom, p, true);
            columns.push(col);
        }
        let kernel = if params.is_empty() {
            Subspace::zero(p, 0)
        } else {
            Matrix::from_flat(p, params.len(), defect_len, &columns.concat()).transpose().kernel()
        };
        let flat_params: Vec<Vec<u32>> = params.iter().map(|(n, b)| self.embed(*n, b)).collect();
        let chain_vecs: Vec<Vec<u32>> =
            kernel.basis_vectors().iter().map(|c| combine(p, c, &flat_params, self.len)).collect();
        let chain_maps = Subspace::from_vectors(p, self.len, &chain_vecs);
        // Null-homotopic maps d_Y h^n + h^{n+1} d_X with h^n ∈ Hom_A(X^n, Y^{n-1}).
        let mut null_vecs = Vec::new();
        let mut null_gens = Vec::new();
        for n in lo..=(hi + 1) {
            for h in x.term(n).hom_basis(&y.term(n - 1)) {
                let mut v = vec![0u32; self.len];
                // degree n: d_Y^{n-1} h
                self.add_block(&mut v, n, &y.diff(n - 1).dot(&h));
                // degree n-1: h d_X^{n-1}
                self.add_block(&mut v, n - 1, &h.dot(&x.diff(n - 1)));
                null_vecs.push(v);
                null_gens.push((n, h));
            }
        }
        let null = Subspace::from_vectors(p, self.len, &null_vecs);
        self.quotient = quotient_basis(&chain_maps, &null).expect("null-homotopic maps are chain maps");
        self.chain_maps = chain_maps;
        self.null = null;
        if !null_vecs.is_empty() && self.len > 0 {
            self.null_images = Some(Matrix::from_flat(p, null_vecs.len(), self.len, &null_vecs.concat()).transpose());
        }
        self.null_gens = null_gens;
        self
    }

    fn embed(&self, n: i32, m: &Matrix) -> Vec<u32> {
        let mut v = vec![0u32; self.len];
        self.add_block(&mut v, n, m);
        v
    }

    fn add_block(&self, v: &mut [u32], n: i32, m: &Matrix) {
        if n < self.lo || n > self.hi {
            return;
        }
        let (off, r, c) = self.layout[(n - self.lo) as usize];
        debug_assert_eq!(m.shape(), (r, c));
        for (i, &val) in m.data().iter().enumerate() {
            v[off + i] = (v[off + i] + val) % self.p;
        }
    }

    /// Dimension of `Hom_K(X, Y)`.
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn chain_map_dim(&self) -> usize {
        self.chain_maps.dim()
    }

    pub fn null_homotopic_dim(&self) -> usize {
        self.null.dim()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn flatten(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Vec<u32> {
        let mut v = vec![0u32; self.len];
        for n in self.lo..=self.hi {
            self.add_block(&mut v, n, &f.comp(n, x, y));
        }
        v
    }

    pub fn unflatten(&self, v: &[u32]) -> ChainMap {
        let comps = self
            .layout
            .iter()
            .map(|&(off, r, c)| Matrix::from_flat(self.p, r, c, &v[off..off + r * c]))
            .collect();
        ChainMap::new(self.lo, comps)
    }

    /// Coordinates of the homotopy class of a chain map.
    pub fn coords(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Vec<u32> {
        self.quotient.coords_unchecked(&self.flatten(f, x, y))
    }

    /// Coordinates with a check that `f` is a chain map.
    pub fn coords_checked(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Option<Vec<u32>> {
        let v = self.flatten(f, x, y);
        if !self.chain_maps.contains(&v) {
            return None;
        }
        Some(self.quotient.coords_unchecked(&v))
    }

    /// A chain map representing the class with the given coordinates.
    pub fn representative(&self, coords: &[u32]) -> ChainMap {
        self.unflatten(&self.quotient.lift(coords))
    }

    pub fn basis(&self) -> Vec<ChainMap> {
        self.quotient.representatives().iter().map(|v| self.unflatten(v)).collect()
    }

    pub fn is_null_homotopic(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> bool {
        self.null.contains(&self.flatten(f, x, y))
    }

    /// A homotopy `h` with `f = d h + h d`, as components
    /// `h^n: X^n → Y^{n-1}` keyed by `n`.
    pub fn homotopy(&self, f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> Option<BTreeMap<i32, Matrix>> {
        let v = self.flatten(f, x, y);
        let mut out = BTreeMap::new();
        if v.iter().all(|&c| c == 0) {
            return Some(out);
        }
        let coeffs = self.null_images.as_ref()?.solve_vec(&v)?;
        for ((n, h), c) in self.null_gens.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            let term = h.scale(c);
            let entry = out.entry(*n).or_insert_with(|| Matrix::zeros(self.p, h.rows(), h.cols()));
            *entry = entry.add(&term).expect("same shape");
        }
        Some(out)
    }
}

fn write_block(col: &mut [u32], layout: &[(i32, usize, usize, usize)], n: i32, m: &Matrix, p: u32, negate: bool) {
    if let Some(&(_, off, r, c)) = layout.iter().find(|&&(d, ..)| d == n) {
        if r * c == 0 {
            return;
        }
        debug_assert_eq!(m.shape(), (r, c));
        for (i, &val) in m.data().iter().enumerate() {
            let v = if negate { (p - val) % p } else { val };
            col[off + i] = (col[off + i] + v) % p;
        }
    }
}

/// Hom-spaces between three complexes with the composition map in
/// coordinates.
pub fn compose_classes(
    hxy: &HomSpace,
    hyz: &HomSpace,
    hxz: &HomSpace,
    (x, y, z): (&ChainComplex, &ChainComplex, &ChainComplex),
    f: &[u32],
    g: &[u32],
) -> Vec<u32> {
    let fm = hxy.representative(f);
    let gm = hyz.representative(g);
    hxz.coords(&fm.then(&gm, x, y, z), x, z)
}

/// Searches for a homotopy inverse of the class `f: X → Y`.
///
/// `gf = 1` is linear in `g`, and a left inverse of an isomorphism is its
/// inverse, so one solve decides the question.
pub fn homotopy_inverse(
    f: &ChainMap,
    x: &ChainComplex,
    y: &ChainComplex,
    hyx: &HomSpace,
    hxx: &HomSpace,
    hyy: &HomSpace,
) -> Option<ChainMap> {
    let p = x.modulus();
    let basis = hyx.basis();
    let id_x = hxx.coords(&ChainMap::identity(x), x, x);
    let cols: Vec<Vec<u32>> = basis.iter().map(|g| hxx.coords(&f.then(g, x, y, x), x, x)).collect();
    let g_coords = if cols.is_empty() {
        if id_x.iter().all(|&v| v == 0) {
            vec![]
        } else {
            return None;
        }
    } else {
        let a = Matrix::from_flat(p, cols.len(), hxx.dim(), &cols.concat()).transpose();
        a.solve_vec(&id_x)?
    };
    let g = hyx.representative(&g_coords);
    let fg = hyy.coords(&g.then(f, y, x, y), y, y);
    if fg == hyy.coords(&ChainMap::identity(y), y, y) {
        Some(g)
    } else {
        None
    }
}

/// Whether `f` is an isomorphism in the homotopy category.
pub fn is_homotopy_equivalence(f: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> bool {
    homotopy_inverse(f, x, y, &HomSpace::new(y, x), &HomSpace::new(x, x), &HomSpace::new(y, y)).is_some()
}

/// Whether `X` is contractible, that is `id_X` is null-homotopic.
pub fn is_contractible(x: &ChainComplex) -> bool {
    HomSpace::new(x, x).dim() == 0
}

/// An isomorphism `X → Y` in the homotopy category, if one exists.
pub fn find_homotopy_iso(x: &ChainComplex, y: &ChainComplex) -> Option<(ChainMap, ChainMap)> {
    let hxy = HomSpace::new(x, y);
    let hyx = HomSpace::new(y, x);
    let hxx = HomSpace::new(x, x);
    let hyy = HomSpace::new(y, y);
    find_homotopy_iso_with(x, y, &hxy, &hyx, &hxx, &hyy)
}

/// As [`find_homotopy_iso`] with precomputed hom-spaces.
pub fn find_homotopy_iso_with(
    x: &ChainComplex,
    y: &ChainComplex,
    hxy: &HomSpace,
    hyx: &HomSpace,
    hxx: &HomSpace,
    hyy: &HomSpace,
) -> Option<(ChainMap, ChainMap)> {
    if hxx.dim() != hyy.dim() || hxy.dim() != hyx.dim() || hxy.dim() != hxx.dim() {
        return None;
    }
    if hxx.dim() == 0 {
        return Some((ChainMap::zero(x, y), ChainMap::zero(y, x)));
    }
    let p = x.modulus();
    crate::linalg::all_vectors(p, hxy.dim()).find_map(|c| {
        let f = hxy.representative(&c);
        homotopy_inverse(&f, x, y, hyx, hxx, hyy).map(|g| (f, g))
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complexes::{mapping_cone, FinAlgebra, FinModule};

    fn k(p: u32) -> (Arc<FinAlgebra>, FinModule) {
        let a = Arc::new(FinAlgebra::field(p).unwrap());
        let m = FinModule::regular(a.clone());
        (a, m)
    }

    #[test]
    fn stalk_endomorphisms() {
        let (_, m) = k(2);
        let x = ChainComplex::stalk(m, 0);
        assert_eq!(HomSpace::new(&x, &x).dim(), 1);
        assert_eq!(HomSpace::new(&x, &x.shift(1)).dim(), 0);
        assert_eq!(HomSpace::new(&x, &x.shift(1)).chain_map_dim(), 0);
    }

    #[test]
    fn chain_maps_out_of_identity_complex() {
        let (a, m) = k(2);
        let x = ChainComplex::new(a, 0, vec![m.clone(), m.clone()], vec![Matrix::identity(2, 1)]).unwrap();
        let y = ChainComplex::stalk(m, 0);
        let h = HomSpace::new(&x, &y);
        assert_eq!(h.chain_map_dim(), 1);
        assert_eq!(h.dim(), 0);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let (_, m) = k(3);
        let x = ChainComplex::stalk(m.direct_sum(&m), 0);
        let c = mapping_cone(&ChainMap::identity(&x), &x, &x);
        assert!(is_contractible(&c.cone));
        let y = ChainComplex::stalk(m, 1);
        assert_eq!(HomSpace::new(&c.cone, &y).dim(), 0);
    }

    #[test]
    fn acyclic_complexes_over_a_field_are_contractible() {
        let (a, m) = k(3);
        let two = m.direct_sum(&m);
        let d0 = Matrix::from_rows(3, &[vec![1], vec![2]]).unwrap();
        let d1 = Matrix::from_rows(3, &[vec![2, 2]]).unwrap();
        let x = ChainComplex::new(a, 0, vec![m.clone(), two, m], vec![d0, d1]).unwrap();
        assert!(x.is_acyclic());
        assert!(is_contractible(&x));
    }

    #[test]
    fn homotopy_iso_between_stalk_and_its_resolution() {
        let (a, m) = k(2);
        let two = m.direct_sum(&m);
        let d = Matrix::from_rows(2, &[vec![1, 0]]).unwrap();
        let x = ChainComplex::new(a, 0, vec![two, m.clone()], vec![d]).unwrap();
        let y = ChainComplex::stalk(m, 0);
        let (f, g) = find_homotopy_iso(&x, &y).unwrap();
        assert!(f.is_chain_map(&x, &y) && g.is_chain_map(&y, &x));
        assert!(is_homotopy_equivalence(&f, &x, &y));
    }
}
