//! Finite-dimensional left modules given by action matrices.

use std::sync::Arc;

use crate::linalg::{all_vectors, combine, quotient_basis, Matrix, Subspace};

use super::{ComplexError, FinAlgebra};

/// A left module: one action matrix per algebra basis element, acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinModule {
    alg: Arc<FinAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl FinModule {
    /// Validates `ρ(e_i)ρ(e_j) = ρ(e_i e_j)` and `ρ(1) = id`.
    pub fn new(alg: Arc<FinAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self, ComplexError> {
        let p = alg.modulus();
        if action.len() != alg.dim() || action.iter().any(|m| m.shape() != (dim, dim) || m.modulus() != p) {
            return Err(ComplexError::InvalidModule("action matrix shape".into()));
        }
        let m = Self { alg, dim, action };
        if m.rho(m.alg.unit()) != Matrix::identity(p, dim) {
            return Err(ComplexError::InvalidModule("unit does not act as identity".into()));
        }
        for i in 0..m.alg.dim() {
            for j in 0..m.alg.dim() {
                let prod = m.alg.mul(&m.alg.basis(i), &m.alg.basis(j));
                if m.action[i].dot(&m.action[j]) != m.rho(&prod) {
                    return Err(ComplexError::InvalidModule(format!("action fails on basis pair ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    pub fn zero(alg: Arc<FinAlgebra>) -> Self {
        let p = alg.modulus();
        let action = (0..alg.dim()).map(|_| Matrix::zeros(p, 0, 0)).collect();
        Self { alg, dim: 0, action }
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular(alg: Arc<FinAlgebra>) -> Self {
        let action = (0..alg.dim()).map(|i| alg.left_multiplication(&alg.basis(i))).collect();
        Self { dim: alg.dim(), alg, action }
    }

    /// The projective module `Ae` for an idempotent `e`.
    pub fn projective(alg: Arc<FinAlgebra>, e: &[u32]) -> Result<Self, ComplexError> {
        if !alg.is_idempotent(e) {
            return Err(ComplexError::InvalidModule("not an idempotent".into()));
        }
        let p = alg.modulus();
        let d = alg.dim();
        let gens: Vec<Vec<u32>> = (0..d).map(|i| alg.mul(&alg.basis(i), e)).collect();
        let sub = Subspace::from_vectors(p, d, &gens);
        let basis = sub.basis_vectors();
        let n = basis.len();
        let action = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(p, n, n);
                for (c, b) in basis.iter().enumerate() {
                    let img = alg.mul(&alg.basis(i), b);
                    let coords = sub.coordinates(&img).expect("left ideal");
                    for (r, v) in coords.into_iter().enumerate() {
                        m.set(r, c, v);
                    }
                }
                m
            })
            .collect();
        Self::new(alg, n, action)
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.alg
    }

    pub fn modulus(&self) -> u32 {
        self.alg.modulus()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn rho(&self, a: &[u32]) -> Matrix {
        let p = self.modulus();
        let mut m = Matrix::zeros(p, self.dim, self.dim);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.action[i].scale(c)).expect("shape");
            }
        }
        m
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.block_diag(b)).collect();
        Self { alg: self.alg.clone(), dim: self.dim + other.dim, action }
    }

    pub fn direct_sum_all(alg: &Arc<FinAlgebra>, parts: &[&FinModule]) -> Self {
        parts.iter().fold(Self::zero(alg.clone()), |acc, m| acc.direct_sum(m))
    }

    /// Whether `f: self → target` (a `target.dim × self.dim` matrix) is
    /// `A`-linear.
    pub fn is_module_map(&self, target: &FinModule, f: &Matrix) -> bool {
        f.shape() == (target.dim, self.dim)
            && (0..self.alg.dim()).all(|i| f.dot(&self.action[i]) == target.action[i].dot(f))
    }

    /// Basis of `Hom_A(self, target)`.
    pub fn hom_basis(&self, target: &FinModule) -> Vec<Matrix> {
        let p = self.modulus();
        let (m, n) = (self.dim, target.dim);
        let unknowns = n * m;
        if unknowns == 0 {
            return Vec::new();
        }
        // Rows: for each basis element i and entry (r, c) of f ρ_M - ρ_N f.
        let eqs = self.alg.dim() * unknowns;
        let mut sys = Matrix::zeros(p, eqs, unknowns);
        for i in 0..self.alg.dim() {
            let (rm, rn) = (&self.action[i], &target.action[i]);
            for r in 0..n {
                for c in 0..m {
                    let row = i * unknowns + r * m + c;
                    for k in 0..m {
                        let v = rm.get(k, c);
                        if v != 0 {
                            let col = r * m + k;
                            sys.set(row, col, (sys.get(row, col) + v) % p);
                        }
                    }
                    for k in 0..n {
                        let v = rn.get(r, k);
                        if v != 0 {
                            let col = k * m + c;
                            sys.set(row, col, (sys.get(row, col) + p - v) % p);
                        }
                    }
                }
            }
        }
        sys.kernel().basis_vectors().iter().map(|v| Matrix::from_flat(p, n, m, v)).collect()
    }

    /// The submodule on an invariant subspace, with its inclusion.
    pub fn submodule(&self, sub: &Subspace) -> (FinModule, Matrix) {
        let p = self.modulus();
        let basis = sub.basis_vectors();
        let k = basis.len();
        let incl = if k == 0 { Matrix::zeros(p, self.dim, 0) } else { Matrix::from_flat(p, k, self.dim, &basis.concat()).transpose() };
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(p, k, k);
                for (c, b) in basis.iter().enumerate() {
                    let coords = sub.coordinates(&a.apply(b)).expect("invariant subspace");
                    for (r, v) in coords.into_iter().enumerate() {
                        m.set(r, c, v);
                    }
                }
                m
            })
            .collect();
        (FinModule { alg: self.alg.clone(), dim: k, action }, incl)
    }

    /// The quotient by an invariant subspace, with the projection.
    pub fn quotient(&self, sub: &Subspace) -> (FinModule, Matrix) {
        let p = self.modulus();
        let q = quotient_basis(&Subspace::full(p, self.dim), sub).expect("subspace of the module");
        let k = q.dim();
        let mut proj = Matrix::zeros(p, k, self.dim);
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            for (r, v) in q.coords_unchecked(&e).into_iter().enumerate() {
                proj.set(r, i, v);
            }
        }
        let action = self
            .action
            .iter()
            .map(|a| {
                let mut m = Matrix::zeros(p, k, k);
                for (c, rep) in q.representatives().iter().enumerate() {
                    for (r, v) in q.coords_unchecked(&a.apply(rep)).into_iter().enumerate() {
                        m.set(r, c, v);
                    }
                }
                m
            })
            .collect();
        (FinModule { alg: self.alg.clone(), dim: k, action }, proj)
    }

    /// `I M` for a subspace `I` of the algebra.
    pub fn ideal_times(&self, ideal: &Subspace) -> Subspace {
        let mut gens = Vec::new();
        for r in ideal.basis_vectors() {
            let m = self.rho(&r);
            for c in 0..self.dim {
                gens.push(m.col_vec(c));
            }
        }
        Subspace::from_vectors(self.modulus(), self.dim, &gens)
    }

    /// Elements killed by every element of `I`.
    pub fn annihilated_by(&self, ideal: &Subspace) -> Subspace {
        let p = self.modulus();
        let mats: Vec<Matrix> = ideal.basis_vectors().iter().map(|r| self.rho(r)).collect();
        if mats.is_empty() {
            return Subspace::full(p, self.dim);
        }
        mats.iter().skip(1).fold(mats[0].clone(), |acc, m| acc.vstack(m).expect("shape")).kernel()
    }

    /// `M / JM` for the radical `J`.
    pub fn top(&self) -> FinModule {
        self.quotient(&self.ideal_times(&self.alg.radical())).0
    }

    /// The module over `B` obtained along an algebra map `B → A` given as a
    /// `dim A × dim B` matrix.
    pub fn restrict_along(&self, b: Arc<FinAlgebra>, phi: &Matrix) -> FinModule {
        let action = (0..b.dim()).map(|i| self.rho(&phi.col_vec(i))).collect();
        FinModule { alg: b, dim: self.dim, action }
    }

    /// Isomorphism test by enumerating `Hom_A(self, other)`.
    pub fn is_isomorphic(&self, other: &FinModule) -> bool {
        if self.dim != other.dim {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        let basis = self.hom_basis(other);
        let flat: Vec<Vec<u32>> = basis.iter().map(|b| b.to_vec()).collect();
        let p = self.modulus();
        all_vectors(p, basis.len()).any(|c| {
            let f = Matrix::from_flat(p, other.dim, self.dim, &combine(p, &c, &flat, other.dim * self.dim));
            f.rank() == self.dim
        })
    }
}

/// A complete list of indecomposable projectives, one per isomorphism
/// class, found from a decomposition of the unit into primitive orthogonal
/// idempotents.
pub fn indecomposable_projectives(alg: &Arc<FinAlgebra>) -> Vec<FinModule> {
    primitive_idempotents(alg).into_iter().map(|(_, p)| p).collect()
}

/// Primitive idempotents `e` with pairwise non-isomorphic projectives `Ae`.
pub fn primitive_idempotents(alg: &Arc<FinAlgebra>) -> Vec<(Vec<u32>, FinModule)> {
    let mut idems = Vec::new();
    split_idempotent(alg, alg.unit().to_vec(), &mut idems);
    let mut out: Vec<(Vec<u32>, FinModule)> = Vec::new();
    for e in idems {
        let p = FinModule::projective(alg.clone(), &e).expect("idempotent");
        if p.dim() > 0 && !out.iter().any(|(_, q)| q.is_isomorphic(&p)) {
            out.push((e, p));
        }
    }
    out
}

/// Recursively splits `e` into primitive orthogonal idempotents.
fn split_idempotent(alg: &FinAlgebra, e: Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if e.iter().all(|&v| v == 0) {
        return;
    }
    let d = alg.dim();
    let p = alg.modulus();
    let zero = vec![0; d];
    // f with ef = fe = f, f idempotent, f ∉ {0, e}.
    let found = all_vectors(p, d).find(|f| {
        *f != zero && *f != e && alg.is_idempotent(f) && alg.mul(&e, f) == *f && alg.mul(f, &e) == *f
    });
    match found {
        Some(f) => {
            let rest: Vec<u32> = e.iter().zip(&f).map(|(&a, &b)| (a + p - b) % p).collect();
            split_idempotent(alg, f, out);
            split_idempotent(alg, rest, out);
        }
        None => out.push(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projectives_of_fixtures() {
        let f2 = Arc::new(FinAlgebra::field(2).unwrap());
        assert_eq!(indecomposable_projectives(&f2).len(), 1);
        let prod = Arc::new(FinAlgebra::product(2, 2).unwrap());
        let ps = indecomposable_projectives(&prod);
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|p| p.dim() == 1));
        let dual = Arc::new(FinAlgebra::truncated_polynomial(2, 2).unwrap());
        let ps = indecomposable_projectives(&dual);
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].dim(), 2);
        assert!(indecomposable_projectives(&Arc::new(FinAlgebra::zero(2).unwrap())).is_empty());
    }

    #[test]
    fn endomorphisms_of_regular_module() {
        let dual = Arc::new(FinAlgebra::truncated_polynomial(3, 2).unwrap());
        let a = FinModule::regular(dual.clone());
        let ends = a.hom_basis(&a);
        assert_eq!(ends.len(), 2);
        assert!(ends.iter().all(|f| a.is_module_map(&a, f)));
    }

    #[test]
    fn projectives_of_product_are_orthogonal() {
        let prod = Arc::new(FinAlgebra::product(2, 2).unwrap());
        let ps = indecomposable_projectives(&prod);
        assert!(ps[0].hom_basis(&ps[1]).is_empty());
        assert!(!ps[0].is_isomorphic(&ps[1]));
    }

    #[test]
    fn top_of_dual_numbers() {
        let dual = Arc::new(FinAlgebra::truncated_polynomial(2, 2).unwrap());
        let a = FinModule::regular(dual.clone());
        let t = a.top();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.rho(&[0, 1]), Matrix::zeros(2, 1, 1));
        let soc = a.annihilated_by(&dual.radical());
        assert_eq!(soc.dim(), 1);
    }
}
