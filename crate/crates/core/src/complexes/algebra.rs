//! Finite-dimensional associative algebras over a prime field.

use serde::{Deserialize, Serialize};

use crate::linalg::{add_mod, all_vectors, check_prime, mul_mod, quotient_basis, Matrix, Subspace};

use super::ComplexError;

/// An associative unital algebra given by structure constants
/// `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    p: u32,
    dim: usize,
    labels: Vec<String>,
    structure: Vec<u32>,
    unit: Vec<u32>,
}

/// JSON algebra file. `structure[i][j][k]` is the coefficient of `e_k` in
/// `e_i e_j`.
///
/// ```json
/// {"modulus": 2, "labels": ["1", "x"],
///  "structure": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
///  "unit": [1, 0]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub modulus: u32,
    pub labels: Vec<String>,
    pub structure: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| ComplexError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn to_algebra(&self) -> Result<FinAlgebra, ComplexError> {
        let d = self.labels.len();
        if self.structure.len() != d || self.structure.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(ComplexError::InvalidAlgebra(format!("structure constants must be {d}x{d}x{d}")));
        }
        let flat = self.structure.iter().flatten().flatten().copied().collect();
        FinAlgebra::new(self.modulus, self.labels.clone(), flat, self.unit.clone())
    }

    pub fn from_algebra(a: &FinAlgebra) -> Self {
        let d = a.dim();
        let structure = (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| a.structure_constant(i, j, k)).collect()).collect()).collect();
        Self { modulus: a.modulus(), labels: a.labels().to_vec(), structure, unit: a.unit().to_vec() }
    }
}

impl FinAlgebra {
    /// Validates associativity and the unit on basis elements.
    pub fn new(p: u32, labels: Vec<String>, structure: Vec<u32>, unit: Vec<u32>) -> Result<Self, ComplexError> {
        check_prime(p)?;
        let dim = labels.len();
        if structure.len() != dim * dim * dim || unit.len() != dim {
            return Err(ComplexError::InvalidAlgebra("structure constant shape".into()));
        }
        if structure.iter().chain(&unit).any(|&v| v >= p) {
            return Err(ComplexError::InvalidAlgebra("entry out of range".into()));
        }
        let a = Self { p, dim, labels, structure, unit };
        for i in 0..dim {
            let e = a.basis(i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(ComplexError::InvalidAlgebra(format!("unit fails on {}", a.labels[i])));
            }
            for j in 0..dim {
                for k in 0..dim {
                    let (x, y, z) = (a.basis(i), a.basis(j), a.basis(k));
                    if a.mul(&a.mul(&x, &y), &z) != a.mul(&x, &a.mul(&y, &z)) {
                        return Err(ComplexError::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            a.labels[i], a.labels[j], a.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    /// The prime field itself.
    pub fn field(p: u32) -> Result<Self, ComplexError> {
        Self::new(p, vec!["1".into()], vec![1], vec![1])
    }

    /// `F_p × ... × F_p` with `k` factors and orthogonal idempotent basis.
    pub fn product(p: u32, k: usize) -> Result<Self, ComplexError> {
        let mut structure = vec![0; k * k * k];
        for i in 0..k {
            structure[(i * k + i) * k + i] = 1;
        }
        Self::new(p, (1..=k).map(|i| format!("e{i}")).collect(), structure, vec![1; k])
    }

    /// `F_p[x]/(x^n)` with basis `1, x, ..., x^{n-1}`.
    pub fn truncated_polynomial(p: u32, n: usize) -> Result<Self, ComplexError> {
        let mut structure = vec![0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    structure[(i * n + j) * n + i + j] = 1;
                }
            }
        }
        let labels = (0..n).map(|i| if i == 0 { "1".to_string() } else { format!("x^{i}") }).collect();
        let mut unit = vec![0; n];
        if n > 0 {
            unit[0] = 1;
        }
        Self::new(p, labels, structure, unit)
    }

    /// The zero algebra.
    pub fn zero(p: u32) -> Result<Self, ComplexError> {
        Self::new(p, vec![], vec![], vec![])
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        self.structure[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (p, d) = (self.p, self.dim);
        let mut out = vec![0; d];
        for i in (0..d).filter(|&i| a[i] != 0) {
            for j in (0..d).filter(|&j| b[j] != 0) {
                let ab = mul_mod(a[i], b[j], p);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure[(i * d + j) * d + k];
                    if c != 0 {
                        *o = add_mod(*o, mul_mod(ab, c, p), p);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ a x` on the basis.
    pub fn left_multiplication(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(a, &self.basis(j));
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Matrix of `x ↦ x a` on the basis.
    pub fn right_multiplication(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.p, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(&self.basis(j), a);
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mul(&self.basis(i), &self.basis(j)) == self.mul(&self.basis(j), &self.basis(i))))
    }

    pub fn is_idempotent(&self, e: &[u32]) -> bool {
        self.mul(e, e) == e
    }

    pub fn is_nilpotent(&self, a: &[u32]) -> bool {
        if self.dim == 0 {
            return true;
        }
        let l = self.left_multiplication(a);
        let mut m = l.clone();
        for _ in 0..self.dim {
            if m.is_zero() {
                return true;
            }
            m = m.dot(&l);
        }
        m.is_zero()
    }

    /// The Jacobson radical: elements `x` with `xy` nilpotent for all `y`.
    /// Found by enumerating the algebra.
    pub fn radical(&self) -> Subspace {
        let elems: Vec<Vec<u32>> = all_vectors(self.p, self.dim).collect();
        let members: Vec<Vec<u32>> = elems
            .iter()
            .filter(|x| elems.iter().all(|y| self.is_nilpotent(&self.mul(x, y))))
            .cloned()
            .collect();
        Subspace::from_vectors(self.p, self.dim, &members)
    }

    /// The two-sided ideal `AeA`.
    pub fn ideal_generated(&self, e: &[u32]) -> Subspace {
        let mut gens = Vec::new();
        for i in 0..self.dim {
            let ae = self.mul(&self.basis(i), e);
            for j in 0..self.dim {
                gens.push(self.mul(&ae, &self.basis(j)));
            }
        }
        Subspace::from_vectors(self.p, self.dim, &gens)
    }

    /// The corner algebra `eAe` with unit `e`, and its inclusion into `A`
    /// as a `dim A × dim eAe` matrix.
    pub fn corner(&self, e: &[u32]) -> Result<(FinAlgebra, Matrix), ComplexError> {
        if e.len() != self.dim || !self.is_idempotent(e) {
            return Err(ComplexError::InvalidAlgebra("not an idempotent".into()));
        }
        let gens: Vec<Vec<u32>> = (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis(i)), e)).collect();
        let sub = Subspace::from_vectors(self.p, self.dim, &gens);
        let basis = sub.basis_vectors();
        let k = basis.len();
        let mut structure = vec![0; k * k * k];
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let c = sub.coordinates(&self.mul(a, b)).expect("corner is closed");
                structure[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&c);
            }
        }
        let unit = if k == 0 { vec![] } else { sub.coordinates(e).expect("e lies in eAe") };
        let labels = (1..=k).map(|i| format!("c{i}")).collect();
        let incl = if k == 0 { Matrix::zeros(self.p, self.dim, 0) } else { Matrix::from_flat(self.p, k, self.dim, &basis.concat()).transpose() };
        Ok((FinAlgebra::new(self.p, labels, structure, unit)?, incl))
    }

    /// The quotient `A / I` by a two-sided ideal, and the projection as a
    /// `dim A/I × dim A` matrix.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(FinAlgebra, Matrix), ComplexError> {
        let q = quotient_basis(&Subspace::full(self.p, self.dim), ideal)?;
        let k = q.dim();
        let mut proj = Matrix::zeros(self.p, k, self.dim);
        for i in 0..self.dim {
            for (r, v) in q.coords_unchecked(&self.basis(i)).into_iter().enumerate() {
                proj.set(r, i, v);
            }
        }
        let reps = q.representatives();
        let mut structure = vec![0; k * k * k];
        for i in 0..k {
            for j in 0..k {
                let c = q.coords_unchecked(&self.mul(&reps[i], &reps[j]));
                structure[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&c);
            }
        }
        let unit = q.coords_unchecked(&self.unit);
        let labels = (1..=k).map(|i| format!("q{i}")).collect();
        Ok((FinAlgebra::new(self.p, labels, structure, unit)?, proj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert_eq!(FinAlgebra::field(2).unwrap().dim(), 1);
        assert_eq!(FinAlgebra::product(2, 2).unwrap().dim(), 2);
        let d = FinAlgebra::truncated_polynomial(2, 2).unwrap();
        assert_eq!(d.mul(&[0, 1], &[0, 1]), vec![0, 0]);
        assert_eq!(FinAlgebra::zero(3).unwrap().dim(), 0);
    }

    #[test]
    fn rejects_non_associative_constants() {
        // e0 e0 = e1, everything else zero, unit missing.
        let mut s = vec![0; 8];
        s[1] = 1;
        assert!(FinAlgebra::new(2, vec!["a".into(), "b".into()], s, vec![1, 0]).is_err());
    }

    #[test]
    fn radicals() {
        assert_eq!(FinAlgebra::product(2, 2).unwrap().radical().dim(), 0);
        let d = FinAlgebra::truncated_polynomial(3, 3).unwrap();
        assert_eq!(d.radical().dim(), 2);
    }

    #[test]
    fn corner_and_quotient_of_product() {
        let a = FinAlgebra::product(2, 2).unwrap();
        let e = [1, 0];
        let (c, incl) = a.corner(&e).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(incl.col_vec(0), vec![1, 0]);
        let (b, proj) = a.quotient(&a.ideal_generated(&e)).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(proj.apply(&[0, 1]), vec![1]);
        let (z, _) = a.corner(&[0, 0]).unwrap();
        assert_eq!(z.dim(), 0);
        let (z, _) = a.quotient(&a.ideal_generated(&[1, 1])).unwrap();
        assert_eq!(z.dim(), 0);
    }

    #[test]
    fn file_roundtrip_and_errors() {
        let d = FinAlgebra::truncated_polynomial(3, 2).unwrap();
        let text = serde_json::to_string(&AlgebraFile::from_algebra(&d)).unwrap();
        assert_eq!(AlgebraFile::parse(&text).unwrap().to_algebra().unwrap(), d);
        match AlgebraFile::parse("{\n\"modulus\": 2,\n\"labels\": [}") {
            Err(ComplexError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        let bad = AlgebraFile { modulus: 2, labels: vec!["1".into()], structure: vec![vec![vec![0]]], unit: vec![1] };
        assert!(bad.to_algebra().is_err());
    }
}
