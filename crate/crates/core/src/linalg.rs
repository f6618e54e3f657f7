//! Exact linear algebra over prime fields `F_p`.
//!
//! Every additive construction in the crate (hom-spaces of complexes,
//! homotopy quotients, lifting problems for coherent functors) reduces to
//! row reduction over `F_p`. Entries are stored as residues in `[0, p)` and
//! all arithmetic is exact.

use std::fmt;

use thiserror::Error;

/// Largest modulus accepted (exclusive).
pub const MAX_PRIME: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime below 2^16")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("entry {value} out of range for modulus {p}")]
    EntryOutOfRange { value: u32, p: u32 },
    #[error("subspace is not contained in the ambient subspace")]
    NotSubspace,
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// Validates that `p` is a prime below [`MAX_PRIME`].
pub fn check_prime(p: u32) -> Result<u32> {
    if !(2..MAX_PRIME).contains(&p) {
        return Err(LinalgError::NotPrime(p));
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return Err(LinalgError::NotPrime(p));
        }
        d += 1;
    }
    Ok(p)
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Multiplicative inverse by Fermat. `a` must be nonzero.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero");
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_signed(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F_{}; {}x{}](", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, ")")
    }
}

impl Matrix {
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(&value) = data.iter().find(|&&v| v >= p) {
            return Err(LinalgError::EntryOutOfRange { value, p });
        }
        Ok(Self { rows, cols, p, data })
    }

    /// Builds a matrix from signed integer rows, reducing mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::ShapeMismatch("ragged rows".into()));
            }
            data.extend(row.iter().map(|&v| reduce_signed(v, p)));
        }
        Ok(Self { rows: r, cols: c, p, data })
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Column vector.
    pub fn column(p: u32, entries: &[u32]) -> Self {
        Self { rows: entries.len(), cols: 1, p, data: entries.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col_vec(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(LinalgError::ModulusMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = (*d + a * b as u64) % p;
                }
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            p: self.p,
            data: out.into_iter().map(|v| v as u32).collect(),
        })
    }

    /// Product that panics on shape mismatch; for internal use where shapes
    /// are guaranteed by construction.
    pub fn dot(&self, other: &Self) -> Self {
        self.mul(other).expect("matrix product shapes")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch("addition".into()));
        }
        let p = self.p;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            p,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| add_mod(a, b, p)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self { data: self.data.iter().map(|&a| neg_mod(a, p)).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: u32) -> Self {
        let p = self.p;
        Self { data: self.data.iter().map(|&a| mul_mod(a, s % p, p)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(LinalgError::ShapeMismatch("hstack row counts".into()));
        }
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch("vstack column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, p: self.p, data })
    }

    /// Block matrix assembled from a grid of blocks. Row heights and column
    /// widths are given explicitly so that empty blocks are allowed.
    pub fn from_blocks(p: u32, heights: &[usize], widths: &[usize], blocks: &[Vec<Option<&Matrix>>]) -> Self {
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = Self::zeros(p, rows, cols);
        let mut r0 = 0;
        for (bi, &h) in heights.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &w) in widths.iter().enumerate() {
                if let Some(Some(b)) = blocks.get(bi).map(|row| row.get(bj).copied().flatten()) {
                    assert_eq!(b.shape(), (h, w), "block ({bi},{bj}) has the wrong shape");
                    for r in 0..h {
                        for c in 0..w {
                            out.data[(r0 + r) * cols + c0 + c] = b.get(r, c);
                        }
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        out
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        Self::from_blocks(
            self.p,
            &[self.rows, other.rows],
            &[self.cols, other.cols],
            &[vec![Some(self), None], vec![None, Some(other)]],
        )
    }

    /// Submatrix of the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(self.p, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(self.data[r * cols + c], p);
            if inv != 1 {
                for k in c..cols {
                    self.data[r * cols + k] = mul_mod(self.data[r * cols + k], inv, p);
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c];
                if f == 0 {
                    continue;
                }
                for k in c..cols {
                    let v = mul_mod(f, self.data[r * cols + k], p);
                    self.data[i * cols + k] = sub_mod(self.data[i * cols + k], v, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{x : self * x = 0}` as a subspace of `F_p^cols`.
    pub fn kernel(&self) -> Subspace {
        let (red, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(red.get(i, free), self.p);
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.p, n, &basis)
    }

    /// Column space as a subspace of `F_p^rows`.
    pub fn image(&self) -> Subspace {
        let t = self.transpose();
        let vecs: Vec<Vec<u32>> = (0..t.rows).map(|r| t.row(r).to_vec()).collect();
        Subspace::from_vectors(self.p, self.rows, &vecs)
    }

    /// One solution of `self * x = b`, with free variables set to zero after
    /// reduction; `None` when the system is inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "system has {} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let (red, pivots) = aug.rref();
        let n = self.cols;
        if pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.p, n, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = red.get(i, n + j);
            }
        }
        Ok(Some(x))
    }

    /// Solve for a single vector right-hand side.
    pub fn solve_vec(&self, b: &[u32]) -> Option<Vec<u32>> {
        let rhs = Self::column(self.p, b);
        self.solve(&rhs).expect("solve_vec shapes").map(|x| x.data)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let id = Self::identity(self.p, self.rows);
        let x = self.solve(&id).ok()??;
        if self.dot(&x) == id {
            Some(x)
        } else {
            None
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                (row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32
            })
            .collect()
    }

    /// Flattens row-major into a vector.
    pub fn to_vec(&self) -> Vec<u32> {
        self.data.clone()
    }

    pub fn from_flat(p: u32, rows: usize, cols: usize, v: &[u32]) -> Self {
        assert_eq!(v.len(), rows * cols);
        Self { rows, cols, p, data: v.to_vec() }
    }
}

/// Linear combination `sum c_i v_i` of equal-length vectors.
pub fn combine(p: u32, coeffs: &[u32], vectors: &[Vec<u32>], len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = add_mod(*o, mul_mod(c, x, p), p);
        }
    }
    out
}

/// Enumerates every vector of `F_p^dim` in lexicographic order of the
/// base-`p` digits (coordinate 0 is the least significant digit).
pub fn all_vectors(p: u32, dim: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).checked_pow(dim as u32).expect("vector space too large to enumerate");
    (0..total).map(move |mut k| {
        let mut v = vec![0u32; dim];
        for x in v.iter_mut() {
            *x = (k % p as u64) as u32;
            k /= p as u64;
        }
        v
    })
}

/// Inverse of the enumeration order of [`all_vectors`].
pub fn vector_index(p: u32, v: &[u32]) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// A linear subspace of `F_p^ambient`, stored by a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Self { p, ambient, basis: Matrix::zeros(p, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Self { p, ambient, basis: Matrix::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
            data.extend_from_slice(v);
        }
        let m = Matrix { rows: vectors.len(), cols: ambient, p, data };
        let (red, pivots) = m.rref();
        let basis = red.slice(0..pivots.len(), 0..ambient);
        Self { p, ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Basis rows in reduced echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.dim()).map(|r| self.basis.row(r).to_vec()).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v + self`: pivot coordinates cleared.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc];
            if f == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = sub_mod(*o, mul_mod(f, b, p), p);
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Self::from_vectors(self.p, self.ambient, &vs)
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }
}

/// The quotient `V / W` with a chosen complement basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    reps: Vec<Vec<u32>>,
    /// columns: basis of W followed by the coset representatives
    combined: Matrix,
    /// rows of `combined` forming an invertible square block, and its inverse
    rows: Vec<usize>,
    block_inv: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives whose classes form a basis of `V / W`.
    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.reps
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    /// Coordinates of the class of `v` (which must lie in V).
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let x = self.combined.solve_vec(v)?;
        Some(x[self.sub.dim()..].to_vec())
    }

    /// Coordinates of the class of `v`, assuming `v` lies in V.
    pub fn coords_unchecked(&self, v: &[u32]) -> Vec<u32> {
        let p = self.sub.modulus();
        let k = self.rows.len();
        let w = self.sub.dim();
        (w..k)
            .map(|i| {
                let row = self.block_inv.row(i);
                self.rows.iter().zip(row).fold(0, |acc, (&r, &b)| add_mod(acc, mul_mod(b, v[r], p), p))
            })
            .collect()
    }

    /// Lift of a coordinate vector to V.
    pub fn lift(&self, coords: &[u32]) -> Vec<u32> {
        combine(self.sub.modulus(), coords, &self.reps, self.sub.ambient())
    }
}

/// Coset data for `V / W`. Fails with [`LinalgError::NotSubspace`] when `W`
/// is not contained in `V`.
pub fn quotient_basis(v: &Subspace, w: &Subspace) -> Result<Quotient> {
    if v.p != w.p {
        return Err(LinalgError::ModulusMismatch(v.p, w.p));
    }
    if !w.is_subspace_of(v) {
        return Err(LinalgError::NotSubspace);
    }
    let p = v.p;
    let mut acc = w.clone();
    let mut reps = Vec::new();
    for b in v.basis_vectors() {
        if !acc.contains(&b) {
            acc = acc.sum(&Subspace::from_vectors(p, v.ambient, &[b.clone()]));
            reps.push(b);
        }
    }
    let mut cols = w.basis_vectors();
    cols.extend(reps.iter().cloned());
    let combined = if cols.is_empty() {
        Matrix::zeros(p, v.ambient, 0)
    } else {
        Matrix::from_flat(p, cols.len(), v.ambient, &cols.concat()).transpose()
    };
    let (_, rows) = combined.transpose().rref();
    let k = rows.len();
    let mut block = Matrix::zeros(p, k, k);
    for (i, &r) in rows.iter().enumerate() {
        for j in 0..k {
            block.set(i, j, combined.get(r, j));
        }
    }
    let block_inv = block.inverse().expect("independent rows");
    Ok(Quotient { sub: w.clone(), reps, combined, rows, block_inv })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn primes() {
        assert!(check_prime(2).is_ok());
        assert!(check_prime(65521).is_ok());
        assert!(check_prime(1).is_err());
        assert!(check_prime(9).is_err());
        assert!(check_prime(65537).is_err());
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let a = Matrix::identity(2, 2);
        let b = m(2, &[&[1], &[0]]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), b);
    }

    #[test]
    fn solve_inconsistent() {
        let a = m(2, &[&[1, 1], &[0, 0]]);
        let b = m(2, &[&[1], &[1]]);
        assert_eq!(a.solve(&b).unwrap(), None);
    }

    #[test]
    fn solve_canonical_sets_free_variables_to_zero() {
        let a = m(3, &[&[1, 1]]);
        let b = m(3, &[&[0]]);
        assert_eq!(a.solve(&b).unwrap().unwrap(), m(3, &[&[0], &[0]]));
        // brute force over all 9 vectors: solutions form a line
        let count = all_vectors(3, 2).filter(|v| a.apply(v) == vec![0]).count();
        assert_eq!(count, 3);
        assert_eq!(a.kernel().dim(), 1);
    }

    #[test]
    fn solve_errors() {
        let a = Matrix::identity(2, 2);
        assert!(matches!(a.solve(&Matrix::zeros(2, 3, 1)), Err(LinalgError::ShapeMismatch(_))));
        assert!(matches!(a.solve(&Matrix::zeros(3, 2, 1)), Err(LinalgError::ModulusMismatch(2, 3))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(2, 2, 2).kernel().dim(), 2);
        assert_eq!(Matrix::identity(2, 2).kernel().dim(), 0);
        let a = m(5, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.kernel().dim(), 1);
        let brute = all_vectors(5, 2).filter(|v| a.apply(v).iter().all(|&x| x == 0)).count();
        assert_eq!(brute, 5);
    }

    #[test]
    fn quotient_identity_cases() {
        let v = Subspace::full(2, 3);
        assert_eq!(quotient_basis(&v, &v).unwrap().dim(), 0);
        assert_eq!(quotient_basis(&v, &Subspace::zero(2, 3)).unwrap().dim(), 3);
        let w = Subspace::from_vectors(2, 3, &[vec![1, 0, 0]]);
        let small = Subspace::from_vectors(2, 3, &[vec![0, 1, 0]]);
        assert_eq!(quotient_basis(&small, &w).unwrap_err(), LinalgError::NotSubspace);
    }

    #[test]
    fn quotient_matches_coset_enumeration() {
        // V = F_2^4, W spanned by two vectors: count cosets by brute force
        let w = Subspace::from_vectors(2, 4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 1]]);
        let v = Subspace::full(2, 4);
        let q = quotient_basis(&v, &w).unwrap();
        let mut cosets = std::collections::BTreeSet::new();
        for x in all_vectors(2, 4) {
            let class: std::collections::BTreeSet<Vec<u32>> = all_vectors(2, 4)
                .filter(|y| {
                    let d: Vec<u32> = x.iter().zip(y).map(|(&a, &b)| sub_mod(a, b, 2)).collect();
                    w.contains(&d)
                })
                .collect();
            cosets.insert(class);
        }
        assert_eq!(2usize.pow(q.dim() as u32), cosets.len());
        // coordinates distinguish cosets
        let mut seen = std::collections::BTreeSet::new();
        for x in all_vectors(2, 4) {
            seen.insert(q.coords(&x).unwrap());
        }
        assert_eq!(seen.len(), cosets.len());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(7, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.dot(&inv), Matrix::identity(7, 2));
        assert!(m(7, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
