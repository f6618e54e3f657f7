//! Bounded cochain complexes, chain maps, shifts and mapping cones.

use std::sync::Arc;

use crate::linalg::{quotient_basis, Matrix, Subspace};

use super::{ComplexError, FinAlgebra, FinModule};

/// A bounded complex `X^lo → X^{lo+1} → ... → X^hi` with differentials of
/// degree `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    alg: Arc<FinAlgebra>,
    lo: i32,
    terms: Vec<FinModule>,
    /// `diffs[k]: terms[k] → terms[k + 1]`
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// Validates that every differential is a module map and `d ∘ d = 0`.
    pub fn new(alg: Arc<FinAlgebra>, lo: i32, terms: Vec<FinModule>, diffs: Vec<Matrix>) -> Result<Self, ComplexError> {
        if diffs.len() + 1 != terms.len().max(1) || (terms.is_empty() && !diffs.is_empty()) {
            return Err(ComplexError::InvalidComplex("number of differentials".into()));
        }
        if terms.iter().any(|t| **t.algebra() != *alg) {
            return Err(ComplexError::AlgebraMismatch);
        }
        for (k, d) in diffs.iter().enumerate() {
            if !terms[k].is_module_map(&terms[k + 1], d) {
                return Err(ComplexError::InvalidComplex(format!("differential in degree {} is not a module map", lo + k as i32)));
            }
            if k + 1 < diffs.len() && !diffs[k + 1].dot(d).is_zero() {
                return Err(ComplexError::InvalidComplex(format!("d∘d ≠ 0 in degree {}", lo + k as i32)));
            }
        }
        Ok(Self { alg, lo, terms, diffs })
    }

    pub(crate) fn from_parts_unchecked(alg: Arc<FinAlgebra>, lo: i32, terms: Vec<FinModule>, diffs: Vec<Matrix>) -> Self {
        Self { alg, lo, terms, diffs }
    }

    pub fn zero(alg: Arc<FinAlgebra>) -> Self {
        Self { alg, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// `M` concentrated in degree `n`.
    pub fn stalk(m: FinModule, n: i32) -> Self {
        Self { alg: m.algebra().clone(), lo: n, terms: vec![m], diffs: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<FinAlgebra> {
        &self.alg
    }

    pub fn modulus(&self) -> u32 {
        self.alg.modulus()
    }

    /// Lowest stored degree.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest stored degree; `lo - 1` when nothing is stored.
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Degrees whose terms are nonzero, as an inclusive range.
    pub fn support(&self) -> Option<(i32, i32)> {
        let nz: Vec<i32> = (self.lo..=self.hi()).filter(|&n| self.dim(n) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn term(&self, n: i32) -> FinModule {
        self.term_ref(n).cloned().unwrap_or_else(|| FinModule::zero(self.alg.clone()))
    }

    pub fn term_ref(&self, n: i32) -> Option<&FinModule> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.terms[(n - self.lo) as usize])
        }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.term_ref(n).map_or(0, |t| t.dim())
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.dim()).sum()
    }

    /// `d^n: X^n → X^{n+1}`.
    pub fn diff(&self, n: i32) -> Matrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.modulus(), self.dim(n + 1), self.dim(n))
        }
    }

    pub fn is_zero_complex(&self) -> bool {
        self.total_dim() == 0
    }

    /// `X[n]^k = X^{k+n}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Self {
        let sign_negative = n.rem_euclid(2) == 1;
        let diffs = self.diffs.iter().map(|d| if sign_negative { d.neg() } else { d.clone() }).collect();
        Self { alg: self.alg.clone(), lo: self.lo - n, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (lo, hi) = joint_window(self, other);
        let terms = (lo..=hi).map(|n| self.term(n).direct_sum(&other.term(n))).collect();
        let diffs = (lo..hi).map(|n| self.diff(n).block_diag(&other.diff(n))).collect();
        Self { alg: self.alg.clone(), lo, terms, diffs }
    }

    /// The same complex stored on the degree range `[lo, hi]`, which must
    /// contain the support.
    pub fn restrict_window(&self, lo: i32, hi: i32) -> Self {
        if hi < lo {
            return Self { alg: self.alg.clone(), lo, terms: Vec::new(), diffs: Vec::new() };
        }
        let terms = (lo..=hi).map(|n| self.term(n)).collect();
        let diffs = (lo..hi).map(|n| self.diff(n)).collect();
        Self { alg: self.alg.clone(), lo, terms, diffs }
    }

    /// Drops zero terms at both ends.
    pub fn trimmed(&self) -> Self {
        match self.support() {
            Some((a, b)) => self.restrict_window(a, b),
            None => Self::zero(self.alg.clone()),
        }
    }

    /// `H^n(X)` as a quotient `ker d^n / im d^{n-1}`: returns its dimension
    /// and representatives of a basis.
    pub fn cohomology(&self, n: i32) -> (usize, Vec<Vec<u32>>) {
        let ker = self.diff(n).kernel();
        let im = self.diff(n - 1).image();
        let q = quotient_basis(&ker, &im).expect("image inside kernel");
        (q.dim(), q.representatives().to_vec())
    }

    pub fn cohomology_dims(&self, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|n| self.cohomology(n).0).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (self.lo..=self.hi()).all(|n| self.cohomology(n).0 == 0)
    }
}

/// Union of the stored windows.
pub fn joint_window(x: &ChainComplex, y: &ChainComplex) -> (i32, i32) {
    match (x.terms.is_empty(), y.terms.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (y.lo, y.hi()),
        (false, true) => (x.lo, x.hi()),
        (false, false) => (x.lo.min(y.lo), x.hi().max(y.hi())),
    }
}

/// A chain map stored on a degree window; components outside are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    lo: i32,
    comps: Vec<Matrix>,
}

impl ChainMap {
    pub fn new(lo: i32, comps: Vec<Matrix>) -> Self {
        Self { lo, comps }
    }

    pub fn zero(x: &ChainComplex, y: &ChainComplex) -> Self {
        let (lo, hi) = joint_window(x, y);
        Self { lo, comps: (lo..=hi).map(|n| Matrix::zeros(x.modulus(), y.dim(n), x.dim(n))).collect() }
    }

    pub fn identity(x: &ChainComplex) -> Self {
        Self { lo: x.lo, comps: (x.lo..=x.hi()).map(|n| Matrix::identity(x.modulus(), x.dim(n))).collect() }
    }

    /// Builds a map from a component function on the joint window.
    pub fn from_fn(x: &ChainComplex, y: &ChainComplex, mut f: impl FnMut(i32) -> Matrix) -> Self {
        let (lo, hi) = joint_window(x, y);
        Self { lo, comps: (lo..=hi).map(&mut f).collect() }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Component in degree `n` as a `Y^n × X^n` matrix.
    pub fn comp(&self, n: i32, x: &ChainComplex, y: &ChainComplex) -> Matrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            let m = &self.comps[k as usize];
            if m.shape() == (y.dim(n), x.dim(n)) {
                return m.clone();
            }
        }
        Matrix::zeros(x.modulus(), y.dim(n), x.dim(n))
    }

    /// Checks degreewise `A`-linearity and commutation with differentials.
    pub fn is_chain_map(&self, x: &ChainComplex, y: &ChainComplex) -> bool {
        for (k, m) in self.comps.iter().enumerate() {
            let n = self.lo + k as i32;
            if m.shape() != (y.dim(n), x.dim(n)) && !(x.dim(n) == 0 && y.dim(n) == 0) {
                return false;
            }
        }
        let (lo, hi) = joint_window(x, y);
        (lo..=hi).all(|n| {
            let f = self.comp(n, x, y);
            x.term(n).is_module_map(&y.term(n), &f)
                && y.diff(n).dot(&f) == self.comp(n + 1, x, y).dot(&x.diff(n))
        })
    }

    /// `g ∘ f` for `f: X → Y`, `g: Y → Z`.
    pub fn then(&self, g: &ChainMap, x: &ChainComplex, y: &ChainComplex, z: &ChainComplex) -> ChainMap {
        ChainMap::from_fn(x, z, |n| g.comp(n, y, z).dot(&self.comp(n, x, y)))
    }

    pub fn add(&self, other: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        ChainMap::from_fn(x, y, |n| self.comp(n, x, y).add(&other.comp(n, x, y)).expect("shape"))
    }

    pub fn scale(&self, s: u32) -> ChainMap {
        ChainMap { lo: self.lo, comps: self.comps.iter().map(|m| m.scale(s)).collect() }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { lo: self.lo, comps: self.comps.iter().map(|m| m.neg()).collect() }
    }

    /// `f[n]: X[n] → Y[n]`, components `f^{k+n}`.
    pub fn shift(&self, n: i32) -> ChainMap {
        ChainMap { lo: self.lo - n, comps: self.comps.clone() }
    }

    /// Induced map `H^n(X) → H^n(Y)` in the bases returned by
    /// [`ChainComplex::cohomology`].
    pub fn on_cohomology(&self, n: i32, x: &ChainComplex, y: &ChainComplex) -> Matrix {
        let p = x.modulus();
        let (_, reps) = x.cohomology(n);
        let ker_y = y.diff(n).kernel();
        let im_y = y.diff(n - 1).image();
        let q = quotient_basis(&ker_y, &im_y).expect("image inside kernel");
        let f = self.comp(n, x, y);
        let mut m = Matrix::zeros(p, q.dim(), reps.len());
        for (c, r) in reps.iter().enumerate() {
            let img = f.apply(r);
            for (row, v) in q.coords(&img).expect("cycle maps to cycle").into_iter().enumerate() {
                m.set(row, c, v);
            }
        }
        m
    }

    /// Bijective on cohomology in every degree of the joint window.
    pub fn is_quasi_iso(&self, x: &ChainComplex, y: &ChainComplex) -> bool {
        let (lo, hi) = joint_window(x, y);
        (lo..=hi).all(|n| {
            let m = self.on_cohomology(n, x, y);
            m.rows() == m.cols() && m.rank() == m.rows()
        })
    }
}

/// The standard triangle `X --φ--> Y --i--> C(φ) --q--> X[1]`.
#[derive(Clone, Debug)]
pub struct ConeTriangle {
    pub cone: ChainComplex,
    /// `Y → C(φ)`
    pub inclusion: ChainMap,
    /// `C(φ) → X[1]`
    pub projection: ChainMap,
}

/// `C(φ)^n = X^{n+1} ⊕ Y^n` with `d = [[-d_X, 0], [φ, d_Y]]`.
pub fn mapping_cone(phi: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> ConeTriangle {
    cone_with_sign(phi, x, y, false)
}

/// A cone built with the off-diagonal entry negated: the cone of `-φ`
/// presented as if it belonged to `φ`. Used to exercise the axiom checks.
pub fn corrupted_mapping_cone(phi: &ChainMap, x: &ChainComplex, y: &ChainComplex) -> ConeTriangle {
    cone_with_sign(phi, x, y, true)
}

fn cone_with_sign(phi: &ChainMap, x: &ChainComplex, y: &ChainComplex, flip: bool) -> ConeTriangle {
    let p = x.modulus();
    let alg = x.algebra().clone();
    let x1 = x.shift(1);
    let (lo, hi) = joint_window(&x1, y);
    let terms: Vec<FinModule> = (lo..=hi).map(|n| x.term(n + 1).direct_sum(&y.term(n))).collect();
    let diffs: Vec<Matrix> = (lo..hi)
        .map(|n| {
            let (a0, b0) = (x.dim(n + 1), y.dim(n));
            let (a1, b1) = (x.dim(n + 2), y.dim(n + 1));
            let dx = x.diff(n + 1).neg();
            let f = phi.comp(n + 1, x, y);
            let f = if flip { f.neg() } else { f };
            let dy = y.diff(n);
            Matrix::from_blocks(p, &[a1, b1], &[a0, b0], &[vec![Some(&dx), None], vec![Some(&f), Some(&dy)]])
        })
        .collect();
    let cone = ChainComplex::from_parts_unchecked(alg, lo, terms, diffs);
    let inclusion = ChainMap::from_fn(y, &cone, |n| {
        let (a, b) = (x.dim(n + 1), y.dim(n));
        Matrix::zeros(p, a, b).vstack(&Matrix::identity(p, b)).expect("shape")
    });
    let projection = ChainMap::from_fn(&cone, &x1, |n| {
        let (a, b) = (x.dim(n + 1), y.dim(n));
        Matrix::identity(p, a).hstack(&Matrix::zeros(p, a, b)).expect("shape")
    });
    ConeTriangle { cone, inclusion, projection }
}

/// Subspace of cycles in degree `n`.
pub fn cycles(x: &ChainComplex, n: i32) -> Subspace {
    x.diff(n).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FinAlgebra> {
        Arc::new(FinAlgebra::field(2).unwrap())
    }

    fn k(alg: &Arc<FinAlgebra>) -> FinModule {
        FinModule::regular(alg.clone())
    }

    fn id_complex(alg: &Arc<FinAlgebra>) -> ChainComplex {
        let p = alg.modulus();
        ChainComplex::new(alg.clone(), 0, vec![k(alg), k(alg)], vec![Matrix::identity(p, 1)]).unwrap()
    }

    #[test]
    fn cohomology_examples() {
        let a = f2();
        let x = id_complex(&a);
        assert_eq!(x.cohomology_dims(0, 1), vec![0, 0]);
        let z = ChainComplex::new(a.clone(), 0, vec![k(&a), k(&a)], vec![Matrix::zeros(2, 1, 1)]).unwrap();
        assert_eq!(z.cohomology_dims(0, 1), vec![1, 1]);
        let s = ChainComplex::stalk(k(&a), 0);
        let c = mapping_cone(&ChainMap::identity(&s), &s, &s);
        assert!(c.cone.is_acyclic());
    }

    #[test]
    fn shift_conventions() {
        let a = f2();
        let x = id_complex(&a);
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(1).shift(-1), x);
        let s = ChainComplex::stalk(k(&a), 0).shift(2);
        assert_eq!(s.support(), Some((-2, -2)));
    }

    #[test]
    fn cone_of_zero_splits() {
        let a = Arc::new(FinAlgebra::field(3).unwrap());
        let x = ChainComplex::stalk(k(&a), 0);
        let y = ChainComplex::stalk(k(&a), 0);
        let c = mapping_cone(&ChainMap::zero(&x, &y), &x, &y);
        assert_eq!(c.cone.cohomology_dims(-1, 0), vec![1, 1]);
        assert!(c.inclusion.is_chain_map(&y, &c.cone));
        assert!(c.projection.is_chain_map(&c.cone, &x.shift(1)));
    }

    #[test]
    fn cone_of_projection_like_map() {
        let a = f2();
        let x = ChainComplex::new(a.clone(), 0, vec![k(&a), k(&a)], vec![Matrix::zeros(2, 1, 1)]).unwrap();
        let y = ChainComplex::stalk(k(&a), 0);
        let phi = ChainMap::from_fn(&x, &y, |n| if n == 0 { Matrix::identity(2, 1) } else { Matrix::zeros(2, y.dim(n), x.dim(n)) });
        assert!(phi.is_chain_map(&x, &y));
        let c = mapping_cone(&phi, &x, &y);
        // H^0 of X maps isomorphically, so only H^1(X) survives, in degree 0 of the cone.
        assert_eq!(c.cone.cohomology_dims(-1, 1), vec![0, 1, 0]);
    }

    #[test]
    fn quasi_isomorphisms() {
        let a = f2();
        let x = ChainComplex::stalk(k(&a), 0);
        assert!(ChainMap::identity(&x).is_quasi_iso(&x, &x));
        let zero = ChainComplex::zero(a.clone());
        assert!(!ChainMap::zero(&zero, &x).is_quasi_iso(&zero, &x));
        let c = id_complex(&a);
        assert!(ChainMap::zero(&c, &zero).is_quasi_iso(&c, &zero));
    }
}
