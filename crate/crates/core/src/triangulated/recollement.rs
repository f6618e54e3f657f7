//! The recollement attached to an idempotent `e` of a finite-dimensional
//! algebra `A`, realized on models of `K^b(proj A/AeA)`, `K^b(proj A)` and
//! `K^b(proj eAe)` by explicit matrix functors. Modules are left modules,
//! so the middle-to-right functor is `M ↦ eM`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::complexes::{ChainComplex, FinAlgebra, FinModule};
use crate::linalg::{quotient_basis, Matrix, Subspace};

use super::{Caps, ObjId, TriangulatedError, TriangulatedModel};

/// The six functors of the recollement, on modules, maps and complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleFunctor {
    /// `I`: restriction along `A → A/AeA`.
    Restrict,
    /// `I_λ = A/AeA ⊗_A -`, that is `M ↦ M / AeA·M`.
    QuotientByIdeal,
    /// `I_ρ = Hom_A(A/AeA, -)`, that is `M ↦ {m : AeA·m = 0}`.
    Annihilator,
    /// `Q`: `M ↦ eM` over `eAe`.
    Corner,
    /// `Q_λ = Ae ⊗_{eAe} -`.
    Induce,
    /// `Q_ρ = Hom_{eAe}(eA, -)`.
    Coinduce,
}

impl ModuleFunctor {
    pub const ALL: [ModuleFunctor; 6] = [
        ModuleFunctor::Restrict,
        ModuleFunctor::QuotientByIdeal,
        ModuleFunctor::Annihilator,
        ModuleFunctor::Corner,
        ModuleFunctor::Induce,
        ModuleFunctor::Coinduce,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            ModuleFunctor::Restrict => "I",
            ModuleFunctor::QuotientByIdeal => "I_lambda",
            ModuleFunctor::Annihilator => "I_rho",
            ModuleFunctor::Corner => "Q",
            ModuleFunctor::Induce => "Q_lambda",
            ModuleFunctor::Coinduce => "Q_rho",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|&f| f == self).expect("listed")
    }
}

/// Which of the three categories a functor starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Middle,
    Right,
}

fn ends(f: ModuleFunctor) -> (Side, Side) {
    match f {
        ModuleFunctor::Restrict => (Side::Left, Side::Middle),
        ModuleFunctor::QuotientByIdeal | ModuleFunctor::Annihilator => (Side::Middle, Side::Left),
        ModuleFunctor::Corner => (Side::Middle, Side::Right),
        ModuleFunctor::Induce | ModuleFunctor::Coinduce => (Side::Right, Side::Middle),
    }
}

/// How a functor value sits inside an ambient vector space.
enum Frame {
    Same,
    Sub(Subspace),
    Quot { proj: Matrix, section: Matrix },
}

fn linear_op(p: u32, n: usize, f: impl Fn(&[u32]) -> Vec<u32>) -> Matrix {
    let mut m = Matrix::zeros(p, n, n);
    for c in 0..n {
        let mut e = vec![0; n];
        e[c] = 1;
        for (r, v) in f(&e).into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m
}

fn columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Matrix {
    if cols.is_empty() || rows == 0 {
        return Matrix::zeros(p, rows, cols.len());
    }
    Matrix::from_flat(p, cols.len(), rows, &cols.concat()).transpose()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).expect("conformable")
}

fn kron_identity_left(r: usize, f: &Matrix) -> Matrix {
    let p = f.modulus();
    let (m, n) = f.shape();
    let mut out = Matrix::zeros(p, r * m, r * n);
    for x in 0..r {
        for i in 0..m {
            for j in 0..n {
                out.set(x * m + i, x * n + j, f.get(i, j));
            }
        }
    }
    out
}

impl Frame {
    fn quotient(p: u32, ambient: usize, sub: &Subspace) -> Self {
        let q = quotient_basis(&Subspace::full(p, ambient), sub).expect("subspace");
        let proj_cols: Vec<Vec<u32>> = (0..ambient)
            .map(|i| {
                let mut e = vec![0; ambient];
                e[i] = 1;
                q.coords_unchecked(&e)
            })
            .collect();
        let proj = if q.dim() == 0 { Matrix::zeros(p, 0, ambient) } else { columns(p, q.dim(), &proj_cols) };
        Frame::Quot { proj, section: columns(p, ambient, q.representatives()) }
    }

    fn dim(&self, ambient: usize) -> usize {
        match self {
            Frame::Same => ambient,
            Frame::Sub(s) => s.dim(),
            Frame::Quot { proj, .. } => proj.rows(),
        }
    }

    /// An ambient operator preserving the frame, in frame coordinates.
    fn restrict(&self, p: u32, op: &Matrix) -> Matrix {
        match self {
            Frame::Same => op.clone(),
            Frame::Sub(s) => {
                let cols: Vec<Vec<u32>> = s.basis_vectors().iter().map(|b| s.coordinates(&op.apply(b)).expect("invariant")).collect();
                columns(p, s.dim(), &cols)
            }
            Frame::Quot { proj, section } => mul(&mul(proj, op), section),
        }
    }

    /// An ambient map between two frames, in frame coordinates.
    fn induced(p: u32, src: &Frame, dst: &Frame, amb: &Matrix) -> Matrix {
        let src_basis: Matrix = match src {
            Frame::Same => Matrix::identity(p, amb.cols()),
            Frame::Sub(s) => columns(p, s.ambient(), &s.basis_vectors()),
            Frame::Quot { section, .. } => section.clone(),
        };
        let image = mul(amb, &src_basis);
        match dst {
            Frame::Same => image,
            Frame::Sub(s) => {
                let cols: Vec<Vec<u32>> = (0..image.cols()).map(|c| s.coordinates(&image.col_vec(c)).expect("maps into frame")).collect();
                columns(p, s.dim(), &cols)
            }
            Frame::Quot { proj, .. } => mul(proj, &image),
        }
    }
}

/// The three models and the six functors, with object tables.
#[derive(Clone, Debug)]
pub struct Recollement {
    pub algebra: Arc<FinAlgebra>,
    pub idempotent: Vec<u32>,
    /// `AeA`.
    pub ideal: Subspace,
    /// `A/AeA` and the projection `dim A/AeA × dim A`.
    pub quotient_algebra: Arc<FinAlgebra>,
    pub projection: Matrix,
    /// `eAe` and the inclusion `dim A × dim eAe`.
    pub corner_algebra: Arc<FinAlgebra>,
    pub inclusion: Matrix,
    /// `T'`, `T`, `T''`.
    pub left: TriangulatedModel,
    pub middle: TriangulatedModel,
    pub right: TriangulatedModel,
    tables: Vec<Vec<ObjId>>,
}

/// Verdicts on the recollement conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecollementReport {
    /// `Tor_i^A(A/AeA, A/AeA) = 0` for `0 < i ≤ depth`.
    pub tor_vanishes: bool,
    /// Hom dimensions agree for `I_λ ⊣ I`, `I ⊣ I_ρ`, `Q_λ ⊣ Q`, `Q ⊣ Q_ρ`.
    pub adjunctions: [bool; 4],
    /// `I_λI ≅ Id`, `I_ρI ≅ Id`, `QQ_λ ≅ Id`, `QQ_ρ ≅ Id` objectwise.
    pub unit_isos: [bool; 4],
    pub image_is_kernel: bool,
}

impl RecollementReport {
    pub fn holds(&self) -> bool {
        self.tor_vanishes && self.adjunctions.iter().all(|&b| b) && self.unit_isos.iter().all(|&b| b) && self.image_is_kernel
    }
}

/// Builds the recollement of `e` within shared caps.
pub fn recollement_from_idempotent(alg: Arc<FinAlgebra>, e: &[u32], caps: Caps) -> Result<Recollement, TriangulatedError> {
    if e.len() != alg.dim() || !alg.is_idempotent(e) {
        return Err(TriangulatedError::NotIdempotent);
    }
    let ideal = alg.ideal_generated(e);
    let (qa, projection) = alg.quotient(&ideal)?;
    let (ca, inclusion) = alg.corner(e)?;
    let (qa, ca) = (Arc::new(qa), Arc::new(ca));
    let left = TriangulatedModel::build(qa.clone(), caps)?;
    let middle = TriangulatedModel::build(alg.clone(), caps)?;
    let right = TriangulatedModel::build(ca.clone(), caps)?;
    let mut r = Recollement {
        algebra: alg,
        idempotent: e.to_vec(),
        ideal,
        quotient_algebra: qa,
        projection,
        corner_algebra: ca,
        inclusion,
        left,
        middle,
        right,
        tables: Vec::new(),
    };
    let mut tables = Vec::new();
    for f in ModuleFunctor::ALL {
        let (src, dst) = ends(f);
        let mut table = Vec::new();
        for x in r.model(src).object_ids() {
            let image = r.on_complex(f, r.model(src).object(x))?;
            let located = r.model(dst).locate(&image).map_err(|_| {
                TriangulatedError::CapsTooSmall(format!("{} of {} leaves the model", f.symbol(), r.model(src).name(x)))
            })?;
            table.push(located.id);
        }
        tables.push(table);
    }
    r.tables = tables;
    Ok(r)
}

impl Recollement {
    fn model(&self, side: Side) -> &TriangulatedModel {
        match side {
            Side::Left => &self.left,
            Side::Middle => &self.middle,
            Side::Right => &self.right,
        }
    }

    fn target_algebra(&self, f: ModuleFunctor) -> &Arc<FinAlgebra> {
        match ends(f).1 {
            Side::Left => &self.quotient_algebra,
            Side::Middle => &self.algebra,
            Side::Right => &self.corner_algebra,
        }
    }

    fn p(&self) -> u32 {
        self.algebra.modulus()
    }

    /// Basis of `Ae` (as vectors in `A`).
    fn ae(&self) -> Subspace {
        let gens: Vec<Vec<u32>> = (0..self.algebra.dim()).map(|i| self.algebra.mul(&self.algebra.basis(i), &self.idempotent)).collect();
        Subspace::from_vectors(self.p(), self.algebra.dim(), &gens)
    }

    /// Basis of `eA`.
    fn ea(&self) -> Subspace {
        let gens: Vec<Vec<u32>> = (0..self.algebra.dim()).map(|i| self.algebra.mul(&self.idempotent, &self.algebra.basis(i))).collect();
        Subspace::from_vectors(self.p(), self.algebra.dim(), &gens)
    }

    /// Lifts of a basis of `A/AeA` to `A`.
    fn quotient_lifts(&self) -> Vec<Vec<u32>> {
        let q = quotient_basis(&Subspace::full(self.p(), self.algebra.dim()), &self.ideal).expect("ideal");
        q.representatives().to_vec()
    }

    /// Ambient dimension, frame and ambient operators for each basis
    /// element of the target algebra.
    fn setup(&self, f: ModuleFunctor, m: &FinModule) -> (usize, Frame, Vec<Matrix>) {
        let p = self.p();
        let n = m.dim();
        match f {
            ModuleFunctor::Restrict => {
                let ops = (0..self.algebra.dim()).map(|i| m.rho(&self.projection.col_vec(i))).collect();
                (n, Frame::Same, ops)
            }
            ModuleFunctor::Corner => {
                let ops = (0..self.corner_algebra.dim()).map(|i| m.rho(&self.inclusion.col_vec(i))).collect();
                (n, Frame::Sub(m.rho(&self.idempotent).image()), ops)
            }
            ModuleFunctor::QuotientByIdeal => {
                let ops = self.quotient_lifts().iter().map(|a| m.rho(a)).collect();
                (n, Frame::quotient(p, n, &m.ideal_times(&self.ideal)), ops)
            }
            ModuleFunctor::Annihilator => {
                let ops = self.quotient_lifts().iter().map(|a| m.rho(a)).collect();
                (n, Frame::Sub(m.annihilated_by(&self.ideal)), ops)
            }
            ModuleFunctor::Induce => {
                let ae = self.ae();
                let xs = ae.basis_vectors();
                let r = xs.len();
                let amb = r * n;
                let mut rels = Vec::new();
                for (xi, x) in xs.iter().enumerate() {
                    for c in 0..self.corner_algebra.dim() {
                        let ca = self.inclusion.col_vec(c);
                        let xc = ae.coordinates(&self.algebra.mul(x, &ca)).expect("Ae·eAe ⊆ Ae");
                        let cn = m.action(c);
                        for j in 0..n {
                            let mut v = vec![0; amb];
                            for (y, &k) in xc.iter().enumerate() {
                                v[y * n + j] = (v[y * n + j] + k) % p;
                            }
                            for t in 0..n {
                                v[xi * n + t] = (v[xi * n + t] + p - cn.get(t, j)) % p;
                            }
                            rels.push(v);
                        }
                    }
                }
                let rel = Subspace::from_vectors(p, amb, &rels);
                let ops = (0..self.algebra.dim())
                    .map(|i| {
                        let a = self.algebra.basis(i);
                        let left: Vec<Vec<u32>> = xs.iter().map(|x| ae.coordinates(&self.algebra.mul(&a, x)).expect("A·Ae ⊆ Ae")).collect();
                        let la = columns(p, r, &left);
                        let mut op = Matrix::zeros(p, amb, amb);
                        for y in 0..r {
                            for x in 0..r {
                                for j in 0..n {
                                    op.set(y * n + j, x * n + j, la.get(y, x));
                                }
                            }
                        }
                        op
                    })
                    .collect();
                (amb, Frame::quotient(p, amb, &rel), ops)
            }
            ModuleFunctor::Coinduce => {
                let ea = self.ea();
                let ws = ea.basis_vectors();
                let s = ws.len();
                let amb = n * s;
                // φ ∈ Hom_F(eA, N) stored with entry (j, w) at j * s + w.
                let mut constraints: Vec<Vec<u32>> = Vec::new();
                for c in 0..self.corner_algebra.dim() {
                    let ca = self.inclusion.col_vec(c);
                    let cn = m.action(c);
                    for (wi, w) in ws.iter().enumerate() {
                        let cw = ea.coordinates(&self.algebra.mul(&ca, w)).expect("eAe·eA ⊆ eA");
                        for j in 0..n {
                            // (φ(c w))_j - (c φ(w))_j = 0
                            let mut row = vec![0; amb];
                            for (u, &k) in cw.iter().enumerate() {
                                row[j * s + u] = (row[j * s + u] + k) % p;
                            }
                            for t in 0..n {
                                row[t * s + wi] = (row[t * s + wi] + p - cn.get(j, t)) % p;
                            }
                            constraints.push(row);
                        }
                    }
                }
                let space = if constraints.is_empty() || amb == 0 {
                    Subspace::full(p, amb)
                } else {
                    Matrix::from_flat(p, constraints.len(), amb, &constraints.concat()).kernel()
                };
                let ops = (0..self.algebra.dim())
                    .map(|i| {
                        let a = self.algebra.basis(i);
                        let right: Vec<Vec<u32>> = ws.iter().map(|w| ea.coordinates(&self.algebra.mul(w, &a)).expect("eA·A ⊆ eA")).collect();
                        let ra = columns(p, s, &right);
                        linear_op(p, amb, |v| {
                            let phi = if amb == 0 { Matrix::zeros(p, n, s) } else { Matrix::from_flat(p, n, s, v) };
                            mul(&phi, &ra).to_vec()
                        })
                    })
                    .collect();
                (amb, Frame::Sub(space), ops)
            }
        }
    }

    /// The functor on a module.
    pub fn on_module(&self, f: ModuleFunctor, m: &FinModule) -> Result<FinModule, TriangulatedError> {
        let p = self.p();
        let (amb, frame, ops) = self.setup(f, m);
        let k = frame.dim(amb);
        let action = ops.iter().map(|op| frame.restrict(p, op)).collect();
        Ok(FinModule::new(self.target_algebra(f).clone(), k, action)?)
    }

    /// The functor on a module map `g: m → n`.
    pub fn on_map(&self, f: ModuleFunctor, g: &Matrix, m: &FinModule, n: &FinModule) -> Matrix {
        let p = self.p();
        let (_, fm, _) = self.setup(f, m);
        let (_, fn_, _) = self.setup(f, n);
        let amb = match f {
            ModuleFunctor::Induce => kron_identity_left(self.ae().dim(), g),
            ModuleFunctor::Coinduce => {
                let s = self.ea().dim();
                let (dn, dm) = (n.dim(), m.dim());
                let mut out = Matrix::zeros(p, dn * s, dm * s);
                for i in 0..dn {
                    for j in 0..dm {
                        for w in 0..s {
                            out.set(i * s + w, j * s + w, g.get(i, j));
                        }
                    }
                }
                out
            }
            _ => g.clone(),
        };
        Frame::induced(p, &fm, &fn_, &amb)
    }

    /// The functor applied termwise to a complex.
    pub fn on_complex(&self, f: ModuleFunctor, x: &ChainComplex) -> Result<ChainComplex, TriangulatedError> {
        let alg = self.target_algebra(f).clone();
        let Some((lo, hi)) = x.support() else { return Ok(ChainComplex::zero(alg)) };
        let terms: Vec<FinModule> = (lo..=hi).map(|n| self.on_module(f, &x.term(n))).collect::<Result<_, _>>()?;
        let diffs = (lo..hi).map(|n| self.on_map(f, &x.diff(n), &x.term(n), &x.term(n + 1))).collect();
        Ok(ChainComplex::new(alg, lo, terms, diffs)?.trimmed())
    }

    /// Object table of a functor between the models.
    pub fn table(&self, f: ModuleFunctor) -> &[ObjId] {
        &self.tables[f.index()]
    }

    fn adjoint_dims(&self, left: ModuleFunctor, right: ModuleFunctor) -> bool {
        let (a, b) = ends(left);
        let (ma, mb) = (self.model(a), self.model(b));
        let (tl, tr) = (self.table(left), self.table(right));
        ma.object_ids().all(|x| mb.object_ids().all(|y| mb.hom_dim(tl[x], y) == ma.hom_dim(x, tr[y])))
    }

    fn composite_is_identity(&self, first: ModuleFunctor, second: ModuleFunctor) -> bool {
        let (t1, t2) = (self.table(first), self.table(second));
        self.model(ends(first).0).object_ids().all(|x| t2[t1[x]] == x)
    }

    /// Checks the recollement conditions on the models.
    pub fn report(&self, tor_depth: usize) -> Result<RecollementReport, TriangulatedError> {
        use ModuleFunctor::*;
        let image: BTreeSet<ObjId> = self.table(Restrict).iter().copied().collect();
        let q = self.table(Corner);
        let kernel: BTreeSet<ObjId> = self.middle.object_ids().filter(|&y| self.right.is_zero_object(q[y])).collect();
        Ok(RecollementReport {
            tor_vanishes: tor_vanishes(&self.algebra, &self.idempotent, tor_depth)?,
            adjunctions: [
                self.adjoint_dims(QuotientByIdeal, Restrict),
                self.adjoint_dims(Restrict, Annihilator),
                self.adjoint_dims(Induce, Corner),
                self.adjoint_dims(Corner, Coinduce),
            ],
            unit_isos: [
                self.composite_is_identity(Restrict, QuotientByIdeal),
                self.composite_is_identity(Restrict, Annihilator),
                self.composite_is_identity(Induce, Corner),
                self.composite_is_identity(Coinduce, Corner),
            ],
            image_is_kernel: image == kernel,
        })
    }
}

/// Greedy generators of a module: basis vectors not in the submodule
/// generated by the earlier ones.
fn generators(m: &FinModule) -> Vec<Vec<u32>> {
    let p = m.modulus();
    let d = m.algebra().dim();
    let mut span = Subspace::from_vectors(p, m.dim(), &[]);
    let mut gens = Vec::new();
    for c in 0..m.dim() {
        let mut v = vec![0; m.dim()];
        v[c] = 1;
        if span.contains(&v) {
            continue;
        }
        let orbit: Vec<Vec<u32>> = (0..d).map(|i| m.action(i).apply(&v)).collect();
        span = span.sum(&Subspace::from_vectors(p, m.dim(), &orbit));
        gens.push(v);
    }
    gens
}

/// `Tor_i^A(A/AeA, A/AeA) = 0` for `0 < i ≤ depth`, from a free
/// resolution of `A/AeA` tensored with `A/AeA`.
pub fn tor_vanishes(alg: &Arc<FinAlgebra>, e: &[u32], depth: usize) -> Result<bool, TriangulatedError> {
    if e.len() != alg.dim() || !alg.is_idempotent(e) {
        return Err(TriangulatedError::NotIdempotent);
    }
    let p = alg.modulus();
    let d = alg.dim();
    let ideal = alg.ideal_generated(e);
    let (qa, proj) = alg.quotient(&ideal)?;
    let b = qa.dim();
    if b == 0 {
        return Ok(true);
    }
    let lifts = quotient_basis(&Subspace::full(p, d), &ideal).expect("ideal").representatives().to_vec();
    // `b · a` for a basis element b of A/AeA and a ∈ A.
    let right_act = |bi: usize, a: &[u32]| -> Vec<u32> { proj.apply(&alg.mul(&lifts[bi], a)) };

    let regular = FinModule::regular(alg.clone());
    let mut module = FinModule::regular(Arc::new(qa.clone())).restrict_along(alg.clone(), &proj);
    // `gens[i]`: generators of the i-th syzygy as vectors in `A^{k_{i-1}}`.
    let mut ranks = Vec::new();
    let mut diffs: Vec<Vec<Vec<u32>>> = Vec::new();
    for _ in 0..=depth + 1 {
        let gens = generators(&module);
        let k = gens.len();
        ranks.push(k);
        if k == 0 {
            break;
        }
        // A^k → module, e_(i, t) ↦ a_t g_i.
        let cols: Vec<Vec<u32>> = (0..k).flat_map(|i| (0..d).map(move |t| (i, t))).map(|(i, t)| module.action(t).apply(&gens[i])).collect();
        let surj = columns(p, module.dim(), &cols);
        let kernel = if module.dim() == 0 { Subspace::full(p, k * d) } else { surj.kernel() };
        let free = FinModule::direct_sum_all(&alg.clone(), &vec![&regular; k]);
        let (syzygy, incl) = free.submodule(&kernel);
        let next_gens = generators(&syzygy);
        diffs.push(next_gens.iter().map(|g| incl.apply(g)).collect());
        module = syzygy;
    }
    // B ⊗_A A^{k_{i+1}} → B ⊗_A A^{k_i}: b ⊗ e_j ↦ Σ_l (b · v_j[l]) ⊗ e_l.
    let tensored: Vec<Matrix> = diffs
        .iter()
        .enumerate()
        .map(|(i, vs)| {
            let (src, dst) = (vs.len(), ranks[i]);
            let mut m = Matrix::zeros(p, dst * b, src * b);
            for (j, v) in vs.iter().enumerate() {
                for bi in 0..b {
                    for l in 0..dst {
                        let img = right_act(bi, &v[l * d..(l + 1) * d]);
                        for (bo, val) in img.into_iter().enumerate() {
                            m.set(l * b + bo, j * b + bi, (m.get(l * b + bo, j * b + bi) + val) % p);
                        }
                    }
                }
            }
            m
        })
        .collect();
    for i in 1..=depth {
        let Some(&ki) = ranks.get(i) else { break };
        if ki == 0 {
            break;
        }
        let out_rank = tensored.get(i - 1).map_or(0, |m| m.rank());
        let in_rank = tensored.get(i).map_or(0, |m| if m.cols() == 0 { 0 } else { m.rank() });
        if ki * b - out_rank != in_rank {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::new(1, 2)
    }

    #[test]
    fn product_idempotent_gives_a_recollement() {
        let a = Arc::new(FinAlgebra::product(2, 2).unwrap());
        let r = recollement_from_idempotent(a, &[1, 0], caps()).unwrap();
        assert_eq!(r.corner_algebra.dim(), 1);
        assert_eq!(r.quotient_algebra.dim(), 1);
        let rep = r.report(3).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn trivial_idempotents() {
        let a = Arc::new(FinAlgebra::product(2, 2).unwrap());
        let one = recollement_from_idempotent(a.clone(), &[1, 1], caps()).unwrap();
        assert_eq!(one.left.len(), 1);
        assert_eq!(one.right.len(), one.middle.len());
        assert!(one.report(2).unwrap().holds());
        let zero = recollement_from_idempotent(a, &[0, 0], caps()).unwrap();
        assert_eq!(zero.right.len(), 1);
        assert_eq!(zero.left.len(), zero.middle.len());
        assert!(zero.report(2).unwrap().holds());
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let a = Arc::new(FinAlgebra::truncated_polynomial(2, 2).unwrap());
        assert!(matches!(recollement_from_idempotent(a, &[0, 1], caps()), Err(TriangulatedError::NotIdempotent)));
    }

    #[test]
    fn tor_of_semisimple_quotient_vanishes() {
        let a = Arc::new(FinAlgebra::product(2, 2).unwrap());
        assert!(tor_vanishes(&a, &[1, 0], 3).unwrap());
    }
}
