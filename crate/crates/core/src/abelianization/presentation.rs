use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{all_vectors, quotient_basis, Matrix, Quotient, Subspace};

use super::{hom_len, image, kernel, post_matrix, pre_matrix, rank, AbelError, AddMorphism, AddObject, LinearCategory};

/// The coherent functor `coker(C(-, X) → C(-, Y))` of `φ: X → Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    pub phi: AddMorphism,
}

impl Presentation {
    pub fn new(phi: AddMorphism) -> Self {
        Self { phi }
    }

    /// `C(-, Y)`, presented by `0 → Y`.
    pub fn representable(c: &dyn LinearCategory, y: &AddObject) -> Self {
        Self { phi: AddMorphism::zero(c, &AddObject::zero(), y) }
    }

    pub fn zero() -> Self {
        Self { phi: AddMorphism { src: AddObject::zero(), dst: AddObject::zero(), coords: Vec::new() } }
    }

    pub fn x(&self) -> &AddObject {
        &self.phi.src
    }

    pub fn y(&self) -> &AddObject {
        &self.phi.dst
    }

    /// `dim F(W) = dim C(W, Y) - rank C(W, φ)`.
    pub fn evaluate(&self, c: &dyn LinearCategory, w: &AddObject) -> usize {
        hom_len(c, w, self.y()) - rank(&post_matrix(c, w, &self.phi))
    }

    /// The functor vanishes iff `φ` is a split epimorphism.
    pub fn is_zero(&self, c: &dyn LinearCategory) -> bool {
        let id = AddMorphism::identity(c, self.y());
        let m = post_matrix(c, self.y(), &self.phi);
        image(&m).contains(&id.coords)
    }

    pub fn identity(&self, c: &dyn LinearCategory) -> CoherentMap {
        CoherentMap {
            source: self.clone(),
            target: self.clone(),
            a: AddMorphism::identity(c, self.x()),
            b: AddMorphism::identity(c, self.y()),
        }
    }

    pub fn describe(&self, c: &dyn LinearCategory) -> String {
        format!("coker({} -> {})", self.x().describe(c), self.y().describe(c))
    }
}

/// A natural transformation given by a commuting square
/// `ψ ∘ a = b ∘ φ` from `φ: X → Y` to `ψ: X' → Y'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentMap {
    pub source: Presentation,
    pub target: Presentation,
    pub a: AddMorphism,
    pub b: AddMorphism,
}

impl CoherentMap {
    pub fn new(
        c: &dyn LinearCategory,
        source: Presentation,
        target: Presentation,
        a: AddMorphism,
        b: AddMorphism,
    ) -> Result<Self, AbelError> {
        if a.src != *source.x() || a.dst != *target.x() || b.src != *source.y() || b.dst != *target.y() {
            return Err(AbelError::AmbientMismatch);
        }
        if a.then(c, &target.phi) != source.phi.then(c, &b) {
            return Err(AbelError::NotASquare);
        }
        Ok(Self { source, target, a, b })
    }

    /// `g ∘ self`.
    pub fn then(&self, c: &dyn LinearCategory, g: &CoherentMap) -> CoherentMap {
        CoherentMap {
            source: self.source.clone(),
            target: g.target.clone(),
            a: self.a.then(c, &g.a),
            b: self.b.then(c, &g.b),
        }
    }

    pub fn add(&self, p: u32, other: &CoherentMap) -> CoherentMap {
        CoherentMap { source: self.source.clone(), target: self.target.clone(), a: self.a.add(p, &other.a), b: self.b.add(p, &other.b) }
    }

    pub fn neg(&self, p: u32) -> CoherentMap {
        CoherentMap { source: self.source.clone(), target: self.target.clone(), a: self.a.neg(p), b: self.b.neg(p) }
    }

    /// Zero iff `b` factors through the target's presenting morphism.
    pub fn is_zero(&self, c: &dyn LinearCategory) -> bool {
        image(&post_matrix(c, self.source.y(), &self.target.phi)).contains(&self.b.coords)
    }
}

/// `Hom(F, G)` as the space of admissible `b` modulo maps factoring
/// through the target presentation.
#[derive(Clone, Debug)]
pub struct HomCoherent {
    pub source: Presentation,
    pub target: Presentation,
    quotient: Quotient,
    /// `C(X, X') → C(X, Y')`, `a ↦ ψ ∘ a`
    post_psi: Matrix,
    /// `C(Y, Y') → C(X, Y')`, `b ↦ b ∘ φ`
    pre_phi: Matrix,
}

pub fn hom_coherent(c: &dyn LinearCategory, f: &Presentation, g: &Presentation) -> HomCoherent {
    let post_psi = post_matrix(c, f.x(), &g.phi);
    let pre_phi = pre_matrix(c, &f.phi, g.y());
    let na = post_psi.cols();
    let nb = pre_phi.cols();
    let p = c.modulus();
    let rows = post_psi.rows();
    let mut sys = Matrix::zeros(p, rows, na + nb);
    for r in 0..rows {
        for k in 0..na {
            sys.set(r, k, post_psi.get(r, k));
        }
        for k in 0..nb {
            sys.set(r, na + k, (p - pre_phi.get(r, k)) % p);
        }
    }
    let admissible: Vec<Vec<u32>> = kernel(&sys).basis_vectors().into_iter().map(|v| v[na..].to_vec()).collect();
    let space = Subspace::from_vectors(p, nb, &admissible);
    let null = image(&post_matrix(c, f.y(), &g.phi));
    let quotient = quotient_basis(&space, &null).expect("null maps are admissible");
    HomCoherent { source: f.clone(), target: g.clone(), quotient, post_psi, pre_phi }
}

impl HomCoherent {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Some `a` completing `b` to a commuting square.
    fn complete(&self, c: &dyn LinearCategory, b: &AddMorphism) -> AddMorphism {
        let rhs = if self.pre_phi.rows() == 0 { Vec::new() } else { self.pre_phi.apply(&b.coords) };
        let x = self.source.x();
        let xp = self.target.x();
        let coords = if self.post_psi.cols() == 0 {
            Vec::new()
        } else if self.post_psi.rows() == 0 {
            vec![0; self.post_psi.cols()]
        } else {
            self.post_psi.solve_vec(&rhs).expect("admissible b")
        };
        debug_assert_eq!(coords.len(), hom_len(c, x, xp));
        AddMorphism { src: x.clone(), dst: xp.clone(), coords }
    }

    pub fn element(&self, c: &dyn LinearCategory, coords: &[u32]) -> CoherentMap {
        let b = AddMorphism { src: self.source.y().clone(), dst: self.target.y().clone(), coords: self.quotient.lift(coords) };
        let a = self.complete(c, &b);
        CoherentMap { source: self.source.clone(), target: self.target.clone(), a, b }
    }

    pub fn basis(&self, c: &dyn LinearCategory) -> Vec<CoherentMap> {
        (0..self.dim())
            .map(|k| {
                let mut e = vec![0; self.dim()];
                e[k] = 1;
                self.element(c, &e)
            })
            .collect()
    }

    pub fn coords(&self, m: &CoherentMap) -> Vec<u32> {
        self.quotient.coords(&m.b.coords).expect("map lies in the hom-space")
    }

    /// Every element, when there are at most `limit` of them.
    pub fn enumerate(&self, c: &dyn LinearCategory, limit: usize) -> Option<Vec<CoherentMap>> {
        let p = c.modulus() as usize;
        let mut total = 1usize;
        for _ in 0..self.dim() {
            total = total.checked_mul(p)?;
            if total > limit {
                return None;
            }
        }
        Some(all_vectors(c.modulus(), self.dim()).map(|v| self.element(c, &v)).collect())
    }
}

/// Cokernel of `θ: F → G` presented by `[b, ψ]: Y ⊕ X' → Y'`, with the
/// projection `G → coker θ`.
pub fn cokernel_pres(c: &dyn LinearCategory, theta: &CoherentMap) -> (Presentation, CoherentMap) {
    let g = &theta.target;
    let phi = AddMorphism::hjoin(c, &theta.b, &g.phi);
    let pres = Presentation::new(phi);
    let a = AddMorphism::vjoin(c, &AddMorphism::zero(c, g.x(), theta.source.y()), &AddMorphism::identity(c, g.x()));
    let pi = CoherentMap { source: g.clone(), target: pres.clone(), a, b: AddMorphism::identity(c, g.y()) };
    (pres, pi)
}

/// Kernel of `θ: F → G` by two weak kernels, with the inclusion
/// `ker θ → F`.
pub fn kernel_pres(c: &dyn LinearCategory, theta: &CoherentMap) -> Result<(Presentation, CoherentMap), AbelError> {
    let p = c.modulus();
    let (f, g) = (&theta.source, &theta.target);
    let first = weak_kernel_of(c, &AddMorphism::hjoin(c, &g.phi, &theta.b))?;
    let nx2 = g.x().len();
    let to_y1 = first.sub_block(c, nx2..first.dst.len(), 0..first.src.len());
    let second = weak_kernel_of(c, &AddMorphism::hjoin(c, &f.phi, &to_y1))?;
    let nx1 = f.x().len();
    let u = second.sub_block(c, 0..nx1, 0..second.src.len());
    let v = second.sub_block(c, nx1..second.dst.len(), 0..second.src.len());
    let pres = Presentation::new(v);
    let iota = CoherentMap { source: pres.clone(), target: f.clone(), a: u.neg(p), b: to_y1 };
    debug_assert!(iota.a.then(c, &f.phi) == iota.source.phi.then(c, &iota.b));
    Ok((pres, iota))
}

/// A weak kernel of `m`: the ambient's structural one when available,
/// otherwise the relative approximation.
pub(crate) fn weak_kernel_of(c: &dyn LinearCategory, m: &AddMorphism) -> Result<AddMorphism, AbelError> {
    match c.structural_weak_kernel(m) {
        Some(Ok(k)) => Ok(k),
        Some(Err(AbelError::NoWeakKernels(_))) | None => Ok(approximate_weak_kernel(c, m)),
        Some(Err(e)) => Err(e),
    }
}

/// `⊕_W W^{k_W} → Y` with `k_W = dim ker(C(W, Y) → C(W, Z))` over the
/// indecomposables `W`, mapping onto a basis of each kernel.
pub(crate) fn approximate_weak_kernel(c: &dyn LinearCategory, m: &AddMorphism) -> AddMorphism {
    let mut parts: Vec<(usize, Vec<u32>)> = Vec::new();
    for w in c.indecomposables() {
        let ws = AddObject::single(w);
        let k = kernel(&post_matrix(c, &ws, m));
        for v in k.basis_vectors() {
            parts.push((w, v));
        }
    }
    let src = AddObject(parts.iter().map(|(w, _)| *w).collect());
    let mut out = AddMorphism::zero(c, &src, &m.src);
    for (j, (w, v)) in parts.iter().enumerate() {
        let col = AddMorphism { src: AddObject::single(*w), dst: m.src.clone(), coords: v.clone() };
        for i in 0..m.src.len() {
            let block = col.block(c, i, 0).to_vec();
            set_block(c, &mut out, i, j, &block);
        }
    }
    out
}

fn set_block(c: &dyn LinearCategory, m: &mut AddMorphism, i: usize, j: usize, v: &[u32]) {
    let mut off = 0;
    'outer: for (ii, &d) in m.dst.0.iter().enumerate() {
        for (jj, &s) in m.src.0.iter().enumerate() {
            if (ii, jj) == (i, j) {
                break 'outer;
            }
            off += c.hom_dim(s, d);
        }
    }
    m.coords[off..off + v.len()].copy_from_slice(v);
}

/// `k: K → Y` is a weak kernel of `m: Y → Z`: `m ∘ k = 0` and
/// `C(W, K) → C(W, Y) → C(W, Z)` is exact for every indecomposable `W`.
pub fn is_weak_kernel(c: &dyn LinearCategory, k: &AddMorphism, m: &AddMorphism) -> bool {
    if !k.then(c, m).is_zero() {
        return false;
    }
    c.indecomposables().into_iter().all(|w| {
        let ws = AddObject::single(w);
        rank(&post_matrix(c, &ws, k)) + rank(&post_matrix(c, &ws, m)) == hom_len(c, &ws, &m.src)
    })
}

/// Matrix of `γ ↦ θ ∘ γ` from `Hom(E, F)` to `Hom(E, G)`.
pub fn post_compose(c: &dyn LinearCategory, e: &Presentation, theta: &CoherentMap) -> Matrix {
    let from = hom_coherent(c, e, &theta.source);
    let to = hom_coherent(c, e, &theta.target);
    let cols: Vec<Vec<u32>> = from.basis(c).iter().map(|g| to.coords(&g.then(c, theta))).collect();
    columns(c.modulus(), to.dim(), &cols)
}

/// Matrix of `γ ↦ γ ∘ θ` from `Hom(G, E)` to `Hom(F, E)`.
pub fn pre_compose(c: &dyn LinearCategory, theta: &CoherentMap, e: &Presentation) -> Matrix {
    let from = hom_coherent(c, &theta.target, e);
    let to = hom_coherent(c, &theta.source, e);
    let cols: Vec<Vec<u32>> = from.basis(c).iter().map(|g| to.coords(&theta.then(c, g))).collect();
    columns(c.modulus(), to.dim(), &cols)
}

fn columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> Matrix {
    let mut m = Matrix::zeros(p, rows, cols.len());
    for (k, col) in cols.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            m.set(r, k, v);
        }
    }
    m
}

/// `0 → Hom(E, K) → Hom(E, F) → Hom(E, G)` is exact for every test
/// object `E`, and `θ ∘ ι = 0`.
pub fn check_kernel(c: &dyn LinearCategory, theta: &CoherentMap, iota: &CoherentMap, tests: &[Presentation]) -> bool {
    if !iota.then(c, theta).is_zero(c) {
        return false;
    }
    tests.iter().all(|e| {
        let mi = post_compose(c, e, iota);
        let mt = post_compose(c, e, theta);
        rank(&mi) == mi.cols() && rank(&mi) + rank(&mt) == mt.cols()
    })
}

/// `0 → Hom(C, E) → Hom(G, E) → Hom(F, E)` is exact for every test
/// object `E`, and `π ∘ θ = 0`.
pub fn check_cokernel(c: &dyn LinearCategory, theta: &CoherentMap, pi: &CoherentMap, tests: &[Presentation]) -> bool {
    if !theta.then(c, pi).is_zero(c) {
        return false;
    }
    tests.iter().all(|e| {
        let mp = pre_compose(c, pi, e);
        let mt = pre_compose(c, theta, e);
        rank(&mp) == mp.cols() && rank(&mp) + rank(&mt) == mt.cols()
    })
}

/// Mutually inverse maps `F ⇄ G`, searching `Hom(F, G)` exhaustively up to
/// `limit` elements and solving linearly for the inverse.
pub fn find_isomorphism(
    c: &dyn LinearCategory,
    f: &Presentation,
    g: &Presentation,
    limit: usize,
) -> Option<(CoherentMap, CoherentMap)> {
    let fg = hom_coherent(c, f, g);
    let gf = hom_coherent(c, g, f);
    let ff = hom_coherent(c, f, f);
    let gg = hom_coherent(c, g, g);
    if fg.dim() == 0 && gf.dim() == 0 {
        return (ff.dim() == 0 && gg.dim() == 0).then(|| (zero_map(c, f, g), zero_map(c, g, f)));
    }
    let p = c.modulus();
    let id_f = ff.coords(&f.identity(c));
    let id_g = gg.coords(&g.identity(c));
    let rhs: Vec<u32> = id_g.iter().chain(&id_f).copied().collect();
    let inverses = gf.basis(c);
    for theta in fg.enumerate(c, limit)? {
        let cols: Vec<Vec<u32>> = inverses
            .iter()
            .map(|psi| gg.coords(&psi.then(c, &theta)).into_iter().chain(ff.coords(&theta.then(c, psi))).collect())
            .collect();
        if rhs.is_empty() {
            return Some((theta, zero_map(c, g, f)));
        }
        let sys = columns(p, rhs.len(), &cols);
        if cols.is_empty() {
            continue;
        }
        if let Some(x) = sys.solve_vec(&rhs) {
            let psi = gf.element(c, &x);
            return Some((theta, psi));
        }
    }
    None
}

fn zero_map(c: &dyn LinearCategory, f: &Presentation, g: &Presentation) -> CoherentMap {
    CoherentMap {
        source: f.clone(),
        target: g.clone(),
        a: AddMorphism::zero(c, f.x(), g.x()),
        b: AddMorphism::zero(c, f.y(), g.y()),
    }
}

/// Seeded nonzero coherent maps between presentations `φ: X → Y` whose
/// objects are sums of at most `width` generators.
pub fn sample_coherent_maps(c: &dyn LinearCategory, count: usize, width: usize, seed: u64) -> Vec<CoherentMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = c.modulus();
    let gens = c.indecomposables();
    let mut out = Vec::new();
    let mut attempts = 0;
    let object = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(0..=width);
        AddObject((0..n).map(|_| gens[rng.gen_range(0..gens.len())]).collect())
    };
    while out.len() < count && attempts < 200 * count.max(1) {
        attempts += 1;
        let mut pres = || {
            let (x, y) = (object(&mut rng), object(&mut rng));
            let n = hom_len(c, &x, &y);
            let coords = (0..n).map(|_| rng.gen_range(0..p)).collect();
            Presentation::new(AddMorphism { src: x, dst: y, coords })
        };
        let (f, g) = (pres(), pres());
        let h = hom_coherent(c, &f, &g);
        if h.dim() == 0 {
            continue;
        }
        let v: Vec<u32> = (0..h.dim()).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        out.push(h.element(c, &v));
    }
    out
}

/// The representables `C(-, W)` on indecomposables together with the
/// given presentations.
pub fn test_objects(c: &dyn LinearCategory, extra: &[Presentation]) -> Vec<Presentation> {
    let mut out: Vec<Presentation> =
        c.indecomposables().into_iter().map(|w| Presentation::representable(c, &AddObject::single(w))).collect();
    out.extend(extra.iter().cloned());
    out
}
