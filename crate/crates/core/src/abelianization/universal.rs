use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{quotient_basis, Matrix, Subspace};
use crate::triangulated::{CohomologicalFunctor, ModelMorphism, TriangulatedModel};

use super::presentation::{cokernel_pres, hom_coherent, kernel_pres, CoherentMap, Presentation};
use super::{image, rank, post_matrix, AbelError, AddMorphism, AddObject, LinearCategory, ModelAmbient};

/// Verdict on `h: T → A(T)`, `X ↦ C(-, X)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniversalReport {
    /// `dim Hom(hX, hY) = dim T(X, Y)` on every pair of objects.
    pub fully_faithful: bool,
    /// `hX → hY → hZ` is exact in `A(T)` on every checked cone triangle.
    pub exact: bool,
    /// `T(W, X) → T(W, Y) → T(W, Z)` is exact for every indecomposable `W`.
    pub pointwise_exact: bool,
    pub triangles_checked: usize,
    pub triangles_skipped: usize,
}

impl UniversalReport {
    pub fn holds(&self) -> bool {
        self.fully_faithful && self.exact && self.pointwise_exact
    }
}

fn h_map(amb: &ModelAmbient, m: &ModelMorphism) -> CoherentMap {
    let f = amb.morphism(m);
    let source = Presentation::representable(amb, &f.src);
    let target = Presentation::representable(amb, &f.dst);
    let a = AddMorphism::zero(amb, &AddObject::zero(), &AddObject::zero());
    CoherentMap { source, target, a, b: f }
}

/// `F --f--> G --g--> H` with `g ∘ f = 0` is exact at `G`: the induced map
/// `F → ker g` is an epimorphism.
pub fn exact_at_middle(c: &dyn LinearCategory, f: &CoherentMap, g: &CoherentMap) -> Result<bool, AbelError> {
    if !f.then(c, g).is_zero(c) {
        return Ok(false);
    }
    let (k, iota) = kernel_pres(c, g)?;
    let fk = hom_coherent(c, &f.source, &k);
    let fg = hom_coherent(c, &f.source, &f.target);
    let p = c.modulus();
    let basis = fk.basis(c);
    let target = fg.coords(f);
    let lambda = if target.iter().all(|&v| v == 0) {
        fk.element(c, &vec![0; fk.dim()])
    } else {
        if basis.is_empty() {
            return Ok(false);
        }
        let mut sys = Matrix::zeros(p, fg.dim(), basis.len());
        for (col, l) in basis.iter().enumerate() {
            for (r, v) in fg.coords(&l.then(c, &iota)).into_iter().enumerate() {
                sys.set(r, col, v);
            }
        }
        match sys.solve_vec(&target) {
            Some(x) => fk.element(c, &x),
            None => return Ok(false),
        }
    };
    Ok(cokernel_pres(c, &lambda).0.is_zero(c))
}

/// Checks that `h` is fully faithful on objects of the model and that it
/// sends cone triangles to exact sequences. At most `budget` triangles are
/// checked in `A(T)`, drawn in seeded order; pointwise exactness is
/// checked on all of them.
pub fn universal_cohomological(model: &TriangulatedModel, budget: usize, seed: u64) -> Result<UniversalReport, AbelError> {
    let amb = ModelAmbient::new(model);
    let mut report = UniversalReport { fully_faithful: true, exact: true, pointwise_exact: true, ..Default::default() };
    for x in model.object_ids() {
        for y in model.object_ids() {
            let hx = Presentation::representable(&amb, &AddObject::single(x));
            let hy = Presentation::representable(&amb, &AddObject::single(y));
            if hom_coherent(&amb, &hx, &hy).dim() != model.hom_dim(x, y) {
                report.fully_faithful = false;
            }
        }
    }
    let mut morphisms = model.all_morphisms();
    morphisms.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut in_category = 0;
    for m in &morphisms {
        let (x, y) = (model.object(m.src), model.object(m.dst));
        let cone = model.cone(&model.representative(m), x, y);
        let Ok(lz) = model.locate(&cone.cone) else {
            report.triangles_skipped += 1;
            continue;
        };
        let inc = model.transport(&cone.inclusion, (y, &model.located(m.dst)), (&cone.cone, &lz));
        let (f, g) = (amb.morphism(m), amb.morphism(&inc));
        let pointwise = model.indecomposables().iter().all(|&w| {
            let ws = AddObject::single(w);
            let (pf, pg) = (post_matrix(&amb, &ws, &f), post_matrix(&amb, &ws, &g));
            let composite_zero = pf.cols() == 0 || pg.rows() == 0 || pg.dot(&pf).is_zero();
            composite_zero && rank(&pf) + rank(&pg) == model.hom_dim(w, m.dst)
        });
        report.pointwise_exact &= pointwise;
        report.triangles_checked += 1;
        if in_category < budget {
            in_category += 1;
            report.exact &= exact_at_middle(&amb, &h_map(&amb, m), &h_map(&amb, &inc))?;
        }
    }
    Ok(report)
}

/// Verdict on the exact extension `H̄` of a cohomological functor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtensionReport {
    /// `H̄(hX) = H(X)` on every model object.
    pub extends: bool,
    /// `H̄` sends `ker θ → F → G → coker θ` to an exact sequence.
    pub exact: bool,
    pub maps_checked: usize,
    /// Weak kernels taken relative to the model because a cone left it.
    /// Exactness is only guaranteed for `H` represented inside the model
    /// when this is nonzero.
    pub approximate_kernels: usize,
}

impl ExtensionReport {
    pub fn holds(&self) -> bool {
        self.extends && self.exact
    }
}

/// `H` on a formal sum, as a block matrix of `H` on its blocks.
fn h_on(model: &TriangulatedModel, h: &CohomologicalFunctor, amb: &ModelAmbient, m: &AddMorphism) -> Matrix {
    let p = model.modulus();
    let heights: Vec<usize> = m.dst.0.iter().map(|&g| h.dim(model.object(g))).collect();
    let widths: Vec<usize> = m.src.0.iter().map(|&g| h.dim(model.object(g))).collect();
    let comps: Vec<Vec<Matrix>> = (0..m.dst.len())
        .map(|i| {
            (0..m.src.len())
                .map(|j| {
                    let f = ModelMorphism { src: m.src.0[j], dst: m.dst.0[i], coords: m.block(amb, i, j).to_vec() };
                    h.apply(&model.representative(&f), model.object(f.src), model.object(f.dst))
                })
                .collect()
        })
        .collect();
    let blocks: Vec<Vec<Option<&Matrix>>> = comps.iter().map(|row| row.iter().map(Some).collect()).collect();
    Matrix::from_blocks(p, &heights, &widths, &blocks)
}

/// `H̄(F) = coker H(φ)` as a quotient of `H(Y)`.
struct Extended {
    quotient: crate::linalg::Quotient,
    ambient: usize,
}

fn extend(model: &TriangulatedModel, h: &CohomologicalFunctor, amb: &ModelAmbient, f: &Presentation) -> Extended {
    let m = h_on(model, h, amb, &f.phi);
    let n = m.rows();
    let full = Subspace::full(model.modulus(), n);
    let quotient = quotient_basis(&full, &image(&m)).expect("image lies in the target");
    Extended { quotient, ambient: n }
}

/// `H̄(θ)` as a matrix between the chosen bases of the cokernels.
fn extend_map(
    model: &TriangulatedModel,
    h: &CohomologicalFunctor,
    amb: &ModelAmbient,
    theta: &CoherentMap,
    from: &Extended,
    to: &Extended,
) -> Matrix {
    let hb = h_on(model, h, amb, &theta.b);
    let mut out = Matrix::zeros(model.modulus(), to.quotient.dim(), from.quotient.dim());
    for (k, rep) in from.quotient.representatives().iter().enumerate() {
        let img = if to.ambient == 0 { Vec::new() } else { hb.apply(rep) };
        for (r, v) in to.quotient.coords_unchecked(&img).into_iter().enumerate() {
            out.set(r, k, v);
        }
    }
    out
}

/// Checks that `H̄(φ) = coker H(φ)` extends `H` along `h` and is exact on
/// the kernel and cokernel sequences of the given maps. `H` is validated
/// as cohomological first.
pub fn extend_cohomological(
    model: &TriangulatedModel,
    h: &CohomologicalFunctor,
    maps: &[CoherentMap],
) -> Result<ExtensionReport, AbelError> {
    h.validate(model)?;
    let amb = ModelAmbient::new(model);
    let extends = model.object_ids().all(|x| {
        let hx = Presentation::representable(&amb, &AddObject::single(x));
        extend(model, h, &amb, &hx).quotient.dim() == h.dim(model.object(x))
    });
    let mut exact = true;
    for theta in maps {
        let (k, iota) = kernel_pres(&amb, theta)?;
        let (c, pi) = cokernel_pres(&amb, theta);
        let ek = extend(model, h, &amb, &k);
        let ef = extend(model, h, &amb, &theta.source);
        let eg = extend(model, h, &amb, &theta.target);
        let ec = extend(model, h, &amb, &c);
        let mi = extend_map(model, h, &amb, &iota, &ek, &ef);
        let mt = extend_map(model, h, &amb, theta, &ef, &eg);
        let mp = extend_map(model, h, &amb, &pi, &eg, &ec);
        let (dk, df, dg, dc) = (ek.quotient.dim(), ef.quotient.dim(), eg.quotient.dim(), ec.quotient.dim());
        let (ri, rt, rp) = (rank(&mi), rank(&mt), rank(&mp));
        let composites = (df == 0 || dk == 0 || dg == 0 || mt.dot(&mi).is_zero()) && (dg == 0 || df == 0 || dc == 0 || mp.dot(&mt).is_zero());
        exact &= composites && ri == dk && ri + rt == df && rt + rp == dg && rp == dc;
    }
    Ok(ExtensionReport { extends, exact, maps_checked: maps.len(), approximate_kernels: amb.stats().approximate })
}
