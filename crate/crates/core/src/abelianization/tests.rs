use std::sync::Arc;

use proptest::prelude::*;

use super::presentation::approximate_weak_kernel;
use super::*;
use crate::complexes::{ChainComplex, FinAlgebra, FinModule};
use crate::linalg::{all_vectors, Matrix};
use crate::triangulated::{Caps, CohomologicalFunctor, TriangulatedModel};

fn model(alg: FinAlgebra) -> TriangulatedModel {
    TriangulatedModel::build(Arc::new(alg), Caps::new(1, 2)).unwrap()
}

/// `dim θ_W(F(W))` computed directly from the square.
fn image_dim(c: &dyn LinearCategory, theta: &CoherentMap, w: &AddObject) -> usize {
    let psi = image(&post_matrix(c, w, &theta.target.phi));
    let pushed = image(&post_matrix(c, w, &theta.b));
    pushed.sum(&psi).dim() - psi.dim()
}

fn check_pointwise(c: &dyn LinearCategory, theta: &CoherentMap) {
    let (k, _) = kernel_pres(c, theta).unwrap();
    let (q, _) = cokernel_pres(c, theta);
    for w in c.indecomposables() {
        let w = AddObject::single(w);
        let r = image_dim(c, theta, &w);
        assert_eq!(k.evaluate(c, &w), theta.source.evaluate(c, &w) - r);
        assert_eq!(q.evaluate(c, &w), theta.target.evaluate(c, &w) - r);
    }
}

fn check_universal(c: &dyn LinearCategory, maps: &[CoherentMap]) {
    for theta in maps {
        let (_, iota) = kernel_pres(c, theta).unwrap();
        let (_, pi) = cokernel_pres(c, theta);
        let tests = test_objects(c, &[theta.source.clone(), theta.target.clone()]);
        assert!(check_kernel(c, theta, &iota, &tests), "kernel of {}", theta.source.describe(c));
        assert!(check_cokernel(c, theta, &pi, &tests), "cokernel of {}", theta.target.describe(c));
        check_pointwise(c, theta);
    }
}

#[test]
fn representable_endomorphisms_of_the_line() {
    let v = VectAmbient::new(2);
    let zero = v.morphism(&Matrix::zeros(2, 1, 1));
    let f = Presentation::new(zero);
    let h = Presentation::representable(&v, &v.space(1));
    assert_eq!(hom_coherent(&v, &f, &h).dim(), 1);
    assert!(find_isomorphism(&v, &f, &h, 1 << 10).is_some());
}

#[test]
fn vect_presentations_collapse_to_representables() {
    let v = VectAmbient::new(2);
    let mut pres = Vec::new();
    for m in 0..=2 {
        for n in 0..=2 {
            for data in all_vectors(2, m * n) {
                pres.push(Presentation::new(v.morphism(&Matrix::new(2, n, m, data).unwrap())));
            }
        }
    }
    let dims: Vec<usize> = pres.iter().map(|f| f.evaluate(&v, &v.space(1))).collect();
    for (f, &k) in pres.iter().zip(&dims) {
        let h = Presentation::representable(&v, &v.space(k));
        assert!(find_isomorphism(&v, f, &h, 1 << 12).is_some(), "{}", f.describe(&v));
    }
    for (f, &kf) in pres.iter().zip(&dims).step_by(7) {
        for (g, &kg) in pres.iter().zip(&dims).step_by(5) {
            assert_eq!(hom_coherent(&v, f, g).dim(), kf * kg);
        }
    }
}

#[test]
fn approximation_is_the_kernel_over_a_field() {
    let v = VectAmbient::new(3);
    let m = v.morphism(&Matrix::from_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]).unwrap());
    let k = approximate_weak_kernel(&v, &m);
    assert_eq!(k.src.len(), 2);
    assert!(is_weak_kernel(&v, &k, &m));
}

#[test]
fn vect_kernels_and_cokernels_are_universal() {
    let v = VectAmbient::new(2);
    let maps = sample_coherent_maps(&v, 24, 3, 7);
    assert!(maps.len() >= 20);
    check_universal(&v, &maps);
}

#[test]
fn model_kernels_and_cokernels_are_universal() {
    for alg in [FinAlgebra::field(2).unwrap(), FinAlgebra::truncated_polynomial(2, 2).unwrap()] {
        let t = model(alg);
        let amb = ModelAmbient::new(&t);
        let maps = sample_coherent_maps(&amb, 20, 2, 11);
        assert_eq!(maps.len(), 20);
        check_universal(&amb, &maps);
        assert!(amb.stats().triangle > 0);
    }
}

#[test]
fn triangle_weak_kernels() {
    let t = model(FinAlgebra::truncated_polynomial(2, 2).unwrap());
    let amb = ModelAmbient::new(&t);
    let mut found = 0;
    for m in t.all_morphisms() {
        if let Ok((_, k)) = weak_kernel(&t, &m) {
            found += 1;
            assert!(is_weak_kernel(&amb, &amb.morphism(&k), &amb.morphism(&m)), "{}", t.describe(&m));
        }
    }
    assert!(found > 0);
    let x = t.find("P1@0").unwrap();
    let (w, _) = weak_kernel(&t, &t.identity(x)).unwrap();
    assert!(t.is_zero_object(w));
}

#[test]
fn image_factorization_agrees() {
    let v = VectAmbient::new(3);
    for theta in sample_coherent_maps(&v, 8, 2, 5) {
        let (_, iota) = kernel_pres(&v, &theta).unwrap();
        let (coim, _) = cokernel_pres(&v, &iota);
        let (_, pi) = cokernel_pres(&v, &theta);
        let (im, _) = kernel_pres(&v, &pi).unwrap();
        assert!(find_isomorphism(&v, &coim, &im, 1 << 12).is_some());
    }
}

#[test]
fn yoneda_embedding_is_cohomological() {
    for alg in [FinAlgebra::field(2).unwrap(), FinAlgebra::truncated_polynomial(2, 2).unwrap()] {
        let t = model(alg);
        let r = universal_cohomological(&t, 25, 3).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.triangles_checked > 0);
    }
}

#[test]
fn extension_of_representables_is_exact() {
    let t = model(FinAlgebra::truncated_polynomial(2, 2).unwrap());
    let amb = ModelAmbient::new(&t);
    let maps = sample_coherent_maps(&amb, 12, 2, 19);
    let regular = CohomologicalFunctor::Representable(ChainComplex::stalk(FinModule::regular(t.algebra().clone()), 0));
    let all = CohomologicalFunctor::Sum(
        t.indecomposables().iter().map(|&d| CohomologicalFunctor::Representable(t.object(d).clone())).collect(),
    );
    for h in [regular, all] {
        let r = extend_cohomological(&t, &h, &maps).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn vect_kernel_dimensions(seed in any::<u64>()) {
        let v = VectAmbient::new(3);
        for theta in sample_coherent_maps(&v, 3, 3, seed) {
            check_pointwise(&v, &theta);
            let (k, iota) = kernel_pres(&v, &theta).unwrap();
            prop_assert!(iota.then(&v, &theta).is_zero(&v));
            let (q, pi) = cokernel_pres(&v, &theta);
            prop_assert!(theta.then(&v, &pi).is_zero(&v));
            let line = v.space(1);
            prop_assert_eq!(
                k.evaluate(&v, &line) + theta.target.evaluate(&v, &line),
                q.evaluate(&v, &line) + theta.source.evaluate(&v, &line)
            );
        }
    }
}
