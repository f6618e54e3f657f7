//! Generators for small test categories.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{find_left_adjoint, CategoryBuilder, FinCategory, FinFunctor, NatTransformation};

/// A random concrete category: objects are sets of size 1 or 2, morphisms a
/// randomly chosen family of functions closed under composition.
///
/// Returns `None` when the closure exceeds `max_morphisms`.
pub fn random_function_category(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> Option<FinCategory> {
    let n = rng.gen_range(1..=max_objects.max(1));
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let mut arrows: BTreeSet<(usize, usize, Vec<usize>)> = BTreeSet::new();
    for (x, &sx) in sizes.iter().enumerate() {
        arrows.insert((x, x, (0..sx).collect()));
    }
    for x in 0..n {
        for y in 0..n {
            for f in all_functions(sizes[x], sizes[y]) {
                if rng.gen_bool(0.3) {
                    arrows.insert((x, y, f));
                }
            }
        }
    }
    loop {
        let list: Vec<_> = arrows.iter().cloned().collect();
        let mut added = false;
        for (x, y, f) in &list {
            for (y2, z, g) in &list {
                if y == y2 {
                    let h: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                    added |= arrows.insert((*x, *z, h));
                }
            }
        }
        if arrows.len() > max_morphisms {
            return None;
        }
        if !added {
            break;
        }
    }
    let mut b = CategoryBuilder::new();
    for x in 0..n {
        b.add_object(format!("O{x}"));
    }
    let list: Vec<_> = arrows.into_iter().collect();
    let mut ids = HashMap::new();
    for (i, (x, y, f)) in list.iter().enumerate() {
        let name = format!("m{i}");
        let m = b.add_morphism(name, *x, *y);
        if x == y && f.iter().enumerate().all(|(i, &v)| i == v) {
            b.set_identity(*x, m);
        }
        ids.insert((*x, *y, f.clone()), m);
    }
    for (x, y, f) in &list {
        for (y2, z, g) in &list {
            if y == y2 {
                let h: Vec<usize> = f.iter().map(|&i| g[i]).collect();
                b.set_compose(ids[&(*y2, *z, g.clone())], ids[&(*x, *y, f.clone())], ids[&(*x, *z, h)]);
            }
        }
    }
    Some(b.build_unchecked())
}

fn all_functions(a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..a {
        out = out.into_iter().flat_map(|f| (0..b).map(move |v| [f.clone(), vec![v]].concat())).collect();
    }
    out
}

/// A random category with a localization functor obtained from a reflective
/// full subcategory: `L = G ∘ F` with unit `η`.
pub fn random_localization(seed: u64) -> (FinCategory, FinFunctor, NatTransformation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let Some(c) = random_function_category(&mut rng, 3, 12) else { continue };
        let subset: Vec<usize> = c.objects().filter(|_| rng.gen_bool(0.5)).collect();
        if subset.is_empty() {
            continue;
        }
        let (d, inc) = c.full_subcategory(&subset);
        if let Some((f, eta)) = find_left_adjoint(&d, &c, &inc).found() {
            let l = f.then(&inc);
            return (c, l, eta);
        }
    }
}

/// All posets on `n` elements up to isomorphism, as categories.
pub fn posets_up_to_iso(n: usize) -> Vec<FinCategory> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            rel[a][b] = mask >> i & 1 == 1;
        }
        for (a, row) in rel.iter_mut().enumerate() {
            row[a] = true;
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(rel[a][b] && rel[b][a])));
        let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c])));
        if !antisym || !trans {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = 0u64;
                for a in 0..n {
                    for b in 0..n {
                        if rel[a][b] {
                            bits |= 1 << (p[a] * n + p[b]);
                        }
                    }
                }
                bits
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canon) {
            let names: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            out.push(FinCategory::preorder(&refs, |a, b| rel[a][b]));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{is_localization_functor, validate_category};

    #[test]
    fn poset_counts_match_known_sequence() {
        let counts: Vec<usize> = (0..=4).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn random_categories_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut built = 0;
        for _ in 0..50 {
            if let Some(c) = random_function_category(&mut rng, 3, 12) {
                assert!(validate_category(&c).is_valid());
                built += 1;
            }
        }
        assert!(built > 10);
    }

    #[test]
    fn random_reflections_are_localizations() {
        for seed in 0..10 {
            let (c, l, eta) = random_localization(seed);
            assert!(l.validate(&c, &c).is_ok());
            assert!(is_localization_functor(&c, &l, &eta).holds());
        }
    }
}
