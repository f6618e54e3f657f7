use serde::Serialize;

use crate::dsu::Dsu;

use super::module::{AbGroup, RingModule};
use super::ring::{FinCommRing, MultSet};

/// Classes of pairs `(x, s)` with `(x, s) ~ (x', s')` iff
/// `t·(s'x - s x') = 0` for some `t ∈ S`.
#[derive(Clone, Debug, Serialize)]
pub struct FractionClasses {
    /// Members of each class as `(x, s)`.
    pub members: Vec<Vec<(usize, usize)>>,
    /// Class of pair index `x * |S| + position of s`.
    #[serde(skip)]
    pub class_of: Vec<usize>,
    #[serde(skip)]
    pub denominators: Vec<usize>,
}

impl FractionClasses {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn class(&self, x: usize, s: usize) -> usize {
        let k = self.denominators.iter().position(|&d| d == s).expect("denominator in S");
        self.class_of[x * self.denominators.len() + k]
    }

    /// The least pair `(x, s)` of a class, ordered by `s` then `x`.
    pub fn representative(&self, class: usize) -> (usize, usize) {
        *self.members[class].iter().min_by_key(|&&(x, s)| (s, x)).expect("nonempty class")
    }
}

/// Fraction classes over a set of numerators with an `A`-action.
fn classes(s: &MultSet, group: &AbGroup, act: &[Vec<usize>]) -> FractionClasses {
    let denominators: Vec<usize> = s.iter().collect();
    let k = denominators.len();
    let n = group.order();
    let mut dsu = Dsu::new(n * k);
    let killed = |v: usize| s.iter().any(|t| act[t][v] == group.zero);
    for x in 0..n {
        for (i, &si) in denominators.iter().enumerate() {
            for y in 0..n {
                for (j, &sj) in denominators.iter().enumerate() {
                    let diff = group.add[act[sj][x]][group.neg(act[si][y])];
                    if killed(diff) {
                        dsu.union(x * k + i, y * k + j);
                    }
                }
            }
        }
    }
    let (labels, count) = dsu.labels();
    let mut members = vec![Vec::new(); count];
    for (idx, &l) in labels.iter().enumerate() {
        members[l].push((idx / k, denominators[idx % k]));
    }
    FractionClasses { members, class_of: labels, denominators }
}

/// `S⁻¹A` with its canonical map `a ↦ a/1`.
#[derive(Clone, Debug)]
pub struct FractionRing {
    pub ring: FinCommRing,
    pub classes: FractionClasses,
    /// `a ↦ a/1`
    pub canonical: Vec<usize>,
}

impl FractionRing {
    pub fn show(&self, c: usize) -> String {
        let (x, s) = self.classes.representative(c);
        format!("{x}/{s}")
    }
}

pub fn localize_ring(a: &FinCommRing, s: &MultSet) -> FractionRing {
    let cls = classes(s, &AbGroup::from_table(a.add.clone()), &a.mul);
    let m = cls.len();
    let mut add = vec![vec![0; m]; m];
    let mut mul = vec![vec![0; m]; m];
    for c in 0..m {
        let (x, s1) = cls.representative(c);
        for d in 0..m {
            let (y, s2) = cls.representative(d);
            let den = a.mul[s1][s2];
            add[c][d] = cls.class(a.add[a.mul[x][s2]][a.mul[y][s1]], den);
            mul[c][d] = cls.class(a.mul[x][y], den);
        }
    }
    let canonical = (0..a.order()).map(|x| cls.class(x, a.one)).collect();
    let ring = FinCommRing::new(format!("{}[S^-1]", a.name), add, mul).expect("fractions form a ring");
    FractionRing { ring, classes: cls, canonical }
}

/// `S⁻¹M` as an `S⁻¹A`-module, with its restriction to `A` and the unit
/// `η_M: x ↦ x/1`.
#[derive(Clone, Debug)]
pub struct FractionModule {
    pub classes: FractionClasses,
    /// Over `S⁻¹A`.
    pub module: RingModule,
    /// Over `A`, by restriction along the canonical map.
    pub restricted: RingModule,
    pub eta: Vec<usize>,
}

pub fn localize_module(a: &FinCommRing, s: &MultSet, loc: &FractionRing, m: &RingModule) -> FractionModule {
    let cls = classes(s, &m.group, &m.act);
    let n = cls.len();
    let g = &m.group;
    let mut add = vec![vec![0; n]; n];
    for c in 0..n {
        let (x, s1) = cls.representative(c);
        for d in 0..n {
            let (y, s2) = cls.representative(d);
            add[c][d] = cls.class(g.add[m.act[s2][x]][m.act[s1][y]], a.mul[s1][s2]);
        }
    }
    let mut act = vec![vec![0; n]; loc.ring.order()];
    for (q, row) in act.iter_mut().enumerate() {
        let (r, t) = loc.classes.representative(q);
        for (c, slot) in row.iter_mut().enumerate() {
            let (x, s1) = cls.representative(c);
            *slot = cls.class(m.act[r][x], a.mul[t][s1]);
        }
    }
    let group = AbGroup::from_table(add);
    let module = RingModule { group, act };
    let restricted = module.restrict(&loc.canonical);
    let eta = (0..m.order()).map(|x| cls.class(x, a.one)).collect();
    FractionModule { classes: cls, module, restricted, eta }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    /// Counts classes of `A × S` by the raw definition, independently of
    /// the union-find.
    fn pair_oracle(a: &FinCommRing, s: &[usize]) -> usize {
        let pairs: Vec<(usize, usize)> = (0..a.order()).flat_map(|x| s.iter().map(move |&t| (x, t))).collect();
        let equiv = |(x, s1): (usize, usize), (y, s2): (usize, usize)| {
            let d = a.sub(a.mul[x][s2], a.mul[y][s1]);
            s.iter().any(|&t| a.mul[t][d] == a.zero)
        };
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &p in &pairs {
            if !reps.iter().any(|&r| equiv(r, p)) {
                reps.push(p);
            }
        }
        reps.len()
    }

    #[test]
    fn z6_away_from_three() {
        let a = FinCommRing::zmod(6);
        let s = MultSet::new(&a, [1, 3]).unwrap();
        let loc = localize_ring(&a, &s);
        assert_eq!(loc.ring.order(), 2);
        assert_eq!(pair_oracle(&a, &[1, 3]), 2);
        for t in s.iter() {
            assert!(loc.ring.is_unit(loc.canonical[t]));
        }
        let m = localize_module(&a, &s, &loc, &RingModule::regular(&a));
        assert_eq!(m.module.order(), 2);
        assert_eq!(m.eta[2], m.eta[0]);
        assert!(m.module.is_module(&loc.ring));
    }

    #[test]
    fn z4_with_two_collapses() {
        let a = FinCommRing::zmod(4);
        let s = MultSet::generated(&a, [2]).unwrap();
        assert_eq!(localize_ring(&a, &s).ring.order(), 1);
        assert_eq!(pair_oracle(&a, &[0, 1, 2]), 1);
    }

    #[test]
    fn trivial_set_changes_nothing() {
        for a in [FinCommRing::zmod(6), FinCommRing::truncated_polynomial(3, 2)] {
            let loc = localize_ring(&a, &MultSet::trivial(&a));
            assert_eq!(loc.ring.order(), a.order());
            let units = localize_ring(&a, &MultSet::units(&a));
            assert_eq!(units.ring.order(), a.order());
        }
    }

    #[test]
    fn torsion_modules_vanish() {
        let a = FinCommRing::zmod(6);
        let s = MultSet::new(&a, [1, 3]).unwrap();
        let loc = localize_ring(&a, &s);
        let m = RingModule { group: AbGroup::cyclic_product(&[3]), act: (0..6).map(|r| (0..3).map(|x| (r * x) % 3).collect()).collect() };
        assert!(m.is_module(&a));
        assert_eq!(localize_module(&a, &s, &loc, &m).module.order(), 1);
    }

    #[test]
    fn representatives_are_minimal() {
        let a = FinCommRing::zmod(6);
        let loc = localize_ring(&a, &MultSet::new(&a, [1, 3]).unwrap());
        let shown: Vec<String> = (0..loc.ring.order()).map(|c| loc.show(c)).collect();
        assert_eq!(shown, vec!["0/1", "1/1"]);
    }

    proptest! {
        #[test]
        fn fractions_match_the_pair_oracle(n in 1usize..=12, gens in proptest::collection::vec(0usize..12, 0..3)) {
            let a = FinCommRing::zmod(n);
            let s = MultSet::generated(&a, gens.into_iter().map(|g| g % n)).unwrap();
            let loc = localize_ring(&a, &s);
            let members: Vec<usize> = s.iter().collect();
            prop_assert_eq!(loc.ring.order(), pair_oracle(&a, &members));
            for t in s.iter() {
                prop_assert!(loc.ring.is_unit(loc.canonical[t]));
            }
            let m = localize_module(&a, &s, &loc, &RingModule::regular(&a));
            prop_assert_eq!(m.module.order(), loc.ring.order());
            prop_assert!(m.module.is_module(&loc.ring));
        }
    }
}
