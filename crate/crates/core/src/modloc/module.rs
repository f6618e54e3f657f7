use std::collections::BTreeSet;

use rayon::prelude::*;

use super::ring::FinCommRing;

/// A finite abelian group on `0..n` with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    pub add: Vec<Vec<usize>>,
    pub zero: usize,
    pub gens: Vec<usize>,
}

impl AbGroup {
    /// `Z/n_1 × ... × Z/n_k` with mixed-radix element encoding.
    pub fn cyclic_product(orders: &[usize]) -> Self {
        let n: usize = orders.iter().product();
        let digits = |mut v: usize| {
            orders
                .iter()
                .map(|&m| {
                    let d = v % m;
                    v /= m;
                    d
                })
                .collect::<Vec<_>>()
        };
        let encode = |d: &[usize]| d.iter().zip(orders).rev().fold(0, |acc, (&x, &m)| acc * m + x);
        let add = (0..n)
            .map(|u| {
                let du = digits(u);
                (0..n)
                    .map(|v| {
                        let s: Vec<usize> = du.iter().zip(digits(v)).zip(orders).map(|((a, b), &m)| (a + b) % m).collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        let mut gens = Vec::new();
        let mut stride = 1;
        for &m in orders {
            if m > 1 {
                gens.push(stride);
            }
            stride *= m;
        }
        Self { add, zero: 0, gens }
    }

    /// A group from its addition table, with greedily chosen generators.
    pub fn from_table(add: Vec<Vec<usize>>) -> Self {
        let n = add.len();
        let zero = (0..n).find(|&z| (0..n).all(|x| add[z][x] == x)).expect("identity");
        let mut g = Self { add, zero, gens: Vec::new() };
        let mut span: BTreeSet<usize> = [zero].into_iter().collect();
        for x in 0..n {
            if !span.contains(&x) {
                g.gens.push(x);
                span = g.span(&g.gens);
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    fn span(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = [self.zero].into_iter().collect();
        let mut frontier = vec![self.zero];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add[x][g];
                if s.insert(y) {
                    frontier.push(y);
                }
            }
        }
        s
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.add[x][y] == self.zero).expect("inverse")
    }

    /// Extends generator images to an additive map into `target`, if
    /// consistent.
    pub fn extend(&self, images: &[usize], target: &AbGroup) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.order()];
        f[self.zero] = target.zero;
        let mut frontier = vec![self.zero];
        while let Some(x) = frontier.pop() {
            for (&g, &img) in self.gens.iter().zip(images) {
                let y = self.add[x][g];
                let fy = target.add[f[x]][img];
                if f[y] == usize::MAX {
                    f[y] = fy;
                    frontier.push(y);
                } else if f[y] != fy {
                    return None;
                }
            }
        }
        Some(f)
    }

    /// Every additive map into `target`.
    pub fn homs_to(&self, target: &AbGroup) -> Vec<Vec<usize>> {
        let k = self.gens.len();
        let m = target.order();
        let total = m.pow(k as u32);
        (0..total)
            .filter_map(|mut code| {
                let imgs: Vec<usize> = (0..k)
                    .map(|_| {
                        let v = code % m;
                        code /= m;
                        v
                    })
                    .collect();
                self.extend(&imgs, target)
            })
            .collect()
    }
}

/// Abelian group types `Z/q_1 × ... × Z/q_k` (prime powers) of order `n`.
pub fn group_types(n: usize) -> Vec<Vec<usize>> {
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += 1;
    }
    let mut out = vec![Vec::new()];
    for (p, k) in factors {
        let mut next = Vec::new();
        for part in partitions(k, k) {
            for base in &out {
                let mut t: Vec<usize> = base.clone();
                t.extend(part.iter().map(|&e| p.pow(e as u32)));
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A finite module over a finite commutative ring: a group with
/// `act[a][x] = a·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingModule {
    pub group: AbGroup,
    pub act: Vec<Vec<usize>>,
}

impl RingModule {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `A` over itself.
    pub fn regular(ring: &FinCommRing) -> Self {
        Self { group: AbGroup::from_table(ring.add.clone()), act: ring.mul.clone() }
    }

    /// Checks the module axioms by enumeration.
    pub fn is_module(&self, ring: &FinCommRing) -> bool {
        let n = self.order();
        let g = &self.group;
        (0..n).all(|x| self.act[ring.one][x] == x)
            && (0..ring.order()).all(|a| {
                (0..ring.order()).all(|b| {
                    (0..n).all(|x| {
                        self.act[ring.mul[a][b]][x] == self.act[a][self.act[b][x]]
                            && self.act[ring.add[a][b]][x] == g.add[self.act[a][x]][self.act[b][x]]
                    })
                })
            })
            && (0..ring.order()).all(|a| (0..n).all(|x| (0..n).all(|y| self.act[a][g.add[x][y]] == g.add[self.act[a][x]][self.act[a][y]])))
    }

    /// `A`-linear maps to `other`.
    pub fn homs_to(&self, other: &RingModule) -> Vec<Vec<usize>> {
        self.group.homs_to(&other.group).into_iter().filter(|f| self.is_linear(f, other)).collect()
    }

    pub fn is_linear(&self, f: &[usize], other: &RingModule) -> bool {
        (0..self.act.len()).all(|a| (0..self.order()).all(|x| f[self.act[a][x]] == other.act[a][f[x]]))
    }

    /// `s` acts bijectively.
    pub fn acts_bijectively(&self, s: usize) -> bool {
        let img: BTreeSet<usize> = self.act[s].iter().copied().collect();
        img.len() == self.order()
    }

    /// Restriction of scalars along `h: B → A`.
    pub fn restrict(&self, h: &[usize]) -> RingModule {
        RingModule { group: self.group.clone(), act: h.iter().map(|&a| self.act[a].clone()).collect() }
    }

    pub fn is_isomorphic(&self, other: &RingModule) -> bool {
        self.order() == other.order() && self.homs_to(other).iter().any(|f| is_bijective(f))
    }
}

pub fn is_bijective(f: &[usize]) -> bool {
    let img: BTreeSet<usize> = f.iter().copied().collect();
    img.len() == f.len()
}

/// Every module structure on a group, one per isomorphism class.
fn modules_on(ring: &FinCommRing, group: &AbGroup) -> Vec<RingModule> {
    let ends = group.homs_to(group);
    let gens = ring.ring_generators();
    let n = ring.order();
    let mut found: Vec<RingModule> = Vec::new();
    let total = ends.len().pow(gens.len() as u32);
    for mut code in 0..total {
        let mut rho: Vec<Option<Vec<usize>>> = vec![None; n];
        rho[ring.zero] = Some(vec![group.zero; group.order()]);
        rho[ring.one] = Some((0..group.order()).collect());
        if ring.zero == ring.one && group.order() > 1 {
            continue;
        }
        let mut ok = true;
        for &g in &gens {
            let e = ends[code % ends.len()].clone();
            code /= ends.len();
            match &rho[g] {
                Some(prev) if *prev != e => ok = false,
                _ => rho[g] = Some(e),
            }
        }
        if !ok {
            continue;
        }
        if let Some(act) = close_action(ring, group, rho) {
            let m = RingModule { group: group.clone(), act };
            if !found.iter().any(|k| k.is_isomorphic(&m)) {
                found.push(m);
            }
        }
    }
    found
}

/// Extends a partial ring map `A → End(G)` by closure under `+` and `×`.
fn close_action(ring: &FinCommRing, group: &AbGroup, mut rho: Vec<Option<Vec<usize>>>) -> Option<Vec<Vec<usize>>> {
    let n = ring.order();
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                let (Some(ra), Some(rb)) = (rho[a].clone(), rho[b].clone()) else { continue };
                let sum: Vec<usize> = (0..group.order()).map(|x| group.add[ra[x]][rb[x]]).collect();
                let prod: Vec<usize> = (0..group.order()).map(|x| ra[rb[x]]).collect();
                for (target, val) in [(ring.add[a][b], sum), (ring.mul[a][b], prod)] {
                    match &rho[target] {
                        Some(prev) if *prev != val => return None,
                        Some(_) => {}
                        None => {
                            rho[target] = Some(val);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    rho.into_iter().collect()
}

/// All modules of order at most `cap`, one per isomorphism class,
/// ordered by order and then group type.
pub fn enumerate_modules(ring: &FinCommRing, cap: usize) -> Vec<RingModule> {
    let groups: Vec<Vec<usize>> = (1..=cap).flat_map(group_types).collect();
    groups.par_iter().flat_map_iter(|t| modules_on(ring, &AbGroup::cyclic_product(t))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_type_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| group_types(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3]);
    }

    #[test]
    fn endomorphism_counts() {
        let g = AbGroup::cyclic_product(&[2, 2]);
        assert_eq!(g.homs_to(&g).len(), 16);
        let c4 = AbGroup::cyclic_product(&[4]);
        assert_eq!(c4.homs_to(&AbGroup::cyclic_product(&[2])).len(), 2);
    }

    #[test]
    fn modules_over_z6_are_groups_of_exponent_dividing_six() {
        let r = FinCommRing::zmod(6);
        let ms = enumerate_modules(&r, 8);
        let orders: Vec<usize> = ms.iter().map(|m| m.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 6, 8]);
        assert!(ms.iter().all(|m| m.is_module(&r)));
    }

    #[test]
    fn modules_over_the_dual_numbers() {
        let r = FinCommRing::truncated_polynomial(2, 2);
        let ms = enumerate_modules(&r, 4);
        // 0, k, k², A, and no others of order ≤ 4
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().any(|m| m.is_isomorphic(&RingModule::regular(&r))));
    }
}
