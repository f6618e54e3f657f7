use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ModlocError;

/// A finite commutative ring given by its operation tables on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCommRing {
    pub name: String,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

/// JSON ring file: `{"name": "z6", "add": [[..]], "mul": [[..]]}`. The
/// zero and one are found from the tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub name: String,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl FinCommRing {
    /// Validates the commutative ring axioms by enumeration.
    pub fn new(name: impl Into<String>, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self, ModlocError> {
        let name = name.into();
        let n = add.len();
        let bad = |m: &str| ModlocError::NotARing(format!("{name}: {m}"));
        if n == 0 || mul.len() != n || add.iter().chain(&mul).any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(bad("tables must be square over 0..n"));
        }
        let zero = (0..n).find(|&z| (0..n).all(|x| add[z][x] == x)).ok_or_else(|| bad("no additive identity"))?;
        let one = (0..n).find(|&u| (0..n).all(|x| mul[u][x] == x)).ok_or_else(|| bad("no multiplicative identity"))?;
        for x in 0..n {
            if !(0..n).any(|y| add[x][y] == zero) {
                return Err(bad("missing additive inverse"));
            }
            for y in 0..n {
                if add[x][y] != add[y][x] || mul[x][y] != mul[y][x] {
                    return Err(bad("not commutative"));
                }
                for z in 0..n {
                    if add[add[x][y]][z] != add[x][add[y][z]] || mul[mul[x][y]][z] != mul[x][mul[y][z]] {
                        return Err(bad("not associative"));
                    }
                    if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]] {
                        return Err(bad("not distributive"));
                    }
                }
            }
        }
        Ok(Self { name, add, mul, zero, one })
    }

    pub fn from_file(f: RingFile) -> Result<Self, ModlocError> {
        Self::new(f.name, f.add, f.mul)
    }

    pub fn parse(text: &str) -> Result<Self, ModlocError> {
        let f: RingFile = serde_json::from_str(text)
            .map_err(|e| ModlocError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
        Self::from_file(f)
    }

    pub fn to_file(&self) -> RingFile {
        RingFile { name: self.name.clone(), add: self.add.clone(), mul: self.mul.clone() }
    }

    /// `Z/n`.
    pub fn zmod(n: usize) -> Self {
        assert!(n > 0, "Z/0 is infinite");
        let add = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let mul = (0..n).map(|x| (0..n).map(|y| (x * y) % n).collect()).collect();
        Self { name: format!("z{n}"), add, mul, zero: 0, one: 1 % n }
    }

    /// `A × B` with elements `a * |B| + b`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let (na, nb) = (a.order(), b.order());
        let enc = |x: usize, y: usize| x * nb + y;
        let table = |f: &dyn Fn(usize, usize, usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..na * nb).map(|u| (0..na * nb).map(|v| f(u / nb, u % nb, v / nb, v % nb)).collect()).collect()
        };
        let add = table(&|x1, y1, x2, y2| enc(a.add[x1][x2], b.add[y1][y2]));
        let mul = table(&|x1, y1, x2, y2| enc(a.mul[x1][x2], b.mul[y1][y2]));
        Self { name: format!("{}x{}", a.name, b.name), add, mul, zero: enc(a.zero, b.zero), one: enc(a.one, b.one) }
    }

    /// `F_p[x]/(x^k)` with elements the coefficient vectors in base `p`.
    pub fn truncated_polynomial(p: usize, k: usize) -> Self {
        let n = p.pow(k as u32);
        let digits = |mut v: usize| {
            let mut d = vec![0; k];
            for slot in d.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
        let add = (0..n)
            .map(|u| {
                let du = digits(u);
                (0..n).map(|v| undigits(&du.iter().zip(digits(v)).map(|(a, b)| (a + b) % p).collect::<Vec<_>>())).collect()
            })
            .collect();
        let mul = (0..n)
            .map(|u| {
                let du = digits(u);
                (0..n)
                    .map(|v| {
                        let dv = digits(v);
                        let mut out = vec![0; k];
                        for i in 0..k {
                            for j in 0..k - i {
                                out[i + j] = (out[i + j] + du[i] * dv[j]) % p;
                            }
                        }
                        undigits(&out)
                    })
                    .collect()
            })
            .collect();
        Self { name: format!("f{p}[x]/x{k}"), add, mul, zero: 0, one: if n == 1 { 0 } else { 1 } }
    }

    /// Built-in rings by name: `z<n>`, `z<m>xz<n>`, `dual<p>`.
    pub fn builtin(name: &str) -> Option<Self> {
        if let Some((a, b)) = name.split_once('x') {
            if !a.starts_with("dual") {
                return Some(Self::product(&Self::builtin(a)?, &Self::builtin(b)?));
            }
        }
        if let Some(p) = name.strip_prefix("dual") {
            let p: usize = p.parse().ok()?;
            return (p >= 2).then(|| Self::truncated_polynomial(p, 2));
        }
        let n: usize = name.strip_prefix('z')?.parse().ok()?;
        (n >= 1).then(|| Self::zmod(n))
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn neg(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.add[x][y] == self.zero).expect("additive inverse")
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add[x][self.neg(y)]
    }

    pub fn is_unit(&self, x: usize) -> bool {
        (0..self.order()).any(|y| self.mul[x][y] == self.one)
    }

    pub fn units(&self) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.is_unit(x)).collect()
    }

    /// Subring generated by `gens`.
    pub fn subring(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut s: BTreeSet<usize> = [self.zero, self.one].into_iter().chain(gens.iter().copied()).collect();
        loop {
            let items: Vec<usize> = s.iter().copied().collect();
            let before = s.len();
            for &x in &items {
                for &y in &items {
                    s.insert(self.add[x][y]);
                    s.insert(self.mul[x][y]);
                }
            }
            if s.len() == before {
                return s;
            }
        }
    }

    /// A small set of ring generators, chosen greedily.
    pub fn ring_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.subring(&gens);
        for x in 0..self.order() {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(&x) {
                gens.push(x);
                span = self.subring(&gens);
            }
        }
        gens
    }
}

/// A multiplicatively closed subset containing `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultSet {
    pub elements: BTreeSet<usize>,
}

impl MultSet {
    pub fn new(ring: &FinCommRing, elements: impl IntoIterator<Item = usize>) -> Result<Self, ModlocError> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&x) = elements.iter().find(|&&x| x >= ring.order()) {
            return Err(ModlocError::NotMultiplicative(format!("{x} is not an element")));
        }
        if !elements.contains(&ring.one) {
            return Err(ModlocError::NotMultiplicative("1 is missing".into()));
        }
        for &x in &elements {
            for &y in &elements {
                if !elements.contains(&ring.mul[x][y]) {
                    return Err(ModlocError::NotMultiplicative(format!("{x}*{y} = {} is missing", ring.mul[x][y])));
                }
            }
        }
        Ok(Self { elements })
    }

    /// The multiplicative closure of `gens ∪ {1}`.
    pub fn generated(ring: &FinCommRing, gens: impl IntoIterator<Item = usize>) -> Result<Self, ModlocError> {
        let mut s: BTreeSet<usize> = gens.into_iter().collect();
        if let Some(&x) = s.iter().find(|&&x| x >= ring.order()) {
            return Err(ModlocError::NotMultiplicative(format!("{x} is not an element")));
        }
        s.insert(ring.one);
        loop {
            let items: Vec<usize> = s.iter().copied().collect();
            let before = s.len();
            for &x in &items {
                for &y in &items {
                    s.insert(ring.mul[x][y]);
                }
            }
            if s.len() == before {
                return Self::new(ring, s);
            }
        }
    }

    pub fn units(ring: &FinCommRing) -> Self {
        Self { elements: ring.units().into_iter().collect() }
    }

    pub fn trivial(ring: &FinCommRing) -> Self {
        Self { elements: [ring.one].into_iter().collect() }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.contains(&x)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_rings() {
        for name in ["z1", "z4", "z6", "z8", "z2xz3", "dual2", "dual3", "z2xz2"] {
            let r = FinCommRing::builtin(name).unwrap();
            FinCommRing::new(r.name.clone(), r.add.clone(), r.mul.clone()).unwrap();
        }
        assert!(FinCommRing::builtin("q7").is_none());
    }

    #[test]
    fn rejects_non_rings() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 1], vec![1, 1]];
        assert!(FinCommRing::new("bad", add, mul).is_err());
    }

    #[test]
    fn multiplicative_closure() {
        let r = FinCommRing::zmod(4);
        assert!(MultSet::new(&r, [1, 2]).is_err());
        let s = MultSet::generated(&r, [2]).unwrap();
        assert_eq!(s.elements, [0, 1, 2].into_iter().collect());
        assert_eq!(MultSet::units(&r).elements, [1, 3].into_iter().collect());
    }

    #[test]
    fn generators_of_small_rings() {
        assert!(FinCommRing::zmod(6).ring_generators().is_empty());
        assert_eq!(FinCommRing::truncated_polynomial(2, 2).ring_generators().len(), 1);
    }

    #[test]
    fn parse_roundtrip() {
        let r = FinCommRing::zmod(3);
        let text = serde_json::to_string(&r.to_file()).unwrap();
        assert_eq!(FinCommRing::parse(&text).unwrap(), r);
        match FinCommRing::parse("{\"name\": 1}") {
            Err(ModlocError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
    }
}
