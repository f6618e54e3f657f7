//! Localization by bounded paths modulo the generating relations.

use std::collections::HashMap;

use thiserror::Error;

use super::{FinCategory, FinFunctor, MorId, Morphism, MorphismSet, ObjId};
use crate::dsu::Dsu;

const LETTER_BITS: u32 = 8;
const MAX_LETTERS: usize = (1 << LETTER_BITS) - 1;
const MAX_LEN: usize = 15;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("path length bound must be at least 1")]
    ZeroLength,
    #[error("path length bound {0} exceeds the supported maximum {MAX_LEN}")]
    TooLong(usize),
    #[error("too many letters ({0}) for the path encoding")]
    TooManyLetters(usize),
}

/// Output of [`path_localization_oracle`].
#[derive(Clone, Debug)]
pub struct PathLocalization {
    pub category: FinCategory,
    pub functor: FinFunctor,
    /// False when the class structure changed between the last two lengths.
    pub stabilized: bool,
    /// Per hom-set counts of classes meeting paths of length at most half the
    /// bound (at least 1), indexed `x * n + y`.
    pub class_counts: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    Arrow(MorId),
    Inverse(MorId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Word {
    len: u8,
    src: u8,
    bits: u128,
}

impl Word {
    fn empty(src: ObjId) -> Self {
        Word { len: 0, src: src as u8, bits: 0 }
    }

    fn get(&self, i: usize) -> usize {
        ((self.bits >> (LETTER_BITS * i as u32)) & ((1 << LETTER_BITS) - 1)) as usize
    }

    fn push(&self, l: usize) -> Self {
        Word { len: self.len + 1, src: self.src, bits: self.bits | ((l as u128) << (LETTER_BITS * self.len as u32)) }
    }

    fn letters(&self) -> Vec<usize> {
        (0..self.len as usize).map(|i| self.get(i)).collect()
    }

    fn from_letters(src: ObjId, ls: &[usize]) -> Self {
        ls.iter().fold(Word::empty(src), |w, &l| w.push(l))
    }
}

/// Quotient of the bounded path category on `Mor(C) ⊔ Σ⁻¹` by the relations
/// `β·α = β∘α`, `id = empty path`, `σ⁻¹σ = id` and `σσ⁻¹ = id`.
///
/// Every path of length at most `max_len` is enumerated and joined with its
/// one-step contractions. Morphisms of the result are the classes meeting
/// paths of length at most `max_len / 2`, or 1. Identity letters are dropped up front since they
/// equal the empty path.
pub fn path_localization_oracle(
    c: &FinCategory,
    sigma: &MorphismSet,
    max_len: usize,
) -> Result<PathLocalization, OracleError> {
    if max_len == 0 {
        return Err(OracleError::ZeroLength);
    }
    if max_len > MAX_LEN {
        return Err(OracleError::TooLong(max_len));
    }
    let mut letters = Vec::new();
    for m in c.morphism_ids().filter(|&m| !c.is_identity(m)) {
        letters.push(Letter::Arrow(m));
    }
    for m in sigma.ids().filter(|&m| !c.is_identity(m)) {
        letters.push(Letter::Inverse(m));
    }
    if letters.len() > MAX_LETTERS || c.num_objects() > 255 {
        return Err(OracleError::TooManyLetters(letters.len()));
    }
    let arrow_letter: HashMap<MorId, usize> = letters
        .iter()
        .enumerate()
        .filter_map(|(i, l)| match l {
            Letter::Arrow(m) => Some((*m, i)),
            _ => None,
        })
        .collect();
    let lsrc = |l: usize| match letters[l] {
        Letter::Arrow(m) => c.src(m),
        Letter::Inverse(m) => c.dst(m),
    };
    let ldst = |l: usize| match letters[l] {
        Letter::Arrow(m) => c.dst(m),
        Letter::Inverse(m) => c.src(m),
    };

    // Enumerate words by length, remembering endpoints.
    let mut words: Vec<Word> = c.objects().map(Word::empty).collect();
    let mut targets: Vec<ObjId> = c.objects().collect();
    let mut by_len_end = vec![0, words.len()];
    let mut index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    for len in 1..=max_len {
        let (lo, hi) = (by_len_end[len - 1], by_len_end[len]);
        for wi in lo..hi {
            let (w, y) = (words[wi], targets[wi]);
            for l in 0..letters.len() {
                if lsrc(l) == y {
                    let nw = w.push(l);
                    index.insert(nw, words.len());
                    words.push(nw);
                    targets.push(ldst(l));
                }
            }
        }
        by_len_end.push(words.len());
    }

    // Contract adjacent pairs.
    let contract = |w: &Word, i: usize| -> Option<Vec<usize>> {
        let ls = w.letters();
        let (a, b) = (ls[i], ls[i + 1]);
        let replacement: Option<Vec<usize>> = match (letters[a], letters[b]) {
            (Letter::Arrow(f), Letter::Arrow(g)) => {
                let h = c.compose(g, f);
                if c.is_identity(h) {
                    Some(vec![])
                } else {
                    Some(vec![arrow_letter[&h]])
                }
            }
            (Letter::Arrow(f), Letter::Inverse(s)) if f == s => Some(vec![]),
            (Letter::Inverse(s), Letter::Arrow(f)) if f == s => Some(vec![]),
            _ => None,
        };
        replacement.map(|r| {
            let mut out = ls[..i].to_vec();
            out.extend(r);
            out.extend_from_slice(&ls[i + 2..]);
            out
        })
    };

    let partition = |upto: usize| -> Dsu {
        let count = by_len_end[upto + 1];
        let mut dsu = Dsu::new(count);
        for wi in by_len_end[2]..count {
            let w = words[wi];
            for i in 0..(w.len as usize - 1) {
                if let Some(ls) = contract(&w, i) {
                    let target = index[&Word::from_letters(w.src as usize, &ls)];
                    dsu.union(wi, target);
                }
            }
        }
        dsu
    };

    // Classes are those of short words, joined through words up to the bound.
    // Representatives have length at most `core`, so composites fit the bound.
    let core = (max_len / 2).max(1);
    let core_end = by_len_end[core + 1];
    let mut full = partition(max_len);
    let n = c.num_objects();
    let hom_counts = |dsu: &mut Dsu| -> Vec<usize> {
        let mut counts = vec![0; n * n];
        let mut seen: HashMap<usize, ()> = HashMap::new();
        for wi in 0..core_end {
            if seen.insert(dsu.find(wi), ()).is_none() {
                counts[words[wi].src as usize * n + targets[wi]] += 1;
            }
        }
        counts
    };
    let class_counts = hom_counts(&mut full);
    let mut stabilized = max_len >= 2;
    if stabilized {
        let mut prev = partition(max_len - 1);
        if hom_counts(&mut prev) != class_counts {
            stabilized = false;
        } else {
            // The coarser partition must agree with the finer one on short words.
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for wi in 0..core_end {
                let a = full.find(wi);
                let b = prev.find(wi);
                if *seen.entry(a).or_insert(b) != b {
                    stabilized = false;
                    break;
                }
            }
        }
    }

    // Classes in order of their shortest, then first-enumerated, member.
    let mut class_of_root: HashMap<usize, MorId> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    for wi in 0..core_end {
        let r = full.find(wi);
        if let std::collections::hash_map::Entry::Vacant(e) = class_of_root.entry(r) {
            e.insert(reps.len());
            reps.push(wi);
        }
    }
    let class = |full: &mut Dsu, wi: usize| class_of_root.get(&full.find(wi)).copied();

    let render = |w: &Word| -> String {
        if w.len == 0 {
            return format!("id_{}", c.object_name(w.src as usize));
        }
        w.letters()
            .iter()
            .map(|&l| match letters[l] {
                Letter::Arrow(m) => c.name(m).to_string(),
                Letter::Inverse(m) => format!("{}^-1", c.name(m)),
            })
            .collect::<Vec<_>>()
            .join(";")
    };
    let morphisms: Vec<Morphism> = reps
        .iter()
        .map(|&wi| Morphism { name: render(&words[wi]), src: words[wi].src as usize, dst: targets[wi] })
        .collect();
    let identities = c.objects().map(|x| class(&mut full, x)).collect();

    let mut table: HashMap<(MorId, MorId), MorId> = HashMap::new();
    for (f, &wf) in reps.iter().enumerate() {
        for (g, &wg) in reps.iter().enumerate() {
            if words[wg].src as usize != targets[wf] {
                continue;
            }
            let mut ls = words[wf].letters();
            ls.extend(words[wg].letters());
            let composite = index.get(&Word::from_letters(words[wf].src as usize, &ls)).and_then(|&wi| class(&mut full, wi));
            match composite {
                Some(h) => {
                    table.insert((g, f), h);
                }
                None => stabilized = false,
            }
        }
    }
    let category = FinCategory::assemble(c.object_names().to_vec(), morphisms, identities, |g, f| {
        table.get(&(g, f)).copied()
    });
    let mor_map = c
        .morphism_ids()
        .map(|m| {
            let w = if c.is_identity(m) { Word::empty(c.src(m)) } else { Word::empty(c.src(m)).push(arrow_letter[&m]) };
            class(&mut full, index[&w]).expect("single letters are short")
        })
        .collect();
    let functor = FinFunctor { obj_map: c.objects().collect(), mor_map };
    Ok(PathLocalization { category, functor, stabilized, class_counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;
    use crate::fincat::validate_category;

    #[test]
    fn interval_inverting_its_arrow_collapses() {
        let c = interval();
        let s = MorphismSet::from_names(&c, &["s"]).unwrap();
        let out = path_localization_oracle(&c, &s, 6).unwrap();
        assert!(out.stabilized);
        assert!(validate_category(&out.category).is_valid());
        assert!(out.class_counts.iter().all(|&k| k == 1));
        assert!(out.category.isomorphic(0, 1));
        assert!(out.functor.validate(&c, &out.category).is_ok());
    }

    #[test]
    fn identities_only_recovers_the_category() {
        let c = chain3();
        let s = c.identity_set();
        let out = path_localization_oracle(&c, &s, 2).unwrap();
        assert!(out.stabilized);
        assert_eq!(out.category.num_morphisms(), c.num_morphisms());
        assert!(out.functor.is_fully_faithful(&c, &out.category));
    }

    #[test]
    fn chain_inverting_upper_arrow() {
        let c = chain3();
        let s = MorphismSet::from_names(&c, &["YZ"]).unwrap();
        let out = path_localization_oracle(&c, &s, 6).unwrap();
        assert!(out.stabilized);
        let q = &out.category;
        assert!(validate_category(q).is_valid());
        assert!(q.isomorphic(1, 2));
        assert!(!q.isomorphic(0, 1));
        assert!(q.is_poset() || q.objects().all(|x| q.objects().all(|y| q.hom(x, y).len() <= 1)));
        assert_eq!(q.hom(1, 0).len(), 0);
        assert_eq!(q.hom(0, 2).len(), 1);
    }

    #[test]
    fn length_one_is_flagged() {
        let c = interval();
        let s = MorphismSet::from_names(&c, &["s"]).unwrap();
        assert!(!path_localization_oracle(&c, &s, 1).unwrap().stabilized);
        assert_eq!(path_localization_oracle(&c, &s, 0).unwrap_err(), OracleError::ZeroLength);
    }
}
