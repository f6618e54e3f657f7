//! Exhaustive checks of the left and right fraction axioms.

use std::fmt;

use crate::fincat::{FinCategory, MorId, MorphismSet};

/// Outcome of the three axiom checks. A failing axiom carries the first
/// witness in id order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LFReport {
    /// Identities were missing from the input set and have been added.
    pub identities_added: bool,
    /// Composable `(τ, σ)` in `Σ` with `τ ∘ σ ∉ Σ`.
    pub lf1: Option<(MorId, MorId)>,
    /// Span `(σ, α)` without a completing square.
    pub lf2: Option<(MorId, MorId)>,
    /// `(α, β, σ)` with `ασ = βσ` but no `τ ∈ Σ` equalizing `α, β`.
    pub lf3: Option<(MorId, MorId, MorId)>,
}

impl LFReport {
    pub fn passes(&self) -> bool {
        self.lf1.is_none() && self.lf2.is_none() && self.lf3.is_none()
    }
}

impl fmt::Display for LFReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |b: bool| if b { "pass" } else { "fail" };
        write!(
            f,
            "LF1 {}, LF2 {}, LF3 {}",
            verdict(self.lf1.is_none()),
            verdict(self.lf2.is_none()),
            verdict(self.lf3.is_none())
        )
    }
}

/// Checks closure under composition, square completion and the
/// coequalizing property by enumeration. Identities are added to `Σ` first.
pub fn check_calculus_left(c: &FinCategory, sigma: &MorphismSet) -> LFReport {
    let (sigma, identities_added) = sigma.with_identities(c);
    LFReport { identities_added, lf1: lf1(c, &sigma), lf2: lf2(c, &sigma), lf3: lf3(c, &sigma) }
}

/// The dual checks, run on the opposite category. Witnesses are reported
/// with the ids of the original category.
pub fn check_calculus_right(c: &FinCategory, sigma: &MorphismSet) -> LFReport {
    check_calculus_left(&c.opposite(), sigma)
}

fn lf1(c: &FinCategory, sigma: &MorphismSet) -> Option<(MorId, MorId)> {
    for s in sigma.ids() {
        for t in sigma.ids() {
            if c.src(t) == c.dst(s) && !sigma.contains(c.compose(t, s)) {
                return Some((t, s));
            }
        }
    }
    None
}

fn lf2(c: &FinCategory, sigma: &MorphismSet) -> Option<(MorId, MorId)> {
    let n = c.num_objects();
    for s in sigma.ids() {
        let (x, x2) = (c.src(s), c.dst(s));
        // image[y'] marks which morphisms x → y' factor as α' ∘ σ.
        let image: Vec<Vec<bool>> = (0..n)
            .map(|yp| {
                let mut mask = vec![false; c.hom(x, yp).len()];
                for &a2 in c.hom(x2, yp) {
                    mask[c.local_index(c.compose(a2, s))] = true;
                }
                mask
            })
            .collect();
        for y in c.objects() {
            for &a in c.hom(x, y) {
                let completes = c.objects().any(|yp| {
                    c.hom(y, yp).iter().any(|&s2| sigma.contains(s2) && image[yp][c.local_index(c.compose(s2, a))])
                });
                if !completes {
                    return Some((s, a));
                }
            }
        }
    }
    None
}

fn lf3(c: &FinCategory, sigma: &MorphismSet) -> Option<(MorId, MorId, MorId)> {
    for x in c.objects() {
        let into_x: Vec<MorId> = sigma.ids().filter(|&s| c.dst(s) == x).collect();
        for y in c.objects() {
            let hom = c.hom(x, y);
            let out_of_y: Vec<MorId> = sigma.ids().filter(|&t| c.src(t) == y).collect();
            for (i, &a) in hom.iter().enumerate() {
                for &b in &hom[i + 1..] {
                    let Some(&s) = into_x.iter().find(|&&s| c.compose(a, s) == c.compose(b, s)) else { continue };
                    if !out_of_y.iter().any(|&t| c.compose(t, a) == c.compose(t, b)) {
                        return Some((a, b, s));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::fixtures::*;

    #[test]
    fn interval_passes() {
        let c = interval();
        let r = check_calculus_left(&c, &MorphismSet::from_names(&c, &["s"]).unwrap());
        assert!(r.passes());
        assert!(r.identities_added);
    }

    #[test]
    fn identities_always_pass() {
        for c in [interval(), chain3(), span(), parallel()] {
            assert!(check_calculus_left(&c, &c.identity_set()).passes());
            assert!(check_calculus_right(&c, &c.identity_set()).passes());
        }
    }

    #[test]
    fn span_fails_square_completion() {
        let c = span();
        let s = c.find_morphism("XY").unwrap();
        let f = c.find_morphism("XZ").unwrap();
        let r = check_calculus_left(&c, &MorphismSet::from_ids(&c, [s]));
        assert_eq!(r.lf2, Some((s, f)));
        assert!(r.lf1.is_none() && r.lf3.is_none());
    }

    #[test]
    fn missing_composite_fails_closure() {
        let c = chain3();
        let r = check_calculus_left(&c, &MorphismSet::from_names(&c, &["XY", "YZ"]).unwrap());
        assert_eq!(r.lf1, Some((c.find_morphism("YZ").unwrap(), c.find_morphism("XY").unwrap())));
    }
}
