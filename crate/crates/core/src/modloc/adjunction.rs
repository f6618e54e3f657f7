use rayon::prelude::*;
use serde::Serialize;

use super::fractions::{localize_module, localize_ring, FractionModule, FractionRing};
use super::module::{enumerate_modules, is_bijective, RingModule};
use super::ring::{FinCommRing, MultSet};
use super::ModlocError;

/// Outcome of the enumerated checks on `F = S⁻¹(-)` and restriction `G`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub ring: String,
    pub multiplicative_set: Vec<usize>,
    pub cap: usize,
    pub localized_order: usize,
    /// Fraction classes of the localized ring as `x/s`.
    pub fractions: Vec<String>,
    pub modules: usize,
    pub localized_modules: usize,
    /// `Hom(S⁻¹M, N) → Hom(M, GN)`, `φ ↦ Gφ ∘ η_M`, is bijective.
    pub adjunction: bool,
    /// `θ_N: S⁻¹(GN) → N` is a well-defined isomorphism.
    pub counit_invertible: bool,
    /// `Hom(N, N') = Hom(GN, GN')` for all `S⁻¹A`-modules.
    pub restriction_fully_faithful: bool,
    /// `Lη = ηL` and both are invertible.
    pub localization_functor: bool,
    /// `η_M` invertible iff every `s ∈ S` acts bijectively iff `M` is
    /// orthogonal to every enumerated map inverted by `L`.
    pub local_objects_agree: bool,
    /// Descriptions of the local modules.
    pub local_modules: Vec<String>,
}

impl AdjunctionReport {
    pub fn passes(&self) -> bool {
        self.adjunction
            && self.counit_invertible
            && self.restriction_fully_faithful
            && self.localization_functor
            && self.local_objects_agree
    }
}

/// Describes a module by its group type.
pub fn describe(m: &RingModule) -> String {
    let n = m.order();
    let stats = order_stats(m);
    let t = super::module::group_types(n)
        .into_iter()
        .find(|t| order_stats(&RingModule { group: super::module::AbGroup::cyclic_product(t), act: Vec::new() }) == stats)
        .unwrap_or_default();
    if t.is_empty() {
        return "0".into();
    }
    t.iter().map(|q| format!("Z/{q}")).collect::<Vec<_>>().join("x")
}

fn order_stats(m: &RingModule) -> Vec<usize> {
    let g = &m.group;
    let mut out: Vec<usize> = (0..g.order())
        .map(|x| {
            let (mut k, mut y) = (1, x);
            while y != g.zero {
                y = g.add[y][x];
                k += 1;
            }
            k
        })
        .collect();
    out.sort_unstable();
    out
}

/// `θ_N: S⁻¹(GN) → N`, `x/s ↦ s⁻¹x`, if well defined.
fn counit(loc: &FractionRing, n: &RingModule, fgn: &FractionModule) -> Option<Vec<usize>> {
    let mut theta = vec![usize::MAX; fgn.classes.len()];
    for (c, members) in fgn.classes.members.iter().enumerate() {
        for &(x, s) in members {
            let s_img = loc.canonical[s];
            let inv = (0..loc.ring.order()).find(|&u| loc.ring.mul[u][s_img] == loc.ring.one)?;
            let v = n.act[inv][x];
            if theta[c] == usize::MAX {
                theta[c] = v;
            } else if theta[c] != v {
                return None;
            }
        }
    }
    Some(theta)
}

/// `S⁻¹f` on fraction classes.
fn localize_map(f: &[usize], from: &FractionModule, to: &FractionModule) -> Vec<usize> {
    (0..from.classes.len())
        .map(|c| {
            let (x, s) = from.classes.representative(c);
            to.classes.class(f[x], s)
        })
        .collect()
}

/// Runs every check on the modules of order at most `cap`.
pub fn verify_localization_adjunction(a: &FinCommRing, s: &MultSet, cap: usize) -> Result<AdjunctionReport, ModlocError> {
    if cap < a.order() {
        return Err(ModlocError::CapTooSmall { cap, needed: a.order() });
    }
    let loc = localize_ring(a, s);
    let modules = enumerate_modules(a, cap);
    let lmods = enumerate_modules(&loc.ring, cap);
    let fm: Vec<FractionModule> = modules.par_iter().map(|m| localize_module(a, s, &loc, m)).collect();
    let gn: Vec<RingModule> = lmods.iter().map(|n| n.restrict(&loc.canonical)).collect();

    let adjunction = modules.par_iter().zip(&fm).all(|(m, f)| {
        lmods.iter().zip(&gn).all(|(n, g)| {
            let left = f.module.homs_to(n);
            let right = m.homs_to(g);
            let images: std::collections::BTreeSet<Vec<usize>> =
                left.iter().map(|phi| f.eta.iter().map(|&e| phi[e]).collect()).collect();
            images.len() == left.len() && left.len() == right.len() && images.iter().all(|v| m.is_linear(v, g))
        })
    });

    let counit_invertible = lmods.par_iter().zip(&gn).all(|(n, g)| {
        let fgn = localize_module(a, s, &loc, g);
        counit(&loc, n, &fgn).is_some_and(|t| is_bijective(&t) && t.len() == n.order() && fgn.module.is_linear(&t, n))
    });

    let restriction_fully_faithful =
        gn.par_iter().enumerate().all(|(i, g)| gn.iter().enumerate().all(|(j, h)| lmods[i].homs_to(&lmods[j]).len() == g.homs_to(h).len()));

    let localization_functor = fm.par_iter().all(|f| {
        let lm = &f.restricted;
        let llm = localize_module(a, s, &loc, lm);
        let eta_l = &llm.eta;
        let l_eta = localize_map(&f.eta, f, &llm);
        *eta_l == l_eta && is_bijective(eta_l) && eta_l.len() == llm.classes.len()
    });

    let sigma: Vec<(usize, usize, Vec<usize>)> = (0..modules.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (fm, modules) = (&fm, &modules);
            (0..modules.len()).flat_map(move |j| {
                modules[i].homs_to(&modules[j]).into_iter().filter_map(move |f| {
                    let lf = localize_map(&f, &fm[i], &fm[j]);
                    (is_bijective(&lf) && fm[i].classes.len() == fm[j].classes.len()).then_some((i, j, f))
                })
            })
        })
        .collect();
    let flags: Vec<(bool, bool, bool)> = modules
        .par_iter()
        .zip(&fm)
        .map(|(x, f)| {
            let by_unit = is_bijective(&f.eta) && f.eta.len() == f.classes.len();
            let by_action = s.iter().all(|t| x.acts_bijectively(t));
            let by_orthogonality = sigma.iter().all(|(i, j, sig)| {
                let from = modules[*j].homs_to(x);
                let to = modules[*i].homs_to(x);
                let pulled: std::collections::BTreeSet<Vec<usize>> =
                    from.iter().map(|h| sig.iter().map(|&v| h[v]).collect()).collect();
                pulled.len() == from.len() && from.len() == to.len()
            });
            (by_unit, by_action, by_orthogonality)
        })
        .collect();
    let local_objects_agree = flags.iter().all(|&(a, b, c)| a == b && b == c);
    let local_modules = modules.iter().zip(&flags).filter(|(_, f)| f.0).map(|(m, _)| describe(m)).collect();

    Ok(AdjunctionReport {
        ring: a.name.clone(),
        multiplicative_set: s.iter().collect(),
        cap,
        localized_order: loc.ring.order(),
        fractions: (0..loc.ring.order()).map(|c| loc.show(c)).collect(),
        modules: modules.len(),
        localized_modules: lmods.len(),
        adjunction,
        counit_invertible,
        restriction_fully_faithful,
        localization_functor,
        local_objects_agree,
        local_modules,
    })
}
