//! Verdier quotients as categories of fractions.

use crate::fincat::MorphismSet;
use crate::fractions::{build_fraction_category_unchecked, check_calculus_left, check_calculus_right, FractionCategory, LFReport};

use super::{sigma_of_s, ModelCategory, ObjId, ThickSubcat, TriangulatedError, TriangulatedModel};

/// `T/S = T[Σ(S)⁻¹]` computed on the model, with hom dimensions.
#[derive(Clone, Debug)]
pub struct VerdierQuotient {
    pub fractions: FractionCategory,
    pub sigma: MorphismSet,
    pub left: LFReport,
    pub right: LFReport,
    /// `n × n`, row-major by `(source, target)`.
    pub hom_dims: Vec<usize>,
    /// Objects sent to zero.
    pub kernel: Vec<ObjId>,
}

impl VerdierQuotient {
    pub fn hom_dim(&self, x: ObjId, y: ObjId) -> usize {
        self.hom_dims[x * self.fractions.category.num_objects() + y]
    }
}

fn log_p(mut n: usize, p: usize) -> Option<usize> {
    let mut k = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// Builds the quotient after checking that `Σ(S)` admits both calculi.
pub fn verdier_quotient(model: &TriangulatedModel, mc: &ModelCategory, s: &ThickSubcat) -> Result<VerdierQuotient, TriangulatedError> {
    let c = &mc.category;
    let sigma = sigma_of_s(model, mc, s)?;
    let left = check_calculus_left(c, &sigma);
    let right = check_calculus_right(c, &sigma);
    if !left.passes() || !right.passes() {
        return Err(TriangulatedError::MultiplicativeSystemFails(format!("left: {left}; right: {right}")));
    }
    let fractions = build_fraction_category_unchecked(c, &sigma)?;
    let q = &fractions.category;
    let n = q.num_objects();
    let p = model.modulus() as usize;
    let mut hom_dims = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let size = q.hom(x, y).len();
            let d = log_p(size, p).ok_or_else(|| {
                TriangulatedError::CapsTooSmall(format!(
                    "quotient hom-set {} -> {} has {size} elements, not a power of {p}",
                    model.name(x),
                    model.name(y)
                ))
            })?;
            hom_dims.push(d);
        }
    }
    let zero = model.zero_object();
    let kernel = (0..n).filter(|&x| q.isomorphic(x, zero)).collect();
    Ok(VerdierQuotient { fractions, sigma, left, right, hom_dims, kernel })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::complexes::FinAlgebra;
    use crate::triangulated::{thick_closure, Caps};

    #[test]
    fn trivial_quotients() {
        let m = TriangulatedModel::build(Arc::new(FinAlgebra::field(2).unwrap()), Caps::new(1, 2)).unwrap();
        let mc = m.to_category();
        let q = verdier_quotient(&m, &mc, &ThickSubcat::zero(&m)).unwrap();
        for x in m.object_ids() {
            for y in m.object_ids() {
                assert_eq!(q.hom_dim(x, y), m.hom_dim(x, y));
            }
        }
        assert_eq!(q.kernel, vec![0]);
        let q = verdier_quotient(&m, &mc, &ThickSubcat::all(&m)).unwrap();
        assert!(q.hom_dims.iter().all(|&d| d == 0));
        assert_eq!(q.kernel.len(), m.len());
    }

    #[test]
    fn quotient_by_first_factor() {
        let m = TriangulatedModel::build(Arc::new(FinAlgebra::product(2, 2).unwrap()), Caps::new(1, 2)).unwrap();
        let mc = m.to_category();
        let s = thick_closure(&m, &[m.find("P1@0").unwrap()]).unwrap();
        let q = verdier_quotient(&m, &mc, &s).unwrap();
        assert_eq!(q.kernel, s.members());
        let (a, b) = (m.find("P1@0+P2@0").unwrap(), m.find("P2@0").unwrap());
        assert_eq!(q.hom_dim(a, b), 1);
    }
}
