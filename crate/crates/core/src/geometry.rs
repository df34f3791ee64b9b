//! Complex-level models of projective bundles, blow-ups and modifications.

use crate::bicomplex::{direct_sum_many, quotient, shift, BicomplexError, DoubleComplex, Morphism, Window};
use crate::cohomology::{induced_cohomology_map, table, CohomologyKind, CohomologyTable};
use crate::exactlin::rank;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("projective bundle rank must be at least 1, got {0}")]
    InvalidRank(i64),
    #[error("blow-up codimension must be at least 2, got {0}")]
    CodimensionTooSmall(i64),
    #[error(transparent)]
    Bicomplex(#[from] BicomplexError),
}

/// `K = ⊕_{i=0}^{n−1} A_X[i]` together with the inclusion of the `i = 0`
/// summand.
pub fn projective_bundle(a_x: &DoubleComplex, n: i64) -> Result<(DoubleComplex, Morphism), GeometryError> {
    if n < 1 {
        return Err(GeometryError::InvalidRank(n));
    }
    let parts: Vec<DoubleComplex> = (0..n as i32).map(|i| shift(a_x, i)).collect();
    let refs: Vec<&DoubleComplex> = parts.iter().collect();
    let mut sum = direct_sum_many(&refs);
    let inclusion = sum.inclusions.swap_remove(0);
    Ok((sum.complex, inclusion))
}

#[derive(Clone, Debug)]
pub struct BlowupResult {
    /// `A_X ⊕ A_Z[1] ⊕ … ⊕ A_Z[r−1]`.
    pub total: DoubleComplex,
    pub base_inclusion: Morphism,
    /// `A_Z[1], …, A_Z[r−1]`.
    pub center_summands: Vec<DoubleComplex>,
    pub codimension: usize,
}

/// Model of the blow-up of `X` along a submanifold `Z` of codimension `r`.
pub fn blow_up(a_x: &DoubleComplex, a_z: &DoubleComplex, r: i64) -> Result<BlowupResult, GeometryError> {
    if r < 2 {
        return Err(GeometryError::CodimensionTooSmall(r));
    }
    let center_summands: Vec<DoubleComplex> = (1..r as i32).map(|i| shift(a_z, i)).collect();
    let mut refs = vec![a_x];
    refs.extend(center_summands.iter());
    let mut sum = direct_sum_many(&refs);
    Ok(BlowupResult {
        total: sum.complex,
        base_inclusion: sum.inclusions.swap_remove(0),
        center_summands,
        codimension: r as usize,
    })
}

/// `table(A) + Σ_{i ∈ shifts} table(A)[i]`, or only the shifted sum when
/// `base` is `None`.
pub fn shifted_sum(
    base: Option<&DoubleComplex>,
    summand: &DoubleComplex,
    shifts: std::ops::Range<i32>,
    kind: CohomologyKind,
) -> CohomologyTable {
    let unit = table(summand, kind);
    let start = match base {
        Some(b) => table(b, kind),
        None => CohomologyTable::zero(unit.kind(), Window::EMPTY),
    };
    shifts.fold(start, |acc, i| acc.add(&unit.shifted(i)))
}

/// Builds the exceptional divisor `E = projective_bundle(A_Z, r)` and checks
/// that `E / A_Z` has, for every cohomology, the tables of
/// `⊕_{i=1}^{r−1} A_Z[i]`.
pub fn exceptional_consistency_check(a_z: &DoubleComplex, r: i64) -> Result<bool, GeometryError> {
    if r < 2 {
        return Err(GeometryError::CodimensionTooSmall(r));
    }
    let (_, inclusion) = projective_bundle(a_z, r)?;
    let (q, _) = quotient(&inclusion)?;
    Ok(CohomologyKind::ALL
        .iter()
        .all(|&kind| table(&q, kind) == shifted_sum(None, a_z, 1..r as i32, kind)))
}

/// Whether `f` is injective on Dolbeault cohomology at every bidegree.
pub fn modification_summand_check(f: &Morphism) -> bool {
    induced_cohomology_map(f, CohomologyKind::Dolbeault)
        .values()
        .all(|m| rank(m) == m.cols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{dot, zero_complex};
    use crate::cohomology::{de_rham, dolbeault};
    use crate::models::{projective_space, torus};

    #[test]
    fn bundle_over_a_point_is_projective_space() {
        for n in 1..4 {
            let (k, inc) = projective_bundle(&dot(0, 0), n).unwrap();
            let p = projective_space(n - 1).unwrap();
            assert_eq!(dolbeault(&k), dolbeault(p.complex()));
            assert!(modification_summand_check(&inc));
        }
        assert_eq!(projective_bundle(&dot(0, 0), 0).unwrap_err(), GeometryError::InvalidRank(0));
    }

    #[test]
    fn bundle_over_an_elliptic_curve() {
        let (k, _) = projective_bundle(torus(1).unwrap().complex(), 2).unwrap();
        assert_eq!(de_rham(&k).betti(), [1, 2, 2, 2, 1]);
    }

    #[test]
    fn blow_up_examples() {
        let p2 = projective_space(2).unwrap();
        let b = blow_up(p2.complex(), &dot(0, 0), 2).unwrap();
        assert_eq!(de_rham(&b.total).betti(), [1, 0, 2, 0, 1]);
        assert_eq!(b.center_summands.len(), 1);
        let same = blow_up(p2.complex(), &zero_complex(), 3).unwrap();
        for kind in CohomologyKind::ALL {
            assert_eq!(table(&same.total, kind), table(p2.complex(), kind));
        }
        assert_eq!(blow_up(p2.complex(), &dot(0, 0), 1).unwrap_err(), GeometryError::CodimensionTooSmall(1));
    }

    #[test]
    fn exceptional_divisor() {
        assert!(exceptional_consistency_check(&dot(0, 0), 3).unwrap());
        assert!(exceptional_consistency_check(torus(1).unwrap().complex(), 2).unwrap());
    }

    #[test]
    fn zero_map_is_not_a_summand() {
        let a = torus(1).unwrap();
        assert!(!modification_summand_check(&Morphism::zero(a.complex(), a.complex())));
    }
}
