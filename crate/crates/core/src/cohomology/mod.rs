//! The five cohomologies of a double complex, the Frölicher spectral
//! sequences, and induced maps.
//!
//! Tables are computed from ranks. [`cohomology_space`] builds the same
//! groups as explicit subquotients, which is what the spectral sequence and
//! the induced maps use.

mod frolicher;
mod table;
mod total;

use std::collections::BTreeMap;

use crate::bicomplex::{Bidegree, DoubleComplex, Morphism};
use crate::exactlin::{
    image_basis, induced_map_between, kernel_basis, rank, subspace_sum, Matrix, Subquotient,
};

pub use frolicher::{frolicher, SpectralSequenceResult};
pub use table::{CohomologyKind, CohomologyTable, Direction, Slot, TableKind};
pub(crate) use total::Total;

fn bigraded(
    a: &DoubleComplex,
    kind: CohomologyKind,
    entry: impl Fn(Bidegree, usize) -> usize,
) -> CohomologyTable {
    CohomologyTable::bigraded(
        TableKind::Cohomology(kind),
        a.window(),
        a.support().map(|(b, n)| (b, entry(b, n))),
    )
}

/// `h^{p,q} = dim ker ∂₂^{p,q} − rank ∂₂^{p,q−1}`.
pub fn dolbeault(a: &DoubleComplex) -> CohomologyTable {
    bigraded(a, CohomologyKind::Dolbeault, |(p, q), n| {
        n - rank(&a.d2((p, q))) - rank(&a.d2((p, q - 1)))
    })
}

/// `dim ker ∂₁^{p,q} − rank ∂₁^{p−1,q}`.
pub fn conjugate_dolbeault(a: &DoubleComplex) -> CohomologyTable {
    bigraded(a, CohomologyKind::ConjugateDolbeault, |(p, q), n| {
        n - rank(&a.d1((p, q))) - rank(&a.d1((p - 1, q)))
    })
}

/// `(ker ∂₁ ∩ ker ∂₂) / im ∂₁∂₂`.
pub fn bott_chern(a: &DoubleComplex) -> CohomologyTable {
    bigraded(a, CohomologyKind::BottChern, |(p, q), n| {
        let closed = n - rank(&a.d1((p, q)).vstack(&a.d2((p, q))));
        closed - rank(&d1_after_d2(a, (p - 1, q - 1)))
    })
}

/// `ker ∂₁∂₂ / (im ∂₁ + im ∂₂)`.
pub fn aeppli(a: &DoubleComplex) -> CohomologyTable {
    bigraded(a, CohomologyKind::Aeppli, |(p, q), n| {
        let closed = n - rank(&d1_after_d2(a, (p, q)));
        closed - rank(&a.d1((p - 1, q)).hstack(&a.d2((p, q - 1))))
    })
}

/// Cohomology of the total complex with `D = ∂₁ + ∂₂`.
pub fn de_rham(a: &DoubleComplex) -> CohomologyTable {
    let t = Total::new(a);
    let ranks: BTreeMap<i32, usize> = t.degrees().map(|k| (k, rank(&t.differential(a, k)))).collect();
    let r = |k: i32| ranks.get(&k).copied().unwrap_or(0);
    CohomologyTable::graded(a.window(), t.degrees().map(|k| (k, t.dim(k) - r(k) - r(k - 1))))
}

pub fn table(a: &DoubleComplex, kind: CohomologyKind) -> CohomologyTable {
    match kind {
        CohomologyKind::Dolbeault => dolbeault(a),
        CohomologyKind::ConjugateDolbeault => conjugate_dolbeault(a),
        CohomologyKind::DeRham => de_rham(a),
        CohomologyKind::BottChern => bott_chern(a),
        CohomologyKind::Aeppli => aeppli(a),
    }
}

pub fn euler_characteristic(a: &DoubleComplex) -> i64 {
    a.euler_characteristic()
}

/// `∂₁ ∘ ∂₂` out of `(p, q)`, landing in `(p+1, q+1)`.
fn d1_after_d2(a: &DoubleComplex, (p, q): Bidegree) -> Matrix {
    a.d1((p, q + 1)).mul(&a.d2((p, q)))
}

/// The group of `kind` at `(p, q)` as an explicit subquotient of `A^{p,q}`.
/// Panics for de Rham, see [`de_rham_space`].
pub fn cohomology_space(a: &DoubleComplex, kind: CohomologyKind, (p, q): Bidegree) -> Subquotient {
    let (z, b) = match kind {
        CohomologyKind::Dolbeault => (kernel_basis(&a.d2((p, q))), image_basis(&a.d2((p, q - 1)))),
        CohomologyKind::ConjugateDolbeault => (kernel_basis(&a.d1((p, q))), image_basis(&a.d1((p - 1, q)))),
        CohomologyKind::BottChern => (
            kernel_basis(&a.d1((p, q)).vstack(&a.d2((p, q)))),
            image_basis(&d1_after_d2(a, (p - 1, q - 1))),
        ),
        CohomologyKind::Aeppli => (
            kernel_basis(&d1_after_d2(a, (p, q))),
            subspace_sum(&image_basis(&a.d1((p - 1, q))), &image_basis(&a.d2((p, q - 1))))
                .expect("both images live in A^{p,q}"),
        ),
        CohomologyKind::DeRham => panic!("de Rham cohomology is graded by total degree"),
    };
    Subquotient::new(&z, &b).expect("boundaries are cycles in a valid complex")
}

/// `H^k_dR` as a subquotient of the total space in degree `k`.
pub fn de_rham_space(a: &DoubleComplex, k: i32) -> Subquotient {
    let t = Total::new(a);
    de_rham_space_in(a, &t, k)
}

fn de_rham_space_in(a: &DoubleComplex, t: &Total, k: i32) -> Subquotient {
    let z = kernel_basis(&t.differential(a, k));
    let b = image_basis(&t.differential(a, k - 1));
    Subquotient::new(&z, &b).expect("boundaries are cycles in a valid complex")
}

/// Matrices of the maps induced by `f` in the coset bases of
/// [`cohomology_space`] (or [`de_rham_space`]), one per slot where source
/// or target is nonzero.
pub fn induced_cohomology_map(f: &Morphism, kind: CohomologyKind) -> BTreeMap<Slot, Matrix> {
    let (src, tgt) = (f.source(), f.target());
    let mut out = BTreeMap::new();
    if kind.is_graded() {
        let (ts, tt) = (Total::new(src), Total::new(tgt));
        let mut degrees: Vec<i32> = ts.degrees().chain(tt.degrees()).collect();
        degrees.sort_unstable();
        degrees.dedup();
        for k in degrees {
            let m = Total::totalize_map(&ts, &tt, k, |b| f.block(b).into_owned());
            let s = de_rham_space_in(src, &ts, k);
            let t = de_rham_space_in(tgt, &tt, k);
            if s.dim() + t.dim() > 0 {
                let induced = induced_map_between(&m, &s, &t).expect("morphisms preserve cycles and boundaries");
                out.insert(Slot::Degree(k), induced);
            }
        }
    } else {
        let mut at: Vec<Bidegree> = src.support().chain(tgt.support()).map(|(b, _)| b).collect();
        at.sort_unstable();
        at.dedup();
        for b in at {
            let s = cohomology_space(src, kind, b);
            let t = cohomology_space(tgt, kind, b);
            if s.dim() + t.dim() > 0 {
                let induced = induced_map_between(&f.block(b), &s, &t).expect("morphisms preserve cycles and boundaries");
                out.insert(Slot::Bidegree(b.0, b.1), induced);
            }
        }
    }
    out
}
