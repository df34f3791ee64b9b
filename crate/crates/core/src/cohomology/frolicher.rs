use std::collections::HashMap;

use num_traits::Zero;

use crate::bicomplex::{transpose, DoubleComplex};
use crate::exactlin::{kernel_basis, subspace_sum, Basis, ExactScalar, Matrix};

use super::{CohomologyTable, Direction, TableKind, Total};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequenceResult {
    pub direction: Direction,
    /// `pages[r - 1]` is `E_r`.
    pub pages: Vec<CohomologyTable>,
    /// Smallest `r` with `E_r = E_∞`.
    pub degeneration_page: usize,
    pub e_infinity: CohomologyTable,
}

impl SpectralSequenceResult {
    /// `E_r`; pages past the last computed one equal `E_∞`.
    pub fn page(&self, r: usize) -> CohomologyTable {
        assert!(r >= 1, "pages start at r = 1");
        match self.pages.get(r - 1) {
            Some(t) => t.clone(),
            None => self.e_infinity.clone().with_kind(TableKind::Page {
                direction: self.direction,
                r,
            }),
        }
    }
}

/// Spectral sequence of the filtration `F^s Tᵏ = ⊕_{p ≥ s} A^{p,k−p}` of the
/// total complex, with
/// `E_r^{s} = Z_r^s / (Z_{r−1}^{s+1} + D Z_{r−1}^{s−r+1})` and
/// `Z_r^s = {x ∈ F^s : Dx ∈ F^{s+r}}`.
struct Filtered<'a> {
    a: &'a DoubleComplex,
    total: Total,
    diffs: HashMap<i32, Matrix>,
    cycles: HashMap<(usize, i32, i32), Basis>,
}

impl<'a> Filtered<'a> {
    fn new(a: &'a DoubleComplex) -> Self {
        let total = Total::new(a);
        let diffs = total
            .degrees()
            .flat_map(|k| [k - 1, k])
            .map(|k| (k, total.differential(a, k)))
            .collect();
        Self {
            a,
            total,
            diffs,
            cycles: HashMap::new(),
        }
    }

    fn d(&self, k: i32) -> &Matrix {
        &self.diffs[&k]
    }

    /// `Z_r^s` in degree `k`, as vectors of `Tᵏ`.
    fn z(&mut self, r: usize, s: i32, k: i32) -> Basis {
        if let Some(b) = self.cycles.get(&(r, s, k)) {
            return b.clone();
        }
        let n = self.total.dim(k);
        let filt = self.total.column_index(k);
        let cols: Vec<usize> = (0..n).filter(|&i| filt[i] >= s).collect();
        let basis = if cols.is_empty() {
            Basis::empty(n)
        } else {
            let target = self.total.column_index(k + 1);
            let rows: Vec<usize> = (0..target.len()).filter(|&i| target[i] < s + r as i32).collect();
            let restricted = self.d(k).select_cols(&cols).select_rows(&rows);
            let vectors: Vec<Vec<ExactScalar>> = kernel_basis(&restricted)
                .into_vectors()
                .into_iter()
                .map(|v| {
                    let mut full = vec![ExactScalar::zero(); n];
                    for (i, x) in cols.iter().zip(v) {
                        full[*i] = x;
                    }
                    full
                })
                .collect();
            Basis::from_independent(n, vectors)
        };
        self.cycles.insert((r, s, k), basis.clone());
        basis
    }

    fn entry(&mut self, r: usize, s: i32, k: i32) -> usize {
        let top = self.z(r, s, k);
        if top.dim() == 0 {
            return 0;
        }
        let shallow = self.z(r - 1, s + 1, k);
        let source = self.z(r - 1, s + 1 - r as i32, k - 1);
        let image = source.map(self.d(k - 1));
        let boundary = subspace_sum(&shallow, &image).expect("same ambient space");
        debug_assert!(top.contains(&boundary));
        top.dim() - boundary.dim()
    }

    fn page(&mut self, r: usize) -> Vec<((i32, i32), usize)> {
        let a = self.a;
        a.support()
            .map(|((p, q), _)| ((p, q), self.entry(r, p, p + q)))
            .collect()
    }
}

/// All pages of the Frölicher spectral sequence in the given direction, up
/// to the first page guaranteed to be `E_∞` (one past the filtration span).
pub fn frolicher(a: &DoubleComplex, direction: Direction) -> SpectralSequenceResult {
    let flipped;
    let work = match direction {
        Direction::Column => a,
        Direction::Row => {
            flipped = transpose(a);
            &flipped
        }
    };
    let w = work.window();
    let span = if w.is_empty() { 0 } else { (w.p_max - w.p_min) as usize };
    let mut f = Filtered::new(work);
    let mut pages = Vec::with_capacity(span + 1);
    for r in 1..=span + 1 {
        let t = CohomologyTable::bigraded(TableKind::Page { direction, r }, w, f.page(r));
        pages.push(match direction {
            Direction::Column => t,
            Direction::Row => t.transposed(),
        });
    }
    let last = pages.last().expect("at least one page").clone();
    let degeneration_page = pages.iter().position(|t| *t == last).expect("last page matches itself") + 1;
    SpectralSequenceResult {
        direction,
        pages,
        degeneration_page,
        e_infinity: last.with_kind(TableKind::Infinity(direction)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{dot, random_complex, square, zigzag, Window};
    use crate::cohomology::{conjugate_dolbeault, de_rham, dolbeault};

    #[test]
    fn zigzag_dies_on_page_two() {
        let ss = frolicher(&zigzag(0, 0, 0, 2), Direction::Column);
        assert_eq!(ss.pages[0].total(), 2);
        assert!(ss.pages[1].is_zero());
        assert_eq!(ss.degeneration_page, 2);
    }

    #[test]
    fn trivial_complexes_degenerate_immediately() {
        for a in [dot(0, 0), square(1, 0)] {
            for dir in [Direction::Column, Direction::Row] {
                assert_eq!(frolicher(&a, dir).degeneration_page, 1);
            }
        }
    }

    #[test]
    fn first_page_and_abutment() {
        for seed in 0..6 {
            let a = random_complex(seed, Window::new(0, 3, 0, 2), 10).unwrap();
            let col = frolicher(&a, Direction::Column);
            let row = frolicher(&a, Direction::Row);
            assert_eq!(col.pages[0], dolbeault(&a));
            assert_eq!(row.pages[0], conjugate_dolbeault(&a));
            let dr = de_rham(&a);
            for k in -1..7 {
                assert_eq!(col.e_infinity.degree(k), dr.degree(k));
                assert_eq!(row.e_infinity.degree(k), dr.degree(k));
            }
        }
    }
}
