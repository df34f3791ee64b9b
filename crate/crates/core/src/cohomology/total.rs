use std::collections::BTreeMap;

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::exactlin::Matrix;

/// The total complex `Tᵏ = ⊕_{p+q=k} A^{p,q}` with `D = ∂₁ + ∂₂`. Inside each
/// degree the summands are ordered by increasing `p`.
pub(crate) struct Total {
    pieces: BTreeMap<i32, Vec<(Bidegree, usize, usize)>>,
    dims: BTreeMap<i32, usize>,
}

impl Total {
    pub(crate) fn new(a: &DoubleComplex) -> Self {
        let mut pieces: BTreeMap<i32, Vec<(Bidegree, usize, usize)>> = BTreeMap::new();
        let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
        for (b, n) in a.support() {
            let k = b.0 + b.1;
            let off = dims.entry(k).or_insert(0);
            pieces.entry(k).or_default().push((b, *off, n));
            *off += n;
        }
        Self { pieces, dims }
    }

    pub(crate) fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    pub(crate) fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    /// `(bidegree, offset, dim)` of each summand in degree `k`.
    pub(crate) fn pieces(&self, k: i32) -> &[(Bidegree, usize, usize)] {
        self.pieces.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub(crate) fn offset(&self, b: Bidegree) -> Option<usize> {
        self.pieces(b.0 + b.1).iter().find(|x| x.0 == b).map(|x| x.1)
    }

    /// The filtration index (`p` for columns) of each coordinate of `Tᵏ`.
    pub(crate) fn column_index(&self, k: i32) -> Vec<i32> {
        self.pieces(k)
            .iter()
            .flat_map(|&((p, _), _, n)| std::iter::repeat(p).take(n))
            .collect()
    }

    /// `D: Tᵏ → Tᵏ⁺¹`.
    pub(crate) fn differential(&self, a: &DoubleComplex, k: i32) -> Matrix {
        let mut m = Matrix::zeros(self.dim(k + 1), self.dim(k));
        for &((p, q), off, _) in self.pieces(k) {
            if let Some(t) = self.offset((p + 1, q)) {
                m.put_block(t, off, &a.d1((p, q)));
            }
            if let Some(t) = self.offset((p, q + 1)) {
                m.put_block(t, off, &a.d2((p, q)));
            }
        }
        m
    }

    /// A blockwise map between two complexes, totalized in degree `k`.
    pub(crate) fn totalize_map(
        src: &Total,
        tgt: &Total,
        k: i32,
        block: impl Fn(Bidegree) -> Matrix,
    ) -> Matrix {
        let mut m = Matrix::zeros(tgt.dim(k), src.dim(k));
        for &(b, off, _) in src.pieces(k) {
            if let Some(t) = tgt.offset(b) {
                m.put_block(t, off, &block(b));
            }
        }
        m
    }
}
