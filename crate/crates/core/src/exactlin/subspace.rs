use num_traits::{One, Zero};

use super::elim::{image_basis, kernel_basis, rref_rows};
use super::{ExactScalar, LinAlgError, Matrix};

/// A linearly independent list of coordinate vectors in `ExactScalar^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    ambient_dim: usize,
    vectors: Vec<Vec<ExactScalar>>,
}

impl Basis {
    /// Checked constructor: fails with `Dependent` unless the vectors are independent.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<ExactScalar>>) -> Result<Self, LinAlgError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinAlgError::AmbientMismatch {
                    left: ambient_dim,
                    right: v.len(),
                });
            }
        }
        let b = Self::from_independent(ambient_dim, vectors);
        if super::rank(&b.as_matrix()) != b.dim() {
            return Err(LinAlgError::Dependent);
        }
        Ok(b)
    }

    pub(crate) fn from_independent(ambient_dim: usize, vectors: Vec<Vec<ExactScalar>>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.len() == ambient_dim));
        Self { ambient_dim, vectors }
    }

    /// Independent subset (greedy, in order) of an arbitrary spanning list.
    pub fn spanned_by(ambient_dim: usize, vectors: &[Vec<ExactScalar>]) -> Self {
        if vectors.is_empty() {
            return Self::empty(ambient_dim);
        }
        image_basis(&Matrix::from_columns(ambient_dim, vectors))
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![ExactScalar::zero(); ambient_dim];
                v[i] = ExactScalar::one();
                v
            })
            .collect();
        Self { ambient_dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<ExactScalar>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<ExactScalar>> {
        self.vectors
    }

    /// The `ambient_dim × dim` matrix with the basis vectors as columns.
    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient_dim, &self.vectors)
    }

    /// Image of the subspace under `m` (not necessarily of the same dimension).
    pub fn map(&self, m: &Matrix) -> Basis {
        let images: Vec<_> = self.vectors.iter().map(|v| m.apply(v)).collect();
        Self::spanned_by(m.rows(), &images)
    }

    pub fn contains_vector(&self, v: &[ExactScalar]) -> bool {
        Coordinates::new(self).coords(v).is_some()
    }

    /// `span(other) ⊆ span(self)`
    pub fn contains(&self, other: &Basis) -> bool {
        if other.ambient_dim != self.ambient_dim {
            return false;
        }
        let solver = Coordinates::new(self);
        other.vectors.iter().all(|v| solver.coords(v).is_some())
    }

    pub fn same_span(&self, other: &Basis) -> bool {
        self.dim() == other.dim() && self.contains(other)
    }
}

fn check_ambient(u: &Basis, v: &Basis) -> Result<(), LinAlgError> {
    if u.ambient_dim != v.ambient_dim {
        return Err(LinAlgError::AmbientMismatch {
            left: u.ambient_dim,
            right: v.ambient_dim,
        });
    }
    Ok(())
}

pub fn subspace_sum(u: &Basis, v: &Basis) -> Result<Basis, LinAlgError> {
    check_ambient(u, v)?;
    let all: Vec<_> = u.vectors.iter().chain(v.vectors.iter()).cloned().collect();
    Ok(Basis::spanned_by(u.ambient_dim, &all))
}

/// Intersection via the kernel of `[U | -V]`, pushed forward through `U`.
pub fn subspace_intersection(u: &Basis, v: &Basis) -> Result<Basis, LinAlgError> {
    check_ambient(u, v)?;
    if u.dim() == 0 || v.dim() == 0 {
        return Ok(Basis::empty(u.ambient_dim));
    }
    let stacked = u.as_matrix().hstack(&v.as_matrix().neg());
    let k = kernel_basis(&stacked);
    let um = u.as_matrix();
    let vectors = k
        .vectors()
        .iter()
        .map(|x| um.apply(&x[..u.dim()]))
        .collect();
    Ok(Basis::from_independent(u.ambient_dim, vectors))
}

pub fn subquotient_dim(z: &Basis, b: &Basis) -> Result<usize, LinAlgError> {
    check_ambient(z, b)?;
    if !z.contains(b) {
        return Err(LinAlgError::NotASubspace);
    }
    Ok(z.dim() - b.dim())
}

/// Solves `B·x = v` for a fixed basis `B`: a left inverse of `B` plus the
/// rows annihilating `span(B)`, both read off the RREF of `[B | I]`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    left_inverse: Matrix,
    annihilator: Matrix,
}

impl Coordinates {
    pub fn new(basis: &Basis) -> Self {
        let n = basis.ambient_dim;
        let k = basis.dim();
        let aug = basis.as_matrix().hstack(&Matrix::identity(n));
        let mut rows = aug.to_dense();
        let pivots = rref_rows(&mut rows, k + n);
        debug_assert!(pivots.iter().take(k).copied().eq(0..k), "basis vectors are dependent");
        let reduced = Matrix::from_dense(n, k + n, rows);
        Self {
            left_inverse: reduced.block(0, k, k, n),
            annihilator: reduced.block(k, k, n - k, n),
        }
    }

    /// Coordinates of `v` in the basis, or `None` when `v` is outside its span.
    pub fn coords(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        if self.annihilator.apply(v).iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.left_inverse.apply(v))
    }
}

/// A subquotient `Z/B` with a fixed set of coset representatives extending
/// a basis of `B` to one of `Z`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    sub: Basis,
    reps: Vec<Vec<ExactScalar>>,
    solver: Coordinates,
}

impl Subquotient {
    pub fn new(z: &Basis, b: &Basis) -> Result<Self, LinAlgError> {
        check_ambient(z, b)?;
        if !z.contains(b) {
            return Err(LinAlgError::NotASubspace);
        }
        let n = z.ambient_dim;
        let k = b.dim();
        let cols: Vec<_> = b.vectors.iter().chain(z.vectors.iter()).cloned().collect();
        let combined = Matrix::from_columns(n, &cols);
        let (_, pivots) = super::rref(&combined);
        debug_assert!(pivots.iter().take(k).copied().eq(0..k));
        let reps: Vec<_> = pivots[k..].iter().map(|&c| cols[c].clone()).collect();
        let all: Vec<_> = b.vectors.iter().chain(reps.iter()).cloned().collect();
        let full = Basis::from_independent(n, all);
        Ok(Self {
            sub: b.clone(),
            solver: Coordinates::new(&full),
            reps,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<ExactScalar>] {
        &self.reps
    }

    pub fn sub(&self) -> &Basis {
        &self.sub
    }

    /// Coset coordinates of `v`; `None` when `v` does not lie in `Z`.
    pub fn class_of(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        self.solver
            .coords(v)
            .map(|c| c[self.sub.dim()..].to_vec())
    }

    pub fn in_sub(&self, v: &[ExactScalar]) -> Option<bool> {
        self.class_of(v).map(|c| c.iter().all(|x| x.is_zero()))
    }
}

/// Matrix of the map `Z_src/B_src → Z_tgt/B_tgt` induced by `f`, in the
/// coset bases chosen by [`Subquotient::new`].
pub fn induced_subquotient_map(
    f: &Matrix,
    z_src: &Basis,
    b_src: &Basis,
    z_tgt: &Basis,
    b_tgt: &Basis,
) -> Result<Matrix, LinAlgError> {
    let src = Subquotient::new(z_src, b_src)?;
    let tgt = Subquotient::new(z_tgt, b_tgt)?;
    induced_map_between(f, &src, &tgt)
}

pub fn induced_map_between(f: &Matrix, src: &Subquotient, tgt: &Subquotient) -> Result<Matrix, LinAlgError> {
    if f.cols() != src.sub.ambient_dim || f.rows() != tgt.sub.ambient_dim {
        return Err(LinAlgError::AmbientMismatch {
            left: f.cols(),
            right: src.sub.ambient_dim,
        });
    }
    for v in src.sub.vectors() {
        if tgt.in_sub(&f.apply(v)) != Some(true) {
            return Err(LinAlgError::NotWellDefined);
        }
    }
    let mut out = Matrix::zeros(tgt.dim(), src.dim());
    for (j, rep) in src.reps.iter().enumerate() {
        let class = tgt.class_of(&f.apply(rep)).ok_or(LinAlgError::NotWellDefined)?;
        for (i, v) in class.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}
