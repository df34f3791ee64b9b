//! Exact arithmetic over the Gaussian rationals and the linear algebra
//! kernel (rank, kernel, image, sums, intersections, subquotients) that
//! every cohomology computation is built on.

mod elim;
mod matrix;
mod scalar;
mod subspace;

pub use elim::{image_basis, kernel_basis, rank, rref};
pub use matrix::Matrix;
pub use scalar::{ExactScalar, ParseScalarError};
pub use subspace::{
    induced_map_between, induced_subquotient_map, subquotient_dim, subspace_intersection, subspace_sum, Basis,
    Coordinates, Subquotient,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("subspace is not contained in the ambient subspace")]
    NotASubspace,
    #[error("map does not respect the subquotients")]
    NotWellDefined,
}
