//! Exact rational linear algebra: numbers, sparse matrices, elimination,
//! kernels and inertia of symmetric forms.

mod elim;
mod matrix;
mod rat;
mod signature;

pub use elim::{kernel_basis, kernel_basis_sparse, rank, rref_of_rows, Echelon, Rref, Subspace};
pub use matrix::{Accumulator, RatMatrix, RatVector, SparseVec};
pub use rat::{ParseRatError, Rat};
pub use signature::{symmetric_signature, Signature};
