//! Exact dense linear algebra over prime fields.

mod enumerate;
mod field;
mod matrix;
mod subspace;

pub use enumerate::{all_vectors, check_cap, random_matrix, random_vector, Vectors};
pub use field::{is_prime, Fp, Scalar};
pub use matrix::{image_basis, nullspace_basis, rank, solve, Matrix, Rref};
pub use subspace::{quotient_basis, Quotient, Subspace};
