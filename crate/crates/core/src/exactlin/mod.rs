//! Exact integer and rational linear algebra: Smith normal form, ranks and kernels over
//! `Q` and `F_p`, Hermite forms of lattices, and Jordan types of nilpotent matrices.

mod hnf;
mod matrix;
mod partition;
mod snf;
mod solve;

use thiserror::Error;

pub use hnf::{hermite_normal_form, lattice_contains};
pub use matrix::{IntMatrix, RatMatrix};
pub use partition::{nilpotent_jordan_partition, Partition};
pub use snf::{smith_normal_form, SnfResult};
pub use solve::{
    determinant, inverse, is_prime, prime_divisors, primitive_integer_vector, rank_and_kernel, rank_and_kernel_in,
    rank_of_vectors, rank_rational, rational_kernel, rref, solve_affine, span_basis, FieldChar, RankKernel,
};
pub(crate) use solve::inv_mod;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("characteristic {0} is neither 0 nor prime")]
    CompositeCharacteristic(u64),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
