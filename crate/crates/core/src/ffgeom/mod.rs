//! Brute-force point counts of flag varieties over prime fields, used to check fiber
//! descriptions independently of how they were derived.

mod field;
mod flags;
mod subspace;
mod verify;

use thiserror::Error;

pub use field::PrimeFieldMatrix;
pub use flags::{count_stable_flags, Condition, FlagSpec, FormSpec};
pub use subspace::{enumerate_subspaces, Subspace, Subspaces};
pub use verify::{verify_fiber_counts, CountReport, CountRow, SumCheck};

use crate::cohom::CohomError;

/// Largest prime and ambient dimension accepted by the enumerators.
pub const MAX_PRIME: u64 = 13;
pub const MAX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("enumeration limit exceeded: p = {p}, d = {d} (need p <= 13 prime, d <= 6)")]
    LimitExceeded { p: u64, d: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid flag spec: {0}")]
    InvalidSpec(String),
    #[error("matrix does not preserve the form")]
    NotStableUnderForm,
    #[error("matrix is not nilpotent mod {0}")]
    NotNilpotent(u64),
    #[error("x preserves V1 but not its orthogonal; arithmetic is broken")]
    ClosureViolated,
    #[error("{0} has a denominator divisible by the characteristic")]
    BadReduction(String),
    #[error(transparent)]
    Cohom(#[from] CohomError),
}
