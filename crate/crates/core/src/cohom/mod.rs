//! Compactly supported cohomology of fiber descriptions, rank-1 local systems on tori,
//! counting polynomials and the stalk tables of induced cuspidal pairs.

mod case;
mod space;
mod stalks;

use thiserror::Error;

pub use case::{
    predicted_count, roots_of_minus_one, CaseData, CaseName, CountRule, FiberDatum, StratumPart, StratumSpec,
};
pub use space::{counting_polynomial, euler_characteristic, hc_constant, hc_local, hc_rank1_torus, Betti, Poly, SpaceExpr};
pub use stalks::{stalk_table, StalkTable, CONVENTION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown case {0:?}")]
    UnknownCase(String),
    #[error("monodromy {0} vanishes in the coefficient field")]
    ZeroMonodromy(i64),
    #[error("expected {expected} monodromy scalars, found {found}")]
    MonodromyCount { expected: usize, found: usize },
    #[error("characteristic {0} is neither 0 nor prime")]
    CompositeCharacteristic(u64),
    #[error("characteristic 2 is excluded; pass the explicit flag to see it")]
    CharacteristicTwo,
}
