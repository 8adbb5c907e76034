//! Nilpotent orbits of `sl_n` and `sp_2m` by partition, and `G_0`-orbits on graded pieces of
//! `sl_n` through type-A quiver slices.

mod classical;
mod graded;

use serde::Serializer;
use thiserror::Error;

pub use classical::{
    closure_leq, component_group, jordan_representative, nilpotent_orbits, orbit_dimension, ComponentGroup,
    NilpotentOrbit,
};
pub use graded::{
    graded_orbit_dimension, graded_orbit_reps_type_a, graded_orbit_table, GradedOrbitRep, GradedOrbitRow,
    QuiverSlice,
};

use crate::exactlin::RatMatrix;
use crate::liegrade::LieError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("invalid partition {0} for this type")]
    InvalidPartition(String),
    #[error("no orbits for size {0}")]
    InvalidSize(usize),
    #[error("partitions of {0} and {1} are not comparable")]
    WeightMismatch(usize, usize),
    #[error("graded orbit enumeration needs type A")]
    NotTypeA,
    #[error("cocharacter weights must be weakly decreasing")]
    UnsortedWeights,
    #[error("degree must be nonzero")]
    ZeroDegree,
    #[error("element is not in the degree {0} piece")]
    NotInComponent(i64),
    #[error(transparent)]
    Lie(#[from] LieError),
}

pub(crate) fn serialize_matrix<S: Serializer>(m: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}
