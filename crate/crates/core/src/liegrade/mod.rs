//! Matrix realizations of `sl_d` and `sp_2m`, cocharacter gradings, graded sl2-triples, the
//! parabolic attached to a graded nilpotent and the n-rigidity test.

mod algebra;
mod parabolic;
mod triple;

use serde::Serializer;
use thiserror::Error;

pub use algebra::{
    build_algebra, graded_component, in_component, occurring_degrees, standard_symplectic_form, to_i64_rows,
    weight_matrix, Cocharacter, GradedComponent, MatrixLieAlgebra,
};
pub use parabolic::{
    canonical_parabolic, check_n_rigid, combined_weights, in_levi_component, in_span, ParabolicDatum,
    ParabolicReport, RigidityReport, RigidityWitness,
};
pub use triple::{adapted_sl2_triple, chi_prime, ChiPrime, Sl2Triple};

use crate::exactlin::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unsupported matrix size {0}")]
    BadDimension(usize),
    #[error("bad form: {0}")]
    BadForm(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cocharacter {0} does not lie in the group")]
    InvalidCocharacter(String),
    #[error("element is not in the degree {0} piece")]
    NotInComponent(i64),
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("no sl2-triple: {0}")]
    NoTriple(String),
    #[error("h has non-integral eigenvalues")]
    NonIntegralWeights,
    #[error("the two cocharacters cannot be diagonalized together")]
    NotSimultaneouslyDiagonal,
    #[error("degree must be nonzero")]
    ZeroDegree,
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn serialize_matrix<S: Serializer>(m: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}
