use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::space::{counting_polynomial, SpaceExpr};
use super::CohomError;
use crate::exactlin::{Partition, RatMatrix};
use crate::rootdata::GroupType;

const SP4: &str = include_str!("../../fixtures/sp4.toml");
const SL4: &str = include_str!("../../fixtures/sl4.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseName {
    Sp4,
    Sl4,
}

impl CaseName {
    pub const ALL: [CaseName; 2] = [CaseName::Sp4, CaseName::Sl4];
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseName::Sp4 => "sp4",
            CaseName::Sl4 => "sl4",
        })
    }
}

impl FromStr for CaseName {
    type Err = CohomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sp4" => Ok(CaseName::Sp4),
            "sl4" => Ok(CaseName::Sl4),
            other => Err(CohomError::UnknownCase(other.to_string())),
        }
    }
}

/// How many `F_q`-points a stratum has.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountRule {
    /// The counting polynomial of the expression.
    #[default]
    Polynomial,
    /// Square roots of −1 in `F_q`: 1 for `q = 2`, 2 for `q ≡ 1 (4)`, 0 for `q ≡ 3 (4)`.
    RootsOfMinusOne,
    /// The full fiber minus the square roots of −1.
    FullMinusRootsOfMinusOne,
}

pub fn roots_of_minus_one(q: u64) -> u64 {
    match q % 4 {
        _ if q == 2 => 1,
        1 => 2,
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumSpec {
    pub name: String,
    pub conditions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumPart {
    pub stratum: String,
    pub expr: SpaceExpr,
    #[serde(default)]
    pub rule: CountRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDatum {
    pub partition: Partition,
    /// Matrix in the shared text format.
    pub representative: String,
    pub full_fiber: SpaceExpr,
    pub cuspidal_part: SpaceExpr,
    #[serde(default)]
    pub cuspidal_rule: CountRule,
    pub monodromy: Vec<i64>,
    #[serde(default)]
    pub other: Vec<StratumPart>,
}

impl FiberDatum {
    pub fn label(&self) -> String {
        self.partition.to_string()
    }

    pub fn representative_matrix(&self) -> Result<RatMatrix, CohomError> {
        self.representative.parse().map_err(|e| CohomError::Parse(format!("{e}")))
    }
}

/// A cuspidal pair on a Levi and the fibers of its induction, one record per orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseData {
    pub name: CaseName,
    pub group: GroupType,
    pub ambient: usize,
    pub dim_c: i64,
    pub cuspidal_levi: String,
    /// `symplectic` (the standard form) or `none`.
    pub form: String,
    pub flag_dims: Vec<usize>,
    pub cuspidal_conditions: Vec<String>,
    /// Whether the cuspidal stratum and `strata` together partition the fiber.
    pub strata_cover_fiber: bool,
    #[serde(default)]
    pub strata: Vec<StratumSpec>,
    pub orbits: Vec<FiberDatum>,
}

impl CaseData {
    pub fn load(name: CaseName) -> Result<CaseData, CohomError> {
        let text = match name {
            CaseName::Sp4 => SP4,
            CaseName::Sl4 => SL4,
        };
        Self::from_toml(text)
    }

    pub fn from_toml(text: &str) -> Result<CaseData, CohomError> {
        let case: CaseData = toml::from_str(text).map_err(|e| CohomError::Parse(e.to_string()))?;
        case.validate()?;
        Ok(case)
    }

    fn validate(&self) -> Result<(), CohomError> {
        for o in &self.orbits {
            if o.monodromy.len() != o.cuspidal_part.loop_count() {
                return Err(CohomError::MonodromyCount { expected: o.cuspidal_part.loop_count(), found: o.monodromy.len() });
            }
            if o.partition.weight() != self.ambient {
                return Err(CohomError::Parse(format!("{} does not partition {}", o.partition, self.ambient)));
            }
            let x = o.representative_matrix()?;
            if x.rows() != self.ambient || x.cols() != self.ambient {
                return Err(CohomError::Parse(format!("representative of {} has the wrong size", o.label())));
            }
            for part in &o.other {
                if !self.strata.iter().any(|s| s.name == part.stratum) {
                    return Err(CohomError::Parse(format!("unknown stratum {:?}", part.stratum)));
                }
            }
        }
        Ok(())
    }
}

/// Predicted number of `F_q`-points of a stratum.
pub fn predicted_count(expr: &SpaceExpr, rule: CountRule, full: &SpaceExpr, q: u64) -> i128 {
    match rule {
        CountRule::Polynomial => counting_polynomial(expr).eval(q as i64),
        CountRule::RootsOfMinusOne => roots_of_minus_one(q) as i128,
        CountRule::FullMinusRootsOfMinusOne => counting_polynomial(full).eval(q as i64) - roots_of_minus_one(q) as i128,
    }
}
