use std::fmt;

use serde::Serialize;

use super::{count_stable_flags, Condition, FfError, FlagSpec, FormSpec, PrimeFieldMatrix, MAX_PRIME};
use crate::cohom::{predicted_count, CaseData, CaseName, CountRule, SpaceExpr};
use crate::exactlin::is_prime;
use crate::liegrade::standard_symplectic_form;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub orbit: String,
    /// `full`, `cuspidal`, or the name of an extra stratum.
    pub stratum: String,
    pub prime: u64,
    pub expression: String,
    pub rule: CountRule,
    pub predicted: i128,
    pub count: u64,
    pub matches: bool,
}

/// Strata counts against the full fiber: equality when the strata cover it, otherwise `≤`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumCheck {
    pub orbit: String,
    pub prime: u64,
    pub parts: u64,
    pub full: u64,
    pub exact: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub case: CaseName,
    pub primes: Vec<u64>,
    pub rows: Vec<CountRow>,
    pub sums: Vec<SumCheck>,
}

impl CountReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches) && self.sums.iter().all(|s| s.holds)
    }

    pub fn mismatches(&self) -> Vec<&CountRow> {
        self.rows.iter().filter(|r| !r.matches).collect()
    }

    pub fn row(&self, orbit: &str, stratum: &str, prime: u64) -> Option<&CountRow> {
        self.rows.iter().find(|r| r.orbit == orbit && r.stratum == stratum && r.prime == prime)
    }
}

fn parse_conditions(list: &[String]) -> Result<Vec<Condition>, FfError> {
    list.iter().map(|c| c.parse()).collect()
}

fn base_spec(case: &CaseData) -> Result<FlagSpec, FfError> {
    let form = match case.form.as_str() {
        "none" => FormSpec::None,
        "symplectic" => FormSpec::Symplectic(standard_symplectic_form(case.ambient)),
        other => return Err(FfError::InvalidSpec(format!("unknown form {other:?}"))),
    };
    FlagSpec::new(case.ambient, case.flag_dims.clone(), form, vec![Condition::XStable])
}

/// Counts every stratum of every fiber of the case at each prime and compares with the
/// fixture's predictions.
pub fn verify_fiber_counts(case: &CaseData, primes: &[u64]) -> Result<CountReport, FfError> {
    for &p in primes {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(FfError::LimitExceeded { p, d: case.ambient });
        }
    }
    let full_spec = base_spec(case)?;
    let cusp_spec = full_spec.with_conditions(parse_conditions(&case.cuspidal_conditions)?)?;
    let extra: Vec<(String, FlagSpec)> = case
        .strata
        .iter()
        .map(|s| Ok((s.name.clone(), full_spec.with_conditions(parse_conditions(&s.conditions)?)?)))
        .collect::<Result<_, FfError>>()?;

    let mut rows = Vec::new();
    let mut sums = Vec::new();
    for o in &case.orbits {
        let x = o.representative_matrix()?;
        for &p in primes {
            let xp = PrimeFieldMatrix::from_rational(&x, p)?;
            let mut row = |stratum: &str, spec: &FlagSpec, expr: &SpaceExpr, rule: CountRule| -> Result<u64, FfError> {
                let count = count_stable_flags(&xp, spec)?;
                let predicted = predicted_count(expr, rule, &o.full_fiber, p);
                rows.push(CountRow {
                    orbit: o.label(),
                    stratum: stratum.to_string(),
                    prime: p,
                    expression: expr.to_string(),
                    rule,
                    predicted,
                    count,
                    matches: i128::from(count) == predicted,
                });
                Ok(count)
            };
            let full = row("full", &full_spec, &o.full_fiber, CountRule::Polynomial)?;
            let mut parts = row("cuspidal", &cusp_spec, &o.cuspidal_part, o.cuspidal_rule)?;
            for part in &o.other {
                let spec = &extra.iter().find(|(n, _)| n == &part.stratum).expect("validated on load").1;
                parts += row(&part.stratum, spec, &part.expr, part.rule)?;
            }
            let exact = case.strata_cover_fiber;
            let holds = if exact { parts == full } else { parts <= full };
            sums.push(SumCheck { orbit: o.label(), prime: p, parts, full, exact, holds });
        }
    }
    Ok(CountReport { case: case.name, primes: primes.to_vec(), rows, sums })
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        writeln!(f, "case {} primes {}", self.case, primes.join(","))?;
        writeln!(f, "{:<10} {:<9} {:>3} {:>6} {:>9}  {:<8} expression", "orbit", "stratum", "q", "count", "predicted", "verdict")?;
        for r in &self.rows {
            let note = match r.rule {
                CountRule::Polynomial => String::new(),
                CountRule::RootsOfMinusOne => "  [residue rule: #sqrt(-1)]".into(),
                CountRule::FullMinusRootsOfMinusOne => "  [residue rule: full - #sqrt(-1)]".into(),
            };
            writeln!(
                f,
                "{:<10} {:<9} {:>3} {:>6} {:>9}  {:<8} {}{}",
                format!("O{}", r.orbit),
                r.stratum,
                r.prime,
                r.count,
                r.predicted,
                if r.matches { "match" } else { "MISMATCH" },
                r.expression,
                note
            )?;
        }
        for s in self.sums.iter().filter(|s| !s.holds) {
            writeln!(f, "sum rule fails for O{} at q = {}: strata {} vs fiber {}", s.orbit, s.prime, s.parts, s.full)?;
        }
        write!(f, "{}", if self.all_match() { "all match" } else { "MISMATCHES FOUND" })
    }
}
