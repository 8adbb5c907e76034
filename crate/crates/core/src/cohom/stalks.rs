use std::fmt;

use serde::Serialize;

use super::case::{CaseData, CaseName};
use super::space::{hc_local, Betti};
use super::CohomError;
use crate::exactlin::FieldChar;

pub const CONVENTION: &str = "shift-by-dimC";

/// Stalks of the induced parity complex: per orbit, degree → rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkTable {
    pub case: CaseName,
    pub characteristic: u64,
    pub convention: &'static str,
    /// Columns in the order of the case fixture.
    pub columns: Vec<(String, Betti)>,
}

impl StalkTable {
    /// Orbits whose nonzero degrees mix parities.
    pub fn parity_violations(&self) -> Vec<String> {
        self.columns
            .iter()
            .filter(|(_, col)| {
                let mut par = col.keys().map(|d| d.rem_euclid(2));
                match par.next() {
                    Some(p) => par.any(|q| q != p),
                    None => false,
                }
            })
            .map(|(label, _)| label.clone())
            .collect()
    }

    pub fn column(&self, label: &str) -> Option<&Betti> {
        self.columns.iter().find(|(l, _)| l == label).map(|(_, c)| c)
    }

    /// `{"convention": …, "columns": {"[4]": {"-2": 1}, …}}`, keys in column order.
    pub fn to_json(&self) -> serde_json::Value {
        let mut cols = serde_json::Map::new();
        for (label, col) in &self.columns {
            let entries: serde_json::Map<String, serde_json::Value> =
                col.iter().map(|(d, r)| (d.to_string(), serde_json::Value::from(*r))).collect();
            cols.insert(label.clone(), serde_json::Value::Object(entries));
        }
        serde_json::json!({
            "case": self.case.to_string(),
            "characteristic": self.characteristic,
            "convention": self.convention,
            "columns": cols,
        })
    }
}

/// Degree `d` of an orbit column is the rank of `H_c^{d + dim C}` of the cuspidal part of the
/// fiber with coefficients in the restricted local system.
///
/// Characteristic 2 is refused unless `allow_two` is set.
pub fn stalk_table(case: &CaseData, l: u64, allow_two: bool) -> Result<StalkTable, CohomError> {
    let field = FieldChar::new(l).map_err(|_| CohomError::CompositeCharacteristic(l))?;
    if l == 2 && !allow_two {
        return Err(CohomError::CharacteristicTwo);
    }
    let mut columns = Vec::new();
    for o in &case.orbits {
        let hc = hc_local(&o.cuspidal_part, &o.monodromy, field)?;
        let col: Betti = hc.into_iter().map(|(k, r)| (k - case.dim_c, r)).collect();
        columns.push((o.label(), col));
    }
    Ok(StalkTable { case: case.name, characteristic: l, convention: CONVENTION, columns })
}

/// Orbits as columns, degrees as rows (largest first), blank for zero.
impl fmt::Display for StalkTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {} char {} ({})", self.case, self.characteristic, self.convention)?;
        let width = self.columns.iter().map(|(l, _)| l.chars().count() + 1).max().unwrap_or(4).max(4) + 2;
        let mut header = format!("{:>6}", "deg");
        for (label, _) in &self.columns {
            header.push_str(&format!("{:>width$}", format!("O{label}")));
        }
        write!(f, "\n{header}")?;
        let mut degrees: Vec<i64> = self.columns.iter().flat_map(|(_, c)| c.keys().copied()).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees.dedup();
        for d in degrees {
            let mut line = format!("{d:>6}");
            for (_, col) in &self.columns {
                let cell = col.get(&d).map(usize::to_string).unwrap_or_default();
                line.push_str(&format!("{cell:>width$}"));
            }
            write!(f, "\n{}", line.trim_end())?;
        }
        Ok(())
    }
}
