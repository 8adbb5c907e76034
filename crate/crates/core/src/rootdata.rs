//! Root data of `SL(n)` and `Sp(2m)` and the prime conditions built on them.
//!
//! Characters and cocharacters are written in ambient coordinates `Z^k`. The character lattice
//! is `Z^k` modulo `x_relations` (the all-ones vector for `SL(n)`), and the cocharacter lattice
//! is a saturated sublattice of `Z^k`, so torsion of `Y/L` equals torsion of `Z^k/L`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{
    hermite_normal_form, lattice_contains, prime_divisors, smith_normal_form, solve_affine, IntMatrix,
};

/// Largest root system the subsystem enumeration accepts.
pub const MAX_ROOTS: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("{roots} roots exceed the enumeration limit of {limit}")]
    TooLarge { roots: usize, limit: usize },
    #[error("invalid root datum: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupType {
    Sl,
    Sp,
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupType::Sl => "sl",
            GroupType::Sp => "sp",
        })
    }
}

impl FromStr for GroupType {
    type Err = RootDataError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sl" => Ok(GroupType::Sl),
            "sp" => Ok(GroupType::Sp),
            other => Err(RootDataError::UnsupportedType(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DatumLabel {
    SL(usize),
    Sp(usize),
    Custom(String),
}

impl fmt::Display for DatumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DatumLabel::SL(n) => write!(f, "SL({n})"),
            DatumLabel::Sp(n) => write!(f, "Sp({n})"),
            DatumLabel::Custom(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub label: DatumLabel,
    /// Number of ambient coordinates.
    pub ambient: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Relations cutting the character lattice out of `Z^ambient`.
    pub x_relations: Vec<Vec<i64>>,
}

pub fn standard_root_datum(ty: GroupType, n: usize) -> Result<RootDatum, RootDataError> {
    match ty {
        GroupType::Sl => {
            if n < 2 {
                return Err(RootDataError::UnsupportedType(format!("SL({n})")));
            }
            let mut roots = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let mut v = vec![0; n];
                        v[i] = 1;
                        v[j] = -1;
                        roots.push(v);
                    }
                }
            }
            let coroots = roots.clone();
            Ok(RootDatum { label: DatumLabel::SL(n), ambient: n, roots, coroots, x_relations: vec![vec![1; n]] })
        }
        GroupType::Sp => {
            if n < 2 || !n.is_multiple_of(2) {
                return Err(RootDataError::UnsupportedType(format!("Sp({n})")));
            }
            let m = n / 2;
            let mut roots = Vec::new();
            let mut coroots = Vec::new();
            for i in 0..m {
                for j in i + 1..m {
                    for (si, sj) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                        let mut v = vec![0; m];
                        v[i] = si;
                        v[j] = sj;
                        roots.push(v.clone());
                        coroots.push(v);
                    }
                }
            }
            for i in 0..m {
                for s in [2, -2] {
                    let mut v = vec![0; m];
                    v[i] = s;
                    roots.push(v.clone());
                    v[i] = s / 2;
                    coroots.push(v);
                }
            }
            Ok(RootDatum { label: DatumLabel::Sp(n), ambient: m, roots, coroots, x_relations: Vec::new() })
        }
    }
}

impl RootDatum {
    /// Builds and validates a datum from explicit data.
    pub fn custom(
        label: &str,
        ambient: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        x_relations: Vec<Vec<i64>>,
    ) -> Result<Self, RootDataError> {
        let rd = RootDatum { label: DatumLabel::Custom(label.to_string()), ambient, roots, coroots, x_relations };
        rd.validate()?;
        Ok(rd)
    }

    fn validate(&self) -> Result<(), RootDataError> {
        let bad = |msg: String| Err(RootDataError::Invalid(msg));
        if self.roots.len() != self.coroots.len() {
            return bad("roots and coroots differ in number".into());
        }
        let lens_ok = self.roots.iter().chain(&self.coroots).chain(&self.x_relations).all(|v| v.len() == self.ambient);
        if !lens_ok {
            return bad("vector length differs from the ambient rank".into());
        }
        for (i, (a, c)) in self.roots.iter().zip(&self.coroots).enumerate() {
            if pair(a, c) != 2 {
                return bad(format!("root {i} pairs to {} with its coroot", pair(a, c)));
            }
            if self.index_of(&a.iter().map(|x| -x).collect::<Vec<_>>()).is_none() {
                return bad(format!("root {i} has no negative"));
            }
        }
        for rel in &self.x_relations {
            if self.coroots.iter().any(|c| pair(rel, c) != 0) {
                return bad("a relation pairs nontrivially with a coroot".into());
            }
        }
        Ok(())
    }

    /// Rank of the character lattice.
    pub fn rank(&self) -> usize {
        if self.x_relations.is_empty() {
            return self.ambient;
        }
        self.ambient - smith_normal_form(&IntMatrix::from_rows(&self.x_relations)).rank()
    }

    /// Pairing `⟨x, y⟩`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        pair(x, y)
    }

    /// Equality in the character lattice.
    pub fn same_character(&self, a: &[i64], b: &[i64]) -> bool {
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| BigInt::from(x - y)).collect();
        let rel = hermite_normal_form(&to_big(&self.x_relations), self.ambient);
        lattice_contains(&rel, &diff)
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| self.same_character(r, v))
    }

    /// `s_α(v) = v − ⟨v, α∨⟩ α`.
    pub fn reflect(&self, root: usize, v: &[i64]) -> Vec<i64> {
        let k = pair(v, &self.coroots[root]);
        v.iter().zip(&self.roots[root]).map(|(x, a)| x - k * a).collect()
    }

    fn guard(&self) -> Result<(), RootDataError> {
        if self.roots.len() > MAX_ROOTS {
            return Err(RootDataError::TooLarge { roots: self.roots.len(), limit: MAX_ROOTS });
        }
        Ok(())
    }

    /// Positive roots for a generic linear functional.
    pub fn positive_roots(&self) -> Vec<usize> {
        let base = 2 * self.roots.iter().flatten().map(|x| x.abs()).max().unwrap_or(1) + 1;
        let weights: Vec<i128> = (0..self.ambient).map(|i| (base as i128).pow((self.ambient - 1 - i) as u32)).collect();
        let height = |v: &[i64]| -> i128 { v.iter().zip(&weights).map(|(&x, &w)| x as i128 * w).sum() };
        (0..self.roots.len()).filter(|&i| height(&self.roots[i]) > 0).collect()
    }

    /// Simple roots: the positive roots that are not sums of two positive roots.
    pub fn simple_roots(&self) -> Vec<usize> {
        let pos = self.positive_roots();
        pos.iter()
            .copied()
            .filter(|&i| {
                !pos.iter().any(|&a| {
                    let rest: Vec<i64> = self.roots[i].iter().zip(&self.roots[a]).map(|(x, y)| x - y).collect();
                    pos.iter().any(|&b| self.same_character(&self.roots[b], &rest))
                })
            })
            .collect()
    }

    /// Coefficients of a root in the simple roots.
    pub fn simple_coefficients(&self, root: usize, simple: &[usize]) -> Vec<i64> {
        let q = |x: i64| BigRational::from_integer(x.into());
        // relation columns absorb the ambiguity of representatives in the character lattice
        let rows: Vec<Vec<BigRational>> = (0..self.ambient)
            .map(|j| {
                let mut row: Vec<BigRational> = simple.iter().map(|&s| q(self.roots[s][j])).collect();
                row.extend(self.x_relations.iter().map(|rel| q(rel[j])));
                row
            })
            .collect();
        let rhs: Vec<BigRational> = self.roots[root].iter().map(|&x| q(x)).collect();
        let ncols = simple.len() + self.x_relations.len();
        let x = solve_affine(&rows, &rhs, ncols).expect("root outside the span of the simple roots");
        x[..simple.len()]
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integral simple-root coefficient");
                c.to_integer().to_i64().unwrap()
            })
            .collect()
    }

    /// Primes dividing a coefficient of the highest root of some simple factor.
    pub fn bad_primes(&self) -> Vec<u64> {
        let simple = self.simple_roots();
        let s = simple.len();
        // connected components of the Dynkin diagram
        let mut comp: Vec<usize> = (0..s).collect();
        fn find(c: &mut Vec<usize>, i: usize) -> usize {
            if c[i] != i {
                let r = find(c, c[i]);
                c[i] = r;
            }
            c[i]
        }
        for a in 0..s {
            for b in 0..s {
                if a != b && pair(&self.roots[simple[a]], &self.coroots[simple[b]]) != 0 {
                    let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                    comp[ra] = rb;
                }
            }
        }
        let mut bad = BTreeSet::new();
        let pos = self.positive_roots();
        let coeffs: Vec<Vec<i64>> = pos.iter().map(|&r| self.simple_coefficients(r, &simple)).collect();
        let roots_of: Vec<usize> = (0..s).map(|i| find(&mut comp, i)).collect();
        for c in roots_of.iter().copied().collect::<BTreeSet<_>>() {
            let highest = coeffs
                .iter()
                .filter(|v| v.iter().enumerate().all(|(i, &x)| x == 0 || roots_of[i] == c))
                .max_by_key(|v| v.iter().sum::<i64>())
                .expect("component without roots");
            for &x in highest {
                bad.extend(prime_divisors(&BigInt::from(x)));
            }
        }
        bad.into_iter().collect()
    }
}

fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// A set of roots, by index into `RootDatum::roots`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClosedSubsystem {
    pub member_indices: Vec<usize>,
}

impl ClosedSubsystem {
    pub fn len(&self) -> usize {
        self.member_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.member_indices.is_empty()
    }
}

/// Every distinct lattice `base + Z S` for `S` a subset of `vectors`, in Hermite form.
fn subset_lattices(base: &[Vec<BigInt>], vectors: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<Vec<BigInt>>> {
    let start = hermite_normal_form(base, ncols);
    let mut seen: HashSet<Vec<Vec<BigInt>>> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(lat) = queue.pop_front() {
        for v in vectors {
            if lattice_contains(&lat, v) {
                continue;
            }
            let mut gens = lat.clone();
            gens.push(v.clone());
            let next = hermite_normal_form(&gens, ncols);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        order.push(lat);
    }
    order
}

/// Primes `p` with `p`-torsion in `Z^ncols / lattice`.
fn torsion_primes(lattice: &[Vec<BigInt>], ncols: usize) -> BTreeSet<u64> {
    if lattice.is_empty() {
        return BTreeSet::new();
    }
    let data = lattice.iter().flatten().cloned().collect();
    let m = IntMatrix::from_vec(lattice.len(), ncols, data).expect("lattice rows");
    smith_normal_form(&m).torsion_factors().iter().flat_map(prime_divisors).collect()
}

/// All Z-closed subsystems `Φ₁ = Φ ∩ ZΦ₁`, smallest first, deduplicated.
pub fn closed_subsystems(rd: &RootDatum) -> Result<Vec<ClosedSubsystem>, RootDataError> {
    rd.guard()?;
    let roots = to_big(&rd.roots);
    let lattices = subset_lattices(&to_big(&rd.x_relations), &roots, rd.ambient);
    let mut out: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for lat in &lattices {
        let members: Vec<usize> = (0..roots.len()).filter(|&i| lattice_contains(lat, &roots[i])).collect();
        out.insert((members.len(), members));
    }
    Ok(out.into_iter().map(|(_, member_indices)| ClosedSubsystem { member_indices }).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeReport {
    /// Primes that are not good: they divide a highest-root coefficient.
    #[serde(rename = "good_excluded")]
    pub bad: Vec<u64>,
    /// Primes `p` such that `Y/ZΦ₁∨` has `p`-torsion for some subset `Φ₁ ⊂ Φ`.
    pub torsion: Vec<u64>,
    /// The same, restricted to Z-closed subsystems.
    pub regular_torsion: Vec<u64>,
    pub pretty_good_excluded: Vec<u64>,
    pub rather_good_excluded: Vec<u64>,
    /// Order of the torsion of `X/ZΦ`.
    pub center_component_order: u64,
}

impl PrimeReport {
    pub fn is_good(&self, p: u64) -> bool {
        !self.bad.contains(&p)
    }

    pub fn is_pretty_good(&self, p: u64) -> bool {
        !self.pretty_good_excluded.contains(&p)
    }

    pub fn is_rather_good(&self, p: u64) -> bool {
        !self.rather_good_excluded.contains(&p)
    }
}

pub fn prime_report(rd: &RootDatum) -> Result<PrimeReport, RootDataError> {
    rd.guard()?;
    let n = rd.ambient;
    let roots = to_big(&rd.roots);
    let coroots = to_big(&rd.coroots);

    let x_lattices = subset_lattices(&to_big(&rd.x_relations), &roots, n);
    let y_lattices = subset_lattices(&[], &coroots, n);

    let torsion: BTreeSet<u64> = y_lattices.iter().flat_map(|l| torsion_primes(l, n)).collect();
    let mut regular = BTreeSet::new();
    for sub in closed_subsystems(rd)? {
        let gens: Vec<Vec<BigInt>> = sub.member_indices.iter().map(|&i| coroots[i].clone()).collect();
        regular.extend(torsion_primes(&hermite_normal_form(&gens, n), n));
    }
    let mut pretty: BTreeSet<u64> = x_lattices.iter().flat_map(|l| torsion_primes(l, n)).collect();
    pretty.extend(&torsion);

    let bad = rd.bad_primes();
    pretty.extend(&bad);

    let mut full = to_big(&rd.x_relations);
    full.extend(roots.iter().cloned());
    let full = hermite_normal_form(&full, n);
    let data = full.iter().flatten().cloned().collect();
    let snf = smith_normal_form(&IntMatrix::from_vec(full.len(), n, data).expect("lattice rows"));
    let centre = snf.torsion_order();
    let mut rather: BTreeSet<u64> = prime_divisors(&centre).into_iter().collect();
    rather.extend(&bad);

    Ok(PrimeReport {
        bad,
        torsion: torsion.into_iter().collect(),
        regular_torsion: regular.into_iter().collect(),
        pretty_good_excluded: pretty.into_iter().collect(),
        rather_good_excluded: rather.into_iter().collect(),
        center_component_order: if centre.is_positive() { centre.to_u64().unwrap_or(u64::MAX) } else { 1 },
    })
}

impl fmt::Display for PrimeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |v: &[u64]| format!("{{{}}}", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        writeln!(f, "good_excluded:        {}", set(&self.bad))?;
        writeln!(f, "torsion:              {}", set(&self.torsion))?;
        writeln!(f, "regular_torsion:      {}", set(&self.regular_torsion))?;
        writeln!(f, "pretty_good_excluded: {}", set(&self.pretty_good_excluded))?;
        write!(f, "rather_good_excluded: {}", set(&self.rather_good_excluded))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        assert_eq!(standard_root_datum(GroupType::Sl, 4).unwrap().roots.len(), 12);
        assert_eq!(standard_root_datum(GroupType::Sp, 4).unwrap().roots.len(), 8);
        let sl2 = standard_root_datum(GroupType::Sl, 2).unwrap();
        assert_eq!(sl2.roots, vec![vec![1, -1], vec![-1, 1]]);
        assert!(standard_root_datum(GroupType::Sp, 3).is_err());
        assert!(standard_root_datum(GroupType::Sl, 1).is_err());
    }

    #[test]
    fn ranks_and_simple_roots() {
        let sl4 = standard_root_datum(GroupType::Sl, 4).unwrap();
        assert_eq!(sl4.rank(), 3);
        assert_eq!(sl4.simple_roots().len(), 3);
        let sp4 = standard_root_datum(GroupType::Sp, 4).unwrap();
        assert_eq!(sp4.rank(), 2);
        assert_eq!(sp4.simple_roots().len(), 2);
        assert_eq!(sp4.positive_roots().len(), 4);
    }

    #[test]
    fn subsystems_of_sl2() {
        let sl2 = standard_root_datum(GroupType::Sl, 2).unwrap();
        let subs = closed_subsystems(&sl2).unwrap();
        assert_eq!(subs.len(), 2);
        assert!(subs[0].is_empty());
        assert_eq!(subs[1].len(), 2);
    }

    #[test]
    fn sp4_contains_long_root_subsystem() {
        let sp4 = standard_root_datum(GroupType::Sp, 4).unwrap();
        let long: Vec<usize> = (0..8).filter(|&i| sp4.roots[i].iter().any(|x| x.abs() == 2)).collect();
        let subs = closed_subsystems(&sp4).unwrap();
        assert!(subs.iter().any(|s| s.member_indices == long));
    }

    #[test]
    fn reports() {
        let sl4 = prime_report(&standard_root_datum(GroupType::Sl, 4).unwrap()).unwrap();
        assert_eq!(sl4.pretty_good_excluded, vec![2]);
        assert_eq!(sl4.rather_good_excluded, vec![2]);
        assert!(sl4.bad.is_empty());
        assert_eq!(sl4.center_component_order, 4);
        let sp4 = prime_report(&standard_root_datum(GroupType::Sp, 4).unwrap()).unwrap();
        assert_eq!(sp4.bad, vec![2]);
        assert_eq!(sp4.torsion, vec![2]);
        assert!(sp4.regular_torsion.is_empty());
        assert_eq!(sp4.pretty_good_excluded, vec![2]);
        let sl2 = prime_report(&standard_root_datum(GroupType::Sl, 2).unwrap()).unwrap();
        assert!(sl2.torsion.is_empty());
        assert_eq!(sl2.rather_good_excluded, vec![2]);
    }

    #[test]
    fn guard() {
        let sp10 = standard_root_datum(GroupType::Sp, 10).unwrap();
        assert!(matches!(closed_subsystems(&sp10), Err(RootDataError::TooLarge { .. })));
    }
}
