use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::RatMatrix;
use super::solve::rank_rational;
use super::LinAlgError;

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self, LinAlgError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(LinAlgError::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest).map(|k| self.parts.iter().filter(|&&p| p >= k).count()).collect();
        Partition { parts }
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Partial sums `λ₁, λ₁+λ₂, …` padded to length `len` with the total weight.
    pub fn partial_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.parts.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }

    /// All partitions of `n` in reverse lexicographic order (`[n]` first, `[1ⁿ]` last).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max.min(rest)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = LinAlgError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Exponent notation, e.g. `[2,1^2]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let mut first = true;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let m = self.multiplicity(p);
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if m > 1 {
                write!(f, "{p}^{m}")?;
            } else {
                write!(f, "{p}")?;
            }
            i += m;
        }
        f.write_str("]")
    }
}

/// Accepts `[2,1^2]`, `2,1,1` or `2 1 1`.
impl FromStr for Partition {
    type Err = LinAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LinAlgError::Parse(format!("bad partition {s:?}"));
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = Vec::new();
        for tok in body.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (p, m): (usize, usize) = match tok.split_once('^') {
                Some((p, m)) => (p.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?),
                None => (tok.parse().map_err(|_| bad())?, 1usize),
            };
            parts.extend(std::iter::repeat_n(p, m));
        }
        Partition::new(parts)
    }
}

/// Jordan type of a nilpotent matrix: the number of parts `≥ k` is `rank N^{k-1} − rank N^k`.
pub fn nilpotent_jordan_partition(n: &RatMatrix) -> Result<Partition, LinAlgError> {
    if n.rows() != n.cols() {
        return Err(LinAlgError::NotSquare { rows: n.rows(), cols: n.cols() });
    }
    let d = n.rows();
    let mut ranks = vec![d];
    let mut power = RatMatrix::identity(d);
    for _ in 0..d {
        power = &power * n;
        ranks.push(rank_rational(&power));
    }
    if ranks[d] != 0 {
        return Err(LinAlgError::NotNilpotent);
    }
    // column lengths of the Young diagram
    let columns: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).filter(|&c| c > 0).collect();
    Ok(Partition { parts: columns }.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jordan_sum(parts: &[usize]) -> RatMatrix {
        let d: usize = parts.iter().sum();
        let mut m = RatMatrix::zeros(d, d);
        let mut start = 0;
        for &p in parts {
            for i in start..start + p - 1 {
                m = &m + &RatMatrix::unit(d, i, i + 1);
            }
            start += p;
        }
        m
    }

    #[test]
    fn display_and_parse() {
        let p: Partition = "[2,1^2]".parse().unwrap();
        assert_eq!(p.parts(), &[2, 1, 1]);
        assert_eq!(p.to_string(), "[2,1^2]");
        assert_eq!("2,2".parse::<Partition>().unwrap().to_string(), "[2^2]");
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn transpose_and_enumeration() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.transpose().parts(), &[2, 1, 1]);
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(6).len(), 11);
        assert_eq!(Partition::all(4)[0].parts(), &[4]);
        for q in Partition::all(6) {
            assert_eq!(q.transpose().transpose(), q);
        }
    }

    #[test]
    fn jordan_partitions() {
        assert_eq!(nilpotent_jordan_partition(&RatMatrix::zeros(4, 4)).unwrap().parts(), &[1, 1, 1, 1]);
        assert_eq!(nilpotent_jordan_partition(&jordan_sum(&[4])).unwrap().parts(), &[4]);
        // x with x₂₁ = 1 and x₄₃ = 1
        let x: RatMatrix = "0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0".parse().unwrap();
        assert_eq!(nilpotent_jordan_partition(&x).unwrap().parts(), &[2, 2]);
        assert_eq!(nilpotent_jordan_partition(&RatMatrix::identity(2)), Err(LinAlgError::NotNilpotent));
    }

    #[test]
    fn jordan_round_trip_small() {
        for n in 1..=6 {
            for p in Partition::all(n) {
                assert_eq!(nilpotent_jordan_partition(&jordan_sum(p.parts())).unwrap(), p);
            }
        }
    }
}
