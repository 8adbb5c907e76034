use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::CohomError;
use crate::exactlin::FieldChar;

/// Ranks of cohomology by degree; zero ranks are never stored.
pub type Betti = BTreeMap<i64, usize>;

/// Small varieties assembled by disjoint union.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SpaceExpr {
    Empty,
    Pt,
    Aff(u32),
    Proj(u32),
    /// `P¹` minus `m ≥ 1` points.
    ProjLineMinus(u32),
    /// `C^×`, the same variety as `P¹` minus two points.
    Torus,
    Disjoint(Vec<SpaceExpr>),
}

impl SpaceExpr {
    /// Number of components that can carry a nontrivial rank-1 local system, in preorder.
    pub fn loop_count(&self) -> usize {
        match self {
            SpaceExpr::Torus | SpaceExpr::ProjLineMinus(2) => 1,
            SpaceExpr::Disjoint(cs) => cs.iter().map(SpaceExpr::loop_count).sum(),
            _ => 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SpaceExpr::Empty => true,
            SpaceExpr::Disjoint(cs) => cs.iter().all(SpaceExpr::is_empty),
            _ => false,
        }
    }

    pub fn dimension(&self) -> Option<u32> {
        match self {
            SpaceExpr::Empty => None,
            SpaceExpr::Pt => Some(0),
            SpaceExpr::Aff(k) | SpaceExpr::Proj(k) => Some(*k),
            SpaceExpr::ProjLineMinus(_) | SpaceExpr::Torus => Some(1),
            SpaceExpr::Disjoint(cs) => cs.iter().filter_map(SpaceExpr::dimension).max(),
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Empty => f.write_str("empty"),
            SpaceExpr::Pt => f.write_str("pt"),
            SpaceExpr::Aff(k) => write!(f, "(aff {k})"),
            SpaceExpr::Proj(k) => write!(f, "(proj {k})"),
            SpaceExpr::ProjLineMinus(m) => write!(f, "(p1-minus {m})"),
            SpaceExpr::Torus => f.write_str("torus"),
            SpaceExpr::Disjoint(cs) => {
                f.write_str("(disjoint")?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl From<SpaceExpr> for String {
    fn from(e: SpaceExpr) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for SpaceExpr {
    type Error = CohomError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut atom = String::new();
    let flush = |atom: &mut String, out: &mut Vec<Tok>| {
        if !atom.is_empty() {
            out.push(Tok::Atom(std::mem::take(atom)));
        }
    };
    for c in s.chars() {
        match c {
            '(' => {
                flush(&mut atom, &mut out);
                out.push(Tok::Open);
            }
            ')' => {
                flush(&mut atom, &mut out);
                out.push(Tok::Close);
            }
            c if c.is_whitespace() => flush(&mut atom, &mut out),
            c => atom.push(c),
        }
    }
    flush(&mut atom, &mut out);
    out
}

fn parse_expr(toks: &[Tok], pos: &mut usize) -> Result<SpaceExpr, CohomError> {
    let bad = |m: &str| CohomError::Parse(m.to_string());
    match toks.get(*pos) {
        Some(Tok::Atom(a)) => {
            *pos += 1;
            match a.as_str() {
                "pt" => Ok(SpaceExpr::Pt),
                "torus" => Ok(SpaceExpr::Torus),
                "empty" => Ok(SpaceExpr::Empty),
                other => Err(bad(&format!("unknown atom {other:?}"))),
            }
        }
        Some(Tok::Open) => {
            *pos += 1;
            let head = match toks.get(*pos) {
                Some(Tok::Atom(a)) => a.clone(),
                _ => return Err(bad("expected a constructor after '('")),
            };
            *pos += 1;
            let number = |pos: &mut usize| -> Result<u32, CohomError> {
                match toks.get(*pos) {
                    Some(Tok::Atom(a)) => {
                        *pos += 1;
                        a.parse().map_err(|_| bad(&format!("bad number {a:?}")))
                    }
                    _ => Err(bad("expected a number")),
                }
            };
            let expr = match head.as_str() {
                "aff" => SpaceExpr::Aff(number(pos)?),
                "proj" => SpaceExpr::Proj(number(pos)?),
                "p1-minus" => {
                    let m = number(pos)?;
                    if m == 0 {
                        return Err(bad("p1-minus needs at least one point"));
                    }
                    SpaceExpr::ProjLineMinus(m)
                }
                "disjoint" => {
                    let mut children = Vec::new();
                    while !matches!(toks.get(*pos), Some(Tok::Close) | None) {
                        children.push(parse_expr(toks, pos)?);
                    }
                    if children.len() < 2 {
                        return Err(bad("disjoint needs at least two children"));
                    }
                    SpaceExpr::Disjoint(children)
                }
                other => return Err(bad(&format!("unknown constructor {other:?}"))),
            };
            match toks.get(*pos) {
                Some(Tok::Close) => {
                    *pos += 1;
                    Ok(expr)
                }
                _ => Err(bad("missing ')'")),
            }
        }
        _ => Err(bad("unexpected end of expression")),
    }
}

/// S-expression syntax: `pt`, `torus`, `empty`, `(aff k)`, `(proj k)`, `(p1-minus m)`,
/// `(disjoint e₁ e₂ …)`.
impl FromStr for SpaceExpr {
    type Err = CohomError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = tokenize(s);
        let mut pos = 0;
        let e = parse_expr(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(CohomError::Parse(format!("trailing input in {s:?}")));
        }
        Ok(e)
    }
}

fn add_into(acc: &mut Betti, other: &Betti) {
    for (&d, &r) in other {
        *acc.entry(d).or_insert(0) += r;
    }
}

/// Compactly supported cohomology with constant coefficients.
pub fn hc_constant(x: &SpaceExpr) -> Betti {
    let mut out = Betti::new();
    match x {
        SpaceExpr::Empty => {}
        SpaceExpr::Pt => {
            out.insert(0, 1);
        }
        SpaceExpr::Aff(k) => {
            out.insert(2 * *k as i64, 1);
        }
        SpaceExpr::Proj(k) => {
            for j in 0..=*k as i64 {
                out.insert(2 * j, 1);
            }
        }
        SpaceExpr::ProjLineMinus(m) => {
            if *m > 1 {
                out.insert(1, *m as usize - 1);
            }
            out.insert(2, 1);
        }
        SpaceExpr::Torus => {
            out.insert(1, 1);
            out.insert(2, 1);
        }
        SpaceExpr::Disjoint(cs) => {
            for c in cs {
                add_into(&mut out, &hc_constant(c));
            }
        }
    }
    out
}

/// `H_c^*(C^×, L_m)`: the generator of `π₁` acts by `m` on a line, and
/// `H_c^1 = coker(m − 1)`, `H_c^2 = ker(m − 1)`.
pub fn hc_rank1_torus(monodromy: i64, l: FieldChar) -> Result<Betti, CohomError> {
    let m = l.reduce(&BigInt::from(monodromy));
    if m.is_zero() {
        return Err(CohomError::ZeroMonodromy(monodromy));
    }
    let shifted = l.reduce(&(m - 1));
    let mut out = Betti::new();
    if shifted.is_zero() {
        out.insert(1, 1);
        out.insert(2, 1);
    }
    Ok(out)
}

/// Cohomology with a rank-1 local system given by one monodromy scalar per loop (preorder);
/// every other component is simply connected or carries the constant sheaf.
pub fn hc_local(x: &SpaceExpr, monodromy: &[i64], l: FieldChar) -> Result<Betti, CohomError> {
    if monodromy.len() != x.loop_count() {
        return Err(CohomError::MonodromyCount { expected: x.loop_count(), found: monodromy.len() });
    }
    fn walk(x: &SpaceExpr, mono: &mut std::slice::Iter<'_, i64>, l: FieldChar, out: &mut Betti) -> Result<(), CohomError> {
        match x {
            SpaceExpr::Torus | SpaceExpr::ProjLineMinus(2) => {
                let m = *mono.next().expect("counted");
                add_into(out, &hc_rank1_torus(m, l)?);
            }
            SpaceExpr::Disjoint(cs) => {
                for c in cs {
                    walk(c, mono, l, out)?;
                }
            }
            other => add_into(out, &hc_constant(other)),
        }
        Ok(())
    }
    let mut out = Betti::new();
    walk(x, &mut monodromy.iter(), l, &mut out)?;
    Ok(out)
}

/// Integer polynomial in `q`, coefficients from degree 0 up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(pub Vec<i64>);

impl Poly {
    fn trimmed(mut v: Vec<i64>) -> Poly {
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn eval(&self, q: i64) -> i128 {
        self.0.iter().rev().fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0)).collect();
        Poly::trimmed(v)
    }

    pub fn coefficient(&self, j: usize) -> i64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Gaussian binomial `[d choose k]_q`.
    pub fn gaussian_binomial(d: u32, k: u32) -> Poly {
        if k > d {
            return Poly::default();
        }
        // Pascal rule [d,k] = [d−1,k−1] + q^k [d−1,k]
        let mut table = vec![vec![Poly(vec![1])]];
        for n in 1..=d as usize {
            let mut row = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let left = if j == 0 { Poly::default() } else { table[n - 1][j - 1].clone() };
                let right = if j == n {
                    Poly::default()
                } else {
                    let mut shifted = vec![0; j];
                    shifted.extend(&table[n - 1][j].0);
                    Poly::trimmed(shifted)
                };
                row.push(if j == 0 || j == n { Poly(vec![1]) } else { left.add(&right) });
            }
            table.push(row);
        }
        table[d as usize][k as usize].clone()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let body = match (j, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "q".into(),
                (1, m) => format!("{m}q"),
                (j, 1) => format!("q^{j}"),
                (j, m) => format!("{m}q^{j}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Number of `F_q`-points, for split strata.
pub fn counting_polynomial(x: &SpaceExpr) -> Poly {
    match x {
        SpaceExpr::Empty => Poly::default(),
        SpaceExpr::Pt => Poly(vec![1]),
        SpaceExpr::Aff(k) => {
            let mut v = vec![0; *k as usize];
            v.push(1);
            Poly(v)
        }
        SpaceExpr::Proj(k) => Poly(vec![1; *k as usize + 1]),
        SpaceExpr::ProjLineMinus(m) => Poly::trimmed(vec![1 - *m as i64, 1]),
        SpaceExpr::Torus => Poly(vec![-1, 1]),
        SpaceExpr::Disjoint(cs) => cs.iter().fold(Poly::default(), |acc, c| acc.add(&counting_polynomial(c))),
    }
}

/// Alternating sum of ranks.
pub fn euler_characteristic(b: &Betti) -> i64 {
    b.iter().map(|(&d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}
