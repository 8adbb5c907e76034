use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::subspace::{rref_mod, unchecked_subspaces};
use super::{enumerate_subspaces, FfError, PrimeFieldMatrix, Subspace};
use crate::exactlin::IntMatrix;

/// A predicate on the chain `S_0 ⊂ S_1 ⊂ … ⊂ V` built from a flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    /// `x S_i ⊆ S_i` for every member of the chain.
    XStable,
    /// `x S_k = 0`.
    RestrictionZero(usize),
    RestrictionNonzero(usize),
    /// `x S_{k+1} ⊆ S_k`, that is, `x` induces zero on `S_{k+1}/S_k`.
    QuotientZero(usize),
    QuotientNonzero(usize),
}

impl Condition {
    fn index_bound(self) -> Option<usize> {
        match self {
            Condition::XStable => None,
            Condition::RestrictionZero(k) | Condition::RestrictionNonzero(k) => Some(k),
            Condition::QuotientZero(k) | Condition::QuotientNonzero(k) => Some(k + 1),
        }
    }

    fn holds(self, x: &PrimeFieldMatrix, chain: &[Subspace]) -> bool {
        let zero = |k: usize| chain[k].basis().iter().all(|v| x.apply(v).iter().all(|&c| c == 0));
        match self {
            Condition::XStable => chain.iter().all(|s| s.maps_into(x, s)),
            Condition::RestrictionZero(k) => zero(k),
            Condition::RestrictionNonzero(k) => !zero(k),
            Condition::QuotientZero(k) => chain[k + 1].maps_into(x, &chain[k]),
            Condition::QuotientNonzero(k) => !chain[k + 1].maps_into(x, &chain[k]),
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::XStable => f.write_str("x-stable"),
            Condition::RestrictionZero(k) => write!(f, "restriction-zero({k})"),
            Condition::RestrictionNonzero(k) => write!(f, "restriction-nonzero({k})"),
            Condition::QuotientZero(k) => write!(f, "quotient-zero({k})"),
            Condition::QuotientNonzero(k) => write!(f, "quotient-nonzero({k})"),
        }
    }
}

impl FromStr for Condition {
    type Err = FfError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "x-stable" {
            return Ok(Condition::XStable);
        }
        let bad = || FfError::InvalidSpec(format!("unknown condition {s:?}"));
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let k: usize = rest.strip_suffix(')').and_then(|r| r.trim().parse().ok()).ok_or_else(bad)?;
        match head {
            "restriction-zero" => Ok(Condition::RestrictionZero(k)),
            "restriction-nonzero" => Ok(Condition::RestrictionNonzero(k)),
            "quotient-zero" => Ok(Condition::QuotientZero(k)),
            "quotient-nonzero" => Ok(Condition::QuotientNonzero(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    None,
    /// Gram matrix of an alternating form; flags must be isotropic and the chain continues
    /// with the orthogonals `S_m^⊥ ⊃ … ⊃ S_0^⊥`.
    Symplectic(IntMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpec {
    pub d: usize,
    pub flag_dims: Vec<usize>,
    pub form: FormSpec,
    pub conditions: Vec<Condition>,
}

impl FlagSpec {
    pub fn new(d: usize, flag_dims: Vec<usize>, form: FormSpec, conditions: Vec<Condition>) -> Result<Self, FfError> {
        if flag_dims.is_empty() || flag_dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FfError::InvalidSpec("flag dimensions must be nonempty and strictly increasing".into()));
        }
        let top = *flag_dims.last().unwrap();
        if flag_dims[0] == 0 || top >= d {
            return Err(FfError::InvalidSpec(format!("flag dimensions must lie in [1, {d})")));
        }
        if let FormSpec::Symplectic(b) = &form {
            if !d.is_multiple_of(2) || 2 * top > d || b.rows() != d || b.cols() != d {
                return Err(FfError::InvalidSpec("isotropic flags need an even ambient dimension".into()));
            }
        }
        let spec = FlagSpec { d, flag_dims, form, conditions };
        let len = spec.min_chain_len();
        if let Some(c) = spec.conditions.iter().find(|c| c.index_bound().is_some_and(|k| k >= len)) {
            return Err(FfError::InvalidSpec(format!("condition {c} refers past the chain")));
        }
        Ok(spec)
    }

    /// Chain length when the top flag member is not Lagrangian; one less when it is.
    fn min_chain_len(&self) -> usize {
        let m = self.flag_dims.len();
        match self.form {
            FormSpec::None => m + 1,
            FormSpec::Symplectic(_) => {
                let lagrangian = 2 * self.flag_dims[m - 1] == self.d;
                2 * m + 1 - usize::from(lagrangian)
            }
        }
    }

    pub fn with_conditions(&self, conditions: Vec<Condition>) -> Result<Self, FfError> {
        FlagSpec::new(self.d, self.flag_dims.clone(), self.form.clone(), conditions)
    }
}

/// Invertible and alternating over `F_p`.
fn check_form(b: &PrimeFieldMatrix) -> Result<(), FfError> {
    let p = b.modulus();
    let d = b.rows();
    for i in 0..d {
        if b.get(i, i) != 0 || (0..d).any(|j| !(b.get(i, j) + b.get(j, i)).is_multiple_of(p)) {
            return Err(FfError::InvalidSpec("form is not alternating".into()));
        }
    }
    let rows = (0..d).map(|i| b.row(i).to_vec()).collect();
    if rref_mod(rows, d, p).1.len() != d {
        return Err(FfError::InvalidSpec("form is degenerate".into()));
    }
    Ok(())
}

/// Nested flags `S_0 ⊂ … ⊂ S_m` with the given dimensions, built from the top down.
fn for_each_flag(
    p: u64,
    top: &Subspace,
    dims: &[usize],
    acc: &mut Vec<Subspace>,
    f: &mut dyn FnMut(&[Subspace]) -> Result<(), FfError>,
) -> Result<(), FfError> {
    let Some((&k, rest)) = dims.split_last() else {
        let mut chain = acc.clone();
        chain.reverse();
        return f(&chain);
    };
    for coeffs in unchecked_subspaces(p, top.dim(), k) {
        let s = top.pushforward(&coeffs);
        acc.push(s.clone());
        for_each_flag(p, &s, rest, acc, f)?;
        acc.pop();
    }
    Ok(())
}

/// Number of `F_p`-rational flags satisfying every condition in `spec`.
pub fn count_stable_flags(x: &PrimeFieldMatrix, spec: &FlagSpec) -> Result<u64, FfError> {
    let p = x.modulus();
    let d = spec.d;
    if x.rows() != d || x.cols() != d {
        return Err(FfError::InvalidSpec(format!("matrix is not {d}x{d}")));
    }
    // validates p and d before any work
    let tops = enumerate_subspaces(p, d, *spec.flag_dims.last().unwrap())?;
    if !x.is_nilpotent() {
        return Err(FfError::NotNilpotent(p));
    }
    let form = match &spec.form {
        FormSpec::None => None,
        FormSpec::Symplectic(b) => {
            let b = PrimeFieldMatrix::from_rational(&b.to_rational(), p)?;
            check_form(&b)?;
            if !x.transpose().mul(&b).add(&b.mul(x)).is_zero() {
                return Err(FfError::NotStableUnderForm);
            }
            Some(b)
        }
    };
    let whole = Subspace::whole(p, d);
    let lower = &spec.flag_dims[..spec.flag_dims.len() - 1];
    let mut count = 0u64;
    for top in tops {
        let perp_top = form.as_ref().map(|b| top.orthogonal(b));
        if let Some(perp) = &perp_top {
            if !perp.contains_subspace(&top) {
                continue;
            }
        }
        let mut visit = |flag: &[Subspace]| -> Result<(), FfError> {
            let mut chain = flag.to_vec();
            chain.push(top.clone());
            if let Some(b) = &form {
                let own_stable = chain.iter().all(|s| s.maps_into(x, s));
                let perps: Vec<Subspace> = chain.iter().rev().map(|s| s.orthogonal(b)).filter(|s| s != &top).collect();
                if own_stable && perps.iter().any(|s| !s.maps_into(x, s)) {
                    return Err(FfError::ClosureViolated);
                }
                chain.extend(perps);
            }
            chain.push(whole.clone());
            if spec.conditions.iter().all(|c| c.holds(x, &chain)) {
                count += 1;
            }
            Ok(())
        };
        for_each_flag(p, &top, lower, &mut Vec::new(), &mut visit)?;
    }
    Ok(count)
}
