use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::OrbitError;
use crate::exactlin::{Partition, RatMatrix};
use crate::liegrade::Cocharacter;
use crate::rootdata::GroupType;

/// Component group `A_G(x)` of a nilpotent centralizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentGroup {
    Cyclic(u64),
    ElementaryAbelian2(u32),
}

impl ComponentGroup {
    pub fn order(&self) -> u64 {
        match *self {
            ComponentGroup::Cyclic(d) => d,
            ComponentGroup::ElementaryAbelian2(a) => 1 << a,
        }
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ComponentGroup::Cyclic(1) | ComponentGroup::ElementaryAbelian2(0) => f.write_str("1"),
            ComponentGroup::Cyclic(d) => write!(f, "Z/{d}"),
            ComponentGroup::ElementaryAbelian2(1) => f.write_str("Z/2"),
            ComponentGroup::ElementaryAbelian2(a) => write!(f, "(Z/2)^{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentOrbit {
    pub group: GroupType,
    pub partition: Partition,
    pub dimension: usize,
    pub component_group: ComponentGroup,
}

fn check(ty: GroupType, lambda: &Partition) -> Result<(), OrbitError> {
    if ty == GroupType::Sp {
        let odd_ok = lambda.parts().iter().filter(|&&p| p % 2 == 1).all(|&p| lambda.multiplicity(p).is_multiple_of(2));
        if !lambda.weight().is_multiple_of(2) || !odd_ok {
            return Err(OrbitError::InvalidPartition(lambda.to_string()));
        }
    }
    if lambda.is_empty() {
        return Err(OrbitError::InvalidPartition(lambda.to_string()));
    }
    Ok(())
}

pub fn orbit_dimension(ty: GroupType, lambda: &Partition) -> Result<usize, OrbitError> {
    check(ty, lambda)?;
    let n = lambda.weight();
    let sq: usize = lambda.transpose().parts().iter().map(|c| c * c).sum();
    Ok(match ty {
        GroupType::Sl => n * n - sq,
        GroupType::Sp => {
            let m = n / 2;
            let odd = lambda.parts().iter().filter(|&&p| p % 2 == 1).count();
            2 * m * m + m - (sq + odd) / 2
        }
    })
}

pub fn component_group(ty: GroupType, lambda: &Partition) -> Result<ComponentGroup, OrbitError> {
    check(ty, lambda)?;
    Ok(match ty {
        GroupType::Sl => ComponentGroup::Cyclic(lambda.parts().iter().fold(0u64, |g, &p| g.gcd(&(p as u64)))),
        GroupType::Sp => {
            let mut evens: Vec<usize> = lambda.parts().iter().copied().filter(|p| p % 2 == 0).collect();
            evens.dedup();
            ComponentGroup::ElementaryAbelian2(evens.len() as u32)
        }
    })
}

/// All nilpotent orbits, largest partition first (reverse lexicographic refines dominance).
pub fn nilpotent_orbits(ty: GroupType, n: usize) -> Result<Vec<NilpotentOrbit>, OrbitError> {
    if n == 0 || (ty == GroupType::Sp && !n.is_multiple_of(2)) {
        return Err(OrbitError::InvalidSize(n));
    }
    Partition::all(n)
        .into_iter()
        .filter(|p| check(ty, p).is_ok())
        .map(|p| {
            Ok(NilpotentOrbit {
                group: ty,
                dimension: orbit_dimension(ty, &p)?,
                component_group: component_group(ty, &p)?,
                partition: p,
            })
        })
        .collect()
}

/// Dominance order `λ ≤ μ`, the closure order on orbits.
pub fn closure_leq(lambda: &Partition, mu: &Partition) -> Result<bool, OrbitError> {
    if lambda.weight() != mu.weight() {
        return Err(OrbitError::WeightMismatch(lambda.weight(), mu.weight()));
    }
    let len = lambda.len().max(mu.len());
    Ok(lambda.partial_sums(len).iter().zip(mu.partial_sums(len)).all(|(a, b)| *a <= b))
}

/// A representative `x ∈ g_2` of the orbit together with a Dynkin cocharacter.
///
/// For `Sp` the form is `[[0, I], [−I, 0]]`.
pub fn jordan_representative(ty: GroupType, lambda: &Partition) -> Result<(RatMatrix, Cocharacter), OrbitError> {
    check(ty, lambda)?;
    let d = lambda.weight();
    let mut x = RatMatrix::zeros(d, d);
    let mut w = vec![0i64; d];
    let one = |i: usize, j: usize| RatMatrix::unit(d, i, j);
    match ty {
        GroupType::Sl => {
            let mut start = 0;
            for &p in lambda.parts() {
                for t in 0..p {
                    w[start + t] = (p as i64 - 1) - 2 * t as i64;
                    if t + 1 < p {
                        x = &x + &one(start + t, start + t + 1);
                    }
                }
                start += p;
            }
        }
        GroupType::Sp => {
            let m = d / 2;
            let mut next = 0;
            let mut parts = lambda.parts().to_vec();
            while let Some(p) = parts.first().copied() {
                parts.remove(0);
                let (k, top) = if p % 2 == 0 {
                    (p / 2, p as i64 - 1)
                } else {
                    let pos = parts.iter().position(|&q| q == p).expect("odd parts come in pairs");
                    parts.remove(pos);
                    (p, p as i64 - 1)
                };
                let idx: Vec<usize> = (next..next + k).collect();
                next += k;
                for (t, &i) in idx.iter().enumerate() {
                    w[i] = top - 2 * t as i64;
                    w[i + m] = -w[i];
                    if t + 1 < k {
                        x = &x + &one(i, idx[t + 1]);
                        x = &x - &one(idx[t + 1] + m, i + m);
                    }
                }
                if p % 2 == 0 {
                    let last = idx[k - 1];
                    x = &x + &one(last, last + m);
                }
            }
        }
    }
    Ok((x, Cocharacter::new(w)))
}
