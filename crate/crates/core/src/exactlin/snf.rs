use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `U·M·V = diag(d₁, d₂, …)` with `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// `min(rows, cols)` diagonal entries, nonnegative, trailing zeros included.
    pub invariant_factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one: the torsion of the cokernel `Z^rows / (column span)`
    /// when the matrix is read with generators as columns, or of `Z^cols / (row span)` for rows.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    /// Order of the torsion subgroup (product of the nonzero invariant factors).
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().filter(|d| !d.is_zero()).fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn diagonal_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.invariant_factors, self.u.rows(), self.v.cols())
    }
}

/// Smith normal form by elementary row and column operations, pivoting on the entry of
/// smallest absolute value in the remaining block.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let steps = rows.min(cols);

    let mut t = 0;
    while t < steps {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut dirty = false;
        for i in t + 1..rows {
            if !a[(i, t)].is_zero() {
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
        }
        for j in t + 1..cols {
            if !a[(t, j)].is_zero() {
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
        }
        if dirty {
            // a remainder is now smaller than the pivot; re-pivot
            continue;
        }

        // the pivot must divide the rest of the block
        let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
        if let Some(i) = offender {
            let one = BigInt::one();
            a.add_row_multiple(t, i, &one);
            u.add_row_multiple(t, i, &one);
            continue;
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..steps).map(|i| a[(i, i)].clone()).collect();
    SnfResult { invariant_factors, u, v }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| x < *b) {
                best = Some((i, j, x));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}
