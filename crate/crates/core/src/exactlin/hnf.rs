use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows` in `Z^ncols`.
///
/// Only the nonzero rows are returned. Pivots are positive and entries above each pivot lie in
/// `[0, pivot)`, so two generating sets span the same lattice iff their forms are equal.
pub fn hermite_normal_form(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut top = 0;
    for c in 0..ncols {
        if top == a.len() {
            break;
        }
        loop {
            let best = (top..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].abs());
            let Some(b) = best else { break };
            a.swap(top, b);
            let mut done = true;
            for i in top + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[top][c]);
                let pivot_row = a[top].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                done &= a[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if top == a.len() || a[top][c].is_zero() {
            continue;
        }
        if a[top][c].is_negative() {
            for x in a[top].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[top].clone();
        for row in a.iter_mut().take(top) {
            let q = row[c].div_floor(&pivot_row[c]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        top += 1;
    }
    a.truncate(top);
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    a
}

/// Membership of `v` in the lattice with Hermite basis `hnf`.
pub fn lattice_contains(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for row in hnf {
        let c = row.iter().position(|x| !x.is_zero()).expect("zero row in Hermite form");
        if v[..c].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = v[c].div_rem(&row[c]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    v.iter().all(Zero::is_zero)
}
