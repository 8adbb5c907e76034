//! Oracles built without the library's own elimination code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

pub mod suites;

use num_integer::Integer;

/// Determinant by cofactor expansion along the first row.
pub fn det_laplace(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {
            let mut total = 0;
            for c in 0..n {
                if m[0][c] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, &v)| v).collect()).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                total += sign * m[0][c] * det_laplace(&minor);
            }
            total
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `s_k = d_k / d_{k−1}` with `d_k` the gcd of
/// all `k × k` minors. Stops at the rank.
pub fn invariant_factors_oracle(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in combinations(rows, k) {
            for cs in combinations(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = g.gcd(&det_laplace(&minor));
                if g == 1 {
                    break;
                }
            }
            if g == 1 {
                break;
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn prime_factors(mut n: i128) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    n = n.abs();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.insert(p as u64);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n as u64);
    }
    out
}

/// Primes dividing the torsion of `Z^d / span(gens)`.
pub fn quotient_torsion_primes(gens: &[Vec<i64>], d: usize) -> BTreeSet<u64> {
    if gens.is_empty() {
        return BTreeSet::new();
    }
    let m: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&v| v as i128).collect()).collect();
    assert_eq!(m[0].len(), d);
    invariant_factors_oracle(&m).into_iter().flat_map(prime_factors).collect()
}

/// Union over every subset of `gens` (up to sign) of the quotient torsion primes, with `extra`
/// always added to the generators.
pub fn all_subset_torsion(gens: &[Vec<i64>], extra: &[Vec<i64>], d: usize) -> BTreeSet<u64> {
    let mut positive: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        let neg: Vec<i64> = g.iter().map(|v| -v).collect();
        if !positive.contains(g) && !positive.contains(&neg) {
            positive.push(g.clone());
        }
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << positive.len()) {
        let mut sel: Vec<Vec<i64>> =
            positive.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g.clone()).collect();
        sel.extend(extra.iter().cloned());
        out.extend(quotient_torsion_primes(&sel, d));
    }
    out
}

/// Partitions reachable from `mu` by moving one box to a lower row: everything `mu` dominates.
pub fn dominated_by(mu: &[usize]) -> HashSet<Vec<usize>> {
    let n: usize = mu.iter().sum();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(mu.to_vec());
    queue.push_back(mu.to_vec());
    while let Some(lam) = queue.pop_front() {
        let mut padded = lam.clone();
        padded.resize(n, 0);
        for i in 0..n {
            for j in i + 1..n {
                if padded[i] == 0 {
                    continue;
                }
                let mut next = padded.clone();
                next[i] -= 1;
                next[j] += 1;
                if next.windows(2).all(|w| w[0] >= w[1]) {
                    next.retain(|&v| v > 0);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

/// Rank over `Q` by fraction-free elimination in `i128`.
pub fn rank_i128(mut m: Vec<Vec<i128>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else { continue };
        m.swap(r, k);
        for k in r + 1..m.len() {
            let (a, b) = (m[r][c], m[k][c]);
            if b != 0 {
                let row_r = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(&row_r) {
                    *x = *x * a - *y * b;
                }
                let g = m[k].iter().fold(0i128, |g, &v| g.gcd(&v));
                if g > 1 {
                    m[k].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// Jordan type of a nilpotent integer matrix from the ranks of its powers.
pub fn jordan_type_oracle(x: &[Vec<i128>]) -> Vec<usize> {
    let n = x.len();
    let mul = |a: &[Vec<i128>], b: &[Vec<i128>]| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let mut ranks = vec![n];
    let mut power = x.to_vec();
    loop {
        let r = rank_i128(power.clone());
        ranks.push(r);
        if r == 0 {
            break;
        }
        power = mul(&power, x);
    }
    // number of blocks of size ≥ k is rank(x^{k−1}) − rank(x^k)
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, w) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, w - next));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// All `k`-subspaces of `F_p^d` by brute force over spanning tuples, as sorted vectors of
/// their members.
pub fn subspaces_brute_force(p: u64, d: usize, k: usize) -> usize {
    let vectors: Vec<Vec<u64>> = (0..p.pow(d as u32))
        .map(|mut c| {
            (0..d)
                .map(|_| {
                    let v = c % p;
                    c /= p;
                    v
                })
                .collect()
        })
        .collect();
    let span = |gens: &[Vec<u64>]| -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0; d]);
        for g in gens {
            let current: Vec<Vec<u64>> = set.iter().cloned().collect();
            for v in current {
                for c in 1..p {
                    set.insert(v.iter().zip(g).map(|(a, b)| (a + c * b) % p).collect());
                }
            }
        }
        set
    };
    let mut found: HashSet<BTreeSet<Vec<u64>>> = HashSet::new();
    let mut stack: Vec<(Vec<Vec<u64>>, BTreeSet<Vec<u64>>)> = vec![(Vec::new(), span(&[]))];
    while let Some((gens, s)) = stack.pop() {
        if gens.len() == k {
            found.insert(s);
            continue;
        }
        for v in &vectors {
            if !s.contains(v) {
                let mut g2 = gens.clone();
                g2.push(v.clone());
                let s2 = span(&g2);
                if gens.len() + 1 == k && found.contains(&s2) {
                    continue;
                }
                stack.push((g2, s2));
            }
        }
    }
    found.len()
}
