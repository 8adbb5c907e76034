use super::{FfError, PrimeFieldMatrix, MAX_DIM, MAX_PRIME};
use crate::exactlin::{inv_mod, is_prime};

/// A subspace of `F_p^d` stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u64,
    d: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of arbitrary vectors.
    pub fn span(p: u64, d: usize, vectors: Vec<Vec<u64>>) -> Subspace {
        let (basis, pivots) = rref_mod(vectors, d, p);
        Subspace { p, d, basis, pivots }
    }

    pub fn whole(p: u64, d: usize) -> Subspace {
        let basis = (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
        Subspace { p, d, basis, pivots: (0..d).collect() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = w[c];
            if f != 0 {
                for (wi, ri) in w.iter_mut().zip(row) {
                    *wi = (*wi + (p - f) * ri) % p;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Whether `x` maps `self` into `target`.
    pub fn maps_into(&self, x: &PrimeFieldMatrix, target: &Subspace) -> bool {
        self.basis.iter().all(|v| target.contains(&x.apply(v)))
    }

    /// `{w : b(s, w) = 0 for all s}` for the bilinear form with Gram matrix `b`.
    pub fn orthogonal(&self, b: &PrimeFieldMatrix) -> Subspace {
        let p = self.p;
        let rows: Vec<Vec<u64>> = self
            .basis
            .iter()
            .map(|s| (0..self.d).map(|j| (0..self.d).fold(0, |acc, i| (acc + s[i] * b.get(i, j)) % p)).collect())
            .collect();
        Subspace::span(p, self.d, kernel_mod(rows, self.d, p))
    }

    /// Image of a coefficient subspace of `F_p^{dim}` under this subspace's basis.
    pub fn pushforward(&self, coeffs: &Subspace) -> Subspace {
        let p = self.p;
        let vectors = coeffs
            .basis
            .iter()
            .map(|c| {
                (0..self.d).map(|j| c.iter().zip(&self.basis).fold(0, |acc, (ci, row)| (acc + ci * row[j]) % p)).collect()
            })
            .collect();
        Subspace::span(p, self.d, vectors)
    }
}

/// Row reduction mod `p`, zero rows dropped.
pub(crate) fn rref_mod(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_multiple_of(p)) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c] % p, p);
        for v in rows[r].iter_mut() {
            *v = *v % p * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            let f = row[c] % p;
            if k != r && f != 0 {
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a = (*a % p + (p - f) * b) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn kernel_mod(rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let (red, pivots) = rref_mod(rows, ncols, p);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// Lazy enumeration of `k`-dimensional subspaces: pivot sets in lexicographic order, then the
/// free entries counted in base `p`.
pub struct Subspaces {
    p: u64,
    d: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: Vec<u64>,
}

fn free_positions(pivots: &[usize], d: usize) -> Vec<(usize, usize)> {
    pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &c)| (c + 1..d).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
        .collect()
}

fn next_combination(c: &mut [usize], d: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < d - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for Subspaces {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let pivots = self.pivots.as_mut()?;
        let mut basis = vec![vec![0u64; self.d]; pivots.len()];
        for (r, &c) in pivots.iter().enumerate() {
            basis[r][c] = 1;
        }
        for (&(r, j), &v) in self.free.iter().zip(&self.counter) {
            basis[r][j] = v;
        }
        let out = Subspace { p: self.p, d: self.d, basis, pivots: pivots.clone() };
        // advance the counter, then the pivot set
        let mut carried = true;
        for v in self.counter.iter_mut() {
            *v += 1;
            if *v < self.p {
                carried = false;
                break;
            }
            *v = 0;
        }
        if carried {
            if next_combination(pivots, self.d) {
                self.free = free_positions(pivots, self.d);
                self.counter = vec![0; self.free.len()];
            } else {
                self.pivots = None;
            }
        }
        Some(out)
    }
}

/// Every `k`-dimensional subspace of `F_p^d` exactly once.
pub fn enumerate_subspaces(p: u64, d: usize, k: usize) -> Result<Subspaces, FfError> {
    if !is_prime(p) {
        return Err(FfError::NotPrime(p));
    }
    if p > MAX_PRIME || d > MAX_DIM {
        return Err(FfError::LimitExceeded { p, d });
    }
    if k == 0 || k >= d {
        return Err(FfError::InvalidSpec(format!("subspace dimension {k} must lie in [1, {d})")));
    }
    Ok(unchecked_subspaces(p, d, k))
}

/// Also allows `k = 0` and `k = d`; used for nested flags.
pub(crate) fn unchecked_subspaces(p: u64, d: usize, k: usize) -> Subspaces {
    let pivots: Vec<usize> = (0..k).collect();
    let free = free_positions(&pivots, d);
    Subspaces { p, d, counter: vec![0; free.len()], free, pivots: Some(pivots) }
}
