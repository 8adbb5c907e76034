use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::LinAlgError;

/// Characteristic of the coefficient field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldChar {
    Zero,
    Prime(u64),
}

impl FieldChar {
    pub fn new(l: u64) -> Result<Self, LinAlgError> {
        match l {
            0 => Ok(FieldChar::Zero),
            p if is_prime(p) => Ok(FieldChar::Prime(p)),
            other => Err(LinAlgError::CompositeCharacteristic(other)),
        }
    }

    pub fn value(self) -> u64 {
        match self {
            FieldChar::Zero => 0,
            FieldChar::Prime(p) => p,
        }
    }

    /// Image of an integer in the field, as a canonical representative (`[0, p)` for primes).
    pub fn reduce(self, v: &BigInt) -> BigInt {
        match self {
            FieldChar::Zero => v.clone(),
            FieldChar::Prime(p) => v.mod_floor(&BigInt::from(p)),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `|n|`, ascending. Zero has none.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while BigInt::from(d) * BigInt::from(d) <= n {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n.to_u64().expect("prime factor beyond u64"));
    }
    out
}

/// Reduced row echelon form over the rationals. Returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    if !s.is_zero() {
                        *d = &*d - &k * s;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

fn rref_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    *d = (*d + p * p - k * s % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank of a matrix and a basis of its right kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    /// Kernel vectors. Over the rationals they are primitive integer vectors; over `F_p`
    /// entries lie in `[0, p)`.
    pub kernel: Vec<Vec<BigInt>>,
}

fn kernel_from_rref<T: Clone>(
    rows: &[Vec<T>],
    pivots: &[usize],
    ncols: usize,
    zero: T,
    one: T,
    neg: impl Fn(&T) -> T,
) -> Vec<Vec<T>> {
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero.clone(); ncols];
            v[f] = one.clone();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(&rows[r][f]);
            }
            v
        })
        .collect()
}

/// Clears denominators and divides out the content, giving a primitive integer vector.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Rank and kernel of an integer matrix over a field of characteristic 0 or a prime `p`.
pub fn rank_and_kernel(m: &IntMatrix, field_char: u64) -> Result<RankKernel, LinAlgError> {
    Ok(rank_and_kernel_in(m, FieldChar::new(field_char)?))
}

pub fn rank_and_kernel_in(m: &IntMatrix, field: FieldChar) -> RankKernel {
    let ncols = m.cols();
    match field {
        FieldChar::Zero => {
            let rows = m.row_vecs().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
            let (rows, pivots) = rref(rows, ncols);
            let kernel = kernel_from_rref(&rows, &pivots, ncols, BigRational::zero(), BigRational::one(), |x| -x)
                .iter()
                .map(|v| primitive_integer_vector(v))
                .collect();
            RankKernel { rank: pivots.len(), kernel }
        }
        FieldChar::Prime(p) => {
            let bp = BigInt::from(p);
            let rows = m
                .row_vecs()
                .into_iter()
                .map(|r| r.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
                .collect();
            let (rows, pivots) = rref_mod_p(rows, ncols, p);
            let kernel = kernel_from_rref(&rows, &pivots, ncols, 0u64, 1u64, |x| (p - x) % p)
                .into_iter()
                .map(|v| v.into_iter().map(BigInt::from).collect())
                .collect();
            RankKernel { rank: pivots.len(), kernel }
        }
    }
}

pub fn rank_rational(m: &RatMatrix) -> usize {
    rank_and_kernel_in(m.numerator(), FieldChar::Zero).rank
}

/// Rank of a family of rational vectors.
pub fn rank_of_vectors(vectors: &[Vec<BigRational>]) -> usize {
    let ncols = vectors.first().map_or(0, Vec::len);
    rref(vectors.to_vec(), ncols).1.len()
}

/// Canonical basis (the nonzero rows of the reduced echelon form) of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    rref(vectors.to_vec(), ncols).0
}

/// Rational right kernel of a coefficient matrix given as rows.
pub fn rational_kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    kernel_from_rref(&r, &pivots, ncols, BigRational::zero(), BigRational::one(), |x| -x)
}

/// One solution of `A x = b` with all free variables set to zero, if the system is consistent.
pub fn solve_affine(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (rows, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = rows[r][ncols].clone();
    }
    Some(x)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LinAlgError> {
    if !m.is_square() {
        return Err(LinAlgError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.row_vecs();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = (0..n).map(|j| m.get(i, j)).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let (rows, pivots) = rref(rows, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let entries: Vec<BigRational> = rows.iter().flat_map(|r| r[n..].iter().cloned()).collect();
    Some(RatMatrix::from_entries(n, n, &entries))
}
