use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::FfError;
use crate::exactlin::{inv_mod, is_prime, RatMatrix};

/// Dense matrix over `F_p`, entries kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

impl PrimeFieldMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Result<Self, FfError> {
        if !is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        Ok(PrimeFieldMatrix { p, rows, cols, data: vec![0; rows * cols] })
    }

    /// Reduces a rational matrix; its common denominator must be a unit mod `p`.
    pub fn from_rational(m: &RatMatrix, p: u64) -> Result<Self, FfError> {
        let mut out = Self::zeros(p, m.rows(), m.cols())?;
        let den = reduce(m.denominator(), p);
        if den == 0 {
            return Err(FfError::BadReduction(m.to_string()));
        }
        let inv = inv_mod(den, p);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, reduce(m.numerator().get(i, j), p) * inv % p);
            }
        }
        Ok(out)
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Result<Self, FfError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut out = Self::zeros(p, rows.len(), cols)?;
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(FfError::InvalidSpec("ragged rows".into()));
            }
            for (j, &v) in r.iter().enumerate() {
                out.set(i, j, v % p);
            }
        }
        Ok(out)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = PrimeFieldMatrix { p: self.p, rows: self.cols, cols: self.rows, data: vec![0; self.data.len()] };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.p, other.p, "moduli differ");
        let p = self.p;
        let mut out = PrimeFieldMatrix { p, rows: self.rows, cols: other.cols, data: vec![0; self.rows * other.cols] };
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % self.p).collect();
        PrimeFieldMatrix { data, ..self.clone() }
    }

    /// `x v` for a row vector `v` viewed as a column.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % self.p)).collect()
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut power = self.clone();
        for _ in 0..self.rows {
            if power.is_zero() {
                return true;
            }
            power = power.mul(self);
        }
        power.is_zero()
    }
}

impl fmt::Display for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(";")?;
            }
            let r: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            f.write_str(&r.join(","))?;
        }
        Ok(())
    }
}
