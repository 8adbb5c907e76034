use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinAlgError;

/// Dense matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from `i64` rows. Panics on ragged input; intended for literals.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged matrix literal");
            data.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn diagonal(entries: &[BigInt], rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, e) in entries.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self, LinAlgError> {
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols, data })
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[src]
    pub(crate) fn add_row_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += k * col[src]
    pub(crate) fn add_col_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + target] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_int(self.clone())
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        self.get(i, j)
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimensions do not agree")
    }
}

/// Rational matrix stored as an integer numerator matrix over one positive common denominator.
///
/// Kept in lowest terms, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    num: IntMatrix,
    den: BigInt,
}

impl RatMatrix {
    pub fn new(num: IntMatrix, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut m = RatMatrix { num, den };
        m.normalize();
        m
    }

    pub fn from_int(num: IntMatrix) -> Self {
        RatMatrix { num, den: BigInt::one() }
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_int(IntMatrix::from_rows(rows))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_int(IntMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_int(IntMatrix::identity(n))
    }

    /// Matrix unit with a one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        m.set(i, j, BigInt::one());
        Self::from_int(m)
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(e));
        }
        Self::from_int(m)
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[BigRational]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let den = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let data = entries.iter().map(|e| e.numer() * (&den / e.denom())).collect();
        RatMatrix::new(IntMatrix { rows, cols, data }, den)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for v in &mut self.num.data {
                *v = -&*v;
            }
        }
        let g = self.num.data.iter().fold(self.den.clone(), |acc, v| acc.gcd(v));
        if !g.is_one() && !g.is_zero() {
            self.den = &self.den / &g;
            for v in &mut self.num.data {
                *v = &*v / &g;
            }
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn rows(&self) -> usize {
        self.num.rows
    }

    pub fn cols(&self) -> usize {
        self.num.cols
    }

    pub fn dim(&self) -> usize {
        self.num.rows
    }

    pub fn numerator(&self) -> &IntMatrix {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.num.get(i, j).clone(), self.den.clone())
    }

    pub fn is_nonzero_at(&self, i: usize, j: usize) -> bool {
        !self.num.get(i, j).is_zero()
    }

    /// Row-major entries as rationals.
    pub fn entries(&self) -> Vec<BigRational> {
        self.num.data.iter().map(|v| BigRational::new(v.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.num.is_diagonal()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Integer entries, when the matrix has denominator one.
    pub fn to_int(&self) -> Option<IntMatrix> {
        self.is_integral().then(|| self.num.clone())
    }

    pub fn trace(&self) -> BigRational {
        let t = (0..self.rows().min(self.cols())).fold(BigInt::zero(), |acc, i| acc + self.num.get(i, i));
        BigRational::new(t, self.den.clone())
    }

    pub fn transpose(&self) -> Self {
        RatMatrix { num: self.num.transpose(), den: self.den.clone() }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let data = self.num.data.iter().map(|v| v * k.numer()).collect();
        RatMatrix::new(IntMatrix { rows: self.rows(), cols: self.cols(), data }, &self.den * k.denom())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = RatMatrix::identity(self.rows());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Commutator `ab - ba`.
    pub fn bracket(&self, other: &RatMatrix) -> RatMatrix {
        &(self * other) - &(other * self)
    }

    /// Support pattern: `true` where the entry is nonzero.
    pub fn support(&self) -> Vec<Vec<bool>> {
        (0..self.rows()).map(|i| (0..self.cols()).map(|j| self.is_nonzero_at(i, j)).collect()).collect()
    }

    fn combine(&self, other: &RatMatrix, sign: i8) -> RatMatrix {
        assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()), "shape mismatch");
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let data = self
            .num
            .data
            .iter()
            .zip(&other.num.data)
            .map(|(a, b)| if sign > 0 { a * &fa + b * &fb } else { a * &fa - b * &fb })
            .collect();
        RatMatrix::new(IntMatrix { rows: self.rows(), cols: self.cols(), data }, den)
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.combine(rhs, 1)
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.combine(rhs, -1)
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.scale(&-BigRational::one())
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        RatMatrix::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

fn fmt_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: usize, cols: usize, cell: impl Fn(usize, usize) -> String) -> fmt::Result {
    for i in 0..rows {
        if i > 0 {
            f.write_str(";")?;
        }
        for j in 0..cols {
            if j > 0 {
                f.write_str(",")?;
            }
            f.write_str(&cell(i, j))?;
        }
    }
    Ok(())
}

/// Shared text format: rows separated by `;`, entries by `,`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows, self.cols, |i, j| self.get(i, j).to_string())
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.rows(), self.cols(), |i, j| fmt_rational(&self.get(i, j)))
    }
}

fn parse_cells(s: &str) -> Result<(usize, usize, Vec<BigRational>), LinAlgError> {
    let bad = |msg: &str| LinAlgError::Parse(format!("{msg} in matrix {s:?}"));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty input"));
    }
    let mut cols = None;
    let mut rows = 0;
    let mut out = Vec::new();
    for row in s.split(';') {
        let cells: Vec<&str> = row.split(',').map(str::trim).collect();
        match cols {
            None => cols = Some(cells.len()),
            Some(c) if c != cells.len() => return Err(bad("ragged rows")),
            _ => {}
        }
        for c in cells {
            let v = match c.split_once('/') {
                Some((n, d)) => {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
                    if d.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(BigInt::from_str(c).map_err(|_| bad("bad entry"))?),
            };
            out.push(v);
        }
        rows += 1;
    }
    Ok((rows, cols.unwrap_or(0), out))
}

impl FromStr for RatMatrix {
    type Err = LinAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, c, cells) = parse_cells(s)?;
        Ok(RatMatrix::from_entries(r, c, &cells))
    }
}

impl FromStr for IntMatrix {
    type Err = LinAlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, c, cells) = parse_cells(s)?;
        let data = cells
            .into_iter()
            .map(|v| if v.is_integer() { Ok(v.to_integer()) } else { Err(LinAlgError::Parse(format!("non-integer entry {v}"))) })
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::from_vec(r, c, data)
    }
}
