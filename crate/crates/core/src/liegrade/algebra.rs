use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::LieError;
use crate::exactlin::{determinant, inverse, primitive_integer_vector, rational_kernel, IntMatrix, RatMatrix};
use crate::rootdata::GroupType;

/// `sl_d` or `sp(B)` realized as matrices, optionally cut down to a pattern of allowed cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixLieAlgebra {
    ty: GroupType,
    d: usize,
    form: Option<RatMatrix>,
    mask: Option<Vec<Vec<bool>>>,
    basis: Vec<RatMatrix>,
}

/// The form `[[0, I], [−I, 0]]`.
pub fn standard_symplectic_form(d: usize) -> IntMatrix {
    let m = d / 2;
    let mut b = IntMatrix::zeros(d, d);
    for i in 0..m {
        b.set(i, i + m, BigInt::from(1));
        b.set(i + m, i, BigInt::from(-1));
    }
    b
}

pub fn build_algebra(ty: GroupType, d: usize, form: Option<&IntMatrix>) -> Result<MatrixLieAlgebra, LieError> {
    let form = match ty {
        GroupType::Sl => {
            if d < 1 {
                return Err(LieError::BadDimension(d));
            }
            None
        }
        GroupType::Sp => {
            if d < 2 || !d.is_multiple_of(2) {
                return Err(LieError::BadDimension(d));
            }
            let b = form.cloned().unwrap_or_else(|| standard_symplectic_form(d));
            if b.rows() != d || b.cols() != d {
                return Err(LieError::BadForm("form has the wrong size".into()));
            }
            let neg_t: Vec<BigInt> = b.transpose().entries().iter().map(|x| -x).collect();
            if b.entries() != neg_t.as_slice() {
                return Err(LieError::BadForm("form is not antisymmetric".into()));
            }
            if determinant(&b).map(|v| v.is_zero()).unwrap_or(true) {
                return Err(LieError::BadForm("form is singular".into()));
            }
            Some(b.to_rational())
        }
    };
    Ok(MatrixLieAlgebra::with_form(ty, d, form, None))
}

impl MatrixLieAlgebra {
    fn with_form(ty: GroupType, d: usize, form: Option<RatMatrix>, mask: Option<Vec<Vec<bool>>>) -> Self {
        let mut alg = MatrixLieAlgebra { ty, d, form, mask, basis: Vec::new() };
        alg.basis = alg.span_in_cells(|_, _| true);
        alg
    }

    pub fn group_type(&self) -> GroupType {
        self.ty
    }

    /// Size of the matrices.
    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RatMatrix] {
        &self.basis
    }

    pub fn form(&self) -> Option<&RatMatrix> {
        self.form.as_ref()
    }

    pub fn mask(&self) -> Option<&Vec<Vec<bool>>> {
        self.mask.as_ref()
    }

    fn allowed(&self, i: usize, j: usize) -> bool {
        self.mask.as_ref().is_none_or(|m| m[i][j])
    }

    pub fn contains(&self, m: &RatMatrix) -> bool {
        if m.rows() != self.d || m.cols() != self.d {
            return false;
        }
        let off_mask = (0..self.d).any(|i| (0..self.d).any(|j| !self.allowed(i, j) && m.is_nonzero_at(i, j)));
        if off_mask {
            return false;
        }
        match &self.form {
            None => m.trace().is_zero(),
            Some(b) => (&(&m.transpose() * b) + &(b * m)).is_zero(),
        }
    }

    /// Linear conditions on the entries at `cells` for membership.
    fn constraints(&self, cells: &[(usize, usize)]) -> Vec<Vec<BigRational>> {
        let mut rows = Vec::new();
        match &self.form {
            None => {
                rows.push(cells.iter().map(|&(i, j)| BigRational::from_integer((i == j).into())).collect());
            }
            Some(b) => {
                // (MᵀB + BM) is antisymmetric, so the entries above the diagonal suffice
                for a in 0..self.d {
                    for c in a + 1..self.d {
                        let row: Vec<BigRational> = cells
                            .iter()
                            .map(|&(i, j)| {
                                let mut v = BigRational::zero();
                                if j == a {
                                    v += b.get(i, c);
                                }
                                if j == c {
                                    v += b.get(a, i);
                                }
                                v
                            })
                            .collect();
                        if row.iter().any(|x| !x.is_zero()) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        rows
    }

    /// Basis of the intersection of the algebra with the matrices supported on the selected cells.
    pub fn span_in_cells(&self, select: impl Fn(usize, usize) -> bool) -> Vec<RatMatrix> {
        let cells: Vec<(usize, usize)> = (0..self.d)
            .flat_map(|i| (0..self.d).map(move |j| (i, j)))
            .filter(|&(i, j)| self.allowed(i, j) && select(i, j))
            .collect();
        if cells.is_empty() {
            return Vec::new();
        }
        let rows = self.constraints(&cells);
        rational_kernel(&rows, cells.len())
            .iter()
            .map(|v| {
                let v = primitive_integer_vector(v);
                let mut m = IntMatrix::zeros(self.d, self.d);
                for (&(i, j), x) in cells.iter().zip(v) {
                    m.set(i, j, x);
                }
                // positive leading entry
                if m.entries().iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    let neg: Vec<BigInt> = m.entries().iter().map(|x| -x).collect();
                    m = IntMatrix::from_vec(self.d, self.d, neg).expect("square");
                }
                m.to_rational()
            })
            .collect()
    }

    /// The same algebra written in the basis given by the columns of `p`: `M ↦ P⁻¹ M P`.
    pub fn conjugated(&self, p: &RatMatrix) -> Result<MatrixLieAlgebra, LieError> {
        if *p == RatMatrix::identity(self.d) {
            return Ok(self.clone());
        }
        if self.mask.is_some() {
            return Err(LieError::NotSimultaneouslyDiagonal);
        }
        inverse(p).ok_or(LieError::NotSimultaneouslyDiagonal)?;
        let form = self.form.as_ref().map(|b| &(&p.transpose() * b) * p);
        Ok(MatrixLieAlgebra::with_form(self.ty, self.d, form, None))
    }

    /// The subalgebra of matrices supported on `mask`.
    pub fn restricted(&self, mask: Vec<Vec<bool>>) -> MatrixLieAlgebra {
        let merged = (0..self.d).map(|i| (0..self.d).map(|j| mask[i][j] && self.allowed(i, j)).collect()).collect();
        MatrixLieAlgebra::with_form(self.ty, self.d, self.form.clone(), Some(merged))
    }
}

/// Diagonal cocharacter `t ↦ diag(t^{w₁}, …, t^{w_d})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cocharacter {
    pub weights: Vec<i64>,
}

impl Cocharacter {
    pub fn new(weights: Vec<i64>) -> Self {
        Cocharacter { weights }
    }

    /// Checks that the differential lies in the algebra.
    pub fn validated(self, alg: &MatrixLieAlgebra) -> Result<Self, LieError> {
        if self.weights.len() != alg.ambient_dim() {
            return Err(LieError::DimensionMismatch { expected: alg.ambient_dim(), found: self.weights.len() });
        }
        if !alg.contains(&self.as_matrix()) {
            return Err(LieError::InvalidCocharacter(self.to_string()));
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_matrix(&self) -> RatMatrix {
        RatMatrix::diag_i64(&self.weights)
    }

    /// Weight of the matrix unit at `(i, j)`.
    pub fn cell_weight(&self, i: usize, j: usize) -> i64 {
        self.weights[i] - self.weights[j]
    }
}

impl fmt::Display for Cocharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Cocharacter {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let weights = body
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| LieError::Parse(format!("bad weight {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Cocharacter { weights })
    }
}

/// Entry `(i, j)` is `wᵢ − wⱼ`: the degree of the matrix unit `E_ij`.
pub fn weight_matrix(chi: &Cocharacter) -> IntMatrix {
    let d = chi.len();
    let data = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| BigInt::from(chi.cell_weight(i, j))).collect();
    IntMatrix::from_vec(d, d, data).expect("square")
}

/// The graded piece `g_n` with a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComponent {
    pub degree: i64,
    pub basis: Vec<RatMatrix>,
}

impl GradedComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn graded_component(alg: &MatrixLieAlgebra, chi: &Cocharacter, n: i64) -> Result<GradedComponent, LieError> {
    if chi.len() != alg.ambient_dim() {
        return Err(LieError::DimensionMismatch { expected: alg.ambient_dim(), found: chi.len() });
    }
    Ok(GradedComponent { degree: n, basis: alg.span_in_cells(|i, j| chi.cell_weight(i, j) == n) })
}

/// Whether `x` lies in `g_n`.
pub fn in_component(alg: &MatrixLieAlgebra, chi: &Cocharacter, n: i64, x: &RatMatrix) -> bool {
    alg.contains(x)
        && (0..x.rows()).all(|i| (0..x.cols()).all(|j| !x.is_nonzero_at(i, j) || chi.cell_weight(i, j) == n))
}

/// Degrees that occur in the grading, ascending.
pub fn occurring_degrees(alg: &MatrixLieAlgebra, chi: &Cocharacter) -> Vec<i64> {
    let mut degrees: Vec<i64> = (0..alg.ambient_dim())
        .flat_map(|i| (0..alg.ambient_dim()).map(move |j| (i, j)))
        .map(|(i, j)| chi.cell_weight(i, j))
        .collect();
    degrees.sort_unstable();
    degrees.dedup();
    degrees.retain(|&n| !alg.span_in_cells(|i, j| chi.cell_weight(i, j) == n).is_empty());
    degrees
}

/// Integer entries of an integral rational matrix, for display and comparison.
pub fn to_i64_rows(m: &RatMatrix) -> Option<Vec<Vec<i64>>> {
    let int = m.to_int()?;
    (0..int.rows()).map(|i| (0..int.cols()).map(|j| int.get(i, j).to_i64()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(build_algebra(GroupType::Sl, 2, None).unwrap().dim(), 3);
        assert_eq!(build_algebra(GroupType::Sl, 4, None).unwrap().dim(), 15);
        assert_eq!(build_algebra(GroupType::Sp, 4, None).unwrap().dim(), 10);
        assert_eq!(build_algebra(GroupType::Sp, 6, None).unwrap().dim(), 21);
    }

    #[test]
    fn bad_forms() {
        let sym = IntMatrix::identity(4);
        assert!(matches!(build_algebra(GroupType::Sp, 4, Some(&sym)), Err(LieError::BadForm(_))));
        assert!(build_algebra(GroupType::Sp, 3, None).is_err());
    }

    #[test]
    fn basis_members() {
        for alg in [build_algebra(GroupType::Sl, 3, None).unwrap(), build_algebra(GroupType::Sp, 4, None).unwrap()] {
            for b in alg.basis() {
                assert!(alg.contains(b));
            }
        }
    }

    #[test]
    fn weight_matrices() {
        let w = weight_matrix(&"1,0,0,-1".parse().unwrap());
        assert_eq!(w.to_string(), "0,1,1,2;-1,0,0,1;-1,0,0,1;-2,-1,-1,0");
        let w = weight_matrix(&"-1,1,-1,1".parse().unwrap());
        assert_eq!(w.row(0).iter().map(|x| x.to_i64().unwrap()).collect::<Vec<_>>(), vec![0, -2, 0, -2]);
        assert!(weight_matrix(&Cocharacter::new(vec![0; 3])).is_zero());
    }

    #[test]
    fn graded_pieces_of_sl4() {
        let alg = build_algebra(GroupType::Sl, 4, None).unwrap();
        let chi: Cocharacter = "1,0,0,-1".parse().unwrap();
        let g2 = graded_component(&alg, &chi, 2).unwrap();
        assert_eq!(g2.dim(), 1);
        assert_eq!(g2.basis[0], RatMatrix::unit(4, 0, 3));
        assert_eq!(graded_component(&alg, &chi, -1).unwrap().dim(), 4);
        assert_eq!(graded_component(&alg, &chi, 5).unwrap().dim(), 0);
        let total: usize =
            occurring_degrees(&alg, &chi).iter().map(|&n| graded_component(&alg, &chi, n).unwrap().dim()).sum();
        assert_eq!(total, 15);
    }

    #[test]
    fn cocharacter_validation() {
        let sp4 = build_algebra(GroupType::Sp, 4, None).unwrap();
        assert!(Cocharacter::new(vec![1, 0, -1, 0]).validated(&sp4).is_ok());
        assert!(Cocharacter::new(vec![1, 0, 0, -1]).validated(&sp4).is_err());
    }
}
