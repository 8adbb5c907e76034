use std::collections::BTreeMap;

use serde::Serialize;

use super::algebra::{in_component, weight_matrix, Cocharacter, MatrixLieAlgebra};
use super::triple::{chi_prime, ChiPrime, Sl2Triple};
use super::{serialize_matrix, LieError};
use crate::exactlin::{inverse, IntMatrix, RatMatrix};

/// `p ⊇ l ⊕ n` cut out by the sign of `sign(n)·(n·m − 2m′)` on bigraded pieces, where
/// `m` is the weight of the second cocharacter and `m′` that of the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDatum {
    pub degree: i64,
    pub chi: Cocharacter,
    pub chi_prime: ChiPrime,
    pub p_basis: Vec<RatMatrix>,
    pub n_basis: Vec<RatMatrix>,
    pub l_basis: Vec<RatMatrix>,
    /// Supports in the original coordinates.
    pub p_mask: Vec<Vec<bool>>,
    pub n_mask: Vec<Vec<bool>>,
    pub l_mask: Vec<Vec<bool>>,
    /// `c_i − c_j` with `c = |n|·χ′ − 2·sign(n)·χ`, in the coordinates of `chi_prime.basis_change`.
    pub combined_matrix: IntMatrix,
    /// Diagonal coordinates of the second cocharacter, with the Levi as a masked algebra.
    levi_algebra: MatrixLieAlgebra,
    levi_triple: Sl2Triple,
}

/// Per-index combined weight; the sign of `c_i − c_j` places `E_ij`.
pub fn combined_weights(chi: &Cocharacter, chi_prime: &Cocharacter, n: i64) -> Vec<i64> {
    chi.weights.iter().zip(&chi_prime.weights).map(|(&w, &wp)| n.abs() * wp - 2 * n.signum() * w).collect()
}

fn support_union(basis: &[RatMatrix], d: usize) -> Vec<Vec<bool>> {
    let mut mask = vec![vec![false; d]; d];
    for b in basis {
        for (i, row) in mask.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell |= b.is_nonzero_at(i, j);
            }
        }
    }
    mask
}

pub fn canonical_parabolic(
    alg: &MatrixLieAlgebra,
    chi: &Cocharacter,
    triple: &Sl2Triple,
    n: i64,
) -> Result<ParabolicDatum, LieError> {
    if n == 0 {
        return Err(LieError::ZeroDegree);
    }
    if !triple.is_zero() && !triple.is_adapted(alg, chi, n) {
        return Err(LieError::NoTriple("triple is not adapted to the grading".into()));
    }
    let cp = chi_prime(triple, chi)?;
    let p = &cp.basis_change;
    let pinv = inverse(p).ok_or(LieError::NotSimultaneouslyDiagonal)?;
    let diag_alg = alg.conjugated(p)?;
    let c = combined_weights(chi, &cp.weights, n);
    let d = alg.ambient_dim();
    let back = |m: &RatMatrix| &(p * m) * &pinv;

    let pick = |keep: fn(i64) -> bool| -> Vec<RatMatrix> {
        diag_alg.span_in_cells(|i, j| keep(c[i] - c[j])).iter().map(back).collect()
    };
    let p_basis = pick(|s| s >= 0);
    let n_basis = pick(|s| s > 0);
    let l_basis = pick(|s| s == 0);

    let levi_mask: Vec<Vec<bool>> = (0..d).map(|i| (0..d).map(|j| c[i] == c[j]).collect()).collect();
    let levi_algebra = diag_alg.restricted(levi_mask);
    let levi_triple = triple.conjugated(p).ok_or(LieError::NotSimultaneouslyDiagonal)?;

    Ok(ParabolicDatum {
        degree: n,
        chi: chi.clone(),
        p_mask: support_union(&p_basis, d),
        n_mask: support_union(&n_basis, d),
        l_mask: support_union(&l_basis, d),
        p_basis,
        n_basis,
        l_basis,
        combined_matrix: weight_matrix(&Cocharacter::new(c)),
        chi_prime: cp,
        levi_algebra,
        levi_triple,
    })
}

impl ParabolicDatum {
    /// Blocks of the Levi (connected components of its support), 1-based, by smallest index.
    pub fn levi_blocks(&self) -> Vec<Vec<usize>> {
        let d = self.l_mask.len();
        let mut seen = vec![false; d];
        let mut blocks = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut block = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < block.len() {
                let i = block[k];
                for j in 0..d {
                    if !seen[j] && (self.l_mask[i][j] || self.l_mask[j][i]) {
                        seen[j] = true;
                        block.push(j);
                    }
                }
                k += 1;
            }
            block.sort_unstable();
            blocks.push(block.into_iter().map(|i| i + 1).collect());
        }
        blocks
    }

    /// Block sizes, largest first.
    pub fn levi_shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.levi_blocks().iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// The Levi with both cocharacters diagonal, and the triple in those coordinates.
    pub fn levi_datum(&self) -> (&MatrixLieAlgebra, &Sl2Triple) {
        (&self.levi_algebra, &self.levi_triple)
    }

    pub fn chi_prime_matrix(&self) -> IntMatrix {
        weight_matrix(&self.chi_prime.weights)
    }

    pub fn report(&self) -> ParabolicReport {
        let mask = |m: &Vec<Vec<bool>>| m.iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect();
        ParabolicReport {
            degree: self.degree,
            chi: self.chi.weights.clone(),
            chi_prime: self.chi_prime.weights.weights.clone(),
            basis_change: self.chi_prime.basis_change.clone(),
            chi_prime_matrix: self.chi_prime_matrix().to_string(),
            combined_matrix: self.combined_matrix.to_string(),
            p_dim: self.p_basis.len(),
            n_dim: self.n_basis.len(),
            l_dim: self.l_basis.len(),
            p_mask: mask(&self.p_mask),
            n_mask: mask(&self.n_mask),
            l_mask: mask(&self.l_mask),
            levi_blocks: self.levi_blocks(),
            levi_shape: self.levi_shape(),
        }
    }
}

/// Serializable summary of a parabolic datum.
#[derive(Clone, Debug, Serialize)]
pub struct ParabolicReport {
    pub degree: i64,
    pub chi: Vec<i64>,
    pub chi_prime: Vec<i64>,
    #[serde(serialize_with = "serialize_matrix")]
    pub basis_change: RatMatrix,
    pub chi_prime_matrix: String,
    pub combined_matrix: String,
    pub p_dim: usize,
    pub n_dim: usize,
    pub l_dim: usize,
    pub p_mask: Vec<Vec<u8>>,
    pub n_mask: Vec<Vec<u8>>,
    pub l_mask: Vec<Vec<u8>>,
    pub levi_blocks: Vec<Vec<usize>>,
    pub levi_shape: Vec<usize>,
}

/// A nonzero bigraded piece `_m g ∩ g_{m′}` with `n·m ≠ 2m′`, or a triple outside `J_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RigidityWitness {
    NotInJn,
    Cell {
        /// Weight of the second cocharacter.
        m: i64,
        /// Weight of the first cocharacter.
        m_prime: i64,
        dim: usize,
        /// A 1-based matrix position in the piece (diagonal coordinates).
        cell: (usize, usize),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub is_rigid: bool,
    pub witness: Option<RigidityWitness>,
}

/// `(alg, χ)` is n-rigid for the triple when `_m g = g_{nm/2}` for every `m`.
pub fn check_n_rigid(
    alg: &MatrixLieAlgebra,
    chi: &Cocharacter,
    triple: &Sl2Triple,
    n: i64,
) -> Result<RigidityReport, LieError> {
    if n == 0 {
        return Err(LieError::ZeroDegree);
    }
    if !triple.is_zero() && !triple.is_adapted(alg, chi, n) {
        return Ok(RigidityReport { is_rigid: false, witness: Some(RigidityWitness::NotInJn) });
    }
    let cp = chi_prime(triple, chi)?;
    let diag_alg = alg.conjugated(&cp.basis_change)?;
    let d = alg.ambient_dim();
    let wp = &cp.weights;
    let mut classes: BTreeMap<(i64, i64), (usize, usize)> = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            classes.entry((wp.cell_weight(i, j), chi.cell_weight(i, j))).or_insert((i, j));
        }
    }
    for (&(m, m_prime), &(i, j)) in &classes {
        if n * m == 2 * m_prime {
            continue;
        }
        let dim = diag_alg.span_in_cells(|a, b| wp.cell_weight(a, b) == m && chi.cell_weight(a, b) == m_prime).len();
        if dim > 0 {
            let cell = first_cell(&diag_alg, wp, chi, m, m_prime).unwrap_or((i, j));
            let witness = RigidityWitness::Cell { m, m_prime, dim, cell: (cell.0 + 1, cell.1 + 1) };
            return Ok(RigidityReport { is_rigid: false, witness: Some(witness) });
        }
    }
    Ok(RigidityReport { is_rigid: true, witness: None })
}

fn first_cell(alg: &MatrixLieAlgebra, wp: &Cocharacter, chi: &Cocharacter, m: i64, mp: i64) -> Option<(usize, usize)> {
    let d = alg.ambient_dim();
    let piece = alg.span_in_cells(|a, b| wp.cell_weight(a, b) == m && chi.cell_weight(a, b) == mp);
    (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| piece.iter().any(|b| b.is_nonzero_at(i, j)))
}

/// Whether `x` lies in the span of the given matrices.
pub fn in_span(basis: &[RatMatrix], x: &RatMatrix) -> bool {
    let rows = |ms: &[RatMatrix]| -> Vec<Vec<num_rational::BigRational>> { ms.iter().map(|m| m.entries()).collect() };
    let mut with = basis.to_vec();
    with.push(x.clone());
    crate::exactlin::rank_of_vectors(&rows(&with)) == crate::exactlin::rank_of_vectors(&rows(basis)) || x.is_zero()
}

/// `x ∈ l_n`: the Levi piece of degree `n` in the first grading.
pub fn in_levi_component(datum: &ParabolicDatum, alg: &MatrixLieAlgebra, x: &RatMatrix) -> bool {
    in_span(&datum.l_basis, x) && in_component(alg, &datum.chi, datum.degree, x)
}
