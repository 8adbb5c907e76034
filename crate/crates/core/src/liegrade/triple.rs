use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::algebra::{graded_component, in_component, Cocharacter, MatrixLieAlgebra};
use super::LieError;
use crate::exactlin::{inverse, nilpotent_jordan_partition, rational_kernel, solve_affine, RatMatrix};

/// Images `(e, h, f)` of the standard basis of `sl_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: RatMatrix,
    pub h: RatMatrix,
    pub f: RatMatrix,
}

impl Sl2Triple {
    /// The zero homomorphism, attached to the zero orbit.
    pub fn zero(d: usize) -> Self {
        let z = RatMatrix::zeros(d, d);
        Sl2Triple { e: z.clone(), h: z.clone(), f: z }
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.h.is_zero() && self.f.is_zero()
    }

    /// `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`, checked exactly.
    pub fn brackets_hold(&self) -> bool {
        let two = BigRational::from_integer(2.into());
        self.h.bracket(&self.e) == self.e.scale(&two)
            && self.h.bracket(&self.f) == self.f.scale(&-two)
            && self.e.bracket(&self.f) == self.h
    }

    /// Graded placement `e ∈ g_n`, `h ∈ g_0`, `f ∈ g_{−n}` together with the brackets.
    pub fn is_adapted(&self, alg: &MatrixLieAlgebra, chi: &Cocharacter, n: i64) -> bool {
        self.brackets_hold()
            && in_component(alg, chi, n, &self.e)
            && in_component(alg, chi, 0, &self.h)
            && in_component(alg, chi, -n, &self.f)
    }

    /// `(P⁻¹eP, P⁻¹hP, P⁻¹fP)`.
    pub fn conjugated(&self, p: &RatMatrix) -> Option<Sl2Triple> {
        let pinv = inverse(p)?;
        let c = |m: &RatMatrix| &(&pinv * m) * p;
        Some(Sl2Triple { e: c(&self.e), h: c(&self.h), f: c(&self.f) })
    }
}

/// Solves `Σ cₖ Aₖ = B` for every pair `(A₁…A_K, B)` simultaneously.
fn solve_matrix_system(eqs: &[(Vec<RatMatrix>, RatMatrix)], unknowns: usize) -> Option<Vec<BigRational>> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (images, target) in eqs {
        for i in 0..target.rows() {
            for j in 0..target.cols() {
                rows.push(images.iter().map(|a| a.get(i, j)).collect::<Vec<_>>());
                rhs.push(target.get(i, j));
            }
        }
    }
    solve_affine(&rows, &rhs, unknowns)
}

fn combination(basis: &[RatMatrix], coeffs: &[BigRational], d: usize) -> RatMatrix {
    basis.iter().zip(coeffs).fold(RatMatrix::zeros(d, d), |acc, (b, c)| &acc + &b.scale(c))
}

/// An sl2-triple through `x ∈ g_n` with `h ∈ g_0` and `f ∈ g_{−n}`.
///
/// A diagonal `h` is tried first, which keeps the second cocharacter diagonal whenever possible.
pub fn adapted_sl2_triple(
    alg: &MatrixLieAlgebra,
    chi: &Cocharacter,
    n: i64,
    x: &RatMatrix,
) -> Result<Sl2Triple, LieError> {
    if n == 0 {
        return Err(LieError::ZeroDegree);
    }
    if chi.len() != alg.ambient_dim() {
        return Err(LieError::DimensionMismatch { expected: alg.ambient_dim(), found: chi.len() });
    }
    if !in_component(alg, chi, n, x) {
        return Err(LieError::NotInComponent(n));
    }
    nilpotent_jordan_partition(x).map_err(|_| LieError::NotNilpotent)?;
    if x.is_zero() {
        return Err(LieError::NoTriple("the zero element has no sl2-triple".into()));
    }
    let d = alg.ambient_dim();
    let two = BigRational::from_integer(2.into());
    let minus = graded_component(alg, chi, -n)?.basis;
    let k = minus.len();

    // [[x, f₀], x] = 2x, optionally with [x, f₀] diagonal
    let ad_x: Vec<RatMatrix> = minus.iter().map(|b| x.bracket(b)).collect();
    let second: Vec<RatMatrix> = ad_x.iter().map(|c| c.bracket(x)).collect();
    let main_eq = (second, x.scale(&two));
    let off_diag: Vec<RatMatrix> = ad_x
        .iter()
        .map(|c| {
            let mut m = c.clone();
            for i in 0..d {
                m = &m - &RatMatrix::unit(d, i, i).scale(&c.get(i, i));
            }
            m
        })
        .collect();
    let diag_eq = (off_diag, RatMatrix::zeros(d, d));
    let f0 = solve_matrix_system(&[main_eq.clone(), diag_eq], k)
        .or_else(|| solve_matrix_system(&[main_eq], k))
        .ok_or_else(|| LieError::NoTriple("no h in the image of ad x".into()))?;
    let h = x.bracket(&combination(&minus, &f0, d));

    // [x, f] = h and [h, f] = −2f
    let weight_eq: Vec<RatMatrix> = minus.iter().map(|b| &h.bracket(b) + &b.scale(&two)).collect();
    let coeffs = solve_matrix_system(&[(ad_x, h.clone()), (weight_eq, RatMatrix::zeros(d, d))], k)
        .ok_or_else(|| LieError::NoTriple("no f completing (x, h)".into()))?;
    let triple = Sl2Triple { e: x.clone(), h, f: combination(&minus, &coeffs, d) };
    if !triple.is_adapted(alg, chi, n) {
        return Err(LieError::NoTriple("bracket check failed".into()));
    }
    Ok(triple)
}

/// Weights of the second cocharacter together with the basis change diagonalizing `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiPrime {
    pub weights: Cocharacter,
    /// Columns are eigenvectors of `h`; commutes with the first cocharacter.
    #[serde(serialize_with = "crate::liegrade::serialize_matrix")]
    pub basis_change: RatMatrix,
}

/// `χ′(a) = φ(diag(a, a⁻¹))`: eigenvalues of `h` in a basis adapted to both cocharacters.
pub fn chi_prime(triple: &Sl2Triple, chi: &Cocharacter) -> Result<ChiPrime, LieError> {
    let h = &triple.h;
    let d = h.rows();
    if chi.len() != d {
        return Err(LieError::DimensionMismatch { expected: d, found: chi.len() });
    }
    let integral = |v: &BigRational| v.is_integer().then(|| v.to_integer().to_i64()).flatten();
    if h.is_diagonal() {
        let weights = (0..d).map(|i| integral(&h.get(i, i)).ok_or(LieError::NonIntegralWeights)).collect::<Result<_, _>>()?;
        return Ok(ChiPrime { weights: Cocharacter::new(weights), basis_change: RatMatrix::identity(d) });
    }
    // h must preserve each weight space of χ
    for i in 0..d {
        for j in 0..d {
            if chi.weights[i] != chi.weights[j] && h.is_nonzero_at(i, j) {
                return Err(LieError::NotSimultaneouslyDiagonal);
            }
        }
    }
    let mut weights = vec![0i64; d];
    let mut p = vec![BigRational::zero(); d * d];
    let mut blocks: Vec<i64> = chi.weights.clone();
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    blocks.dedup();
    let bound = d as i64;
    for w in blocks {
        let idx: Vec<usize> = (0..d).filter(|&i| chi.weights[i] == w).collect();
        let mut slots = idx.iter();
        for m in (-bound..=bound).rev() {
            let rows: Vec<Vec<BigRational>> = idx
                .iter()
                .map(|&i| {
                    idx.iter()
                        .map(|&j| {
                            let mut v = h.get(i, j);
                            if i == j {
                                v -= BigRational::from_integer(m.into());
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            for vec in rational_kernel(&rows, idx.len()) {
                let col = *slots.next().ok_or(LieError::NonIntegralWeights)?;
                weights[col] = m;
                for (t, &i) in idx.iter().enumerate() {
                    p[i * d + col] = vec[t].clone();
                }
            }
        }
        if slots.next().is_some() {
            return Err(LieError::NonIntegralWeights);
        }
    }
    let basis_change = RatMatrix::from_entries(d, d, &p);
    let inv = inverse(&basis_change).ok_or(LieError::NotSimultaneouslyDiagonal)?;
    let diag = &(&inv * h) * &basis_change;
    if diag != RatMatrix::diag_i64(&weights) {
        return Err(LieError::NotSimultaneouslyDiagonal);
    }
    Ok(ChiPrime { weights: Cocharacter::new(weights), basis_change })
}
