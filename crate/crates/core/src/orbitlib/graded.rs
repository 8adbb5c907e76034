use serde::Serialize;

use super::OrbitError;
use crate::exactlin::{rank_of_vectors, RatMatrix};
use crate::liegrade::{
    adapted_sl2_triple, canonical_parabolic, graded_component, in_component, Cocharacter, MatrixLieAlgebra,
    Sl2Triple,
};
use crate::rootdata::GroupType;

/// The type-A quiver underlying `g_n`: one vertex per weight space on a chain `w, w+n, w+2n, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverSlice {
    /// Per vertex (1-based numbering follows this order): weight and coordinates.
    pub vertices: Vec<(i64, Vec<usize>)>,
    /// Positive roots as vertex intervals `[a, b]` (0-based), simple roots first, then the
    /// rest ordered by `(a, b)`. Root `k` carries the label `α_{k+1}`.
    pub roots: Vec<(usize, usize)>,
}

impl QuiverSlice {
    pub fn new(chi: &Cocharacter, n: i64) -> Result<Self, OrbitError> {
        if n == 0 {
            return Err(OrbitError::ZeroDegree);
        }
        if chi.weights.windows(2).any(|w| w[0] < w[1]) {
            return Err(OrbitError::UnsortedWeights);
        }
        let mut weights = chi.weights.clone();
        weights.dedup();
        let present = |w: i64| weights.contains(&w);
        let mut vertices = Vec::new();
        let mut chain_of = Vec::new();
        let mut starts: Vec<i64> = weights.iter().copied().filter(|&w| !present(w - n) && present(w + n)).collect();
        starts.sort_unstable_by(|a, b| b.cmp(a));
        for (c, s) in starts.into_iter().enumerate() {
            let mut w = s;
            while present(w) {
                let coords = (0..chi.len()).filter(|&i| chi.weights[i] == w).collect();
                vertices.push((w, coords));
                chain_of.push(c);
                w += n;
            }
        }
        let k = vertices.len();
        let mut roots: Vec<(usize, usize)> = (0..k).map(|v| (v, v)).collect();
        for a in 0..k {
            for b in a + 1..k {
                if chain_of[a] == chain_of[b] {
                    roots.push((a, b));
                }
            }
        }
        Ok(QuiverSlice { vertices, roots })
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        self.vertices.iter().map(|(_, c)| c.len()).collect()
    }

    /// Every multiset of roots (as multiplicities) whose dimension vectors add up to the slice.
    pub fn decompositions(&self) -> Vec<Vec<usize>> {
        fn rec(roots: &[(usize, usize)], k: usize, rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == roots.len() {
                if rest.iter().all(|&r| r == 0) {
                    out.push(cur.clone());
                }
                return;
            }
            let (a, b) = roots[k];
            let max = (a..=b).map(|v| rest[v]).min().unwrap_or(0);
            for c in (0..=max).rev() {
                for r in rest[a..=b].iter_mut() {
                    *r -= c;
                }
                cur.push(c);
                rec(roots, k + 1, rest, cur, out);
                cur.pop();
                for r in rest[a..=b].iter_mut() {
                    *r += c;
                }
            }
        }
        let mut out = Vec::new();
        rec(&self.roots, 0, &mut self.dimension_vector(), &mut Vec::new(), &mut out);
        out
    }

    /// `α1+2α2+α3`-style label.
    pub fn label(&self, mult: &[usize]) -> String {
        let terms: Vec<String> = mult
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| if c == 1 { format!("α{}", k + 1) } else { format!("{c}α{}", k + 1) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// Identity blocks along each root. Within a vertex, coordinates go to shorter roots first,
    /// then to roots starting earlier.
    pub fn representative(&self, mult: &[usize], d: usize) -> RatMatrix {
        let mut pieces: Vec<(usize, usize, usize)> = Vec::new();
        for (k, &c) in mult.iter().enumerate() {
            let (a, b) = self.roots[k];
            pieces.extend(std::iter::repeat_n((b - a, a, k), c));
        }
        pieces.sort_unstable();
        let mut used = vec![0usize; self.vertices.len()];
        let mut x = RatMatrix::zeros(d, d);
        for (len, a, _) in pieces {
            let coords: Vec<usize> = (a..=a + len)
                .map(|v| {
                    let c = self.vertices[v].1[used[v]];
                    used[v] += 1;
                    c
                })
                .collect();
            for w in coords.windows(2) {
                x = &x + &RatMatrix::unit(d, w[1], w[0]);
            }
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedOrbitRep {
    /// Multiplicity of each root of the slice.
    pub decomposition: Vec<usize>,
    pub label: String,
    #[serde(serialize_with = "crate::orbitlib::serialize_matrix")]
    pub representative: RatMatrix,
    pub dimension: usize,
}

/// Rank of `g_0 → g_n, y ↦ [y, x]`.
pub fn graded_orbit_dimension(
    alg: &MatrixLieAlgebra,
    chi: &Cocharacter,
    n: i64,
    x: &RatMatrix,
) -> Result<usize, OrbitError> {
    if !in_component(alg, chi, n, x) {
        return Err(OrbitError::NotInComponent(n));
    }
    let g0 = graded_component(alg, chi, 0)?;
    let images: Vec<_> = g0.basis.iter().map(|y| y.bracket(x).entries()).collect();
    if images.is_empty() {
        return Ok(0);
    }
    Ok(rank_of_vectors(&images))
}

/// `G_0`-orbits on `g_n` for `sl_d`, one representative per root decomposition, largest first.
pub fn graded_orbit_reps_type_a(
    alg: &MatrixLieAlgebra,
    chi: &Cocharacter,
    n: i64,
) -> Result<(QuiverSlice, Vec<GradedOrbitRep>), OrbitError> {
    if alg.group_type() != GroupType::Sl {
        return Err(OrbitError::NotTypeA);
    }
    if chi.len() != alg.ambient_dim() {
        return Err(OrbitError::NotInComponent(n));
    }
    let slice = QuiverSlice::new(chi, n)?;
    let mut reps = Vec::new();
    for mult in slice.decompositions() {
        let x = slice.representative(&mult, alg.ambient_dim());
        let dimension = graded_orbit_dimension(alg, chi, n, &x)?;
        reps.push(GradedOrbitRep { label: slice.label(&mult), decomposition: mult, representative: x, dimension });
    }
    reps.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.label.cmp(&b.label)));
    Ok((slice, reps))
}

/// A Table-5-style row: orbit representative with the Levi of its canonical parabolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedOrbitRow {
    #[serde(flatten)]
    pub rep: GradedOrbitRep,
    pub levi_blocks: Vec<Vec<usize>>,
    pub levi_shape: Vec<usize>,
}

/// The zero orbit takes the zero homomorphism, whose Levi is `g_0`.
pub fn graded_orbit_table(alg: &MatrixLieAlgebra, chi: &Cocharacter, n: i64) -> Result<Vec<GradedOrbitRow>, OrbitError> {
    let (_, reps) = graded_orbit_reps_type_a(alg, chi, n)?;
    reps.into_iter()
        .map(|rep| {
            let triple = if rep.representative.is_zero() {
                Sl2Triple::zero(alg.ambient_dim())
            } else {
                adapted_sl2_triple(alg, chi, n, &rep.representative)?
            };
            let pd = canonical_parabolic(alg, chi, &triple, n)?;
            Ok(GradedOrbitRow { levi_blocks: pd.levi_blocks(), levi_shape: pd.levi_shape(), rep })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegrade::build_algebra;

    fn setup() -> (MatrixLieAlgebra, Cocharacter) {
        (build_algebra(GroupType::Sl, 4, None).unwrap(), "1,0,0,-1".parse().unwrap())
    }

    #[test]
    fn slice_of_the_example() {
        let (_, chi) = setup();
        let s = QuiverSlice::new(&chi, -1).unwrap();
        assert_eq!(s.dimension_vector(), vec![1, 2, 1]);
        assert_eq!(s.roots, vec![(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)]);
        assert_eq!(s.decompositions().len(), 5);
    }

    #[test]
    fn five_orbits() {
        let (alg, chi) = setup();
        let (_, reps) = graded_orbit_reps_type_a(&alg, &chi, -1).unwrap();
        let mut got: Vec<(String, usize, String)> =
            reps.iter().map(|r| (r.label.clone(), r.dimension, r.representative.to_string())).collect();
        got.sort();
        let mut want = vec![
            ("α2+α3+α4".to_string(), 2, "0,0,0,0;0,0,0,0;1,0,0,0;0,0,0,0".to_string()),
            ("α4+α6".to_string(), 3, "0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0".to_string()),
            ("α2+α5".to_string(), 4, "0,0,0,0;0,0,0,0;1,0,0,0;0,0,1,0".to_string()),
            ("α1+α2+α6".to_string(), 2, "0,0,0,0;0,0,0,0;0,0,0,0;0,0,1,0".to_string()),
            ("α1+2α2+α3".to_string(), 0, "0,0,0,0;0,0,0,0;0,0,0,0;0,0,0,0".to_string()),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn small_slices() {
        let (alg, chi) = setup();
        assert_eq!(graded_orbit_reps_type_a(&alg, &chi, -2).unwrap().1.len(), 2);
        let sl2 = build_algebra(GroupType::Sl, 2, None).unwrap();
        let c2: Cocharacter = "1,-1".parse().unwrap();
        let (_, reps) = graded_orbit_reps_type_a(&sl2, &c2, -2).unwrap();
        assert_eq!(reps.iter().map(|r| r.dimension).collect::<Vec<_>>(), vec![1, 0]);
    }

    #[test]
    fn errors() {
        let (alg, _) = setup();
        let unsorted: Cocharacter = "0,1,0,-1".parse().unwrap();
        assert_eq!(graded_orbit_reps_type_a(&alg, &unsorted, -1).unwrap_err(), OrbitError::UnsortedWeights);
        let sp = build_algebra(GroupType::Sp, 4, None).unwrap();
        let c: Cocharacter = "1,0,-1,0".parse().unwrap();
        assert_eq!(graded_orbit_reps_type_a(&sp, &c, 1).unwrap_err(), OrbitError::NotTypeA);
    }

    #[test]
    fn levis() {
        let (alg, chi) = setup();
        let rows = graded_orbit_table(&alg, &chi, -1).unwrap();
        let by_label = |l: &str| rows.iter().find(|r| r.rep.label == l).unwrap().levi_blocks.clone();
        assert_eq!(by_label("α4+α6"), vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(by_label("α1+α2+α6"), vec![vec![1], vec![2], vec![3, 4]]);
        assert_eq!(by_label("α2+α3+α4"), vec![vec![1, 3], vec![2], vec![4]]);
        assert_eq!(by_label("α2+α5"), vec![vec![1, 2, 3, 4]]);
        assert_eq!(by_label("α1+2α2+α3"), vec![vec![1], vec![2, 3], vec![4]]);
    }
}
