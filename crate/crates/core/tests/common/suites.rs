//! Property suites shared by the property tests and the acceptance runner. Each returns the
//! first counterexample it finds.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gradedpar::exactlin::{inverse, nilpotent_jordan_partition, smith_normal_form, IntMatrix, Partition, RatMatrix};
use gradedpar::liegrade::{build_algebra, graded_component, in_component, occurring_degrees, to_i64_rows, Cocharacter};
use gradedpar::orbitlib::{closure_leq, jordan_representative};
use gradedpar::rootdata::GroupType;

use super::{det_laplace, dominated_by, invariant_factors_oracle, jordan_type_oracle};

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_i128().expect("small entries")).collect()).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=6);
    let cols = rng.gen_range(1..=6);
    let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    IntMatrix::from_rows(&data)
}

/// `U·M·V = D` with unimodular `U`, `V`, a divisibility chain on `D`, and factors equal to the
/// determinantal-divisor oracle.
pub fn snf_round_trip(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let m = random_matrix(&mut rng);
        let snf = smith_normal_form(&m);
        let product = snf.u.try_mul(&m).and_then(|um| um.try_mul(&snf.v)).map_err(|e| e.to_string())?;
        if product != snf.diagonal_matrix() {
            return Err(format!("case {k}: U·M·V is not the diagonal for {m}"));
        }
        for (name, w) in [("U", &snf.u), ("V", &snf.v)] {
            let d = det_laplace(&to_i128(w));
            if d.abs() != 1 {
                return Err(format!("case {k}: det {name} = {d} for {m}"));
            }
        }
        let f = &snf.invariant_factors;
        if f.iter().any(|d| d < &BigInt::zero()) {
            return Err(format!("case {k}: negative invariant factor for {m}"));
        }
        for w in f.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            if !ok {
                return Err(format!("case {k}: {} does not divide {} for {m}", w[0], w[1]));
            }
        }
        let nonzero: Vec<i128> = f.iter().filter(|d| !d.is_zero()).map(|d| d.to_i128().unwrap()).collect();
        let oracle = invariant_factors_oracle(&to_i128(&m));
        if nonzero != oracle {
            return Err(format!("case {k}: factors {nonzero:?} but oracle {oracle:?} for {m}"));
        }
    }
    Ok(())
}

/// Every cocharacter of `sl_4` with weights in `[−2, 2]` summing to zero, and every
/// `(a, b, −a, −b)` for `sp_4`.
pub fn small_cocharacters(ty: GroupType) -> Vec<Cocharacter> {
    let r = -2i64..=2;
    match ty {
        GroupType::Sl => {
            let mut out = Vec::new();
            for a in r.clone() {
                for b in r.clone() {
                    for c in r.clone() {
                        let d = -(a + b + c);
                        if (-2..=2).contains(&d) {
                            out.push(Cocharacter::new(vec![a, b, c, d]));
                        }
                    }
                }
            }
            out
        }
        GroupType::Sp => r.clone().flat_map(|a| r.clone().map(move |b| Cocharacter::new(vec![a, b, -a, -b]))).collect(),
    }
}

/// `[g_a, g_b] ⊆ g_{a+b}` on basis elements, for every pair of degrees.
pub fn bracket_grading_exhaustive() -> Result<usize, String> {
    let mut checked = 0;
    for ty in [GroupType::Sl, GroupType::Sp] {
        let alg = build_algebra(ty, 4, None).map_err(|e| e.to_string())?;
        for chi in small_cocharacters(ty) {
            let chi = chi.validated(&alg).map_err(|e| e.to_string())?;
            let degrees = occurring_degrees(&alg, &chi);
            let comps: Vec<_> = degrees.iter().map(|&n| graded_component(&alg, &chi, n).unwrap()).collect();
            let total: usize = comps.iter().map(|c| c.dim()).sum();
            if total != alg.dim() {
                return Err(format!("{ty} {chi}: graded pieces have total dimension {total}"));
            }
            for ca in &comps {
                for cb in &comps {
                    for x in &ca.basis {
                        for y in &cb.basis {
                            let z = x.bracket(y);
                            if !z.is_zero() && !in_component(&alg, &chi, ca.degree + cb.degree, &z) {
                                return Err(format!("{ty} {chi}: [{x}, {y}] leaves degree {}", ca.degree + cb.degree));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn random_unimodular(d: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut p = RatMatrix::identity(d);
    for _ in 0..3 * d {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        if i != j {
            let k = rng.gen_range(-2i64..=2);
            let e = &RatMatrix::identity(d) + &RatMatrix::unit(d, i, j).scale(&BigInt::from(k).into());
            p = &p * &e;
        }
    }
    p
}

fn sp_valid(lambda: &Partition) -> bool {
    lambda.weight().is_multiple_of(2) && lambda.parts().iter().filter(|&&p| p % 2 == 1).all(|&p| lambda.multiplicity(p).is_multiple_of(2))
}

/// Jordan representatives recover their partition, directly and after a random integral
/// change of basis, both through the library and through a rank-of-powers oracle.
pub fn jordan_round_trip(max_n: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for n in 1..=max_n {
        for lambda in Partition::all(n) {
            let mut types = vec![GroupType::Sl];
            if sp_valid(&lambda) {
                types.push(GroupType::Sp);
            }
            for ty in types {
                let (x, chi) = jordan_representative(ty, &lambda).map_err(|e| e.to_string())?;
                let alg = build_algebra(ty, n, None).map_err(|e| e.to_string())?;
                if !in_component(&alg, &chi, 2, &x) {
                    return Err(format!("{ty} {lambda}: representative not in g_2"));
                }
                let p = random_unimodular(n, &mut rng);
                let conj = &(&p * &x) * &inverse(&p).expect("unimodular");
                for (what, m) in [("plain", &x), ("conjugated", &conj)] {
                    let got = nilpotent_jordan_partition(m).map_err(|e| e.to_string())?;
                    if got != lambda {
                        return Err(format!("{ty} {lambda} {what}: library says {got}"));
                    }
                    let rows = to_i64_rows(m).ok_or("non-integral conjugate")?;
                    let rows: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
                    let oracle = jordan_type_oracle(&rows);
                    if oracle != lambda.parts() {
                        return Err(format!("{ty} {lambda} {what}: oracle says {oracle:?}"));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Closure order agrees with reachability under box moves.
pub fn dominance_equivalence(max_n: usize) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=max_n {
        let all = Partition::all(n);
        for mu in &all {
            let below = dominated_by(mu.parts());
            for lambda in &all {
                let lib = closure_leq(lambda, mu).map_err(|e| e.to_string())?;
                if lib != below.contains(lambda.parts()) {
                    return Err(format!("{lambda} <= {mu}: library says {lib}"));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
