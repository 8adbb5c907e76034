//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use serde_json::Value;

use common::suites;
use gradedpar::cli::run;
use gradedpar::cohom::{stalk_table, Betti, CaseData, CaseName, Poly};
use gradedpar::exactlin::RatMatrix;
use gradedpar::liegrade::{
    adapted_sl2_triple, build_algebra, canonical_parabolic, check_n_rigid, Cocharacter, MatrixLieAlgebra,
    RigidityWitness,
};
use gradedpar::orbitlib::{graded_orbit_reps_type_a, jordan_representative, nilpotent_orbits};
use gradedpar::rootdata::{prime_report, standard_root_datum, GroupType};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli_json(args: &[&str]) -> Result<(i32, Value), String> {
    let mut argv = vec!["gradedpar", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    if out.stdout.is_empty() {
        return Err(format!("`{}` exited {} with {}", args.join(" "), out.code, out.stderr.trim()));
    }
    let v = serde_json::from_str(&out.stdout).map_err(|e| format!("bad json from `{}`: {e}", args.join(" ")))?;
    Ok((out.code, v))
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let took = start.elapsed();
    ensure(took < limit, format!("{what} took {took:?}, limit {limit:?}"))
}

// 1 ---------------------------------------------------------------------------------------

fn orbit_rows(v: &Value) -> Vec<(String, u64, String)> {
    v["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|o| {
            (
                o["partition"].as_str().unwrap().to_string(),
                o["dimension"].as_u64().unwrap(),
                o["component_group"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

fn criterion_orbit_tables() -> Check {
    let start = Instant::now();
    let (_, sp) = cli_json(&["orbits", "--type", "sp", "--n", "4"])?;
    let (_, sl) = cli_json(&["orbits", "--type", "sl", "--n", "4"])?;
    within(start, Duration::from_secs(1), "orbit tables")?;
    let row = |p: &str, d: u64, g: &str| (p.to_string(), d, g.to_string());
    let want_sp = vec![row("[4]", 8, "Z/2"), row("[2^2]", 6, "Z/2"), row("[2,1^2]", 4, "Z/2"), row("[1^4]", 0, "1")];
    let want_sl = vec![
        row("[4]", 12, "Z/4"),
        row("[3,1]", 10, "1"),
        row("[2^2]", 8, "Z/2"),
        row("[2,1^2]", 6, "1"),
        row("[1^4]", 0, "1"),
    ];
    ensure(orbit_rows(&sp) == want_sp, format!("sp4 rows {:?}", orbit_rows(&sp)))?;
    ensure(orbit_rows(&sl) == want_sl, format!("sl4 rows {:?}", orbit_rows(&sl)))
}

// 2 ---------------------------------------------------------------------------------------

const GRADED_X: &str = "0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0";

fn criterion_grading_example() -> Check {
    let (_, g2) = cli_json(&["grading", "--type", "sl", "--d", "4", "--cochar", "1,0,0,-1", "--degree", "2"])?;
    ensure(g2["weight_matrix"] == "0,1,1,2;-1,0,0,1;-1,0,0,1;-2,-1,-1,0", format!("weight matrix {}", g2["weight_matrix"]))?;
    ensure(g2["basis"] == serde_json::json!(["0,0,0,1;0,0,0,0;0,0,0,0;0,0,0,0"]), format!("g_2 basis {}", g2["basis"]))?;
    let (_, g1) = cli_json(&["grading", "--cochar", "1,0,0,-1", "--degree", "1"])?;
    ensure(g1["dim"] == 4, "g_1 should be 4-dimensional")?;
    let (_, g0) = cli_json(&["grading", "--cochar", "1,0,0,-1", "--degree", "0"])?;
    ensure(g0["dim"] == 5, "g_0 should be 5-dimensional")?;

    let (_, t) = cli_json(&["triple", "--cochar", "1,0,0,-1", "--degree", "-1", "--x", GRADED_X])?;
    ensure(t["brackets_hold"] == true && t["adapted"] == true, "triple relations")?;
    ensure(t["chi_prime"] == serde_json::json!([-1, 1, -1, 1]), format!("chi' = {}", t["chi_prime"]))?;
    let (_, p) = cli_json(&["parabolic", "--cochar", "1,0,0,-1", "--degree", "-1", "--x", GRADED_X])?;
    ensure(
        p["chi_prime_matrix"] == "0,-2,0,-2;2,0,2,0;0,-2,0,-2;2,0,2,0",
        format!("bigrading matrix {}", p["chi_prime_matrix"]),
    )?;
    ensure(
        p["combined_matrix"] == "0,0,2,2;0,0,2,2;-2,-2,0,0;-2,-2,0,0",
        format!("combined matrix {}", p["combined_matrix"]),
    )
}

// 3 ---------------------------------------------------------------------------------------

/// Rows of the Levi table as printed: decomposition, representative, dimension, Levi blocks.
fn printed_levi_table() -> Vec<(&'static str, &'static str, u64, Vec<Vec<u64>>)> {
    vec![
        ("α2+α3+α4", "0,0,0,0;0,0,0,0;1,0,0,0;0,0,0,0", 2, vec![vec![1, 2, 3], vec![4]]),
        ("α4+α6", "0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0", 3, vec![vec![1, 2], vec![3, 4]]),
        ("α2+α5", "0,0,0,0;0,0,0,0;1,0,0,0;0,0,1,0", 4, vec![vec![1, 2], vec![3], vec![4]]),
        ("α1+α2+α6", "0,0,0,0;0,0,0,0;0,0,0,0;0,0,1,0", 2, vec![vec![1], vec![2], vec![3, 4]]),
        ("α1+2α2+α3", "0,0,0,0;0,0,0,0;0,0,0,0;0,0,0,0", 0, vec![vec![1, 2, 3, 4]]),
    ]
}

fn criterion_levi_table() -> Check {
    let start = Instant::now();
    let (_, v) = cli_json(&["graded-orbits", "--cochar", "1,0,0,-1", "--degree", "-1"])?;
    within(start, Duration::from_secs(1), "graded orbit table")?;
    let rows = v["orbits"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 5, format!("{} orbits", rows.len()))?;
    let mut problems = Vec::new();
    for (i, (label, rep, dim, blocks)) in printed_levi_table().into_iter().enumerate() {
        let Some(r) = rows.iter().find(|r| r["label"] == label) else {
            problems.push(format!("row {}: {label} missing", i + 1));
            continue;
        };
        if r["representative"] != rep {
            problems.push(format!("row {}: representative {}", i + 1, r["representative"]));
        }
        if r["dimension"] != dim {
            problems.push(format!("row {}: dim {}", i + 1, r["dimension"]));
        }
        let got: Vec<Vec<u64>> = serde_json::from_value(r["levi_blocks"].clone()).map_err(|e| e.to_string())?;
        if got != blocks {
            problems.push(format!("row {} ({label}): Levi blocks {got:?}, table has {blocks:?}", i + 1));
        }
    }
    ensure(problems.is_empty(), problems.join("; "))
}

// 4 ---------------------------------------------------------------------------------------

fn triple_and_levi(alg: &MatrixLieAlgebra, chi: &Cocharacter, n: i64, x: &RatMatrix, what: &str) -> Check {
    let t = adapted_sl2_triple(alg, chi, n, x).map_err(|e| format!("{what}: {e}"))?;
    ensure(t.brackets_hold(), format!("{what}: brackets fail"))?;
    ensure(t.is_adapted(alg, chi, n), format!("{what}: e, h, f not in degrees {n}, 0, {}", -n))?;
    ensure(t.e == *x, format!("{what}: e differs from x"))?;
    let pd = canonical_parabolic(alg, chi, &t, n).map_err(|e| format!("{what}: {e}"))?;
    let (levi, lt) = pd.levi_datum();
    let r = check_n_rigid(levi, chi, lt, n).map_err(|e| format!("{what}: {e}"))?;
    ensure(r.is_rigid, format!("{what}: Levi datum not rigid, witness {:?}", r.witness))
}

fn criterion_triples() -> Check {
    let alg = build_algebra(GroupType::Sl, 4, None).unwrap();
    let chi: Cocharacter = "1,0,0,-1".parse().unwrap();
    let (_, reps) = graded_orbit_reps_type_a(&alg, &chi, -1).map_err(|e| e.to_string())?;
    let mut count = 0;
    for r in reps.iter().filter(|r| !r.representative.is_zero()) {
        triple_and_levi(&alg, &chi, -1, &r.representative, &r.label)?;
        count += 1;
    }
    ensure(count == 4, format!("{count} nonzero graded representatives"))?;
    for ty in [GroupType::Sp, GroupType::Sl] {
        let alg = build_algebra(ty, 4, None).unwrap();
        for o in nilpotent_orbits(ty, 4).map_err(|e| e.to_string())? {
            let (x, dynkin) = jordan_representative(ty, &o.partition).map_err(|e| e.to_string())?;
            if x.is_zero() {
                continue;
            }
            triple_and_levi(&alg, &dynkin, 2, &x, &format!("{ty}4 {}", o.partition))?;
        }
    }
    let x: RatMatrix = GRADED_X.parse().unwrap();
    let t = adapted_sl2_triple(&alg, &chi, -1, &x).unwrap();
    let full = check_n_rigid(&alg, &chi, &t, -1).map_err(|e| e.to_string())?;
    ensure(!full.is_rigid, "full sl4 datum reported rigid")?;
    ensure(matches!(full.witness, Some(RigidityWitness::Cell { .. })), format!("witness {:?}", full.witness))
}

// 5 ---------------------------------------------------------------------------------------

fn criterion_primes() -> Check {
    let two: Vec<u64> = vec![2];
    for (ty, n, bad) in [(GroupType::Sp, 4, vec![2u64]), (GroupType::Sl, 4, vec![])] {
        let rd = standard_root_datum(ty, n).unwrap();
        let rep = prime_report(&rd).map_err(|e| e.to_string())?;
        ensure(rep.pretty_good_excluded == two, format!("{ty}{n} pretty-good excludes {:?}", rep.pretty_good_excluded))?;
        ensure(rep.rather_good_excluded == two, format!("{ty}{n} rather-good excludes {:?}", rep.rather_good_excluded))?;
        // bad primes: coefficients of the highest root, 2e1 = 2(e1 − e2) + 2e2 for C2, all 1 in type A
        ensure(rep.bad == bad, format!("{ty}{n} bad primes {:?}", rep.bad))?;
        let torsion = common::all_subset_torsion(&rd.coroots, &[], rd.ambient);
        let x_side = common::all_subset_torsion(&rd.roots, &rd.x_relations, rd.ambient);
        let mut full_x: Vec<Vec<i64>> = rd.roots.clone();
        full_x.extend(rd.x_relations.iter().cloned());
        let center = common::quotient_torsion_primes(&full_x, rd.ambient);
        let pretty: BTreeSet<u64> = torsion.iter().chain(&x_side).chain(&bad).copied().collect();
        let rather: BTreeSet<u64> = center.iter().chain(&bad).copied().collect();
        ensure(rep.torsion.iter().copied().collect::<BTreeSet<_>>() == torsion, format!("{ty}{n} torsion vs oracle {torsion:?}"))?;
        ensure(rep.pretty_good_excluded.iter().copied().collect::<BTreeSet<_>>() == pretty, format!("{ty}{n} pretty vs oracle {pretty:?}"))?;
        ensure(rep.rather_good_excluded.iter().copied().collect::<BTreeSet<_>>() == rather, format!("{ty}{n} rather vs oracle {rather:?}"))?;
    }
    let sp4 = prime_report(&standard_root_datum(GroupType::Sp, 4).unwrap()).unwrap();
    ensure(sp4.torsion == two, format!("Sp4 torsion {:?}", sp4.torsion))?;
    for n in 2..=5 {
        let rd = standard_root_datum(GroupType::Sl, n).unwrap();
        let rep = prime_report(&rd).map_err(|e| e.to_string())?;
        ensure(rep.torsion.is_empty(), format!("SL{n} torsion {:?}", rep.torsion))?;
        let oracle = common::all_subset_torsion(&rd.coroots, &[], rd.ambient);
        ensure(oracle.is_empty(), format!("SL{n} oracle torsion {oracle:?}"))?;
    }
    Ok(())
}

// 6 ---------------------------------------------------------------------------------------

fn poly(coeffs: &[i64]) -> Poly {
    Poly(coeffs.to_vec())
}

fn count_of(report: &Value, orbit: &str, stratum: &str, q: u64) -> Result<i128, String> {
    report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["orbit"] == orbit && r["stratum"] == stratum && r["prime"] == q)
        .and_then(|r| r["count"].as_i64())
        .map(i128::from)
        .ok_or_else(|| format!("no {stratum} row for {orbit} at {q}"))
}

fn criterion_fiber_counts() -> Check {
    let start = Instant::now();
    let (code_sp, sp) = cli_json(&["fibers", "--case", "sp4", "--primes", "3,5"])?;
    let (code_sl, sl) = cli_json(&["fibers", "--case", "sl4", "--primes", "2,3,5"])?;
    within(start, Duration::from_secs(30), "fiber counts")?;
    let mut problems = Vec::new();
    if code_sp != 0 || sp["all_match"] != true {
        problems.push("sp4 report has mismatches".to_string());
    }
    if code_sl != 0 || sl["all_match"] != true {
        problems.push("sl4 report has mismatches".to_string());
    }
    let sp_full = [("[4]", poly(&[1])), ("[2^2]", poly(&[1, 1])), ("[2,1^2]", poly(&[1, 1, 1])), ("[1^4]", poly(&[1, 1, 1, 1]))];
    let sl_full = [
        ("[4]", poly(&[1])),
        ("[3,1]", poly(&[1, 1])),
        ("[2^2]", poly(&[0, 1, 1])),
        ("[2,1^2]", poly(&[1, 1, 2])),
        ("[1^4]", Poly::gaussian_binomial(4, 2)),
    ];
    let sl_cusp = [
        ("[3,1]", poly(&[-1, 1])),
        ("[2^2]", poly(&[0, 1, 1])),
        ("[4]", poly(&[1])),
        ("[2,1^2]", poly(&[0])),
        ("[1^4]", poly(&[0])),
    ];
    let sp_cusp = [("[2,1^2]", poly(&[0, 1, 1])), ("[4]", poly(&[1])), ("[1^4]", poly(&[0]))];
    let mut compare = |report: &Value, case: &str, stratum: &str, table: &[(&str, Poly)], primes: &[u64]| {
        for (orbit, p) in table {
            for &q in primes {
                match count_of(report, orbit, stratum, q) {
                    Ok(c) if c == p.eval(q as i64) => {}
                    Ok(c) => problems.push(format!("{case} O{orbit} {stratum} at q={q}: counted {c}, expected {p} = {}", p.eval(q as i64))),
                    Err(e) => problems.push(e),
                }
            }
        }
    };
    compare(&sp, "sp4", "full", &sp_full, &[3, 5]);
    compare(&sl, "sl4", "full", &sl_full, &[2, 3, 5]);
    compare(&sp, "sp4", "cuspidal", &sp_cusp, &[3, 5]);
    compare(&sl, "sl4", "cuspidal", &sl_cusp, &[2, 3, 5]);
    for (q, zero) in [(3u64, 0i128), (5, 2)] {
        let z = count_of(&sp, "[2^2]", "zero", q)?;
        let c = count_of(&sp, "[2^2]", "cuspidal", q)?;
        if z != zero || c != q as i128 + 1 - zero {
            problems.push(format!("sp4 O[2^2] at q={q}: zero part {z}, cuspidal {c}"));
        }
    }
    ensure(problems.is_empty(), problems.join("; "))
}

// 7 ---------------------------------------------------------------------------------------

fn degrees(col: &Betti) -> Vec<(i64, usize)> {
    col.iter().map(|(d, r)| (*d, *r)).collect()
}

fn one_entry(col: &Betti) -> bool {
    matches!(degrees(col).as_slice(), [(_, 1)])
}

fn two_apart(col: &Betti) -> bool {
    matches!(degrees(col).as_slice(), [(a, 1), (b, 1)] if b - a == 2)
}

fn criterion_stalks() -> Check {
    let sp4 = CaseData::load(CaseName::Sp4).map_err(|e| e.to_string())?;
    let sl4 = CaseData::load(CaseName::Sl4).map_err(|e| e.to_string())?;
    for l in [0, 3, 5] {
        let t = stalk_table(&sp4, l, false).map_err(|e| e.to_string())?;
        let col = |o: &str| t.column(o).cloned().unwrap_or_default();
        ensure(one_entry(&col("[4]")), format!("sp4 l={l} O[4] {:?}", col("[4]")))?;
        ensure(two_apart(&col("[2,1^2]")), format!("sp4 l={l} O[2,1^2] {:?}", col("[2,1^2]")))?;
        ensure(col("[2^2]").is_empty() && col("[1^4]").is_empty(), format!("sp4 l={l} nonempty columns"))?;
        ensure(t.parity_violations().is_empty(), format!("sp4 l={l} parity"))?;

        let t = stalk_table(&sl4, l, false).map_err(|e| e.to_string())?;
        let col = |o: &str| t.column(o).cloned().unwrap_or_default();
        ensure(one_entry(&col("[4]")), format!("sl4 l={l} O[4] {:?}", col("[4]")))?;
        ensure(two_apart(&col("[2^2]")), format!("sl4 l={l} O[2^2] {:?}", col("[2^2]")))?;
        for o in ["[3,1]", "[2,1^2]", "[1^4]"] {
            ensure(col(o).is_empty(), format!("sl4 l={l} O{o} {:?}", col(o)))?;
        }
        ensure(t.parity_violations().is_empty(), format!("sl4 l={l} parity"))?;
    }
    let (_, v) = cli_json(&["stalks", "--case", "sp4", "--char", "5"])?;
    ensure(v["convention"] == "shift-by-dimC", "convention tag")?;
    ensure(v["columns"]["[2,1^2]"] == serde_json::json!({"0": 1, "2": 1}), format!("cli column {}", v["columns"]["[2,1^2]"]))?;

    let t = stalk_table(&sp4, 2, true).map_err(|e| e.to_string())?;
    let col = degrees(t.column("[2^2]").ok_or("missing column")?);
    ensure(matches!(col.as_slice(), [(a, _), (b, _)] if b - a == 1), format!("l=2 O[2^2] {col:?}"))?;
    ensure(t.parity_violations() == vec!["[2^2]".to_string()], "l=2 parity failure should be O[2^2] alone")
}

// 8 ---------------------------------------------------------------------------------------

fn criterion_properties() -> Check {
    suites::snf_round_trip(500, 0xacce)?;
    suites::bracket_grading_exhaustive()?;
    suites::jordan_round_trip(6, 0xacce)?;
    suites::dominance_equivalence(6)?;
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("orbit tables for sp4 and sl4", criterion_orbit_tables),
        ("grading example, bigrading and m+2m' matrix", criterion_grading_example),
        ("graded orbits and Levis for (1,0,0,-1), n=-1", criterion_levi_table),
        ("adapted sl2-triples and n-rigidity", criterion_triples),
        ("prime classifiers against the lattice oracle", criterion_primes),
        ("fiber point counts", criterion_fiber_counts),
        ("stalk tables and parity", criterion_stalks),
        ("property suites", criterion_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
