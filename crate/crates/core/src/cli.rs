//! Command-line front end. [`run`] returns the exit code and both output streams, so the
//! binary is a thin wrapper and tests can drive it in-process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cohom::{stalk_table, CaseData, CaseName};
use crate::exactlin::{IntMatrix, RatMatrix};
use crate::ffgeom::verify_fiber_counts;
use crate::liegrade::{
    adapted_sl2_triple, build_algebra, canonical_parabolic, check_n_rigid, chi_prime, graded_component,
    weight_matrix, Cocharacter, MatrixLieAlgebra, RigidityReport,
};
use crate::orbitlib::{graded_orbit_table, nilpotent_orbits};
use crate::rootdata::{prime_report, standard_root_datum, GroupType};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gradedpar", version, about = "Gradings, nilpotent orbits, fiber counts and stalk tables")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; the exit code still reports the outcome.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long = "type", value_name = "sl|sp")]
    ty: GroupType,
    /// Size of the defining representation (4 for sp4).
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct GradingArgs {
    #[arg(long = "type", value_name = "sl|sp", default_value = "sl")]
    ty: GroupType,
    /// Defaults to the length of the cocharacter.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    cochar: Cocharacter,
    #[arg(long, allow_hyphen_values = true)]
    degree: i64,
}

#[derive(Args, Debug)]
struct ElementArgs {
    #[command(flatten)]
    grading: GradingArgs,
    /// Matrix in rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    x: RatMatrix,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nilpotent orbits with dimensions and component groups.
    Orbits(GroupArgs),
    /// G_0-orbits on g_n for sl_d with the Levi of each canonical parabolic.
    GradedOrbits(GradingArgs),
    /// Weight matrix of a cocharacter and a basis of g_n.
    Grading(GradingArgs),
    /// Adapted sl2-triple through x and the second cocharacter.
    Triple(ElementArgs),
    /// Canonical parabolic of x with its Levi and the rigidity checks.
    Parabolic(ElementArgs),
    /// Bad, torsion, pretty-good and rather-good exclusions of a root datum.
    Primes(GroupArgs),
    /// Brute-force point counts of every fiber stratum against the predictions.
    Fibers {
        #[arg(long)]
        case: CaseName,
        #[arg(long, value_delimiter = ',', default_value = "3,5")]
        primes: Vec<u64>,
    },
    /// Stalks of the induced complex, degrees shifted by dim C.
    Stalks {
        #[arg(long)]
        case: CaseName,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Allow characteristic 2.
        #[arg(long)]
        allow_two: bool,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    text: String,
    json: Value,
    code: i32,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Rendered { text, json, code: EXIT_OK }
    }
}

/// Errors from the computation layer; parse-type failures map to exit 2.
struct Failure {
    code: i32,
    message: String,
}

fn fail<E: std::fmt::Display>(e: E) -> Failure {
    Failure { code: EXIT_FAILURE, message: e.to_string() }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure { code: EXIT_USAGE, message: e.to_string() }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => {
            let stdout = if cli.quiet {
                String::new()
            } else if cli.json {
                let mut s = serde_json::to_string_pretty(&r.json).expect("json values serialize");
                s.push('\n');
                s
            } else {
                r.text
            };
            let stderr = if r.code == EXIT_MISMATCH { "verification mismatch\n".to_string() } else { String::new() };
            Outcome { code: r.code, stdout, stderr }
        }
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn dispatch(cmd: &Command) -> Result<Rendered, Failure> {
    match cmd {
        Command::Orbits(g) => orbits(g),
        Command::GradedOrbits(g) => graded_orbits(g),
        Command::Grading(g) => grading(g),
        Command::Triple(e) => triple(e),
        Command::Parabolic(e) => parabolic(e),
        Command::Primes(g) => primes(g),
        Command::Fibers { case, primes } => fibers(*case, primes),
        Command::Stalks { case, characteristic, allow_two } => stalks(*case, *characteristic, *allow_two),
    }
}

fn setup(g: &GradingArgs) -> Result<(MatrixLieAlgebra, Cocharacter), Failure> {
    let d = g.d.unwrap_or(g.cochar.len());
    let alg = build_algebra(g.ty, d, None).map_err(usage)?;
    let chi = g.cochar.clone().validated(&alg).map_err(usage)?;
    Ok((alg, chi))
}

fn grid(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_string()).collect()).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn mask_grid(m: &[Vec<bool>]) -> String {
    m.iter().map(|r| r.iter().map(|&b| if b { '1' } else { '0' }).collect::<String>()).collect::<Vec<_>>().join("\n")
}

fn orbits(g: &GroupArgs) -> Result<Rendered, Failure> {
    let list = nilpotent_orbits(g.ty, g.n).map_err(usage)?;
    let mut text = format!("nilpotent orbits of {}{}\n{:<12} {:>4}  A(x)\n", g.ty, g.n, "partition", "dim");
    for o in &list {
        writeln!(text, "{:<12} {:>4}  {}", o.partition.to_string(), o.dimension, o.component_group).unwrap();
    }
    let rows: Vec<Value> = list
        .iter()
        .map(|o| {
            json!({
                "partition": o.partition.to_string(),
                "parts": o.partition.parts(),
                "dimension": o.dimension,
                "component_group": o.component_group.to_string(),
                "component_group_order": o.component_group.order(),
            })
        })
        .collect();
    Ok(Rendered::ok(text, json!({ "type": g.ty.to_string(), "n": g.n, "orbits": rows })))
}

fn grading(g: &GradingArgs) -> Result<Rendered, Failure> {
    let (alg, chi) = setup(g)?;
    let wm = weight_matrix(&chi);
    let comp = graded_component(&alg, &chi, g.degree).map_err(fail)?;
    let basis: Vec<String> = comp.basis.iter().map(RatMatrix::to_string).collect();
    let mut text = format!("cocharacter {chi}\nweight matrix\n{}\ng_{} has dimension {}\n", grid(&wm), g.degree, comp.dim());
    for b in &basis {
        writeln!(text, "  {b}").unwrap();
    }
    let json = json!({
        "type": g.ty.to_string(),
        "d": alg.ambient_dim(),
        "cochar": chi.weights,
        "degree": g.degree,
        "weight_matrix": wm.to_string(),
        "dim": comp.dim(),
        "basis": basis,
    });
    Ok(Rendered::ok(text, json))
}

fn triple(e: &ElementArgs) -> Result<Rendered, Failure> {
    let (alg, chi) = setup(&e.grading)?;
    let n = e.grading.degree;
    let t = adapted_sl2_triple(&alg, &chi, n, &e.x).map_err(fail)?;
    let cp = chi_prime(&t, &chi).map_err(fail)?;
    let text = format!(
        "e = {}\nh = {}\nf = {}\nbrackets hold: {}\nadapted: {}\nsecond cocharacter {} in basis {}\n",
        t.e,
        t.h,
        t.f,
        t.brackets_hold(),
        t.is_adapted(&alg, &chi, n),
        cp.weights,
        cp.basis_change
    );
    let json = json!({
        "e": t.e.to_string(),
        "h": t.h.to_string(),
        "f": t.f.to_string(),
        "brackets_hold": t.brackets_hold(),
        "adapted": t.is_adapted(&alg, &chi, n),
        "chi_prime": cp.weights.weights,
        "basis_change": cp.basis_change.to_string(),
    });
    Ok(Rendered::ok(text, json))
}

fn rigidity_json(r: &RigidityReport) -> Value {
    serde_json::to_value(r).expect("rigidity report serializes")
}

fn rigidity_text(r: &RigidityReport) -> String {
    match &r.witness {
        None => "rigid".into(),
        Some(w) => format!("not rigid, witness {}", serde_json::to_string(w).expect("serializes")),
    }
}

fn parabolic(e: &ElementArgs) -> Result<Rendered, Failure> {
    let (alg, chi) = setup(&e.grading)?;
    let n = e.grading.degree;
    let t = adapted_sl2_triple(&alg, &chi, n, &e.x).map_err(fail)?;
    let pd = canonical_parabolic(&alg, &chi, &t, n).map_err(fail)?;
    let full = check_n_rigid(&alg, &chi, &t, n).map_err(fail)?;
    let (levi, lt) = pd.levi_datum();
    let levi_rigid = check_n_rigid(levi, &chi, lt, n).map_err(fail)?;
    let report = pd.report();
    let blocks: Vec<String> =
        report.levi_blocks.iter().map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))).collect();
    let text = format!(
        "second cocharacter {}\nbigrading (second cocharacter weights)\n{}\ncombined m+2m'\n{}\np mask (dim {})\n{}\nn mask (dim {})\n{}\nl mask (dim {})\n{}\nLevi blocks {}  shape {:?}\nfull datum: {}\nLevi datum: {}\n",
        pd.chi_prime.weights,
        grid(&pd.chi_prime_matrix()),
        grid(&pd.combined_matrix),
        report.p_dim,
        mask_grid(&pd.p_mask),
        report.n_dim,
        mask_grid(&pd.n_mask),
        report.l_dim,
        mask_grid(&pd.l_mask),
        blocks.join(" "),
        report.levi_shape,
        rigidity_text(&full),
        rigidity_text(&levi_rigid),
    );
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["full_rigidity"] = rigidity_json(&full);
    json["levi_rigidity"] = rigidity_json(&levi_rigid);
    Ok(Rendered::ok(text, json))
}

fn graded_orbits(g: &GradingArgs) -> Result<Rendered, Failure> {
    let (alg, chi) = setup(g)?;
    let rows = graded_orbit_table(&alg, &chi, g.degree).map_err(fail)?;
    let mut text = format!("G_0-orbits on g_{} for cocharacter {chi}\n", g.degree);
    writeln!(text, "{:<12} {:>3}  {:<20} {:<10} representative", "orbit", "dim", "Levi blocks", "shape").unwrap();
    for r in &rows {
        let blocks: Vec<String> =
            r.levi_blocks.iter().map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))).collect();
        let shape: Vec<String> = r.levi_shape.iter().map(usize::to_string).collect();
        writeln!(
            text,
            "{:<12} {:>3}  {:<20} {:<10} {}",
            r.rep.label,
            r.rep.dimension,
            blocks.join(""),
            shape.join(","),
            r.rep.representative
        )
        .unwrap();
    }
    let json = json!({
        "cochar": chi.weights,
        "degree": g.degree,
        "orbits": serde_json::to_value(&rows).expect("rows serialize"),
    });
    Ok(Rendered::ok(text, json))
}

fn primes(g: &GroupArgs) -> Result<Rendered, Failure> {
    let rd = standard_root_datum(g.ty, g.n).map_err(usage)?;
    let report = prime_report(&rd).map_err(fail)?;
    let text = format!("root datum {}{}\n{report}\n", g.ty, g.n);
    Ok(Rendered::ok(text, serde_json::to_value(&report).expect("report serializes")))
}

fn fibers(case: CaseName, primes: &[u64]) -> Result<Rendered, Failure> {
    let data = CaseData::load(case).map_err(fail)?;
    let report = verify_fiber_counts(&data, primes).map_err(usage)?;
    let code = if report.all_match() { EXIT_OK } else { EXIT_MISMATCH };
    let mut json = serde_json::to_value(&report).expect("report serializes");
    json["all_match"] = Value::Bool(report.all_match());
    Ok(Rendered { text: format!("{report}\n"), json, code })
}

fn stalks(case: CaseName, l: u64, allow_two: bool) -> Result<Rendered, Failure> {
    let data = CaseData::load(case).map_err(fail)?;
    let table = stalk_table(&data, l, allow_two).map_err(usage)?;
    let mut text = format!("{table}\n");
    let bad = table.parity_violations();
    if !bad.is_empty() {
        let labels: Vec<String> = bad.iter().map(|b| format!("O{b}")).collect();
        writeln!(text, "parity fails for {}", labels.join(", ")).unwrap();
    }
    let mut json = table.to_json();
    json["parity_violations"] = json!(bad);
    Ok(Rendered::ok(text, json))
}
