//! wasm-bindgen entry points for the static demo page. Every export returns the JSON document
//! the matching `gradedpar --json` subcommand prints, or `{"error": ..}` on bad input.

use wasm_bindgen::prelude::*;

use gradedpar::cli::{run, EXIT_OK};

fn json(args: &[&str]) -> String {
    let mut argv = vec!["gradedpar", "--json"];
    argv.extend_from_slice(args);
    let out = run(argv);
    if out.code == EXIT_OK {
        out.stdout
    } else {
        let msg = out.stderr.trim().trim_start_matches("error: ").to_string();
        format!("{{\"error\":{msg:?}}}")
    }
}

/// Weight matrix and basis of `g_degree` for a cocharacter of `sl_d`, e.g. `"1,0,0,-1"`.
#[wasm_bindgen]
pub fn grading(cochar: &str, degree: i32) -> String {
    json(&["grading", "--cochar", cochar, "--degree", &degree.to_string()])
}

/// Graded orbits in `g_degree` with dimensions and Levi blocks.
#[wasm_bindgen]
pub fn graded_orbits(cochar: &str, degree: i32) -> String {
    json(&["graded-orbits", "--cochar", cochar, "--degree", &degree.to_string()])
}

/// Stalk table for `"sp4"` or `"sl4"` with coefficients of characteristic `l`.
#[wasm_bindgen]
pub fn stalks(case: &str, l: u32) -> String {
    let l = l.to_string();
    let mut args = vec!["stalks", "--case", case, "--char", &l];
    if l == "2" {
        args.push("--allow-two");
    }
    json(&args)
}
