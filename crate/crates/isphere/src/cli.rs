//! Implementations of the `isphere` subcommands.
//!
//! One command, one process: read JSON files, run the library, print JSON to
//! stdout (human diagnostics go to stderr). Exit codes: 0 when the operation
//! succeeds and any checked property holds, 1 when a property fails or a
//! hypothesis is not met (with a witness in the output), 2 on malformed
//! input.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::cells::CellPresentation;
use crate::classes;
use crate::complex::PersComplexMap;
use crate::error::{Error, Result};
use crate::factor;
use crate::io::{self, CdgaFile, ComplexFile, MapFile, ModuleFile};
use crate::lifting::{self, LiftOutcome};
use crate::scalar::Rat;

/// Exit status chosen by a command: the process code and the JSON payload.
pub struct CommandOutput {
    pub code: i32,
    pub stdout: serde_json::Value,
    pub stderr: String,
}

fn verdict_output<T: Serialize>(holds: bool, payload: &T) -> CommandOutput {
    CommandOutput {
        code: if holds { 0 } else { 1 },
        stdout: serde_json::to_value(payload).expect("serializable"),
        stderr: String::new(),
    }
}

/// Decompose a persistence module file into its decorated barcode.
pub fn cmd_barcode(input: &Path) -> Result<CommandOutput> {
    let file: ModuleFile = io::read_json(input)?;
    let module = file.to_module()?;
    let dec = crate::barcode::barcode(&module);
    let mut lines = String::new();
    for bar in &dec.barcode.bars {
        lines.push_str(&format!("{}  x{}\n", bar.interval, bar.mult));
    }
    Ok(CommandOutput {
        code: 0,
        stdout: serde_json::to_value(&dec.barcode)?,
        stderr: lines,
    })
}

/// Check a map file against one of the model-structure classes.
pub fn cmd_check(class: &str, input: &Path) -> Result<CommandOutput> {
    let file: MapFile = io::read_json(input)?;
    let map = file.to_map()?;
    let verdict = match class {
        "weq" => classes::is_weak_equivalence(&map)?,
        "fib" => classes::is_fibration(&map)?,
        "trivfib" => classes::is_trivial_fibration(&map)?,
        "epi" => classes::is_j_infinity_injective(&map)?,
        other => {
            return Err(Error::invalid(format!(
                "unknown class {other:?}; expected weq, fib, trivfib or epi"
            )))
        }
    };
    Ok(verdict_output(verdict.holds, &verdict))
}

/// Solve a lifting problem against a map.
pub fn cmd_lift(map_file: &Path, problem_file: &Path, refine: bool) -> Result<CommandOutput> {
    let map: MapFile = io::read_json(map_file)?;
    let mut map = map.to_map()?;
    let problem: lifting::LiftProblem = io::read_json(problem_file)?;
    if refine {
        let mut extra: Vec<Rat> = vec![problem.cell.interval.left.clone()];
        if let Some(t) = &problem.cell.interval.right {
            extra.push(t.clone());
        }
        let finer = map.source().grid().refined(&extra)?;
        map = map.refined_to(&finer)?;
    }
    let outcome = lifting::solve_lifting(&map, &problem)?;
    let holds = matches!(outcome, LiftOutcome::Lift { .. });
    Ok(verdict_output(holds, &outcome))
}

/// Factor a monomorphism of tame complexes through a two-stage cell
/// presentation.
pub fn cmd_factorize(input: &Path) -> Result<CommandOutput> {
    let file: MapFile = io::read_json(input)?;
    let map = file.to_map()?;
    let f = factor::factor_mono_as_cellular(&map)?;
    let payload = json!({
        "presentation": f.presentation,
        "report": f.report,
    });
    let okay = f.report.iso_verified && f.report.composite_verified;
    Ok(CommandOutput {
        code: if okay { 0 } else { 1 },
        stdout: payload,
        stderr: format!(
            "stages: {} + {} cells; isomorphism verified: {}; composite verified: {}\n",
            f.report.stage_cells[0],
            f.report.stage_cells[1],
            f.report.iso_verified,
            f.report.composite_verified
        ),
    })
}

/// Present a tame complex as an interval-cell complex.
pub fn cmd_cofibrant_replace(input: &Path) -> Result<CommandOutput> {
    let file: ComplexFile = io::read_json(input)?;
    let x = file.to_complex()?;
    let f = factor::cofibrant_replacement(&x)?;
    let payload = json!({
        "presentation": f.presentation,
        "report": f.report,
    });
    let okay = f.report.iso_verified && f.report.composite_verified;
    Ok(CommandOutput {
        code: if okay { 0 } else { 1 },
        stdout: payload,
        stderr: format!(
            "stages: {} + {} cells\n",
            f.report.stage_cells[0], f.report.stage_cells[1]
        ),
    })
}

/// Replay a cell presentation and compare against a claimed complex.
pub fn cmd_verify_cells(presentation: &Path, against: &Path) -> Result<CommandOutput> {
    let p: CellPresentation = io::read_json(presentation)?;
    let file: ComplexFile = io::read_json(against)?;
    let claimed = file.to_complex()?;
    let v = factor::verify_cell_presentation(&p, &claimed, None)?;
    Ok(verdict_output(v.verdict.holds, &v.verdict))
}

/// Build the persistent Sullivan minimal model of a CDGA file.
pub fn cmd_minimal_model(
    input: &Path,
    max_degree: Option<usize>,
    model_out: Option<PathBuf>,
    skeleton_out: Option<PathBuf>,
) -> Result<CommandOutput> {
    let file: CdgaFile = io::read_json(input)?;
    let mut algebra = file.to_nodewise()?;
    if let Some(n) = max_degree {
        if n != algebra.max_degree() {
            algebra = algebra.truncated(n)?;
        }
    }
    let mm = crate::cdga::minimal_model(&algebra)?;
    let model_path = model_out.unwrap_or_else(|| with_suffix(input, "model"));
    let skeleton_path = skeleton_out.unwrap_or_else(|| with_suffix(input, "skeleton"));
    io::write_json(&model_path, &CdgaFile::from_free(&mm.model))?;
    io::write_json(&skeleton_path, &mm.skeleton)?;
    let okay =
        mm.report.minimal && mm.report.quasi_isomorphism && mm.report.skeleton_replays;
    let gens: Vec<serde_json::Value> = mm
        .model
        .gens
        .iter()
        .map(|g| {
            json!({
                "name": g.name,
                "degree": g.degree,
                "support": g.support,
                "d": g.d.render(&mm.model.gen_names()),
            })
        })
        .collect();
    Ok(CommandOutput {
        code: if okay { 0 } else { 1 },
        stdout: json!({
            "report": mm.report,
            "generators": gens,
            "modelFile": model_path,
            "skeletonFile": skeleton_path,
        }),
        stderr: format!(
            "model with {} generators; minimal: {}; quasi-isomorphism through degree {}: {}; \
             skeleton replays: {}\n",
            mm.model.gens.len(),
            mm.report.minimal,
            mm.report.checked_through_degree,
            mm.report.quasi_isomorphism,
            mm.report.skeleton_replays
        ),
    })
}

fn with_suffix(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    input.with_file_name(format!("{stem}.{suffix}.json"))
}

/// Run one of the counterexample walkthroughs.
pub fn cmd_demo(name: &str) -> Result<CommandOutput> {
    let t = crate::demos::run_demo(name)?;
    Ok(CommandOutput {
        code: if t.all_hold() { 0 } else { 1 },
        stderr: t.render(),
        stdout: serde_json::to_value(&t)?,
    })
}

/// Map an error to the documented exit code (1 for hypothesis failures,
/// 2 for malformed input).
pub fn error_exit_code(e: &Error) -> i32 {
    if e.is_hypothesis_failure() {
        1
    } else {
        2
    }
}

/// Convenience used by tests: run a map file through all four class checks.
pub fn check_all_classes(map: &PersComplexMap) -> Result<serde_json::Value> {
    Ok(json!({
        "weq": classes::is_weak_equivalence(map)?,
        "fib": classes::is_fibration(map)?,
        "trivfib": classes::is_trivial_fibration(map)?,
        "epi": classes::is_j_infinity_injective(map)?,
    }))
}
