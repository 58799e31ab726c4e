//! Thin command-line front end over the `isphere` library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use isphere::cli;

#[derive(Parser)]
#[command(
    name = "isphere",
    about = "Interval-sphere homotopy machinery for tame persistent cochain complexes over Q",
    version
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a persistence module file into its decorated barcode.
    Barcode { file: PathBuf },
    /// Check a map file against a model-structure class.
    Check {
        /// One of: weq, fib, trivfib, epi.
        #[arg(long)]
        class: String,
        file: PathBuf,
    },
    /// Solve a lifting problem (a generating cell against a map).
    Lift {
        map: PathBuf,
        problem: PathBuf,
        /// Refine the grid so that the problem's endpoints are critical values.
        #[arg(long)]
        refine: bool,
    },
    /// Factor a monomorphism of tame complexes as cells + isomorphism.
    Factorize { file: PathBuf },
    /// Present a tame complex as an interval-cell complex.
    CofibrantReplace { file: PathBuf },
    /// Build the persistent Sullivan minimal model of a CDGA file.
    MinimalModel {
        file: PathBuf,
        /// Truncation degree override (defaults to the file's maxDegree).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Where to write the model (default: <file>.model.json).
        #[arg(long)]
        model_out: Option<PathBuf>,
        /// Where to write the skeleton (default: <file>.skeleton.json).
        #[arg(long)]
        skeleton_out: Option<PathBuf>,
    },
    /// Run a counterexample walkthrough with machine-checked claims.
    Demo { name: String },
    /// Replay a cell presentation and compare it with a claimed complex.
    VerifyCells {
        presentation: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match &args.command {
        Command::Barcode { file } => cli::cmd_barcode(file),
        Command::Check { class, file } => cli::cmd_check(class, file),
        Command::Lift {
            map,
            problem,
            refine,
        } => cli::cmd_lift(map, problem, *refine),
        Command::Factorize { file } => cli::cmd_factorize(file),
        Command::CofibrantReplace { file } => cli::cmd_cofibrant_replace(file),
        Command::MinimalModel {
            file,
            max_degree,
            model_out,
            skeleton_out,
        } => cli::cmd_minimal_model(file, *max_degree, model_out.clone(), skeleton_out.clone()),
        Command::Demo { name } => cli::cmd_demo(name),
        Command::VerifyCells {
            presentation,
            against,
        } => cli::cmd_verify_cells(presentation, against),
    };
    match result {
        Ok(out) => {
            if !out.stderr.is_empty() {
                eprint!("{}", out.stderr);
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&out.stdout).expect("serializable output")
            );
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::error_exit_code(&e) as u8)
        }
    }
}
