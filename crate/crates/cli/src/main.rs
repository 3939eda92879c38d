//! `lamina`: curve complexes, hierarchies and model manifolds of the
//! five-holed sphere from the command line.
//!
//! Exit codes: 0 success, 2 invalid input or failed audit, 3 search budget
//! exhausted (or a quantity unavailable), 4 I/O.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lamina::surface::NormalCurve;

#[derive(Parser)]
#[command(name = "lamina", version, about = "Curve complexes, hierarchies and block-and-tube models of S_{0,5}")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Cap on intersection numbers of intermediate curves (default: grows with the distance).
    #[arg(long = "budget-i", global = true)]
    pub budget_i: Option<u64>,
    /// Cap on curves (or markings) visited per search.
    #[arg(long = "budget-nodes", global = true, default_value_t = 4000)]
    pub budget_nodes: usize,
    /// Geodesic selection rule: lex or revlex.
    #[arg(long, global = true, default_value = "lex")]
    pub rule: String,
    /// RNG seed (pipeline default 0, experiment default 7).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
pub enum Command {
    /// Curves: coordinates, `round:i`, `edge:e` or `WORD@CURVE`.
    #[command(subcommand)]
    Curve(CurveCmd),
    #[command(subcommand)]
    Mcg(McgCmd),
    #[command(subcommand)]
    Farey(FareyCmd),
    /// The curve complex and subsurface projections.
    #[command(subcommand)]
    Cc(CcCmd),
    #[command(subcommand)]
    Hier(HierCmd),
    #[command(subcommand)]
    Model(ModelCmd),
    #[command(subcommand)]
    Tube(TubeCmd),
    #[command(subcommand)]
    Marking(MarkingCmd),
    /// Input → geodesic → hierarchy → model, writing every artifact.
    Pipeline {
        input: PathBuf,
        /// Write geodesic.json, hierarchy.json and model.<format> here instead
        /// of printing the model.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Audits any artifact by its schema and prints a pass/fail table.
    Verify { path: PathBuf },
}

#[derive(Subcommand)]
pub enum CurveCmd {
    /// Coordinates, length and enclosed punctures.
    Show { curve: NormalCurve },
    /// Geometric intersection number.
    I { a: NormalCurve, b: NormalCurve },
}

#[derive(Subcommand)]
pub enum McgCmd {
    /// Image of a curve under a word such as `s1S2s3` (rightmost acts first).
    Apply { word: String, curve: NormalCurve },
}

#[derive(Subcommand)]
pub enum FareyCmd {
    /// Farey geodesic between two slopes (`p/q`, `inf`).
    Geo { u: String, v: String },
}

#[derive(Subcommand)]
pub enum CcCmd {
    /// Distance with its certificate.
    Dist { a: NormalCurve, b: NormalCurve },
    /// A certified geodesic, as a geodesic artifact.
    Geo { a: NormalCurve, b: NormalCurve },
    /// `d_W(a, b)`; the subsurface is `whole`, `annulus:CURVE` or `w:CURVE`.
    Dw {
        #[arg(long)]
        subsurface: String,
        a: NormalCurve,
        b: NormalCurve,
    },
}

#[derive(Subcommand)]
pub enum HierCmd {
    /// Hierarchy over a geodesic artifact.
    Build {
        geodesic: PathBuf,
    },
    Verify {
        path: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum ModelCmd {
    /// Model over a hierarchy artifact.
    Build {
        hierarchy: PathBuf,
    },
    Verify {
        path: PathBuf,
    },
    /// Re-emits a model as JSON or DOT.
    Export {
        path: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum TubeCmd {
    /// Tube with unit longitude and the given modulus, e.g. `--omega 0.5+3i`.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    Modulus {
        #[arg(long)]
        l: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        r: f64,
    },
    /// Collar depth for `--eps/--eps1`, core length for `--omega`.
    Bounds {
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        eps1: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        /// Collar constant C.
        #[arg(long = "collar-c")]
        collar_c: Option<f64>,
        /// Core-length constant c.
        #[arg(long = "core-c")]
        core_c: Option<f64>,
    },
}

#[derive(Subcommand)]
pub enum MarkingCmd {
    /// Applies moves (`t1+ t2- f1 f2.1`) to a marking file or `base`.
    Move {
        #[arg(long, default_value = "base")]
        marking: String,
        #[arg(long, allow_hyphen_values = true)]
        moves: String,
    },
    /// Elementary-move distance (node cap from --budget-nodes).
    Dist { a: String, b: String },
    /// Largest subsurface projection distance and its witness.
    Supdw {
        a: String,
        b: String,
        #[arg(long, default_value_t = 24)]
        cap: usize,
    },
    /// Projection distance against move count on a random corpus.
    Experiment {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        max_word: usize,
        #[arg(long, default_value_t = 24)]
        cap: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("LAMINA_LOG", "warn")).format_timestamp(None).init();
    let cli = Cli::parse();
    match run::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
