use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use lamina::cplx::{cc_distance, cc_geodesic, subsurface_distance, SearchBudget};
use lamina::farey::{farey_geodesic_with, SelectionRule, Slope};
use lamina::hier::{build_hierarchy, Hierarchy};
use lamina::markings::{move_distance, parse_moves, scaling_experiment, sup_dw, CorpusKind, ExperimentSpec, Marking, MoveDistance};
use lamina::model::{build_model, export_model, ExportFormat, ModelComplex};
use lamina::pipeline::{run_pipeline, verify_artifact, GeodesicFile, PipelineConfig, PipelineInput, StageError, GEODESIC_SCHEMA};
use lamina::subsurface::{complementary_four_holed, Subsurface};
use lamina::surface::{apply_mapping_class, intersection_number, MappingClassWord, NormalCurve, SurfaceKind};
use lamina::tubegeom::{
    collar_lower_bound, core_length_lower_bound, solve_tube, tube_modulus, TorusModulus, TubeParams, COLLAR_CONSTANT, CORE_LENGTH_CONSTANT,
};
use serde_json::json;

use crate::{CcCmd, Cli, Command, CurveCmd, FareyCmd, Format, Global, HierCmd, MarkingCmd, McgCmd, ModelCmd, TubeCmd};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] lamina::Error),
    #[error(transparent)]
    Stage(#[from] StageError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    /// An audit ran and found violations.
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let lib = |e: &lamina::Error| match e {
            lamina::Error::Budget(_) | lamina::Error::Unavailable(_) => 3,
            _ => 2,
        };
        match self {
            CliError::Lib(e) => lib(e),
            CliError::Stage(s) => lib(&s.error),
            CliError::Io { .. } => 4,
            CliError::Failed(_) | CliError::Usage(_) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

/// Writes to stdout; a closed pipe (`lamina … | head`) ends the process quietly.
fn out(text: &str) {
    let mut so = std::io::stdout().lock();
    if let Err(e) = so.write_all(text.as_bytes()).and_then(|()| so.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        log::error!("writing to stdout: {e}");
    }
}

macro_rules! say {
    ($($arg:tt)*) => { out(&format!("{}\n", format_args!($($arg)*))) };
}

fn emit(v: &impl serde::Serialize) {
    say!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

impl Global {
    fn budget(&self) -> SearchBudget {
        SearchBudget { intersection_cap: self.budget_i, node_cap: self.budget_nodes }
    }

    fn rule(&self) -> Result<SelectionRule> {
        Ok(self.rule.parse()?)
    }

    fn export_format(&self) -> Result<ExportFormat> {
        match self.format {
            Format::Json => Ok(ExportFormat::Json),
            Format::Dot => Ok(ExportFormat::Dot),
            Format::Csv => Err(CliError::Usage("models export as json or dot".into())),
        }
    }
}

/// `whole`, `annulus:CURVE` or `w:CURVE`.
fn parse_subsurface(s: &str) -> Result<Subsurface> {
    if s == "whole" {
        return Ok(Subsurface::Whole { surface: SurfaceKind::S05 });
    }
    let (kind, curve) =
        s.split_once(':').ok_or_else(|| CliError::Usage(format!("bad subsurface {s:?}: expected whole, annulus:CURVE or w:CURVE")))?;
    let c: NormalCurve = curve.parse()?;
    match kind {
        "annulus" => Ok(Subsurface::Annulus { core: c }),
        "w" => Ok(Subsurface::FourHoled { w: complementary_four_holed(SurfaceKind::S05, &c)? }),
        _ => Err(CliError::Usage(format!("unknown subsurface kind {kind:?}"))),
    }
}

/// `base`, `base:MOVES` (the base marking after the moves) or a marking file.
fn load_marking(s: &str) -> Result<Marking> {
    if s == "base" {
        return Ok(Marking::base());
    }
    if let Some(moves) = s.strip_prefix("base:") {
        return Ok(Marking::base().apply_all(&parse_moves(moves)?)?);
    }
    Ok(Marking::from_json(&read(Path::new(s))?)?)
}

/// Prints an audit table; violations make the command fail.
fn report(text: &str, expect: Option<&str>) -> Result<()> {
    let r = verify_artifact(text)?;
    if let Some(schema) = expect {
        if r.schema != schema {
            return Err(CliError::Usage(format!("expected a {schema} artifact, got {}", r.schema)));
        }
    }
    out(&r.table());
    if r.ok() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} failed verification", r.schema)))
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let g = cli.global;
    match cli.command {
        Command::Curve(CurveCmd::Show { curve }) => emit(&json!({
            "curve": curve.to_string(),
            "surface": curve.surface().to_string(),
            "coords": curve.coords(),
            "length": curve.length(),
            "enclosed": curve.enclosed(),
        })),
        Command::Curve(CurveCmd::I { a, b }) => say!("{}", intersection_number(&a, &b)?),
        Command::Mcg(McgCmd::Apply { word, curve }) => {
            let w = MappingClassWord::parse(&word)?;
            say!("{}", apply_mapping_class(&w, &curve)?);
        }
        Command::Farey(FareyCmd::Geo { u, v }) => {
            let (u, v): (Slope, Slope) = (u.parse()?, v.parse()?);
            let path = farey_geodesic_with(u, v, g.rule()?);
            emit(&json!({ "distance": path.len() - 1, "slopes": path.iter().map(Slope::to_string).collect::<Vec<_>>() }));
        }
        Command::Cc(cmd) => cc(cmd, &g)?,
        Command::Hier(HierCmd::Build { geodesic }) => {
            let file = GeodesicFile::from_json(&read(&geodesic)?)?;
            let h = build_hierarchy(&file.curves, g.rule()?)?;
            match g.format {
                Format::Json => say!("{}", h.to_json()),
                Format::Dot => out(&h.to_dot()),
                Format::Csv => return Err(CliError::Usage("hierarchies export as json or dot".into())),
            }
        }
        Command::Hier(HierCmd::Verify { path }) => report(&read(&path)?, Some(lamina::hier::HIERARCHY_SCHEMA))?,
        Command::Model(ModelCmd::Build { hierarchy }) => {
            let fmt = g.export_format()?;
            let m = build_model(&Hierarchy::from_json(&read(&hierarchy)?)?)?;
            say!("{}", export_model(&m, fmt));
        }
        Command::Model(ModelCmd::Verify { path }) => report(&read(&path)?, Some(lamina::model::MODEL_SCHEMA))?,
        Command::Model(ModelCmd::Export { path }) => {
            let fmt = g.export_format()?;
            say!("{}", export_model(&ModelComplex::from_json(&read(&path)?)?, fmt));
        }
        Command::Tube(cmd) => tube(cmd)?,
        Command::Marking(cmd) => marking(cmd, &g)?,
        Command::Pipeline { input, out_dir } => pipeline(&input, out_dir.as_deref(), &g)?,
        Command::Verify { path } => report(&read(&path)?, None)?,
    }
    Ok(())
}

fn cc(cmd: CcCmd, g: &Global) -> Result<()> {
    let budget = g.budget();
    match cmd {
        CcCmd::Dist { a, b } => {
            let r = cc_distance(&a, &b, &budget)?;
            emit(&r);
            if !r.exact {
                return Err(lamina::Error::Budget(format!("distance only known to lie in [{}, {}]", r.lo, r.hi)).into());
            }
        }
        CcCmd::Geo { a, b } => {
            let curves = cc_geodesic(&a, &b, &budget)?;
            let d = curves.len() as u32 - 1;
            say!("{}", GeodesicFile { schema: GEODESIC_SCHEMA.into(), curves, certified_distance: Some(d) }.to_json());
        }
        CcCmd::Dw { subsurface, a, b } => {
            let w = parse_subsurface(&subsurface)?;
            let r = subsurface_distance(&w, &a, &b, &budget)?;
            emit(&json!({ "subsurface": w.to_string(), "d": r.d, "twist": r.twist }));
        }
    }
    Ok(())
}

fn modulus(s: &str) -> Result<TorusModulus> {
    Ok(s.parse()?)
}

fn tube_json(t: &TubeParams) -> serde_json::Value {
    let w = tube_modulus(t).value();
    let lon = t.longitude();
    json!({
        "l": t.l, "theta": t.theta, "r": t.r,
        "modulus": { "re": w.re, "im": w.im },
        "longitude": { "re": lon.re, "im": lon.im },
    })
}

fn tube(cmd: TubeCmd) -> Result<()> {
    match cmd {
        TubeCmd::Solve { omega } => emit(&tube_json(&solve_tube(modulus(&omega)?)?)),
        TubeCmd::Modulus { l, theta, r } => emit(&tube_json(&TubeParams::new(l, theta, r)?)),
        TubeCmd::Bounds { eps, eps1, omega, collar_c, core_c } => {
            let mut out = serde_json::Map::new();
            match (eps, eps1) {
                (Some(e), Some(e1)) => {
                    let c = collar_c.unwrap_or(COLLAR_CONSTANT);
                    out.insert("collar_depth".into(), json!({ "eps": e, "eps1": e1, "c": c, "bound": collar_lower_bound(e, e1, c)? }));
                }
                (None, None) => {}
                _ => return Err(CliError::Usage("--eps and --eps1 go together".into())),
            }
            if let Some(w) = omega {
                let c = core_c.unwrap_or(CORE_LENGTH_CONSTANT);
                out.insert("core_length".into(), json!({ "omega": w, "c": c, "bound": core_length_lower_bound(modulus(&w)?, c) }));
            }
            if out.is_empty() {
                return Err(CliError::Usage("give --eps/--eps1, --omega, or both".into()));
            }
            emit(&out);
        }
    }
    Ok(())
}

fn marking(cmd: MarkingCmd, g: &Global) -> Result<()> {
    match cmd {
        MarkingCmd::Move { marking, moves } => {
            let m = load_marking(&marking)?.apply_all(&parse_moves(&moves)?)?;
            say!("{}", m.to_json());
        }
        MarkingCmd::Dist { a, b } => {
            let d = move_distance(&load_marking(&a)?, &load_marking(&b)?, g.budget_nodes)?;
            emit(&d);
            if let MoveDistance::LowerBound { n, visited } = d {
                return Err(lamina::Error::Budget(format!("at least {n} moves ({visited} markings visited)")).into());
            }
        }
        MarkingCmd::Supdw { a, b, cap } => emit(&sup_dw(&load_marking(&a)?, &load_marking(&b)?, cap)?),
        MarkingCmd::Experiment { n, max_word, cap } => {
            let spec = ExperimentSpec {
                kind: CorpusKind::Mixed,
                pairs: n,
                max_word,
                seed: g.seed.unwrap_or(ExperimentSpec::default().seed),
                node_cap: g.budget_nodes,
                subsurface_cap: cap,
            };
            let r = scaling_experiment(&spec)?;
            match g.format {
                Format::Csv => out(&r.to_csv()),
                Format::Json => emit(&r),
                Format::Dot => return Err(CliError::Usage("experiments export as json or csv".into())),
            }
        }
    }
    Ok(())
}

fn pipeline(input: &Path, out_dir: Option<&Path>, g: &Global) -> Result<()> {
    let fmt = g.export_format()?;
    let inp = PipelineInput::from_json(&read(input)?)?;
    let cfg = PipelineConfig { budget: g.budget(), rule: g.rule()?, seed: g.seed.unwrap_or(0) };
    let out = run_pipeline(&inp, &cfg)?;
    for w in &out.warnings {
        log::warn!("{w}");
    }
    let model = export_model(&out.model, fmt);
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
            write(&dir.join("geodesic.json"), &out.geodesic.to_json())?;
            write(&dir.join("hierarchy.json"), &out.hierarchy.to_json())?;
            let ext = if fmt == ExportFormat::Dot { "dot" } else { "json" };
            write(&dir.join(format!("model.{ext}")), &model)?;
        }
        None => say!("{model}"),
    }
    Ok(())
}
