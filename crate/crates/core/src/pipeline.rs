//! End-to-end runs: curves → geodesic → hierarchy → model, and schema-aware
//! verification of every artifact the runs write.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::cplx::{audit_geodesic, cc_distance, SearchBudget};
use crate::error::{Error, Result};
use crate::farey::SelectionRule;
use crate::hier::{build_hierarchy, verify_hierarchy, Hierarchy, HIERARCHY_SCHEMA};
use crate::markings::{Marking, MARKING_SCHEMA};
use crate::model::{build_model, verify_model, ModelComplex, MODEL_SCHEMA};
use crate::surface::{apply_mapping_class, round_curve, Generator, MappingClassWord, NormalCurve, SurfaceKind};

pub const INPUT_SCHEMA: &str = "lamina-input/1";
pub const GEODESIC_SCHEMA: &str = "lamina-geodesic/1";

/// Where the geodesic comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeodesicSource {
    /// A geodesic given vertex by vertex; it is audited, not searched.
    Curves { curves: Vec<NormalCurve> },
    /// A certified geodesic between two curves.
    Endpoints { a: NormalCurve, b: NormalCurve },
    /// From `seed` to `word^power(seed)`.
    Word { seed: NormalCurve, word: String, power: u32 },
    /// A random word of the given length, drawn from the run's seed.
    Random { word_length: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineInput {
    pub schema: String,
    pub geodesic: GeodesicSource,
}

impl PipelineInput {
    pub fn from_json(s: &str) -> Result<Self> {
        let v: PipelineInput = serde_json::from_str(s).map_err(|e| Error::Parse(format!("pipeline input: {e}")))?;
        if v.schema != INPUT_SCHEMA {
            return Err(Error::Validation(format!("unknown input schema {:?}", v.schema)));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct PipelineConfig {
    pub budget: SearchBudget,
    pub rule: SelectionRule,
    pub seed: u64,
}

/// A geodesic in the curve graph, with how its length was established.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicFile {
    pub schema: String,
    pub curves: Vec<NormalCurve>,
    /// Set when the endpoints' distance was certified by search.
    pub certified_distance: Option<u32>,
}

impl GeodesicFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: GeodesicFile = serde_json::from_str(s).map_err(|e| Error::Parse(format!("geodesic JSON: {e}")))?;
        if g.schema != GEODESIC_SCHEMA {
            return Err(Error::Validation(format!("unknown geodesic schema {:?}", g.schema)));
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Geodesic,
    Verify,
    Hierarchy,
    Model,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Geodesic => "geodesic",
            Stage::Verify => "verify",
            Stage::Hierarchy => "hierarchy",
            Stage::Model => "model",
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("stage {stage} failed: {error}")]
pub struct StageError {
    pub stage: Stage,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub geodesic: GeodesicFile,
    pub hierarchy: Hierarchy,
    pub model: ModelComplex,
    pub warnings: Vec<String>,
}

fn at(stage: Stage) -> impl Fn(Error) -> StageError {
    move |error| StageError { stage, error }
}

fn certified(a: &NormalCurve, b: &NormalCurve, budget: &SearchBudget) -> Result<GeodesicFile> {
    let r = cc_distance(a, b, budget)?;
    match r.path {
        Some(curves) if r.exact => Ok(GeodesicFile { schema: GEODESIC_SCHEMA.into(), curves, certified_distance: Some(r.lo) }),
        _ => Err(Error::Budget(format!(
            "distance between the endpoints is only known to lie in [{}, {}] ({} curves visited, cap {})",
            r.lo, r.hi, r.nodes, r.intersection_cap
        ))),
    }
}

fn geodesic(src: &GeodesicSource, cfg: &PipelineConfig) -> Result<GeodesicFile> {
    match src {
        GeodesicSource::Curves { curves } => Ok(GeodesicFile { schema: GEODESIC_SCHEMA.into(), curves: curves.clone(), certified_distance: None }),
        GeodesicSource::Endpoints { a, b } => certified(a, b, &cfg.budget),
        GeodesicSource::Word { seed, word, power } => {
            let w = MappingClassWord::parse(word)?.pow(*power as i64);
            certified(seed, &apply_mapping_class(&w, seed)?, &cfg.budget)
        }
        GeodesicSource::Random { word_length } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let a = round_curve(SurfaceKind::S05, rng.gen_range(0..5));
            let w = MappingClassWord((0..*word_length).map(|_| Generator::new(rng.gen_range(1..=4), rng.gen_bool(0.5))).collect());
            certified(&a, &apply_mapping_class(&w, &a)?, &cfg.budget)
        }
    }
}

/// Runs every stage; the first failure is reported with its stage.
pub fn run_pipeline(input: &PipelineInput, cfg: &PipelineConfig) -> std::result::Result<PipelineOutput, StageError> {
    let g = geodesic(&input.geodesic, cfg).map_err(at(Stage::Geodesic))?;
    let mut warnings = Vec::new();
    if g.curves.len() < 2 {
        return Err(StageError { stage: Stage::Verify, error: Error::Validation("a geodesic needs at least two curves".into()) });
    }
    let audit = audit_geodesic(&g.curves).map_err(at(Stage::Verify))?;
    if !audit.locally_geodesic() {
        return Err(StageError { stage: Stage::Verify, error: Error::Validation(format!("not a geodesic: {audit:?}")) });
    }
    if g.curves.len() <= 3 {
        warnings.push(format!("geodesic of length {} has no interior hub with a wheel; the model is degenerate", g.curves.len() - 1));
    }
    let h = build_hierarchy(&g.curves, cfg.rule).map_err(at(Stage::Hierarchy))?;
    let m = build_model(&h).map_err(at(Stage::Model))?;
    Ok(PipelineOutput { geodesic: g, hierarchy: h, model: m, warnings })
}

/// One line of a verification table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: String,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn table(&self) -> String {
        let w = self.rows.iter().map(|r| r.check.len()).max().unwrap_or(0);
        let mut s = format!("{}\n", self.schema);
        for r in &self.rows {
            s.push_str(&format!("  {:<w$}  {}", r.check, if r.pass { "pass" } else { "FAIL" }));
            if let Some(d) = &r.detail {
                s.push_str(&format!("  {d}"));
            }
            s.push('\n');
        }
        s
    }
}

fn row(check: &str, pass: bool, detail: Option<String>) -> CheckRow {
    CheckRow { check: check.into(), pass, detail }
}

/// Audits an artifact of any known schema.
pub fn verify_artifact(text: &str) -> Result<VerifyReport> {
    if text.trim().is_empty() {
        return Err(Error::Validation("empty artifact: no schema".into()));
    }
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("artifact JSON: {e}")))?;
    let schema = v.get("schema").and_then(|s| s.as_str()).ok_or_else(|| Error::Validation("artifact has no schema field".into()))?.to_string();
    let rows = match schema.as_str() {
        GEODESIC_SCHEMA => {
            let g = GeodesicFile::from_json(text)?;
            let a = audit_geodesic(&g.curves)?;
            let mut rows = vec![
                row("consecutive curves disjoint", a.adjacent, None),
                row("curves two apart intersect", a.two_apart_intersect, None),
                row("curves three apart fill", a.three_apart_fill, None),
            ];
            if let Some(d) = g.certified_distance {
                rows.push(row("length matches certified distance", d as usize + 1 == g.curves.len(), None));
            }
            rows
        }
        HIERARCHY_SCHEMA => {
            let r = verify_hierarchy(&Hierarchy::from_json(text)?)?;
            let detail = |c| {
                let msgs: Vec<String> = r.violations.iter().filter(|x| x.check == c).map(|x| x.message.clone()).collect();
                (!msgs.is_empty()).then(|| msgs.join("; "))
            };
            use crate::hier::Check;
            vec![
                row("base is a geodesic", r.base_geodesic, detail(Check::BaseGeodesic)),
                row("wheel endpoints", r.wheel_endpoints, detail(Check::WheelEndpoints)),
                row("wheels are Farey geodesics", r.wheel_geodesic, detail(Check::WheelGeodesic)),
                row("vertices distinct", r.distinct, detail(Check::Distinct)),
            ]
        }
        MODEL_SCHEMA => {
            let r = verify_model(&ModelComplex::from_json(text)?);
            let d = (!r.violations.is_empty()).then(|| r.violations.join("; "));
            vec![
                row("blocks match rim edges", r.block_count_ok, None),
                row("boundary classes I-IV", r.classes_ok, None),
                row("gluings of types 1-3", r.gluings_ok, None),
                row("levels respect gluings", r.levels_ok, None),
                row("slices have chi = -3", r.slices_ok, None),
                row("tubes close up", r.tubes_ok, None),
                row("no violations", r.ok(), d),
            ]
        }
        MARKING_SCHEMA => {
            let m = Marking::from_json(text);
            vec![row("marking conditions", m.is_ok(), m.err().map(|e| e.to_string()))]
        }
        s => return Err(Error::Validation(format!("unknown schema {s:?}"))),
    };
    Ok(VerifyReport { schema, rows })
}
