//! Block-and-tube model manifolds built from hierarchies.
//!
//! Every rim edge `e` gives a block `B(e) = W_e × [−1, 1]` with solid-torus
//! trenches dug around `e⁻` at the bottom and `e⁺` at the top, so each end of
//! the block is a pair of three-holed spheres. Blocks are glued along
//! matching three-holed spheres, stacked in `S × ℝ` by a left-to-right
//! sweep, and the leftover solid tori are the tubes.

mod export;
mod levels;
mod tubes;
mod verify;

pub use export::{export_model, ExportFormat};
pub use levels::{embed_levels, slice_euler_characteristics};
pub use tubes::{tubes_of, Face, FaceKind, Tube, VertexRole};
pub use verify::{verify_model, ModelReport};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hier::{rim_edges, Hierarchy};
use crate::surface::{cut_along, NormalCurve, SurfaceKind};

pub const MODEL_SCHEMA: &str = "lamina-model/1";

/// Metric constants of the standard block. Only their ratios matter to the
/// combinatorics; circles have length 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockConstants {
    pub circle_length: f64,
    /// Height of every annulus face of the standard block: trench annuli and
    /// the vertical faces along `∂W_e`.
    pub annulus_height: f64,
}

pub const STANDARD_BLOCK: BlockConstants = BlockConstants { circle_length: 1.0, annulus_height: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Top,
    Bottom,
}

/// A three-holed sphere, by its boundary: essential curves and punctures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pants {
    pub curves: Vec<NormalCurve>,
    pub punctures: Vec<usize>,
}

/// Boundary classes of the gluing surfaces, by which hierarchy vertices bound
/// them: I a rim vertex, II a rim vertex and a hub, III a base vertex alone,
/// IV two adjacent base vertices. The rest of the boundary is punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryClass {
    I,
    II,
    III,
    IV,
}

impl BoundaryClass {
    /// Classes I and II sit inside a wheel and must always be glued.
    pub fn interior(self) -> bool {
        matches!(self, BoundaryClass::I | BoundaryClass::II)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPiece {
    pub side: Side,
    pub pants: Pants,
    pub class: Option<BoundaryClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub wheel: usize,
    pub edge: usize,
    pub hub: usize,
    pub minus: NormalCurve,
    pub plus: NormalCurve,
    /// Two top pieces, then two bottom pieces.
    pub pieces: Vec<BoundaryPiece>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum GluingType {
    /// Both edges in one wheel, `e₁⁺ = e₂⁻`.
    One,
    /// Hubs are successive base vertices.
    Two,
    /// Hubs are two apart.
    Three,
}

impl From<GluingType> for u8 {
    fn from(t: GluingType) -> u8 {
        match t {
            GluingType::One => 1,
            GluingType::Two => 2,
            GluingType::Three => 3,
        }
    }
}

impl TryFrom<u8> for GluingType {
    type Error = String;
    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(GluingType::One),
            2 => Ok(GluingType::Two),
            3 => Ok(GluingType::Three),
            _ => Err(format!("gluing type {v} is not 1, 2 or 3")),
        }
    }
}

/// Top pieces of `lower` identified with bottom pieces of `upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub lower: usize,
    pub upper: usize,
    pub kind: GluingType,
    /// `(piece of lower, piece of upper)` index pairs.
    pub pieces: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelComplex {
    pub schema: String,
    pub constants: BlockConstants,
    pub hierarchy: Hierarchy,
    pub blocks: Vec<Block>,
    pub gluings: Vec<Gluing>,
    /// Level of each block's middle surface.
    pub levels: Vec<i64>,
    pub tubes: Vec<Tube>,
}

/// Role of a curve in the hierarchy, for classifying pieces.
fn base_index(h: &Hierarchy, c: &NormalCurve) -> Option<usize> {
    h.base.iter().position(|b| b == c)
}

pub(crate) fn classify_pants(h: &Hierarchy, p: &Pants) -> Option<BoundaryClass> {
    let idx: Vec<Option<usize>> = p.curves.iter().map(|c| base_index(h, c)).collect();
    match idx.as_slice() {
        [None] => Some(BoundaryClass::I),
        [Some(_)] => Some(BoundaryClass::III),
        [Some(_), None] | [None, Some(_)] => Some(BoundaryClass::II),
        [Some(i), Some(j)] if i.abs_diff(*j) == 1 => Some(BoundaryClass::IV),
        _ => None,
    }
}

/// The two pieces of `W_hub` cut along `x`.
fn pants_around(hub: &NormalCurve, x: &NormalCurve) -> Result<[Pants; 2]> {
    let cut = [hub.clone(), x.clone()];
    let mut out: Vec<Pants> = cut_along(SurfaceKind::S05, &cut)?
        .into_iter()
        .filter(|p| p.curves.contains(&1))
        .map(|p| {
            let mut curves: Vec<NormalCurve> = p.curves.iter().map(|&i| cut[i].clone()).collect();
            curves.sort();
            Pants { curves, punctures: p.punctures }
        })
        .collect();
    out.sort();
    let n = out.len();
    out.try_into().map_err(|_| Error::Internal(format!("W − {x} has {n} pieces next to {x}")))
}

pub(crate) fn gluing_type(h: &Hierarchy, lo: &Block, up: &Block) -> Option<GluingType> {
    if lo.hub == up.hub && lo.plus == up.minus {
        Some(GluingType::One)
    } else if up.hub == lo.hub + 1 && lo.plus == h.base[up.hub] && up.minus == h.base[lo.hub] {
        Some(GluingType::Two)
    } else if up.hub == lo.hub + 2 && lo.plus == h.base[lo.hub + 1] && up.minus == lo.plus {
        Some(GluingType::Three)
    } else {
        None
    }
}

/// Blocks of a hierarchy with their boundary pieces, and all gluings. Levels
/// and tubes are left empty; see [`build_model`].
pub fn assemble(h: &Hierarchy) -> Result<ModelComplex> {
    let mut blocks = Vec::new();
    for e in rim_edges(h) {
        let hub = &h.base[e.hub];
        let mut pieces = Vec::with_capacity(4);
        for (side, x) in [(Side::Top, &e.plus), (Side::Bottom, &e.minus)] {
            for pants in pants_around(hub, x)? {
                let class = classify_pants(h, &pants);
                pieces.push(BoundaryPiece { side, pants, class });
            }
        }
        blocks.push(Block { wheel: e.wheel, edge: e.edge, hub: e.hub, minus: e.minus, plus: e.plus, pieces });
    }

    let mut tops: BTreeMap<&Pants, Vec<(usize, usize)>> = BTreeMap::new();
    let mut bottoms: BTreeMap<&Pants, Vec<(usize, usize)>> = BTreeMap::new();
    for (b, blk) in blocks.iter().enumerate() {
        for (k, p) in blk.pieces.iter().enumerate() {
            let m = if p.side == Side::Top { &mut tops } else { &mut bottoms };
            m.entry(&p.pants).or_default().push((b, k));
        }
    }
    let mut grouped: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (pants, t) in &tops {
        let Some(bs) = bottoms.get(pants) else { continue };
        if t.len() > 1 || bs.len() > 1 {
            return Err(Error::Internal(format!(
                "three-holed sphere bounded by {:?} matches {} tops and {} bottoms",
                pants.curves.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                t.len(),
                bs.len()
            )));
        }
        let ((lb, lk), (ub, uk)) = (t[0], bs[0]);
        grouped.entry((lb, ub)).or_default().push((lk, uk));
    }
    let mut gluings = Vec::new();
    for ((lower, upper), pieces) in grouped {
        let kind = gluing_type(h, &blocks[lower], &blocks[upper])
            .ok_or_else(|| Error::Internal(format!("gluing between blocks {lower} and {upper} is of none of the three types")))?;
        gluings.push(Gluing { lower, upper, kind, pieces });
    }
    Ok(ModelComplex {
        schema: MODEL_SCHEMA.into(),
        constants: STANDARD_BLOCK,
        hierarchy: h.clone(),
        blocks,
        gluings,
        levels: Vec::new(),
        tubes: Vec::new(),
    })
}

/// Assembles, embeds and finds the tubes.
pub fn build_model(h: &Hierarchy) -> Result<ModelComplex> {
    let mut m = assemble(h)?;
    m.levels = embed_levels(&m)?;
    m.tubes = tubes_of(&m)?;
    Ok(m)
}

impl ModelComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: ModelComplex = serde_json::from_str(s).map_err(|e| Error::Parse(format!("model JSON: {e}")))?;
        if m.schema != MODEL_SCHEMA {
            return Err(Error::Validation(format!("unknown model schema {:?}", m.schema)));
        }
        Ok(m)
    }
}
