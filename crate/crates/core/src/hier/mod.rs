//! Hierarchies over a geodesic segment: at every interior vertex `v_i` of the
//! base geodesic, a Farey geodesic ("wheel") in `C(W_{v_i})` joins `v_{i−1}`
//! to `v_{i+1}`. Wheel edges are rim edges; hub-to-wheel pairs are spokes.

mod verify;

pub use verify::{verify_hierarchy, Check, DuplicateCase, HierarchyReport, Occurrence, Violation};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cplx::fills;
use crate::error::{Error, Result};
use crate::farey::{curve_of_slope, farey_geodesic_with, slope_of_curve, SelectionRule, Slope, SlopeFrame};
use crate::subsurface::complementary_four_holed;
use crate::surface::{intersection_number, NormalCurve, SurfaceKind};

pub const HIERARCHY_SCHEMA: &str = "lamina-hierarchy/1";

/// The wheel at base index `hub`: slopes in the frame of `W_{v_hub}` and the
/// corresponding curves, from `v_{hub−1}` to `v_{hub+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Wheel {
    pub hub: usize,
    pub slopes: Vec<Slope>,
    pub vertices: Vec<NormalCurve>,
}

impl Wheel {
    /// Number of rim edges.
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hierarchy {
    pub schema: String,
    pub rule: SelectionRule,
    pub base: Vec<NormalCurve>,
    pub wheels: Vec<Wheel>,
}

/// A rim edge `(e⁻, e⁺)` of the wheel at `hub`; its subsurface is `W_hub`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RimEdge {
    pub wheel: usize,
    pub edge: usize,
    pub hub: usize,
    pub minus: NormalCurve,
    pub plus: NormalCurve,
}

/// First failing local geodesic condition on a path, as `(index, reason)`.
pub(crate) fn audit_failure(g: &[NormalCurve]) -> Result<Option<(usize, &'static str)>> {
    for j in 0..g.len() {
        if j + 1 < g.len() && (g[j] == g[j + 1] || intersection_number(&g[j], &g[j + 1])? != 0) {
            return Ok(Some((j, "consecutive curves are not distinct and disjoint")));
        }
        if j + 2 < g.len() && intersection_number(&g[j], &g[j + 2])? == 0 {
            return Ok(Some((j, "curves two apart are disjoint")));
        }
        if j + 3 < g.len() && !fills(&g[j], &g[j + 3])? {
            return Ok(Some((j, "curves three apart do not fill")));
        }
    }
    Ok(None)
}

fn build_wheel(g: &[NormalCurve], i: usize, rule: SelectionRule) -> Result<Wheel> {
    let frame = SlopeFrame::new(complementary_four_holed(SurfaceKind::S05, &g[i])?)?;
    let s0 = slope_of_curve(&frame, &g[i - 1])?;
    let s1 = slope_of_curve(&frame, &g[i + 1])?;
    let slopes = farey_geodesic_with(s0, s1, rule);
    let vertices = slopes.iter().map(|&s| curve_of_slope(&frame, s)).collect::<Result<Vec<_>>>()?;
    debug_assert_eq!((&vertices[0], vertices.last().unwrap()), (&g[i - 1], &g[i + 1]));
    Ok(Wheel { hub: i, slopes, vertices })
}

/// Builds the hierarchy over a geodesic segment. A segment of length 1 has
/// no interior hub and gives an empty hierarchy.
pub fn build_hierarchy(g: &[NormalCurve], rule: SelectionRule) -> Result<Hierarchy> {
    if g.len() < 2 {
        return Err(Error::Validation(format!("a geodesic segment needs at least 2 curves, got {}", g.len())));
    }
    if let Some(c) = g.iter().find(|c| c.surface() != SurfaceKind::S05) {
        return Err(Error::Domain(format!("hierarchies live on the five-holed sphere, got a curve on {}", c.surface())));
    }
    if let Some((j, why)) = audit_failure(g)? {
        let triple: Vec<String> = g[j..(j + 3).min(g.len())].iter().map(|c| c.to_string()).collect();
        return Err(Error::Validation(format!("base is not a geodesic at index {j} ({why}): {}", triple.join(", "))));
    }
    let wheels = (1..g.len() - 1).into_par_iter().map(|i| build_wheel(g, i, rule)).collect::<Result<Vec<_>>>()?;
    Ok(Hierarchy { schema: HIERARCHY_SCHEMA.into(), rule, base: g.to_vec(), wheels })
}

impl Hierarchy {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let h: Hierarchy = serde_json::from_str(s).map_err(|e| Error::Parse(format!("hierarchy JSON: {e}")))?;
        if h.schema != HIERARCHY_SCHEMA {
            return Err(Error::Validation(format!("unknown hierarchy schema {:?}", h.schema)));
        }
        Ok(h)
    }

    /// DOT drawing: base vertices as boxes (hubs), wheel vertices as circles,
    /// spokes dashed, rim edges solid, base edges bold.
    pub fn to_dot(&self) -> String {
        let mut ids: HashMap<NormalCurve, usize> = HashMap::new();
        let mut out = String::from("graph hierarchy {\n");
        let mut id_of = |c: &NormalCurve, out: &mut String, shape: &str| -> usize {
            let n = ids.len();
            // wheel endpoints are base vertices and share their node
            *ids.entry(c.clone()).or_insert_with(|| {
                let _ = writeln!(out, "  n{n} [shape={shape}, label=\"{c}\"];");
                n
            })
        };
        let base: Vec<usize> = self.base.iter().map(|c| id_of(c, &mut out, "box")).collect();
        for w in base.windows(2) {
            let _ = writeln!(out, "  n{} -- n{} [style=bold];", w[0], w[1]);
        }
        for wh in &self.wheels {
            let vs: Vec<usize> = wh.vertices.iter().map(|c| id_of(c, &mut out, "circle")).collect();
            for v in &vs {
                let _ = writeln!(out, "  n{} -- n{} [style=dashed];", base[wh.hub], v);
            }
            for w in vs.windows(2) {
                let _ = writeln!(out, "  n{} -- n{} [label=\"rim\"];", w[0], w[1]);
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Rim edges, wheel by wheel, each wheel left to right.
pub fn rim_edges(h: &Hierarchy) -> Vec<RimEdge> {
    h.wheels
        .iter()
        .enumerate()
        .flat_map(|(wi, w)| {
            w.vertices.windows(2).enumerate().map(move |(k, p)| RimEdge { wheel: wi, edge: k, hub: w.hub, minus: p[0].clone(), plus: p[1].clone() })
        })
        .collect()
}
