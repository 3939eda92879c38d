//! Structural checks on a hierarchy.
//!
//! Distinctness follows the usual case split: a curve `x` showing up twice is
//! in the links of two base vertices `a`, `b`, which are then within distance
//! 2 of each other. Either `a = b` (i), `a`, `b`, `x` span a triangle (ii), or
//! `x` is the base vertex between `a` and `b` (iii).

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use super::{audit_failure, Hierarchy, HIERARCHY_SCHEMA};
use crate::error::Result;
use crate::farey::{farey_distance, slope_of_curve, SlopeFrame};
use crate::subsurface::complementary_four_holed;
use crate::surface::{intersection_number, NormalCurve, SurfaceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// (a) the base is a geodesic segment.
    BaseGeodesic,
    /// (b) one wheel per interior hub, ending at the hub's neighbours.
    WheelEndpoints,
    /// (c) each wheel is a Farey geodesic of curves disjoint from its hub.
    WheelGeodesic,
    /// (d) no curve occurs twice.
    Distinct,
}

/// Where a curve occurs: on the base, or strictly inside a wheel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Occurrence {
    Base { index: usize },
    Wheel { hub: usize, position: usize },
}

impl Occurrence {
    /// Base vertices whose links contain this occurrence.
    fn hubs(self) -> Vec<usize> {
        match self {
            Occurrence::Base { index } => [index.checked_sub(1), Some(index + 1)].into_iter().flatten().collect(),
            Occurrence::Wheel { hub, .. } => vec![hub],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DuplicateCase {
    /// (i) both occurrences hang off the same hub.
    #[serde(rename = "i")]
    SameHub,
    /// (ii) hubs are adjacent: hubs and curve span a triangle.
    #[serde(rename = "ii")]
    AdjacentHubs,
    /// (iii) hubs are two apart.
    #[serde(rename = "iii")]
    HubsTwoApart,
    /// Hubs further apart, which the triangle inequality already excludes.
    #[serde(rename = "far")]
    Far,
}

impl fmt::Display for DuplicateCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DuplicateCase::SameHub => "(i)",
            DuplicateCase::AdjacentHubs => "(ii)",
            DuplicateCase::HubsTwoApart => "(iii)",
            DuplicateCase::Far => "(far)",
        })
    }
}

fn classify(x: Occurrence, y: Occurrence) -> DuplicateCase {
    let gap = x.hubs().iter().flat_map(|a| y.hubs().into_iter().map(move |b| a.abs_diff(b))).min().unwrap_or(usize::MAX);
    match gap {
        0 => DuplicateCase::SameHub,
        1 => DuplicateCase::AdjacentHubs,
        2 => DuplicateCase::HubsTwoApart,
        _ => DuplicateCase::Far,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<DuplicateCase>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub occurrences: Vec<Occurrence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub base_geodesic: bool,
    pub wheel_endpoints: bool,
    pub wheel_geodesic: bool,
    pub distinct: bool,
    pub violations: Vec<Violation>,
}

impl HierarchyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn violation(check: Check, message: String) -> Violation {
    Violation { check, message, case: None, occurrences: Vec::new() }
}

fn check_wheel(h: &Hierarchy, wi: usize, out: &mut Vec<Violation>) -> Result<()> {
    let w = &h.wheels[wi];
    let n = h.base.len();
    if w.hub == 0 || w.hub + 1 >= n || w.hub != wi + 1 {
        out.push(violation(Check::WheelEndpoints, format!("wheel {wi} sits at hub {} (expected {})", w.hub, wi + 1)));
        return Ok(());
    }
    if w.vertices.len() < 2 || w.vertices.len() != w.slopes.len() {
        out.push(violation(Check::WheelEndpoints, format!("wheel at hub {} has malformed rim", w.hub)));
        return Ok(());
    }
    if w.vertices[0] != h.base[w.hub - 1] || w.vertices[w.vertices.len() - 1] != h.base[w.hub + 1] {
        out.push(violation(Check::WheelEndpoints, format!("wheel at hub {} does not join its hub's neighbours", w.hub)));
    }
    let hub = &h.base[w.hub];
    let frame = SlopeFrame::new(complementary_four_holed(SurfaceKind::S05, hub)?)?;
    for (k, (c, &s)) in w.vertices.iter().zip(&w.slopes).enumerate() {
        if c == hub || intersection_number(c, hub)? != 0 {
            out.push(violation(Check::WheelGeodesic, format!("wheel at hub {}: vertex {k} is not a spoke", w.hub)));
            return Ok(());
        }
        if slope_of_curve(&frame, c)? != s {
            out.push(violation(Check::WheelGeodesic, format!("wheel at hub {}: vertex {k} does not have slope {s}", w.hub)));
        }
    }
    let (first, last) = (w.slopes[0], w.slopes[w.slopes.len() - 1]);
    let adjacent = w.slopes.windows(2).all(|p| p[0].det(p[1]) == 1);
    if !adjacent || farey_distance(first, last) != w.slopes.len() - 1 {
        out.push(violation(Check::WheelGeodesic, format!("wheel at hub {} is not a Farey geodesic {first} → {last}", w.hub)));
    }
    Ok(())
}

/// Runs checks (a)–(d) and reports every violation found.
pub fn verify_hierarchy(h: &Hierarchy) -> Result<HierarchyReport> {
    let mut v = Vec::new();
    if h.schema != HIERARCHY_SCHEMA {
        v.push(violation(Check::BaseGeodesic, format!("unknown schema {:?}", h.schema)));
    }
    if h.base.len() < 2 || h.base.iter().any(|c| c.surface() != SurfaceKind::S05) {
        v.push(violation(Check::BaseGeodesic, "base must be at least 2 curves on the five-holed sphere".into()));
    } else if let Some((j, why)) = audit_failure(&h.base)? {
        v.push(violation(Check::BaseGeodesic, format!("index {j}: {why}")));
    }
    if h.wheels.len() != h.base.len().saturating_sub(2) {
        v.push(violation(Check::WheelEndpoints, format!("{} wheels for {} interior hubs", h.wheels.len(), h.base.len().saturating_sub(2))));
    }
    if v.is_empty() {
        for wi in 0..h.wheels.len() {
            check_wheel(h, wi, &mut v)?;
        }
    }

    let mut seen: BTreeMap<&NormalCurve, Vec<Occurrence>> = BTreeMap::new();
    for (index, c) in h.base.iter().enumerate() {
        seen.entry(c).or_default().push(Occurrence::Base { index });
    }
    for w in &h.wheels {
        let inner = w.vertices.len().saturating_sub(1);
        for (position, c) in w.vertices.iter().enumerate().take(inner).skip(1) {
            seen.entry(c).or_default().push(Occurrence::Wheel { hub: w.hub, position });
        }
    }
    for (c, occ) in seen {
        for pair in occ.windows(2) {
            let case = classify(pair[0], pair[1]);
            v.push(Violation {
                check: Check::Distinct,
                message: format!("{c} occurs twice, case {case}"),
                case: Some(case),
                occurrences: pair.to_vec(),
            });
        }
    }
    let has = |c: Check| v.iter().any(|x| x.check == c);
    Ok(HierarchyReport {
        base_geodesic: !has(Check::BaseGeodesic),
        wheel_endpoints: !has(Check::WheelEndpoints),
        wheel_geodesic: !has(Check::WheelGeodesic),
        distinct: !has(Check::Distinct),
        violations: v,
    })
}
