//! Projections to four-holed subsurfaces by arc surgery.
//!
//! After normalization the boundary of `W` is the reference curve `a`, the
//! boundary of a small neighbourhood of the edge between punctures 3 and 4.
//! Pushed close to that edge, `a` meets a normal curve `b` exactly twice per
//! crossing of `b` with the edge (which is minimal), so the arcs of `b ∩ W`
//! are the stretches of `b` between consecutive crossings of the edge. Each
//! arc is closed up along one of the two halves of `a`; the half that gives
//! an essential curve is the surgery curve of the arc.

use serde::Serialize;

use super::annular::{annular_arcs, AnnularArc};
use crate::error::{Error, Result};
use crate::farey::{Slope, SlopeFrame};
use crate::subsurface::{complementary_four_holed, reference_curve, FourHoled, Subsurface};
use crate::surface::{intersection_number, same_surface, NormalCurve, SurfaceKind, Triangulation};
use std::sync::OnceLock;

// pentagon labels used by the surgery
const B45: usize = 3;
const U3: usize = 2;
const L3: usize = 5;
const AROUND4_U_TO_L: [usize; 1] = [4];
const AROUND3_U_TO_L: [usize; 3] = [6, 2, 8];

fn reversed(p: &[usize]) -> Vec<usize> {
    p.iter().rev().copied().collect()
}

pub(crate) fn standard_frame() -> &'static SlopeFrame {
    static F: OnceLock<SlopeFrame> = OnceLock::new();
    F.get_or_init(|| {
        SlopeFrame::new(complementary_four_holed(SurfaceKind::S05, &reference_curve()).expect("reference curve")).expect("standard frame")
    })
}

/// An arc of a curve inside the standard `W`, with its surgery curve.
#[derive(Debug, Clone)]
pub(crate) struct StdArc {
    pub surgery: NormalCurve,
    pub slope: Slope,
}

/// Arcs of `b` (already in the standard picture) inside the standard `W`, in
/// the order met along the traced cycle of `b`. Empty if `b` misses the edge.
pub(crate) fn standard_arcs(b: &NormalCurve) -> Result<Vec<StdArc>> {
    let tri = Triangulation::pentagon();
    let cyc = b.cycle();
    let n = cyc.len();
    let cross: Vec<usize> = (0..n).filter(|&t| cyc.edges[t] == B45).collect();
    let mut out = Vec::with_capacity(cross.len());
    for (idx, &p1) in cross.iter().enumerate() {
        let p2 = if idx + 1 < cross.len() { cross[idx + 1] } else { cross[0] + n };
        let alpha: Vec<usize> = (p1 + 1..p2).map(|t| cyc.edges[t % n]).collect();
        let start_tri = tri.across(B45, cyc.tris[p1]);
        let end_tri = cyc.tris[p2 % n];
        let (k, k2) = (cyc.points[p1], cyc.points[p2 % n]);
        let closers: Vec<Vec<usize>> = match (end_tri, start_tri) {
            (U3, L3) => vec![AROUND4_U_TO_L.to_vec(), AROUND3_U_TO_L.to_vec()],
            (L3, U3) => vec![reversed(&AROUND4_U_TO_L), reversed(&AROUND3_U_TO_L)],
            (U3, U3) => {
                let long = if k > k2 {
                    [&AROUND3_U_TO_L[..], &reversed(&AROUND4_U_TO_L)].concat()
                } else {
                    [&AROUND4_U_TO_L[..], &reversed(&AROUND3_U_TO_L)].concat()
                };
                vec![vec![], long]
            }
            (L3, L3) => {
                let long = if k > k2 {
                    [&reversed(&AROUND3_U_TO_L)[..], &AROUND4_U_TO_L[..]].concat()
                } else {
                    [&reversed(&AROUND4_U_TO_L)[..], &AROUND3_U_TO_L[..]].concat()
                };
                vec![vec![], long]
            }
            _ => return Err(Error::Internal("edge crossing outside its two triangles".into())),
        };
        let mut found = Vec::new();
        for cl in closers {
            let path = alpha.iter().chain(cl.iter()).copied();
            if let Ok(c) = NormalCurve::from_dual_path(SurfaceKind::S05, path) {
                found.push(c);
            }
        }
        if found.len() != 1 {
            return Err(Error::Internal(format!("arc surgery of {b} gave {} essential curves", found.len())));
        }
        let surgery = found.pop().expect("one curve");
        let slope = standard_frame().slope_std(&surgery)?;
        out.push(StdArc { surgery, slope });
    }
    Ok(out)
}

/// The projection of a curve to a subsurface.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProjectionResult {
    /// No essential intersection.
    Empty,
    /// Projection to the whole five-holed sphere.
    Curve { curve: NormalCurve },
    /// Slopes in the frame of a four-holed subsurface: one per arc of the
    /// curve inside it, or the curve's own slope if it lies inside.
    Slopes { slopes: Vec<Slope>, arcs: usize },
    /// Arcs in the annular cover, one per crossing with the core.
    Annular { arcs: Vec<AnnularArc> },
}

impl ProjectionResult {
    pub fn is_empty(&self) -> bool {
        match self {
            ProjectionResult::Empty => true,
            ProjectionResult::Annular { arcs } => arcs.is_empty(),
            _ => false,
        }
    }

    /// Distinct slopes of a four-holed projection (sorted).
    pub fn slope_set(&self) -> Vec<Slope> {
        match self {
            ProjectionResult::Slopes { slopes, .. } => {
                let mut v = slopes.clone();
                v.sort();
                v.dedup();
                v
            }
            _ => Vec::new(),
        }
    }
}

/// Projection to a four-holed sphere, in its slope frame.
pub(crate) fn project_four_holed(w: &FourHoled, a: &NormalCurve) -> Result<ProjectionResult> {
    match w.boundary() {
        None => {
            let f = SlopeFrame::new(w.clone())?;
            Ok(ProjectionResult::Slopes { slopes: vec![crate::farey::slope_of_curve(&f, a)?], arcs: 0 })
        }
        Some(v) => {
            same_surface(a, v)?;
            if a == v {
                return Ok(ProjectionResult::Empty);
            }
            let std = w.to_standard(a)?;
            let arcs = standard_arcs(&std)?;
            if arcs.is_empty() {
                // disjoint from the boundary: the curve lies in W
                return Ok(ProjectionResult::Slopes { slopes: vec![standard_frame().slope_std(&std)?], arcs: 0 });
            }
            Ok(ProjectionResult::Slopes { arcs: arcs.len(), slopes: arcs.into_iter().map(|x| x.slope).collect() })
        }
    }
}

/// `π_W(a)`.
pub fn project_subsurface(w: &Subsurface, a: &NormalCurve) -> Result<ProjectionResult> {
    match w {
        Subsurface::Whole { surface } => {
            if *surface != a.surface() {
                return Err(Error::Domain(format!("curve on {} projected to {surface}", a.surface())));
            }
            if *surface == SurfaceKind::S04 {
                return project_four_holed(&FourHoled::whole(*surface)?, a);
            }
            Ok(ProjectionResult::Curve { curve: a.clone() })
        }
        Subsurface::FourHoled { w } => project_four_holed(w, a),
        Subsurface::Annulus { core } => {
            same_surface(core, a)?;
            Ok(ProjectionResult::Annular { arcs: annular_arcs(core, a) })
        }
    }
}

/// Whether `a ∪ b` fills the five-holed sphere (or four-holed sphere).
///
/// If some curve `c` misses both, `c` lies in `W_a`, where the only curve
/// missing an arc of `b` is that arc's surgery curve; so the pair fails to
/// fill exactly when the first surgery curve misses `b`.
pub fn fills(a: &NormalCurve, b: &NormalCurve) -> Result<bool> {
    same_surface(a, b)?;
    if a == b || intersection_number(a, b)? == 0 {
        return Ok(false);
    }
    match a.surface() {
        // any two distinct intersecting curves fill a four-holed sphere
        SurfaceKind::S04 => Ok(true),
        SurfaceKind::S05 => Ok(non_filling_witness(a, b)?.is_none()),
        s => Err(Error::Domain(format!("fills is not implemented on {s}"))),
    }
}

/// For intersecting `a`, `b` on the five-holed sphere: a curve disjoint from
/// both, if one exists.
pub(crate) fn non_filling_witness(a: &NormalCurve, b: &NormalCurve) -> Result<Option<NormalCurve>> {
    let w = complementary_four_holed(SurfaceKind::S05, a)?;
    let bs = w.to_standard(b)?;
    let arcs = standard_arcs(&bs)?;
    let first = arcs.first().ok_or_else(|| Error::Precondition("curves do not intersect".into()))?;
    if intersection_number(&first.surgery, &bs)? == 0 {
        Ok(Some(w.from_standard(&first.surgery)?))
    } else {
        Ok(None)
    }
}
