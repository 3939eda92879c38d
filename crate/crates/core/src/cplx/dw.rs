//! Distances between subsurface projections.

use serde::Serialize;

use super::annular::annular_distance;
use super::distance::{cc_distance, SearchBudget};
use super::project::project_subsurface;
use crate::error::{Error, Result};
use crate::farey::farey_distance;
use crate::subsurface::Subsurface;
use crate::surface::{same_surface, NormalCurve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DwReport {
    pub d: u64,
    /// Signed relative twisting; annuli only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
}

fn empty_side(a_empty: bool) -> &'static str {
    if a_empty {
        "first"
    } else {
        "second"
    }
}

/// `d_W(a, b)`: Farey distance between projection slope sets on a four-holed
/// `W`, annular distance and twist on an annulus, curve-complex distance on
/// the whole five-holed sphere (which must be certified within `budget`).
pub fn subsurface_distance(w: &Subsurface, a: &NormalCurve, b: &NormalCurve, budget: &SearchBudget) -> Result<DwReport> {
    same_surface(a, b)?;
    match w {
        Subsurface::Annulus { core } => {
            let (d, t) = annular_distance(core, a, b)?;
            Ok(DwReport { d, twist: Some(t) })
        }
        Subsurface::Whole { surface } if surface.punctures == 5 => {
            let r = cc_distance(a, b, budget)?;
            if !r.exact {
                return Err(Error::Budget(format!("distance not certified: between {} and {}", r.lo, r.hi)));
            }
            Ok(DwReport { d: r.lo.into(), twist: None })
        }
        _ => {
            let pa = project_subsurface(w, a)?;
            let pb = project_subsurface(w, b)?;
            if pa.is_empty() || pb.is_empty() {
                return Err(Error::Unavailable(format!("the {} curve has empty projection to {w}", empty_side(pa.is_empty()))));
            }
            let (sa, sb) = (pa.slope_set(), pb.slope_set());
            let d = sa.iter().flat_map(|&x| sb.iter().map(move |&y| farey_distance(x, y))).min();
            d.map(|d| DwReport { d: d as u64, twist: None }).ok_or_else(|| Error::Internal(format!("projection to {w} without slopes")))
        }
    }
}
