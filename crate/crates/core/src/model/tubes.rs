//! Tubes: the solid tori `C_v × (s, t)` left between blocks.
//!
//! Around a rim vertex `x` the tube is walled by the top trench of the block
//! ending at `x` and the bottom trench of the block starting there. Around a
//! hub `v_i` it is walled in addition by the vertical faces `∂W × [−1, 1]` of
//! every block of the wheel at `v_i`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use super::ModelComplex;
use crate::cplx::annular_distance;
use crate::error::{Error, Result};
use crate::surface::NormalCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum VertexRole {
    Base { index: usize },
    Rim { wheel: usize, position: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceKind {
    TopTrench,
    BottomTrench,
    Vertical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub block: usize,
    pub kind: FaceKind,
    pub level: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tube {
    pub vertex: NormalCurve,
    pub role: VertexRole,
    /// Lowest and highest level of the walls.
    pub levels: (i64, i64),
    /// Walls from bottom to top.
    pub faces: Vec<Face>,
    /// `tw + i·h`; the meridian length is its modulus.
    pub omega: Complex64,
    /// Cut by the end of the window: a wall is missing.
    pub truncated: bool,
    /// Whether the real part comes from relative twisting (false: height only).
    pub twist_available: bool,
}

impl Tube {
    pub fn meridian_length(&self) -> f64 {
        self.omega.norm()
    }
}

fn tube_for(m: &ModelComplex, x: &NormalCurve, role: VertexRole) -> Result<Tube> {
    let level = |b: usize| m.levels[b];
    let end = m.blocks.iter().position(|b| &b.plus == x);
    let start = m.blocks.iter().position(|b| &b.minus == x);
    let mut faces = Vec::new();
    if let Some(b) = end {
        faces.push(Face { block: b, kind: FaceKind::TopTrench, level: level(b) });
    }
    if let VertexRole::Base { index } = role {
        let mut wall: Vec<usize> = (0..m.blocks.len()).filter(|&b| m.blocks[b].hub == index).collect();
        wall.sort_by_key(|&b| level(b));
        faces.extend(wall.into_iter().map(|b| Face { block: b, kind: FaceKind::Vertical, level: level(b) }));
    }
    if let Some(b) = start {
        faces.push(Face { block: b, kind: FaceKind::BottomTrench, level: level(b) });
    }
    if faces.is_empty() {
        return Err(Error::Internal(format!("no block meets the tube around {x}")));
    }
    let twist = match (end, start) {
        (Some(e), Some(s)) => match annular_distance(x, &m.blocks[e].minus, &m.blocks[s].plus) {
            Ok((_, tw)) => Some(tw),
            Err(Error::Unavailable(_)) => None,
            Err(e) => return Err(e),
        },
        _ => None,
    };
    let h = faces.len() as f64 * m.constants.annulus_height;
    let lo = faces.iter().map(|f| f.level).min().unwrap_or(0);
    let hi = faces.iter().map(|f| f.level).max().unwrap_or(0);
    Ok(Tube {
        vertex: x.clone(),
        role,
        levels: (lo, hi),
        faces,
        omega: Complex64::new(twist.unwrap_or(0) as f64, h),
        truncated: end.is_none() || start.is_none(),
        twist_available: twist.is_some(),
    })
}

/// One tube per hierarchy vertex off the outer ends of the base: hubs first,
/// then interior rim vertices wheel by wheel.
pub fn tubes_of(m: &ModelComplex) -> Result<Vec<Tube>> {
    if m.levels.len() != m.blocks.len() {
        return Err(Error::Precondition("model has no level assignment".into()));
    }
    let h = &m.hierarchy;
    let mut out = Vec::new();
    for index in 1..h.base.len().saturating_sub(1) {
        out.push(tube_for(m, &h.base[index], VertexRole::Base { index })?);
    }
    for (wheel, w) in h.wheels.iter().enumerate() {
        for position in 1..w.vertices.len().saturating_sub(1) {
            out.push(tube_for(m, &w.vertices[position], VertexRole::Rim { wheel, position })?);
        }
    }
    Ok(out)
}

/// Whether the walls of `t` close up around its core: consecutive walls must
/// be joined by distinct glued three-holed spheres bounded by the core, and
/// for an untruncated tube the last wall joins the first again.
pub(crate) fn tube_closes(m: &ModelComplex, t: &Tube) -> bool {
    let n = t.faces.len();
    let steps = if t.truncated { n.saturating_sub(1) } else { n };
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    for s in 0..steps {
        let (p, q) = (t.faces[s].block, t.faces[(s + 1) % n].block);
        let found = m.gluings.iter().enumerate().find_map(|(gi, g)| {
            if !((g.lower == p && g.upper == q) || (g.lower == q && g.upper == p)) {
                return None;
            }
            g.pieces.iter().enumerate().find_map(|(k, &(a, _))| {
                let bounded = m.blocks.get(g.lower).and_then(|b| b.pieces.get(a)).is_some_and(|p| p.pants.curves.contains(&t.vertex));
                (bounded && !used.contains(&(gi, k))).then_some((gi, k))
            })
        });
        match found {
            Some(key) => {
                used.insert(key);
            }
            None => return false,
        }
    }
    true
}
