use serde::{Deserialize, Serialize};

use super::{intersection_number, same_surface, NormalCurve, SurfaceKind};
use crate::error::{Error, Result};

/// A complementary component of a multicurve: its type, the curves (indices
/// into the cut set) and the punctures on its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: SurfaceKind,
    pub curves: Vec<usize>,
    pub punctures: Vec<usize>,
}

/// `true` iff curve `c` lies in the region of `d`'s complement containing
/// puncture set `side`. Disjoint curves on a sphere nest, so `c` lies there
/// exactly when one of its own sides fits inside `side`.
fn lies_in(c: &(Vec<usize>, Vec<usize>), side: &[usize]) -> bool {
    c.0.iter().all(|p| side.contains(p)) || c.1.iter().all(|p| side.contains(p))
}

/// Cuts a punctured sphere along pairwise disjoint, non-isotopic curves.
pub fn cut_along(s: SurfaceKind, m: &[NormalCurve]) -> Result<Vec<Piece>> {
    if s.genus != 0 || s.is_annulus() {
        return Err(Error::Domain(format!("cutting is implemented for punctured spheres, not {s}")));
    }
    for c in m {
        if c.surface() != s {
            return Err(Error::Domain(format!("curve on {} cannot cut {s}", c.surface())));
        }
    }
    for (i, a) in m.iter().enumerate() {
        for b in &m[i + 1..] {
            same_surface(a, b)?;
            if a == b {
                return Err(Error::Precondition("cut set contains the same curve twice".into()));
            }
            if intersection_number(a, b)? != 0 {
                return Err(Error::Precondition(format!("curves {a} and {b} intersect")));
            }
        }
    }
    let n = s.punctures as usize;
    let sides: Vec<(Vec<usize>, Vec<usize>)> = m.iter().map(|c| c.sides()).collect();
    // punctures in the same piece lie on the same side of every curve
    let signature = |p: usize| -> Vec<bool> { sides.iter().map(|sd| sd.0.contains(&p)).collect() };
    let mut groups: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for p in 0..n {
        let sig = signature(p);
        match groups.iter_mut().find(|g| g.0 == sig) {
            Some(g) => g.1.push(p),
            None => groups.push((sig, vec![p])),
        }
    }
    let mut pieces = Vec::new();
    for (_, punctures) in groups {
        let side_of = |d: usize| -> &Vec<usize> {
            if sides[d].0.contains(&punctures[0]) {
                &sides[d].0
            } else {
                &sides[d].1
            }
        };
        let curves: Vec<usize> = (0..m.len()).filter(|&c| (0..m.len()).all(|d| d == c || lies_in(&sides[c], side_of(d)))).collect();
        let kind = SurfaceKind { genus: 0, punctures: (curves.len() + punctures.len()) as u8 };
        pieces.push(Piece { kind, curves, punctures });
    }
    let chi: i64 = pieces.iter().map(|p| p.kind.euler_characteristic()).sum();
    if chi != s.euler_characteristic() || pieces.len() != m.len() + 1 {
        return Err(Error::Internal(format!("cut pieces have total Euler characteristic {chi}")));
    }
    Ok(pieces)
}
