//! Essential simple closed curves on punctured spheres.
//!
//! Curves are stored as normal coordinates on the reference triangulations of
//! [`Triangulation`]. Everything in this module is exact integer arithmetic.

mod curve;
mod cut;
mod dual;
mod intersect;
mod mcg;
mod triangulation;

pub use curve::NormalCurve;
pub use cut::{cut_along, Piece};
pub use dual::DualCycle;
pub use intersect::intersection_number;
pub use mcg::{apply_mapping_class, Generator, MappingClassWord};
pub use triangulation::Triangulation;

pub(crate) use intersect::{linking_pairs, reverse_cycle};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Topological type of a surface: genus and number of punctures (boundary
/// components are treated as punctures).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 2]", into = "[u8; 2]")]
pub struct SurfaceKind {
    pub genus: u8,
    pub punctures: u8,
}

impl SurfaceKind {
    pub const S05: SurfaceKind = SurfaceKind { genus: 0, punctures: 5 };
    pub const S04: SurfaceKind = SurfaceKind { genus: 0, punctures: 4 };
    pub const S03: SurfaceKind = SurfaceKind { genus: 0, punctures: 3 };
    /// The annulus tag, used for annular subsurfaces.
    pub const ANNULUS: SurfaceKind = SurfaceKind { genus: 0, punctures: 2 };
    pub const S11: SurfaceKind = SurfaceKind { genus: 1, punctures: 1 };

    pub fn new(genus: u8, punctures: u8) -> Result<Self> {
        let kind = SurfaceKind { genus, punctures };
        match (genus, punctures) {
            (0, 2..=5) | (1, 1) => Ok(kind),
            _ => Err(Error::Validation(format!("unsupported surface S_{{{genus},{punctures}}}"))),
        }
    }

    pub fn euler_characteristic(self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    pub fn is_annulus(self) -> bool {
        self == Self::ANNULUS
    }
}

impl TryFrom<[u8; 2]> for SurfaceKind {
    type Error = Error;
    fn try_from(v: [u8; 2]) -> Result<Self> {
        SurfaceKind::new(v[0], v[1])
    }
}

impl From<SurfaceKind> for [u8; 2] {
    fn from(k: SurfaceKind) -> Self {
        [k.genus, k.punctures]
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

/// Checks that two curves live on the same surface.
pub(crate) fn same_surface(a: &NormalCurve, b: &NormalCurve) -> Result<()> {
    if a.surface() != b.surface() {
        return Err(Error::Domain(format!("curves live on different surfaces ({} and {})", a.surface(), b.surface())));
    }
    Ok(())
}

/// The boundary-of-neighbourhood curve of edge `e`, used as seed data.
pub fn edge_curve(kind: SurfaceKind, e: usize) -> Result<NormalCurve> {
    let tri = Triangulation::for_kind(kind).ok_or_else(|| Error::Domain(format!("no reference triangulation for {kind}")))?;
    if e >= tri.edge_count() {
        return Err(Error::Validation(format!("edge index {e} out of range")));
    }
    NormalCurve::new(kind, tri.edge_neighbourhood(e))
}

/// The curve enclosing the two punctures `i` and `i+1` (mod n) along the
/// real line; these are the "round" curves of the reference picture.
pub fn round_curve(kind: SurfaceKind, i: usize) -> NormalCurve {
    let n = kind.punctures as usize;
    edge_curve(kind, i % n).expect("boundary edges give essential curves")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_characteristics() {
        assert_eq!(SurfaceKind::S05.euler_characteristic(), -3);
        assert_eq!(SurfaceKind::S04.euler_characteristic(), -2);
        assert_eq!(SurfaceKind::S11.euler_characteristic(), -1);
        assert!(SurfaceKind::new(2, 0).is_err());
    }

    #[test]
    fn triangulation_counts() {
        let t = Triangulation::pentagon();
        assert_eq!((t.edge_count(), t.triangle_count()), (9, 6));
        let t = Triangulation::pillowcase();
        assert_eq!((t.edge_count(), t.triangle_count()), (6, 4));
    }
}
