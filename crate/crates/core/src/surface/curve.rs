use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::dual::{cycle_to_coords, reduce_cyclic_path, trace_components, DualCycle};
use super::{apply_mapping_class, edge_curve, round_curve, MappingClassWord, SurfaceKind, Triangulation};
use crate::error::{Error, Result};

/// An essential simple closed curve, stored by its normal coordinates (the
/// number of times it crosses each edge of the reference triangulation).
///
/// Construction validates: right length, even and triangle-inequality
/// compatible in every triangle, connected, and not peripheral.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCurve", into = "RawCurve")]
pub struct NormalCurve {
    surface: SurfaceKind,
    coords: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    surface: SurfaceKind,
    coords: Vec<u32>,
}

impl TryFrom<RawCurve> for NormalCurve {
    type Error = Error;
    fn try_from(r: RawCurve) -> Result<Self> {
        NormalCurve::new(r.surface, r.coords)
    }
}

impl From<NormalCurve> for RawCurve {
    fn from(c: NormalCurve) -> Self {
        RawCurve { surface: c.surface, coords: c.coords }
    }
}

/// Largest accepted coordinate; keeps tracing within memory.
pub const MAX_COORD: u32 = 1 << 20;

impl NormalCurve {
    pub fn new(surface: SurfaceKind, coords: Vec<u32>) -> Result<Self> {
        let tri = Triangulation::for_kind(surface).ok_or_else(|| Error::Domain(format!("no reference triangulation for {surface}")))?;
        check_normal(tri, &coords)?;
        let comps = trace_components(tri, &coords);
        if comps.len() != 1 {
            return Err(Error::Validation(format!("coordinates describe a {}-component multicurve", comps.len())));
        }
        for p in 0..tri.punctures() {
            if tri.peripheral(p) == coords {
                return Err(Error::Validation(format!("curve is peripheral around puncture {p}")));
            }
        }
        Ok(NormalCurve { surface, coords })
    }

    /// Builds a curve from a closed dual path; the path need not be reduced.
    /// Fails if the reduced path is trivial, peripheral, or not simple.
    pub(crate) fn from_dual_path(surface: SurfaceKind, path: impl IntoIterator<Item = usize>) -> Result<Self> {
        let tri = Triangulation::for_kind(surface).expect("checked surface");
        let p = reduce_cyclic_path(path);
        if p.is_empty() {
            return Err(Error::Internal("curve became null-homotopic".into()));
        }
        let c = NormalCurve::new(surface, cycle_to_coords(tri.edge_count(), &p))?;
        if c.length() != p.len() as u64 {
            return Err(Error::Internal("reduced dual path is not a simple curve".into()));
        }
        Ok(c)
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Total number of edge crossings.
    pub fn length(&self) -> u64 {
        self.coords.iter().map(|&x| x as u64).sum()
    }

    pub(crate) fn triangulation(&self) -> &'static Triangulation {
        Triangulation::for_kind(self.surface).expect("validated surface")
    }

    /// The curve as a closed dual path.
    pub fn cycle(&self) -> DualCycle {
        trace_components(self.triangulation(), &self.coords).pop().expect("one component")
    }

    /// Punctures on each side of the curve, the side with fewer punctures
    /// first (ties: the side without puncture 0 first).
    pub fn sides(&self) -> (Vec<usize>, Vec<usize>) {
        let tri = self.triangulation();
        let n = tri.punctures();
        // crossing an edge an odd number of times changes side
        let mut side: Vec<Option<bool>> = vec![None; n];
        side[0] = Some(false);
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &[a, b]) in tri.edge_ends.iter().enumerate() {
                let odd = self.coords[e] % 2 == 1;
                match (side[a], side[b]) {
                    (Some(s), None) => {
                        side[b] = Some(s ^ odd);
                        changed = true;
                    }
                    (None, Some(s)) => {
                        side[a] = Some(s ^ odd);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let (ins, outs): (Vec<usize>, Vec<usize>) = (0..n).partition(|&p| side[p] == Some(true));
        if ins.len() <= outs.len() {
            (ins, outs)
        } else {
            (outs, ins)
        }
    }

    /// Punctures enclosed on the small side; on the five-punctured sphere
    /// this is the pair of punctures cut off by the curve.
    pub fn enclosed(&self) -> Vec<usize> {
        self.sides().0
    }
}

fn check_normal(tri: &Triangulation, w: &[u32]) -> Result<()> {
    if w.len() != tri.edge_count() {
        return Err(Error::Validation(format!("expected {} coordinates for {}, got {}", tri.edge_count(), tri.kind(), w.len())));
    }
    if let Some(&x) = w.iter().find(|&&x| x > MAX_COORD) {
        return Err(Error::Validation(format!("coordinate {x} exceeds limit {MAX_COORD}")));
    }
    if w.iter().all(|&x| x == 0) {
        return Err(Error::Validation("zero coordinate vector".into()));
    }
    for (t, &[a, b, c]) in tri.triangles.iter().enumerate() {
        let (x, y, z) = (w[a], w[b], w[c]);
        if (x + y + z) % 2 != 0 {
            return Err(Error::Validation(format!("odd weight sum in triangle {t}")));
        }
        if x > y + z || y > x + z || z > x + y {
            return Err(Error::Validation(format!("triangle inequality fails in triangle {t}")));
        }
    }
    Ok(())
}

impl fmt::Display for NormalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Text forms: coordinates `0,1,0,...` (with or without parentheses; nine
/// numbers for the five-holed sphere, six for the four-holed one),
/// `round:i`, `edge:e`, and `WORD@CURVE` for the image under a mapping class.
impl FromStr for NormalCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((w, c)) = t.split_once('@') {
            let word: MappingClassWord = w.parse()?;
            return apply_mapping_class(&word, &c.parse()?);
        }
        let index = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index in curve {s:?}")));
        if let Some(i) = t.strip_prefix("round:") {
            let i = index(i)?;
            if i >= 5 {
                return Err(Error::Validation(format!("round curve index {i} is not in 0..5")));
            }
            return Ok(round_curve(SurfaceKind::S05, i));
        }
        if let Some(e) = t.strip_prefix("edge:") {
            return edge_curve(SurfaceKind::S05, index(e)?);
        }
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let coords = inner
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<u32>, _>>()
            .map_err(|_| Error::Parse(format!("not a curve: {s:?} (expected coordinates, round:i, edge:e or WORD@CURVE)")))?;
        let kind = match coords.len() {
            9 => SurfaceKind::S05,
            6 => SurfaceKind::S04,
            n => return Err(Error::Validation(format!("{n} coordinates match no reference triangulation (9 or 6)"))),
        };
        NormalCurve::new(kind, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_curves_are_valid_and_enclose_their_endpoints() {
        let tri = Triangulation::pentagon();
        for e in 0..9 {
            let c = NormalCurve::new(SurfaceKind::S05, tri.edge_neighbourhood(e)).unwrap();
            let mut ends = tri.edge_ends[e].to_vec();
            ends.sort();
            assert_eq!(c.enclosed(), ends, "edge {}", tri.edge_name(e));
            assert_eq!(c.cycle().len() as u64, c.length());
        }
    }

    #[test]
    fn rejects_bad_vectors() {
        let tri = Triangulation::pentagon();
        assert!(NormalCurve::new(SurfaceKind::S05, vec![0; 9]).is_err());
        assert!(NormalCurve::new(SurfaceKind::S05, vec![1; 8]).is_err());
        assert!(NormalCurve::new(SurfaceKind::S05, tri.peripheral(2)).is_err());
        let two: Vec<u32> = tri.edge_neighbourhood(0).iter().map(|x| 2 * x).collect();
        assert!(NormalCurve::new(SurfaceKind::S05, two).is_err());
        let mut odd = tri.edge_neighbourhood(0);
        odd[0] = 1;
        assert!(NormalCurve::new(SurfaceKind::S05, odd).is_err());
    }

    #[test]
    fn text_forms() {
        let r0 = round_curve(SurfaceKind::S05, 0);
        assert_eq!("round:0".parse::<NormalCurve>().unwrap(), r0);
        assert_eq!(r0.to_string().parse::<NormalCurve>().unwrap(), r0);
        assert_eq!("edge:0".parse::<NormalCurve>().unwrap(), r0);
        let img: NormalCurve = "s2s2@round:0".parse().unwrap();
        assert_eq!(img, apply_mapping_class(&"s2s2".parse().unwrap(), &r0).unwrap());
        assert_eq!("0,1,0,1,1,1".parse::<NormalCurve>().unwrap().surface(), SurfaceKind::S04);
        for bad in ["", "round:5", "1,2", "(1,1,1,1,1,1,1,1,1", "x@round:0", "edge:9"] {
            assert!(bad.parse::<NormalCurve>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = NormalCurve::new(SurfaceKind::S04, vec![0, 1, 0, 1, 1, 1]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"surface":[0,4],"coords":[0,1,0,1,1,1]}"#);
        assert_eq!(serde_json::from_str::<NormalCurve>(&s).unwrap(), c);
        assert!(serde_json::from_str::<NormalCurve>(r#"{"surface":[0,4],"coords":[1,1,1,1,1,1]}"#).is_err());
    }
}
