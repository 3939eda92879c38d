//! Essential subsurfaces: the four-holed complement `W_v` of a curve on the
//! five-holed sphere, the whole four-holed sphere, and annuli.
//!
//! Every `W_v` is handled by moving `v` to a fixed reference curve (the curve
//! around punctures 3 and 4) with an explicit mapping class, so all
//! subsurface computations reduce to one standard picture.

use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::surface::{apply_mapping_class, cut_along, round_curve, Generator, MappingClassWord, NormalCurve, SurfaceKind};

/// The reference curve `v` is normalized to.
pub fn reference_curve() -> NormalCurve {
    round_curve(SurfaceKind::S05, 3)
}

const TABLE_DEPTH: usize = 6;
const TABLE_MAX_LENGTH: u64 = 14;
const FALLBACK_NODES: usize = 200_000;

fn generators(n: usize) -> Vec<Generator> {
    (1..n as u8).flat_map(|k| [Generator::new(k, false), Generator::new(k, true)]).collect()
}

/// Short curves, each with a word carrying the reference curve onto it.
fn short_table() -> &'static HashMap<NormalCurve, MappingClassWord> {
    static TABLE: OnceLock<HashMap<NormalCurve, MappingClassWord>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gens = generators(5);
        let start = reference_curve();
        let mut table = HashMap::new();
        table.insert(start.clone(), MappingClassWord::identity());
        let mut queue = VecDeque::from([(start, MappingClassWord::identity())]);
        while let Some((c, w)) = queue.pop_front() {
            if w.len() >= TABLE_DEPTH {
                continue;
            }
            for &g in &gens {
                let d = apply_mapping_class(&MappingClassWord(vec![g]), &c).expect("generator applies");
                if d.length() > TABLE_MAX_LENGTH || table.contains_key(&d) {
                    continue;
                }
                let mut v = vec![g];
                v.extend_from_slice(&w.0);
                let dw = MappingClassWord(v);
                table.insert(d.clone(), dw.clone());
                queue.push_back((d, dw));
            }
        }
        table
    })
}

/// A word `u` with `u·v` equal to the reference curve.
pub fn normalizer(v: &NormalCurve) -> Result<MappingClassWord> {
    if v.surface() != SurfaceKind::S05 {
        return Err(Error::Domain(format!("normalization is defined on S_{{0,5}}, not {}", v.surface())));
    }
    let gens = generators(5);
    let table = short_table();
    // greedy descent in total weight
    let mut c = v.clone();
    let mut down: Vec<Generator> = Vec::new();
    loop {
        if let Some(w) = table.get(&c) {
            return Ok(finish(w, &down));
        }
        let best = gens
            .iter()
            .map(|&g| (apply_mapping_class(&MappingClassWord(vec![g]), &c).expect("generator applies"), g))
            .min_by_key(|(d, _)| d.length())
            .expect("generators exist");
        if best.0.length() >= c.length() {
            break;
        }
        down.insert(0, best.1);
        c = best.0;
    }
    // stuck in a local minimum: best-first search on total weight
    let mut seen: HashMap<NormalCurve, Vec<Generator>> = HashMap::from([(c.clone(), Vec::new())]);
    let mut heap = BinaryHeap::from([Reverse((c.length(), 0usize, c))]);
    let mut tick = 0usize;
    while let Some(Reverse((_, _, x))) = heap.pop() {
        if let Some(w) = table.get(&x) {
            let mut all = seen[&x].clone();
            all.extend_from_slice(&down);
            return Ok(finish(w, &all));
        }
        if seen.len() > FALLBACK_NODES {
            break;
        }
        let path = seen[&x].clone();
        for &g in &gens {
            let y = apply_mapping_class(&MappingClassWord(vec![g]), &x)?;
            if !seen.contains_key(&y) {
                let mut p = vec![g];
                p.extend_from_slice(&path);
                seen.insert(y.clone(), p);
                tick += 1;
                heap.push(Reverse((y.length(), tick, y)));
            }
        }
    }
    Err(Error::Internal(format!("could not normalize curve {v}")))
}

/// `table_word⁻¹ · down`, where `down·v` is the tabulated curve.
fn finish(table_word: &MappingClassWord, down: &[Generator]) -> MappingClassWord {
    table_word.inverse().then_after(&MappingClassWord(down.to_vec()))
}

/// The four-holed sphere `W_v`: either the complement of a curve `v` on the
/// five-holed sphere, or a whole four-holed sphere.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFourHoled", into = "RawFourHoled")]
pub struct FourHoled {
    surface: SurfaceKind,
    boundary: Option<NormalCurve>,
    normalizer: MappingClassWord,
    punctures: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawFourHoled {
    surface: SurfaceKind,
    boundary: Option<NormalCurve>,
}

impl TryFrom<RawFourHoled> for FourHoled {
    type Error = Error;
    fn try_from(r: RawFourHoled) -> Result<Self> {
        match r.boundary {
            Some(v) => complementary_four_holed(r.surface, &v),
            None => FourHoled::whole(r.surface),
        }
    }
}

impl From<FourHoled> for RawFourHoled {
    fn from(w: FourHoled) -> Self {
        RawFourHoled { surface: w.surface, boundary: w.boundary }
    }
}

/// The four-holed component of the complement of `v` on the five-holed sphere.
pub fn complementary_four_holed(s: SurfaceKind, v: &NormalCurve) -> Result<FourHoled> {
    if s != SurfaceKind::S05 || v.surface() != s {
        return Err(Error::Domain(format!("W_v is defined for curves on S_{{0,5}}, got {}", v.surface())));
    }
    let normalizer = normalizer(v)?;
    let punctures = v.sides().1;
    Ok(FourHoled { surface: s, boundary: Some(v.clone()), normalizer, punctures })
}

impl FourHoled {
    /// A four-holed sphere viewed as its own subsurface.
    pub fn whole(s: SurfaceKind) -> Result<Self> {
        if s != SurfaceKind::S04 {
            return Err(Error::Domain(format!("{s} is not a four-holed sphere")));
        }
        Ok(FourHoled { surface: s, boundary: None, normalizer: MappingClassWord::identity(), punctures: vec![0, 1, 2, 3] })
    }

    pub fn surface(&self) -> SurfaceKind {
        self.surface
    }

    pub fn boundary(&self) -> Option<&NormalCurve> {
        self.boundary.as_ref()
    }

    /// Punctures of the ambient surface lying in `W`.
    pub fn punctures(&self) -> &[usize] {
        &self.punctures
    }

    /// Word `u` moving `W` onto the standard subsurface.
    pub fn normalizer(&self) -> &MappingClassWord {
        &self.normalizer
    }

    /// Moves a curve into the standard picture.
    pub(crate) fn to_standard(&self, c: &NormalCurve) -> Result<NormalCurve> {
        apply_mapping_class(&self.normalizer, c)
    }

    pub(crate) fn from_standard(&self, c: &NormalCurve) -> Result<NormalCurve> {
        apply_mapping_class(&self.normalizer.inverse(), c)
    }

    /// Whether `c` is an essential curve of `W` (up to isotopy).
    pub fn contains(&self, c: &NormalCurve) -> Result<bool> {
        if c.surface() != self.surface {
            return Err(Error::Domain(format!("curve on {} tested against a subsurface of {}", c.surface(), self.surface)));
        }
        Ok(match &self.boundary {
            None => true,
            Some(v) => c != v && crate::surface::intersection_number(c, v)? == 0,
        })
    }

    /// Consistency with cutting: `W` is one of the pieces of `S − v`.
    pub fn piece_kind(&self) -> SurfaceKind {
        match &self.boundary {
            None => self.surface,
            Some(v) => {
                let pieces = cut_along(self.surface, std::slice::from_ref(v)).expect("single curve cuts");
                pieces.into_iter().find(|p| p.kind == SurfaceKind::S04).expect("four-holed piece").kind
            }
        }
    }
}

impl fmt::Display for FourHoled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.boundary {
            Some(v) => write!(f, "W{v}"),
            None => write!(f, "{}", self.surface),
        }
    }
}

/// An essential subsurface that supports a projection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Subsurface {
    /// The whole surface.
    Whole { surface: SurfaceKind },
    /// The four-holed complement of a curve.
    FourHoled { w: FourHoled },
    /// A regular neighbourhood of a curve.
    Annulus { core: NormalCurve },
}

impl fmt::Display for Subsurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subsurface::Whole { surface } => write!(f, "{surface}"),
            Subsurface::FourHoled { w } => write!(f, "{w}"),
            Subsurface::Annulus { core } => write!(f, "A{core}"),
        }
    }
}
