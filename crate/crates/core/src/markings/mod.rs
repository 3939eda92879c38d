//! Markings of the five-holed sphere and their elementary moves.
//!
//! A marking is a pants decomposition `{u₁, u₂}` with transversals `t₁, t₂`,
//! where `tᵢ` misses `u_j` and meets `uᵢ` twice. So `tᵢ` lives in the
//! four-holed sphere `W_{u_j}`, where it is a Farey neighbour of `uᵢ`. In those
//! slope coordinates the half-twist about `uᵢ` is the shear `t ↦ t ± uᵢ` of
//! primitive vectors, and the neighbours of `uᵢ` form one orbit of it.

mod experiment;
mod search;
mod supdw;

pub use experiment::{fit_power_law, scaling_experiment, CorpusKind, ExperimentRow, ExperimentSpec, PowerFit, ScalingReport};
pub use search::{move_distance, MoveDistance};
pub use supdw::{candidate_subsurfaces, marking_distance, sup_dw, SupDw, MOVE_LIPSCHITZ_CONSTANT};

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::farey::{curve_of_slope, slope_of_curve, Slope, SlopeFrame};
use crate::subsurface::complementary_four_holed;
use crate::surface::{intersection_number, round_curve, NormalCurve, SurfaceKind};

pub const MARKING_SCHEMA: &str = "lamina-marking/1";

/// Which pair of a marking; `0` is `(u₁, t₁)`.
pub type PairIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    pub u: [NormalCurve; 2],
    pub t: [NormalCurve; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MarkingType {
    pub intersections: [[u64; 4]; 4],
    pub overlaps: [[usize; 4]; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn sign(self) -> i64 {
        match self {
            Direction::Plus => 1,
            Direction::Minus => -1,
        }
    }

    pub fn reverse(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }
}

/// An elementary move; `pair` is 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    Twist { pair: PairIndex, direction: Direction },
    Flip { pair: PairIndex, cleanup: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Twist { pair, direction } => {
                write!(f, "t{}{}", pair + 1, if *direction == Direction::Plus { '+' } else { '-' })
            }
            Move::Flip { pair, cleanup } => write!(f, "f{}.{cleanup}", pair + 1),
        }
    }
}

impl std::str::FromStr for Move {
    type Err = Error;
    /// `t1+`, `t2-`, `f1` (cleanup 0) or `f2.1`.
    fn from_str(s: &str) -> Result<Move> {
        let bad = || Error::Parse(format!("not a move: {s:?} (expected t1+, t2-, f1, f2.1, ...)"));
        let s = s.trim();
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let pair = match chars.next() {
            Some('1') => 0,
            Some('2') => 1,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        match (kind, rest) {
            ('t', "+") => Ok(Move::Twist { pair, direction: Direction::Plus }),
            ('t', "-") => Ok(Move::Twist { pair, direction: Direction::Minus }),
            ('f', "") => Ok(Move::Flip { pair, cleanup: 0 }),
            ('f', r) => {
                let c = r.strip_prefix('.').and_then(|c| c.parse().ok()).ok_or_else(bad)?;
                Ok(Move::Flip { pair, cleanup: c })
            }
            _ => Err(bad()),
        }
    }
}

/// Parses a whitespace- or comma-separated move word.
pub fn parse_moves(s: &str) -> Result<Vec<Move>> {
    s.split(|c: char| c.is_whitespace() || c == ',').filter(|w| !w.is_empty()).map(str::parse).collect()
}

fn check_pair(i: PairIndex) -> Result<()> {
    if i > 1 {
        return Err(Error::Validation(format!("pair index {} is not 1 or 2", i + 1)));
    }
    Ok(())
}

impl Marking {
    /// Checks the marking conditions.
    pub fn new(u: [NormalCurve; 2], t: [NormalCurve; 2]) -> Result<Marking> {
        let m = Marking { u, t };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Validation(format!("not a marking: {msg}")));
        for c in self.u.iter().chain(&self.t) {
            if c.surface() != SurfaceKind::S05 {
                return bad(format!("curve {c} is not on the five-holed sphere"));
            }
        }
        let [u1, u2] = &self.u;
        if u1 == u2 || intersection_number(u1, u2)? != 0 {
            return bad(format!("{u1} and {u2} are not a pants decomposition"));
        }
        for i in 0..2 {
            let (ui, uj, ti) = (&self.u[i], &self.u[1 - i], &self.t[i]);
            let (a, b) = (intersection_number(ti, ui)?, intersection_number(ti, uj)?);
            if a != 2 || b != 0 {
                return bad(format!("t{} meets u{} {a} times and u{} {b} times (want 2 and 0)", i + 1, i + 1, 2 - i));
            }
        }
        Ok(())
    }

    /// `u₁, u₂` the curves around punctures {0,1} and {3,4}; `t₁, t₂` around
    /// {1,2} and {2,3}.
    pub fn base() -> Marking {
        let r = |i| round_curve(SurfaceKind::S05, i);
        Marking { u: [r(0), r(3)], t: [r(1), r(2)] }
    }

    pub fn curves(&self) -> [&NormalCurve; 4] {
        [&self.u[0], &self.u[1], &self.t[0], &self.t[1]]
    }

    /// Total intersection complexity: the sum of normal lengths.
    pub fn complexity(&self) -> u64 {
        self.curves().iter().map(|c| c.length()).sum()
    }

    /// The marking as an unordered set of pairs.
    pub fn key(&self) -> [(NormalCurve, NormalCurve); 2] {
        let mut k = [(self.u[0].clone(), self.t[0].clone()), (self.u[1].clone(), self.t[1].clone())];
        k.sort();
        k
    }

    /// Intersection numbers among `u₁, u₂, t₁, t₂`, in that order. Invariant
    /// under the mapping class group.
    pub fn shape(&self) -> Result<[[u64; 4]; 4]> {
        let c = self.curves();
        let mut m = [[0; 4]; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                m[i][j] = intersection_number(c[i], c[j])?;
                m[j][i] = m[i][j];
            }
        }
        Ok(m)
    }

    /// A mapping-class invariant: [`Marking::shape`] together with how many
    /// punctures the curves' two-puncture sides share, pairwise.
    pub fn normal_form(&self) -> Result<MarkingType> {
        let sides: Vec<Vec<usize>> = self.curves().iter().map(|c| c.enclosed()).collect();
        let mut overlaps = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                overlaps[i][j] = sides[i].iter().filter(|p| sides[j].contains(p)).count();
            }
        }
        Ok(MarkingType { intersections: self.shape()?, overlaps })
    }

    pub fn apply(&self, mv: Move) -> Result<Marking> {
        match mv {
            Move::Twist { pair, direction } => twist_move(self, pair, direction),
            Move::Flip { pair, cleanup } => flip_move(self, pair, cleanup),
        }
    }

    pub fn apply_all(&self, moves: &[Move]) -> Result<Marking> {
        moves.iter().try_fold(self.clone(), |m, &mv| m.apply(mv))
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u1={}, u2={}; t1={}, t2={})", self.u[0], self.u[1], self.t[0], self.t[1])
    }
}

/// Slope frame of `W_{u_j}`, where the `i`-th pair lives.
fn pair_frame(m: &Marking, i: PairIndex) -> Result<SlopeFrame> {
    SlopeFrame::new(complementary_four_holed(SurfaceKind::S05, &m.u[1 - i])?)
}

/// Representative vectors `(u, t)` of two Farey neighbours with `det(u, t) = 1`.
fn oriented(u: Slope, t: Slope) -> Result<((i64, i64), (i64, i64))> {
    let (a, b) = (u.p(), u.q());
    let (p, q) = (t.p(), t.q());
    match a * q - b * p {
        1 => Ok(((a, b), (p, q))),
        -1 => Ok(((a, b), (-p, -q))),
        d => Err(Error::Internal(format!("slopes {u} and {t} are not Farey neighbours (det {d})"))),
    }
}

/// `n(k) = t + k·u`: the neighbours of `u` in order.
fn neighbour(u: (i64, i64), t: (i64, i64), k: i64) -> Result<Slope> {
    Slope::new(t.0 + k * u.0, t.1 + k * u.1)
}

/// One half-twist of `tᵢ` about `uᵢ`.
pub fn twist_move(m: &Marking, i: PairIndex, direction: Direction) -> Result<Marking> {
    check_pair(i)?;
    m.validate()?;
    let f = pair_frame(m, i)?;
    let (u, t) = oriented(slope_of_curve(&f, &m.u[i])?, slope_of_curve(&f, &m.t[i])?)?;
    let mut out = m.clone();
    out.t[i] = curve_of_slope(&f, neighbour(u, t, direction.sign())?)?;
    Ok(out)
}

/// Replacements for `t_j` after `uᵢ` and `tᵢ` trade places: the Farey
/// neighbours of `u_j` in `W_{tᵢ}` meeting the old `t_j` least, ordered by
/// their normal coordinates.
pub fn flip_cleanups(m: &Marking, i: PairIndex) -> Result<Vec<NormalCurve>> {
    check_pair(i)?;
    m.validate()?;
    let j = 1 - i;
    let f = SlopeFrame::new(complementary_four_holed(SurfaceKind::S05, &m.t[i])?)?;
    let su = slope_of_curve(&f, &m.u[j])?;
    // any neighbour of u_j will do as the origin of the orbit
    let (g, x, y) = crate::farey::ext_gcd(su.p(), su.q());
    debug_assert_eq!(g, 1);
    let (u, t) = oriented(su, Slope::new(-y, x)?)?;
    let old = &m.t[j];
    let meet = |k: i64| -> Result<(u64, NormalCurve)> {
        let c = curve_of_slope(&f, neighbour(u, t, k)?)?;
        Ok((intersection_number(&c, old)?, c))
    };
    // n(k ± 2) = T^{±1} n(k) for the Dehn twist T about u_j, and
    // i(T^m c, z) ≥ |m|·i(c, u)·i(u, z) − i(c, z) with i(c, u) = i(u, z) = 2
    let (a0, b0) = (meet(0)?.0, meet(1)?.0);
    let best0 = a0.min(b0);
    let reach = ((a0.max(b0) + best0) / 4 + 1) as i64;
    let mut found: Vec<(u64, NormalCurve)> = Vec::new();
    for k in -2 * reach - 1..=2 * reach + 1 {
        found.push(meet(k)?);
    }
    let least = found.iter().map(|x| x.0).min().expect("nonempty scan");
    let mut out: Vec<NormalCurve> = found.into_iter().filter(|x| x.0 == least).map(|x| x.1).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Exchanges `uᵢ` and `tᵢ`, replacing `t_j` by the `cleanup`-th choice of
/// [`flip_cleanups`].
pub fn flip_move(m: &Marking, i: PairIndex, cleanup: usize) -> Result<Marking> {
    let choices = flip_cleanups(m, i)?;
    let Some(tj) = choices.get(cleanup) else {
        return Err(Error::Enumeration(format!(
            "cleanup index {cleanup} out of range: {} choice(s), valid indices 0..={}",
            choices.len(),
            choices.len() - 1
        )));
    };
    let mut out = m.clone();
    out.u[i] = m.t[i].clone();
    out.t[i] = m.u[i].clone();
    out.t[1 - i] = tj.clone();
    Ok(out)
}

/// Every marking one move away, with the move.
pub fn neighbours(m: &Marking) -> Result<Vec<(Move, Marking)>> {
    let mut out = Vec::new();
    for pair in 0..2 {
        for direction in [Direction::Plus, Direction::Minus] {
            let mv = Move::Twist { pair, direction };
            out.push((mv, m.apply(mv)?));
        }
        let n = flip_cleanups(m, pair)?.len();
        for cleanup in 0..n {
            let mv = Move::Flip { pair, cleanup };
            out.push((mv, m.apply(mv)?));
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkingFile {
    schema: String,
    curves: Vec<RoleCurve>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoleCurve {
    role: String,
    curve: NormalCurve,
}

impl Serialize for Marking {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let roles = ["u1", "u2", "t1", "t2"];
        let curves = roles.iter().zip(self.curves()).map(|(r, c)| RoleCurve { role: r.to_string(), curve: c.clone() }).collect();
        MarkingFile { schema: MARKING_SCHEMA.into(), curves }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Marking {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let f = MarkingFile::deserialize(d)?;
        if f.schema != MARKING_SCHEMA {
            return Err(D::Error::custom(format!("unknown marking schema {:?}", f.schema)));
        }
        let mut slots: [Option<NormalCurve>; 4] = Default::default();
        for rc in f.curves {
            let k =
                ["u1", "u2", "t1", "t2"].iter().position(|r| *r == rc.role).ok_or_else(|| D::Error::custom(format!("unknown role {:?}", rc.role)))?;
            if slots[k].replace(rc.curve).is_some() {
                return Err(D::Error::custom(format!("role {:?} given twice", rc.role)));
            }
        }
        let [Some(u1), Some(u2), Some(t1), Some(t2)] = slots else {
            return Err(D::Error::custom("a marking needs the roles u1, u2, t1, t2"));
        };
        Marking::new([u1, u2], [t1, t2]).map_err(D::Error::custom)
    }
}

impl Marking {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Marking> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("marking JSON: {e}")))
    }
}
