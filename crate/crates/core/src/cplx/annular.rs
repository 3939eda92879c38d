//! Projections to annuli and relative twisting.
//!
//! The annular cover of a curve `v` is the quotient of the universal cover by
//! the deck transformation translating the axis of one lift `ṽ`. A lift of `a`
//! crossing `ṽ` gives an arc of the annular cover; the crossings of `ṽ` with
//! lifts of `a`, modulo that translation, are exactly the linking pairs of
//! `v` and `a`. Two arcs meet once for every translate of one that crosses
//! the other, and all such crossings carry the same sign.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::surface::{linking_pairs, reverse_cycle, DualCycle, NormalCurve};

/// An arc of a curve in the annular cover of a core curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnularArc {
    /// Where the shared stretch with the core's axis starts, as a position
    /// along the core's cycle.
    pub axis_pos: usize,
    /// Length of the shared stretch.
    pub len: usize,
    /// Whether the arc enters the axis from the left when both run the same way.
    pub enters_left: bool,
    #[serde(skip)]
    period: usize,
    #[serde(skip)]
    path: DualCycle,
    #[serde(skip)]
    offset: usize,
}

/// The arcs of `a` in the annular cover of `core` (empty if they are disjoint
/// or equal).
pub fn annular_arcs(core: &NormalCurve, a: &NormalCurve) -> Vec<AnnularArc> {
    if core == a {
        return Vec::new();
    }
    let tri = core.triangulation();
    let v = core.cycle();
    let ac = a.cycle();
    let ar = reverse_cycle(tri, &ac);
    let n = v.len();
    let mut out: Vec<AnnularArc> = linking_pairs(tri, &v, &ac)
        .into_iter()
        .map(|c| {
            let path = if c.reversed { ar.clone() } else { ac.clone() };
            let m = path.len();
            let t = v.tris[c.i];
            let v_in = v.edges[(c.i + n - 1) % n];
            let a_in = path.edges[(c.j + m - 1) % m];
            AnnularArc { axis_pos: c.i, len: c.len, enters_left: tri.ccw(t, v_in, a_in, v.edges[c.i]), period: n, path, offset: c.j }
        })
        .collect();
    out.sort_by_key(|x| (x.axis_pos, x.len, x.enters_left, x.offset));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ArcRelation {
    Same,
    Disjoint,
    /// Signed count of crossings in the annular cover.
    Cross(i64),
}

enum LiftRelation {
    Same,
    Disjoint,
    Cross(i64),
}

fn at(c: &DualCycle, t: i64) -> usize {
    c.edges[t.rem_euclid(c.len() as i64) as usize]
}

fn tri_at(c: &DualCycle, t: i64) -> usize {
    c.tris[t.rem_euclid(c.len() as i64) as usize]
}

/// Relation of two lifts passing through a common vertex of the tree: `p` at
/// position `ip`, `q` at position `iq`.
fn lift_relation(tri: &crate::surface::Triangulation, p: &DualCycle, ip: i64, q: &DualCycle, iq: i64) -> LiftRelation {
    let (m, n) = (p.len() as i64, q.len() as i64);
    debug_assert_eq!(tri_at(p, ip), tri_at(q, iq));
    let qr;
    // a shared edge at the vertex, and whether q runs through it backwards
    let (qe, ap, aq, flip) = if at(p, ip) == at(q, iq) {
        (q, ip, iq, false)
    } else if at(p, ip - 1) == at(q, iq - 1) {
        (q, ip - 1, iq - 1, false)
    } else {
        qr = reverse_cycle(tri, q);
        // edge index e of q is edge index n − 1 − e of the reversal
        if at(p, ip) == at(q, iq - 1) {
            (&qr, ip, n - iq, true)
        } else if at(p, ip - 1) == at(q, iq) {
            (&qr, ip - 1, n - 1 - iq, true)
        } else {
            return LiftRelation::Disjoint;
        }
    };
    let mut lo = 0;
    while lo < m + n && at(p, ap - lo - 1) == at(qe, aq - lo - 1) {
        lo += 1;
    }
    let mut hi = 1;
    while lo + hi < m + n && at(p, ap + hi) == at(qe, aq + hi) {
        hi += 1;
    }
    if lo + hi >= m + n {
        return LiftRelation::Same;
    }
    let (i, j, k) = (ap - lo, aq - lo, lo + hi);
    let x = tri.ccw(tri_at(p, i), at(p, i), at(p, i - 1), at(qe, j - 1));
    let y = tri.ccw(tri_at(p, i + k), at(p, i + k - 1), at(p, i + k), at(qe, j + k));
    if x != y {
        return LiftRelation::Disjoint;
    }
    let s = if x { 1 } else { -1 };
    LiftRelation::Cross(if flip { -s } else { s })
}

/// Relation of two arcs in the same annular cover.
pub(crate) fn arc_relation(core: &NormalCurve, x: &AnnularArc, y: &AnnularArc) -> ArcRelation {
    let tri = core.triangulation();
    let period = x.period as i64;
    let (xa, la) = (x.axis_pos as i64, x.len as i64);
    let (yb, lb) = (y.axis_pos as i64, y.len as i64);
    let k_lo = (xa - lb - yb).div_euclid(period) + i64::from((xa - lb - yb).rem_euclid(period) != 0);
    let k_hi = (xa + la - yb).div_euclid(period);
    let mut total = 0;
    for k in k_lo..=k_hi {
        let ys = yb + k * period;
        let z = xa.max(ys);
        if z > (xa + la).min(ys + lb) {
            continue;
        }
        let ip = x.offset as i64 + (z - xa);
        let iq = y.offset as i64 + (z - ys);
        match lift_relation(tri, &x.path, ip, &y.path, iq) {
            LiftRelation::Same => return ArcRelation::Same,
            LiftRelation::Disjoint => {}
            LiftRelation::Cross(s) => total += s,
        }
    }
    let ex = if x.enters_left { 1 } else { -1 };
    let ey = if y.enters_left { 1 } else { -1 };
    if total == 0 {
        ArcRelation::Disjoint
    } else {
        ArcRelation::Cross(-ex * ey * total)
    }
}

/// Distance and signed twist between the projections of `a` and `b` to the
/// annulus with core `core`: the minimum over pairs of arcs, where equal arcs
/// are at distance 0, disjoint ones at 1, and arcs meeting `t` times at `1 + t`.
pub fn annular_distance(core: &NormalCurve, a: &NormalCurve, b: &NormalCurve) -> Result<(u64, i64)> {
    let xa = annular_arcs(core, a);
    let xb = annular_arcs(core, b);
    if xa.is_empty() || xb.is_empty() {
        let side = if xa.is_empty() { "first" } else { "second" };
        return Err(Error::Unavailable(format!("the {side} curve does not cross the core {core}")));
    }
    let mut best: Option<(u64, i64)> = None;
    for x in &xa {
        for y in &xb {
            let cand = match arc_relation(core, x, y) {
                ArcRelation::Same => (0, 0),
                ArcRelation::Disjoint => (1, 0),
                ArcRelation::Cross(t) => (1 + t.unsigned_abs(), t),
            };
            if best.is_none_or(|b| cand.0 < b.0) {
                best = Some(cand);
            }
        }
    }
    Ok(best.expect("nonempty"))
}
