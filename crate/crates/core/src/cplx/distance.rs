//! Distances and geodesics in the curve complex of the five-holed sphere.
//!
//! Distances 0, 1, 2 and the lower bound 3 are decided exactly (equality,
//! disjointness, filling). Beyond that a layered breadth-first search runs
//! from `a`: the neighbours of a vertex `x` are the curves of the four-holed
//! sphere `W_x`, enumerated by slope among those meeting `a ∪ b` at most
//! `cap` times. For a curve of slope `s`, `i(c_s, z) = 2 Σ Δ(s, r)` summed
//! over the surgery slopes `r` of the arcs of `z` in `W_x`, so the
//! enumeration never builds a curve it will discard.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet};

use super::project::{standard_arcs, standard_frame};
use crate::error::{Error, Result};
use crate::farey::{curve_of_slope, ext_gcd, gcd, Slope};
use crate::subsurface::complementary_four_holed;
use crate::surface::{intersection_number, same_surface, NormalCurve, SurfaceKind};

/// Limits for the bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Cap on `i(c, a) + i(c, b)` for intermediate curves; `None` grows it with
    /// the target distance `h` as `max(i(a, b), 8) · 2^((h+2)/2) / 4`, which
    /// never drops below `i(a, b)` (the value at `b` itself).
    pub intersection_cap: Option<u64>,
    /// Cap on the number of visited curves per search.
    pub node_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { intersection_cap: None, node_cap: 4000 }
    }
}

impl SearchBudget {
    pub fn cap_for(&self, i_ab: u64, h: u32) -> u64 {
        self.intersection_cap.unwrap_or_else(|| (i_ab.max(8) as f64 * 2f64.powf((h as f64 + 2.0) / 2.0) / 4.0).ceil() as u64)
    }
}

/// How a distance was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Equality, disjointness and filling; no search involved.
    Structural,
    /// Exhaustive bounded search under the recorded intersection cap.
    Search,
    /// Budget exhausted; only bounds are known.
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub lo: u32,
    pub hi: u32,
    pub exact: bool,
    pub certificate: Certificate,
    /// A path realising `hi`, when one was found.
    pub path: Option<Vec<NormalCurve>>,
    pub nodes: usize,
    pub intersection_cap: u64,
}

/// Local data at a vertex `x`: the weighted slopes of `a` and `b` in `W_x`,
/// and the slopes of `b` alone.
struct Local {
    weights: Vec<(Slope, u64)>,
    b_slopes: Vec<Slope>,
    w: crate::subsurface::FourHoled,
}

fn weights_of(z_std: &NormalCurve, acc: &mut HashMap<Slope, u64>) -> Result<Vec<Slope>> {
    let arcs = standard_arcs(z_std)?;
    let slopes: Vec<Slope> = if arcs.is_empty() { vec![standard_frame().slope_std(z_std)?] } else { arcs.into_iter().map(|a| a.slope).collect() };
    for &s in &slopes {
        *acc.entry(s).or_default() += 1;
    }
    Ok(slopes)
}

fn local(x: &NormalCurve, a: &NormalCurve, b: &NormalCurve) -> Result<Local> {
    let w = complementary_four_holed(SurfaceKind::S05, x)?;
    let mut acc = HashMap::new();
    if a != x {
        weights_of(&w.to_standard(a)?, &mut acc)?;
    }
    let b_slopes = if b != x { weights_of(&w.to_standard(b)?, &mut acc)? } else { Vec::new() };
    let mut weights: Vec<(Slope, u64)> = acc.into_iter().collect();
    weights.sort();
    Ok(Local { weights, b_slopes, w })
}

/// `Σ 2·w·Δ(s, r)`.
pub(crate) fn weighted_intersection(weights: &[(Slope, u64)], s: Slope) -> u64 {
    weights.iter().map(|&(r, w)| 2 * w * s.det(r) as u64).sum()
}

/// Twists scanned on each side when both projections are a single slope.
const FAMILY_WINDOW: i64 = 3;

/// Slopes with `weighted_intersection ≤ cap`, sorted. When all weight sits on
/// one slope the set is infinite; then only a window of twists is scanned.
pub(crate) fn slopes_under_cap(weights: &[(Slope, u64)], cap: u64) -> Vec<Slope> {
    let Some(&(r1, w1)) = weights.first() else { return Vec::new() };
    // Möbius map sending r1 to ∞; it preserves Δ
    let (_, a, b) = ext_gcd(r1.p(), r1.q());
    let m = [[a, b], [-r1.q(), r1.p()]];
    let minv = [[r1.p(), -b], [r1.q(), a]];
    let b1 = (cap / (2 * w1)) as i64;
    let mut out = Vec::new();
    let mut push = |p: i64, q: i64| {
        if gcd(p, q) == 1 {
            let s = Slope::new(p, q).expect("nonzero").mobius(minv);
            if weighted_intersection(weights, s) <= cap {
                out.push(s);
            }
        }
    };
    push(1, 0);
    match weights.get(1) {
        Some(&(r2, w2)) => {
            let x = r2.mobius(m);
            let (xp, xq) = (x.p(), x.q());
            let b2 = (cap / (2 * w2)) as i64;
            for q in 1..=b1 {
                let (lo, hi) = (q * xp - b2, q * xp + b2);
                for p in lo.div_euclid(xq) + i64::from(lo.rem_euclid(xq) != 0)..=hi.div_euclid(xq) {
                    push(p, q);
                }
            }
        }
        None => {
            for q in 1..=b1 {
                for p in -FAMILY_WINDOW * q..=FAMILY_WINDOW * q {
                    push(p, q);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The logarithmic upper bound `d(a, b) ≤ 2·log₂ i(a, b) + 2`.
fn log_bound(i: u64) -> u32 {
    (2.0 * (i.max(1) as f64).log2()).floor() as u32 + 2
}

/// Decides distances up to 2 exactly; `None` means at least 3.
pub fn small_distance(a: &NormalCurve, b: &NormalCurve) -> Result<Option<(u32, Vec<NormalCurve>)>> {
    same_surface(a, b)?;
    if a == b {
        return Ok(Some((0, vec![a.clone()])));
    }
    if intersection_number(a, b)? == 0 {
        return Ok(Some((1, vec![a.clone(), b.clone()])));
    }
    if a.surface() == SurfaceKind::S04 {
        return Err(Error::Domain("curves on the four-holed sphere are never disjoint; use the Farey graph".into()));
    }
    Ok(super::project::non_filling_witness(a, b)?.map(|c| (2, vec![a.clone(), c, b.clone()])))
}

/// Distance between two curves, exact when the bounded search certifies it.
pub fn cc_distance(a: &NormalCurve, b: &NormalCurve, budget: &SearchBudget) -> Result<DistanceReport> {
    if let Some((d, path)) = small_distance(a, b)? {
        return Ok(DistanceReport {
            lo: d,
            hi: d,
            exact: true,
            certificate: Certificate::Structural,
            path: Some(path),
            nodes: 1,
            intersection_cap: 0,
        });
    }
    if a.surface() != SurfaceKind::S05 {
        return Err(Error::Domain(format!("curve complex distance is not implemented on {}", a.surface())));
    }
    let i_ab = intersection_number(a, b)?;
    let h_max = log_bound(i_ab).max(3);
    let mut last = None;
    for h in 3..=h_max {
        let cap = budget.cap_for(i_ab, h);
        let r = layered_search(a, b, h, cap, budget.node_cap)?;
        let done = r.exact || r.certificate == Certificate::Bounds;
        last = Some(r);
        if done {
            break;
        }
    }
    let mut r = last.expect("h_max ≥ 3");
    if r.path.is_none() {
        // the logarithmic bound always holds; a search lower bound above it
        // only shows the cap was too small to be trusted
        r.hi = h_max;
        if r.lo > h_max {
            r.lo = 3;
        }
        r.certificate = Certificate::Bounds;
        r.exact = false;
    }
    Ok(r)
}

struct Node {
    curve: NormalCurve,
    parent: Option<usize>,
    /// False when the pruning lemma already rules out `d(curve, b) ≤ 2`.
    candidate: bool,
}

fn path_to(nodes: &[Node], x: usize) -> Vec<NormalCurve> {
    let mut path = Vec::new();
    let mut cur = Some(x);
    while let Some(c) = cur {
        path.push(nodes[c].curve.clone());
        cur = nodes[c].parent;
    }
    path.reverse();
    path
}

fn near_slope(s: Slope, targets: &[Slope]) -> bool {
    targets.iter().any(|&r| s.det(r) <= 1)
}

/// One round of the search for target distance `h` under a fixed cap: full
/// layers from `a` to depth `h − 3`, then a last step into the neighbours of
/// `b`.
///
/// Pruning: if `d(y, b) ≥ 3` and `c` lies in `W_y`, then `d(c, b) ≤ 2` forces
/// the slope of `c` to be equal or adjacent to a slope of `π_y(b)`. (A curve
/// `e` missing `c` and `b` either lies in `W_y`, where it is the surgery curve
/// of every arc of `b`, or crosses `y`, and then `c` is the surgery curve of
/// every arc of `e`; disjoint arcs have equal or adjacent surgery slopes.)
fn layered_search(a: &NormalCurve, b: &NormalCurve, h: u32, cap: u64, node_cap: usize) -> Result<DistanceReport> {
    let report = |lo: u32, hi: u32, path: Option<Vec<NormalCurve>>, nodes: usize, cert| DistanceReport {
        lo,
        hi,
        exact: lo == hi,
        certificate: if lo == hi && lo == 3 { Certificate::Structural } else { cert },
        path,
        nodes,
        intersection_cap: cap,
    };
    let mut nodes = vec![Node { curve: a.clone(), parent: None, candidate: false }];
    let mut seen: HashSet<NormalCurve> = HashSet::from([a.clone()]);
    let mut layer = vec![0usize];
    let last = h - 3;
    for k in 0..=last {
        // distances k + 1 and k + 2 through this layer
        let near: Vec<Option<(u32, Vec<NormalCurve>)>> =
            layer.par_iter().map(|&x| if nodes[x].candidate { small_distance(&nodes[x].curve, b) } else { Ok(None) }).collect::<Result<_>>()?;
        if let Some((idx, (d, p))) = near.into_iter().enumerate().filter_map(|(i, r)| r.map(|r| (i, r))).min_by_key(|(_, (d, _))| *d) {
            let mut path = path_to(&nodes, layer[idx]);
            path.extend(p.into_iter().skip(1));
            return Ok(report(k + d, k + d, Some(path), nodes.len(), Certificate::Search));
        }
        if k == last {
            break;
        }
        let locals: Vec<Local> = layer.par_iter().map(|&x| local(&nodes[x].curve, a, b)).collect::<Result<_>>()?;
        let children: Vec<Vec<(NormalCurve, bool)>> = locals
            .par_iter()
            .map(|l| {
                slopes_under_cap(&l.weights, cap)
                    .into_iter()
                    .map(|s| Ok((l.w.from_standard(&curve_of_slope(standard_frame(), s)?)?, near_slope(s, &l.b_slopes))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (idx, ch) in children.into_iter().enumerate() {
            for (c, candidate) in ch {
                if !seen.insert(c.clone()) {
                    continue;
                }
                if nodes.len() >= node_cap {
                    return Ok(report(k + 3, u32::MAX, None, nodes.len(), Certificate::Bounds));
                }
                nodes.push(Node { curve: c, parent: Some(layer[idx]), candidate });
                next.push(nodes.len() - 1);
            }
        }
        layer = next;
    }
    // distance h: last layer to a neighbour of b within 2 of it
    let wb = complementary_four_holed(SurfaceKind::S05, b)?;
    let mut acc = HashMap::new();
    weights_of(&wb.to_standard(a)?, &mut acc)?;
    let mut wa: Vec<(Slope, u64)> = acc.into_iter().collect();
    wa.sort();
    let around_b = slopes_under_cap(&wa, cap);
    let found: Vec<Option<Vec<NormalCurve>>> = layer
        .par_iter()
        .map(|&x| {
            let xs = wb.to_standard(&nodes[x].curve)?;
            let proj: Vec<Slope> = standard_arcs(&xs)?.into_iter().map(|r| r.slope).collect();
            for &s in around_b.iter().filter(|&&s| near_slope(s, &proj)) {
                let y = wb.from_standard(&curve_of_slope(standard_frame(), s)?)?;
                if let Some((_, p)) = small_distance(&nodes[x].curve, &y)? {
                    return Ok(Some(p));
                }
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    if let Some((idx, p)) = found.into_iter().enumerate().find_map(|(i, r)| r.map(|p| (i, p))) {
        let mut path = path_to(&nodes, layer[idx]);
        path.extend(p.into_iter().skip(1));
        path.push(b.clone());
        let d = (path.len() - 1) as u32;
        return Ok(report(d, d, Some(path), nodes.len(), Certificate::Search));
    }
    Ok(report(h + 1, u32::MAX, None, nodes.len(), Certificate::Search))
}

/// A geodesic from `a` to `b`, if the search certifies one within budget.
pub fn cc_geodesic(a: &NormalCurve, b: &NormalCurve, budget: &SearchBudget) -> Result<Vec<NormalCurve>> {
    let r = cc_distance(a, b, budget)?;
    match r.path {
        Some(p) if r.exact => Ok(p),
        _ => Err(Error::Unavailable(format!(
            "no certified geodesic within budget (distance in [{}, {}], {} curves visited, cap {})",
            r.lo, r.hi, r.nodes, r.intersection_cap
        ))),
    }
}

/// Outcome of the local geodesic checks on a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicAudit {
    pub length: usize,
    /// Consecutive curves are distinct and disjoint.
    pub adjacent: bool,
    /// Curves two apart intersect.
    pub two_apart_intersect: bool,
    /// Curves three apart fill.
    pub three_apart_fill: bool,
}

impl GeodesicAudit {
    /// Every subpath of length at most 3 is a geodesic.
    pub fn locally_geodesic(&self) -> bool {
        self.adjacent && self.two_apart_intersect && self.three_apart_fill
    }
}

/// Checks that every subpath of length at most 3 is geodesic; this is exact.
pub fn audit_geodesic(path: &[NormalCurve]) -> Result<GeodesicAudit> {
    let n = path.len();
    let mut au = GeodesicAudit { length: n.saturating_sub(1), adjacent: true, two_apart_intersect: true, three_apart_fill: true };
    for j in 0..n {
        if j + 1 < n {
            au.adjacent &= path[j] != path[j + 1] && intersection_number(&path[j], &path[j + 1])? == 0;
        }
        if j + 2 < n {
            au.two_apart_intersect &= intersection_number(&path[j], &path[j + 2])? > 0;
        }
        if j + 3 < n {
            au.three_apart_fill &= super::project::fills(&path[j], &path[j + 3])?;
        }
    }
    Ok(au)
}

/// Thinness of a geodesic triangle in the curve complex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleAudit {
    pub sides: [Vec<NormalCurve>; 3],
    /// Largest distance from a vertex of one side to the union of the others.
    pub delta: u32,
}

/// Builds certified geodesic sides between three curves and measures how thin
/// the triangle is; every distance involved must be certified within budget.
pub fn thin_triangle_audit(x: &NormalCurve, y: &NormalCurve, z: &NormalCurve, budget: &SearchBudget) -> Result<TriangleAudit> {
    let sides = [cc_geodesic(x, y, budget)?, cc_geodesic(y, z, budget)?, cc_geodesic(z, x, budget)?];
    let dist = |u: &NormalCurve, v: &NormalCurve| -> Result<u32> {
        let r = cc_distance(u, v, budget)?;
        if !r.exact {
            return Err(Error::Unavailable(format!("distance between triangle points not certified ({}..{})", r.lo, r.hi)));
        }
        Ok(r.lo)
    };
    let mut delta = 0;
    for s in 0..3 {
        for p in &sides[s] {
            let mut best = u32::MAX;
            for o in (0..3).filter(|&o| o != s) {
                for q in &sides[o] {
                    best = best.min(dist(p, q)?);
                    if best == 0 {
                        break;
                    }
                }
            }
            delta = delta.max(best);
        }
    }
    Ok(TriangleAudit { sides, delta })
}

/// Thinness over every triangle with vertices in `ball`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallAudit {
    pub delta: u32,
    pub audited: usize,
    /// Triangles left out because a distance was not certified, with the reason.
    pub skipped: Vec<([usize; 3], String)>,
}

/// Audits all triangles spanned by `ball`; triangles needing an uncertified
/// distance are skipped and reported.
pub fn thin_triangle_ball(ball: &[NormalCurve], budget: &SearchBudget) -> Result<BallAudit> {
    let mut out = BallAudit { delta: 0, audited: 0, skipped: Vec::new() };
    let n = ball.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                match thin_triangle_audit(&ball[i], &ball[j], &ball[k], budget) {
                    Ok(t) => {
                        out.delta = out.delta.max(t.delta);
                        out.audited += 1;
                    }
                    Err(e @ (Error::Unavailable(_) | Error::Budget(_))) => out.skipped.push(([i, j, k], e.to_string())),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}
