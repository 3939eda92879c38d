//! Geometric intersection numbers.
//!
//! Lift both curves to the universal cover, where the dual graph becomes a
//! planar trivalent tree and each curve a bi-infinite path. Two lifts cross
//! exactly when they share a segment and leave it on opposite sides from the
//! ones they entered on. Counting such pairs up to deck transformations gives
//! the geometric intersection number without ever isotoping anything.

use super::{same_surface, DualCycle, NormalCurve, Triangulation};
use crate::error::Result;

/// A crossing of two lifts: the shared segment starts at position `i` of the
/// first cycle and position `j` of the second (reversed if `reversed`), and
/// runs for `len` dual edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Crossing {
    pub i: usize,
    pub j: usize,
    pub len: usize,
    pub reversed: bool,
}

/// The cycle traversed backwards.
pub(crate) fn reverse_cycle(tri: &Triangulation, c: &DualCycle) -> DualCycle {
    let n = c.len();
    let edges: Vec<usize> = (0..n).map(|t| c.edges[n - 1 - t]).collect();
    let tris: Vec<usize> = (0..n).map(|t| c.tris[(n - t) % n]).collect();
    let points: Vec<u32> = (0..n).map(|t| c.points[n - 1 - t]).collect();
    debug_assert!(edges.iter().zip(&tris).all(|(&e, &t)| tri.triangles[t].contains(&e)));
    DualCycle { tris, edges, points }
}

fn crossings_oriented(tri: &Triangulation, a: &DualCycle, b: &DualCycle, reversed: bool, out: &mut Vec<Crossing>) {
    let (m, n) = (a.len(), b.len());
    for i in 0..m {
        let ip = (i + m - 1) % m;
        for j in 0..n {
            if a.edges[i] != b.edges[j] || a.tris[i] != b.tris[j] {
                continue;
            }
            let jp = (j + n - 1) % n;
            if a.edges[ip] == b.edges[jp] {
                continue; // not the start of the shared segment
            }
            let mut k = 1;
            while k < m + n && a.edges[(i + k) % m] == b.edges[(j + k) % n] {
                k += 1;
            }
            if k >= m + n {
                continue; // same axis
            }
            let x = tri.ccw(a.tris[i], a.edges[i], a.edges[ip], b.edges[jp]);
            let last = a.edges[(i + k - 1) % m];
            let y = tri.ccw(a.tris[(i + k) % m], last, a.edges[(i + k) % m], b.edges[(j + k) % n]);
            if x == y {
                out.push(Crossing { i, j, len: k, reversed });
            }
        }
    }
}

/// All crossing lift pairs of two closed dual cycles.
pub(crate) fn linking_pairs(tri: &Triangulation, a: &DualCycle, b: &DualCycle) -> Vec<Crossing> {
    let mut out = Vec::new();
    crossings_oriented(tri, a, b, false, &mut out);
    crossings_oriented(tri, a, &reverse_cycle(tri, b), true, &mut out);
    out
}

/// Geometric intersection number `i(a, b)`.
pub fn intersection_number(a: &NormalCurve, b: &NormalCurve) -> Result<u64> {
    same_surface(a, b)?;
    if a == b {
        return Ok(0);
    }
    let tri = a.triangulation();
    Ok(linking_pairs(tri, &a.cycle(), &b.cycle()).len() as u64)
}
