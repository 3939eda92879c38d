//! Curves as closed paths in the dual graph of the triangulation.
//!
//! The dual graph of an ideal triangulation is a spine of the surface, so a
//! free homotopy class of closed curves is the same thing as a cyclically
//! reduced closed dual path, and the normal coordinates of a simple curve are
//! the edge counts of that path.

use super::triangulation::{Letter, Triangulation};

/// A closed dual path `tris[0] --edges[0]--> tris[1] --edges[1]--> ...`,
/// together with the point index of each crossing along its edge (counted
/// from the edge's start puncture).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCycle {
    pub tris: Vec<usize>,
    pub edges: Vec<usize>,
    pub points: Vec<u32>,
}

impl DualCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Number of normal arcs of triangle `t` cutting off the corner between
/// sides `x` and `y` (the third side is `z`).
#[inline]
fn corner(w: &[u32], x: usize, y: usize, z: usize) -> u32 {
    (w[x] + w[y] - w[z]) / 2
}

/// Splits a normal multicurve into its connected components.
pub(crate) fn trace_components(tri: &Triangulation, w: &[u32]) -> Vec<DualCycle> {
    let mut seen: Vec<Vec<bool>> = w.iter().map(|&n| vec![false; n as usize]).collect();
    let mut out = Vec::new();
    for e0 in 0..w.len() {
        for k0 in 0..w[e0] {
            if seen[e0][k0 as usize] {
                continue;
            }
            let mut cyc = DualCycle { tris: Vec::new(), edges: Vec::new(), points: Vec::new() };
            let (mut e, mut k, mut t) = (e0, k0, tri.edge_tris[e0][1]);
            loop {
                let (e2, k2) = step(tri, w, t, e, k);
                cyc.tris.push(t);
                cyc.edges.push(e2);
                cyc.points.push(k2);
                seen[e2][k2 as usize] = true;
                t = tri.across(e2, t);
                e = e2;
                k = k2;
                if e == e0 && k == k0 && t == tri.edge_tris[e0][1] {
                    break;
                }
            }
            out.push(cyc);
        }
    }
    out
}

/// Inside triangle `t`, follows the normal arc starting at point `k` of side `e`.
fn step(tri: &Triangulation, w: &[u32], t: usize, e: usize, k: u32) -> (usize, u32) {
    let sides = tri.triangles[t];
    let i = sides.iter().position(|&s| s == e).expect("edge is a side");
    let (f, g) = (sides[(i + 1) % 3], sides[(i + 2) % 3]);
    let [start, _] = tri.edge_ends[e];
    // the other side through the start vertex of e, and the one through its end
    let (via_start, via_end) = if tri.edge_ends[f].contains(&start) { (f, g) } else { (g, f) };
    let n_start = corner(w, e, via_start, via_end);
    let (v, side, j) = if k < n_start { (start, via_start, k) } else { (tri.edge_ends[e][1], via_end, w[e] - 1 - k) };
    let idx = if tri.edge_ends[side][0] == v { j } else { w[side] - 1 - j };
    (side, idx)
}

/// Edge counts of a dual path.
pub(crate) fn cycle_to_coords(n_edges: usize, edges: &[usize]) -> Vec<u32> {
    let mut w = vec![0u32; n_edges];
    for &e in edges {
        w[e] += 1;
    }
    w
}

/// Free reduction of a dual edge path; consecutive equal edges backtrack.
pub(crate) fn reduce_path(edges: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for e in edges {
        if out.last() == Some(&e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

/// Free and then cyclic reduction of a closed dual path.
pub(crate) fn reduce_cyclic_path(edges: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let p = reduce_path(edges);
    let (mut lo, mut hi) = (0, p.len());
    while hi - lo >= 2 && p[lo] == p[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    p[lo..hi].to_vec()
}

/// Free reduction of a word in the puncture loops.
pub(crate) fn reduce_word(word: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Reads a closed dual path (given by its triangles and edges) as a word in
/// the puncture loops, up to conjugacy.
pub(crate) fn cycle_to_x_word(tri: &Triangulation, tris: &[usize], edges: &[usize]) -> Vec<Letter> {
    let mut word = Vec::new();
    for (&t, &e) in tris.iter().zip(edges) {
        if let Some((from, expr)) = &tri.generators[e] {
            if t == *from {
                word.extend_from_slice(expr);
            } else {
                word.extend(expr.iter().rev().map(|l| -l));
            }
        }
    }
    reduce_word(word)
}

/// Realises a word in the puncture loops as a dual path based at the base triangle.
pub(crate) fn x_word_to_path(tri: &Triangulation, word: &[Letter]) -> Vec<usize> {
    let mut path = Vec::new();
    for &l in word {
        let lp = &tri.puncture_loops[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            path.extend_from_slice(lp);
        } else {
            path.extend(lp.iter().rev());
        }
    }
    path
}
