//! Farey geodesics through ladders.
//!
//! Every Farey edge separates the graph, so any geodesic from `u` to `v`
//! stays among the vertices of the triangles crossed by the hyperbolic
//! geodesic from `u` to `v` (the ladder). After an integral Möbius move
//! sending `v` to `∞`, the ladder is read off the Stern–Brocot descent
//! towards the image of `u`; a breadth-first search inside it then picks the
//! geodesic requested by the selection rule.

use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use super::{ext_gcd, Slope};
use crate::error::{Error, Result};

/// Which geodesic to return when there are several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionRule {
    /// Intermediate slopes lexicographically smallest by value (`∞` largest).
    #[default]
    Lexicographic,
    /// Lexicographically largest.
    ReverseLexicographic,
}

impl FromStr for SelectionRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" | "lexicographic" => Ok(SelectionRule::Lexicographic),
            "revlex" | "reverse_lexicographic" => Ok(SelectionRule::ReverseLexicographic),
            _ => Err(Error::Parse(format!("unknown selection rule {s:?} (expected lex or revlex)"))),
        }
    }
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionRule::Lexicographic => "lex",
            SelectionRule::ReverseLexicographic => "revlex",
        })
    }
}

/// Integral Möbius map sending `v` to `∞`, and its inverse.
fn to_infinity(v: Slope) -> ([[i64; 2]; 2], [[i64; 2]; 2]) {
    let (p, q) = (v.p(), v.q());
    let (_, a, b) = ext_gcd(p, q);
    ([[a, b], [-q, p]], [[p, -b], [q, a]])
}

/// Vertices of the ladder between `u` and `v` (both included).
pub fn ladder(u: Slope, v: Slope) -> Vec<Slope> {
    let (m, minv) = to_infinity(v);
    let x = u.mobius(m);
    let mut out = vec![Slope::INFINITY];
    if x.is_infinite() {
        return vec![u];
    }
    let n = x.p().div_euclid(x.q());
    if n * x.q() == x.p() {
        out.push(x);
    } else {
        let (mut l, mut r) = ((n, 1i64), (n + 1, 1i64));
        out.push(Slope::integer(l.0));
        out.push(Slope::integer(r.0));
        loop {
            let med = (l.0 + r.0, l.1 + r.1);
            let ms = Slope::new(med.0, med.1).expect("mediant");
            out.push(ms);
            if ms == x {
                break;
            }
            if ms < x {
                l = med;
            } else {
                r = med;
            }
        }
    }
    out.into_iter().map(|s| s.mobius(minv)).collect()
}

fn bfs(adj: &[Vec<usize>], src: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; adj.len()];
    d[src] = 0;
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if d[y] == usize::MAX {
                d[y] = d[x] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

fn ladder_graph(u: Slope, v: Slope) -> (Vec<Slope>, Vec<Vec<usize>>) {
    let verts = ladder(u, v);
    let mut adj = vec![Vec::new(); verts.len()];
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i].det(verts[j]) == 1 {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    (verts, adj)
}

/// Graph distance in the Farey graph.
pub fn farey_distance(u: Slope, v: Slope) -> usize {
    if u == v {
        return 0;
    }
    let (verts, adj) = ladder_graph(u, v);
    let iu = verts.iter().position(|&s| s == u).expect("u in ladder");
    let iv = verts.iter().position(|&s| s == v).expect("v in ladder");
    bfs(&adj, iv)[iu]
}

/// A Farey geodesic from `u` to `v` under the default selection rule.
pub fn farey_geodesic(u: Slope, v: Slope) -> Vec<Slope> {
    farey_geodesic_with(u, v, SelectionRule::default())
}

pub fn farey_geodesic_with(u: Slope, v: Slope, rule: SelectionRule) -> Vec<Slope> {
    if u == v {
        return vec![u];
    }
    let (verts, adj) = ladder_graph(u, v);
    let iu = verts.iter().position(|&s| s == u).expect("u in ladder");
    let iv = verts.iter().position(|&s| s == v).expect("v in ladder");
    let dv = bfs(&adj, iv);
    let mut path = vec![u];
    let mut cur = iu;
    while cur != iv {
        let cands = adj[cur].iter().copied().filter(|&w| dv[w] + 1 == dv[cur]);
        let next = match rule {
            SelectionRule::Lexicographic => cands.min_by_key(|&w| verts[w]),
            SelectionRule::ReverseLexicographic => cands.max_by_key(|&w| verts[w]),
        }
        .expect("BFS layers are connected");
        path.push(verts[next]);
        cur = next;
    }
    path
}
