//! Fixed reference ideal triangulations.
//!
//! Punctures are numbered `0..n` and placed, in order, on the extended real
//! line of the Riemann sphere. The upper and lower half-planes are ideal
//! polygons; each is fanned from puncture 0. For the five-punctured sphere this
//! is the doubled pentagon (9 edges, 6 triangles), for the four-punctured
//! sphere the pillowcase (6 edges, 4 triangles). These labels are a convention
//! of this crate; every coordinate vector is relative to them.
//!
//! Besides the combinatorics, each triangulation carries the data needed to
//! move between normal curves and the fundamental group: a base triangle, a
//! spanning tree of the dual graph, the dual loops `x_k` encircling each
//! puncture counterclockwise (with `x_{n-1} ... x_1 x_0 = 1`), and the
//! expression of each non-tree dual edge loop as a word in the `x_k`.

use std::sync::OnceLock;

use super::SurfaceKind;

/// A letter of a free-group word: `+(k+1)` is `x_k`, `-(k+1)` its inverse.
pub type Letter = i8;

#[derive(Debug)]
pub struct Triangulation {
    pub(crate) kind: SurfaceKind,
    pub(crate) edge_names: Vec<&'static str>,
    /// Start and end puncture of each edge.
    pub(crate) edge_ends: Vec<[usize; 2]>,
    /// Sides of each triangle in counterclockwise order.
    pub(crate) triangles: Vec<[usize; 3]>,
    pub(crate) edge_tris: Vec<[usize; 2]>,
    pub(crate) base: usize,
    /// Dual loop around each puncture, as an edge sequence from `base`.
    pub(crate) puncture_loops: Vec<Vec<usize>>,
    /// For every dual edge: `None` if in the spanning tree, otherwise the
    /// triangle from which crossing counts as the positive generator, and the
    /// generator's expression in the puncture loops.
    pub(crate) generators: Vec<Option<(usize, Vec<Letter>)>>,
}

impl Triangulation {
    pub fn for_kind(kind: SurfaceKind) -> Option<&'static Triangulation> {
        if kind == SurfaceKind::S05 {
            Some(Self::pentagon())
        } else if kind == SurfaceKind::S04 {
            Some(Self::pillowcase())
        } else {
            None
        }
    }

    /// Doubled pentagon triangulation of the five-punctured sphere.
    pub fn pentagon() -> &'static Triangulation {
        static CELL: OnceLock<Triangulation> = OnceLock::new();
        CELL.get_or_init(|| {
            // edges: 0 b12, 1 b23, 2 b34, 3 b45, 4 b51, 5 u13, 6 u14, 7 l13, 8 l14
            // triangles: 0 U1, 1 U2, 2 U3, 3 L1, 4 L2, 5 L3
            let t = Triangulation::build(
                SurfaceKind::S05,
                vec!["b12", "b23", "b34", "b45", "b51", "u13", "u14", "l13", "l14"],
                vec![[0, 1], [1, 2], [2, 3], [3, 4], [4, 0], [0, 2], [0, 3], [0, 2], [0, 3]],
                vec![[0, 1, 5], [5, 2, 6], [6, 3, 4], [1, 0, 7], [2, 7, 8], [3, 8, 4]],
                5,
                vec![vec![8, 7, 0, 5, 6, 4], vec![8, 7, 1, 0, 7, 8], vec![8, 2, 5, 1, 7, 8], vec![3, 6, 2, 8], vec![4, 3]],
                vec![(0, 3, vec![-2, -3, -4]), (1, 3, vec![-3, -4]), (2, 4, vec![-4]), (4, 5, vec![5])],
            );
            t.check();
            t
        })
    }

    /// Pillowcase triangulation of the four-punctured sphere.
    pub fn pillowcase() -> &'static Triangulation {
        static CELL: OnceLock<Triangulation> = OnceLock::new();
        CELL.get_or_init(|| {
            // edges: 0 b12, 1 b23, 2 b34, 3 b41, 4 u13, 5 l13
            // triangles: 0 U1, 1 U2, 2 L1, 3 L2
            let t = Triangulation::build(
                SurfaceKind::S04,
                vec!["b12", "b23", "b34", "b41", "u13", "l13"],
                vec![[0, 1], [1, 2], [2, 3], [3, 0], [0, 2], [0, 2]],
                vec![[0, 1, 4], [4, 2, 3], [1, 0, 5], [2, 5, 3]],
                3,
                vec![vec![5, 0, 4, 3], vec![5, 1, 0, 5], vec![2, 4, 1, 5], vec![3, 2]],
                vec![(0, 2, vec![-2, -3, -4]), (1, 2, vec![-3, -4]), (2, 3, vec![-4])],
            );
            t.check();
            t
        })
    }

    fn build(
        kind: SurfaceKind,
        edge_names: Vec<&'static str>,
        edge_ends: Vec<[usize; 2]>,
        triangles: Vec<[usize; 3]>,
        base: usize,
        puncture_loops: Vec<Vec<usize>>,
        gens: Vec<(usize, usize, Vec<Letter>)>,
    ) -> Triangulation {
        let mut edge_tris = vec![[usize::MAX; 2]; edge_ends.len()];
        for (t, sides) in triangles.iter().enumerate() {
            for &e in sides {
                if edge_tris[e][0] == usize::MAX {
                    edge_tris[e][0] = t;
                } else {
                    edge_tris[e][1] = t;
                }
            }
        }
        let mut generators = vec![None; edge_ends.len()];
        for (e, from, word) in gens {
            generators[e] = Some((from, word));
        }
        Triangulation { kind, edge_names, edge_ends, triangles, edge_tris, base, puncture_loops, generators }
    }

    /// Structural self-check, run once at construction.
    fn check(&self) {
        let chi = self.kind.euler_characteristic();
        assert_eq!(self.edge_count() as i64, -3 * chi);
        assert_eq!(self.triangles.len() as i64, -2 * chi);
        for (e, tris) in self.edge_tris.iter().enumerate() {
            assert!(tris[1] != usize::MAX, "edge {e} not on two triangle sides");
        }
        for lp in &self.puncture_loops {
            let end = self.walk(self.base, lp).expect("puncture loop is a dual path");
            assert_eq!(end, self.base);
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_name(&self, e: usize) -> &'static str {
        self.edge_names[e]
    }

    pub fn punctures(&self) -> usize {
        self.kind.punctures as usize
    }

    /// Triangle across edge `e` from triangle `t`.
    #[inline]
    pub(crate) fn across(&self, e: usize, t: usize) -> usize {
        let [a, b] = self.edge_tris[e];
        if a == t {
            b
        } else {
            debug_assert_eq!(b, t);
            a
        }
    }

    /// Follows a dual path; `None` if some edge is not a side of the current triangle.
    pub(crate) fn walk(&self, start: usize, edges: &[usize]) -> Option<usize> {
        let mut t = start;
        for &e in edges {
            if !self.triangles[t].contains(&e) {
                return None;
            }
            t = self.across(e, t);
        }
        Some(t)
    }

    /// True iff `(a, b, c)` is the counterclockwise order of the sides of `t`.
    #[inline]
    pub(crate) fn ccw(&self, t: usize, a: usize, b: usize, c: usize) -> bool {
        let s = self.triangles[t];
        (s[0] == a && s[1] == b && s[2] == c) || (s[1] == a && s[2] == b && s[0] == c) || (s[2] == a && s[0] == b && s[1] == c)
    }

    /// Normal coordinates of the peripheral curve around puncture `p`.
    pub(crate) fn peripheral(&self, p: usize) -> Vec<u32> {
        self.edge_ends.iter().map(|ends| ends.iter().filter(|&&q| q == p).count() as u32).collect()
    }

    /// Normal coordinates of the boundary of a regular neighbourhood of edge `e`.
    pub(crate) fn edge_neighbourhood(&self, e: usize) -> Vec<u32> {
        let [a, b] = self.edge_ends[e];
        (0..self.edge_count()).map(|f| if f == e { 0 } else { self.edge_ends[f].iter().filter(|&&q| q == a || q == b).count() as u32 }).collect()
    }
}
