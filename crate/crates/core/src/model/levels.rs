//! Stacking blocks in `S × ℝ`.
//!
//! A block's middle surface sits at an integer level; above the middle the
//! two top pieces are separated by the trench and can be stretched
//! independently up to the block they are glued to. So a horizontal slice
//! meets block cores (four-holed spheres) and stretched three-holed spheres.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ModelComplex, Side};
use crate::error::{Error, Result};

/// Levels by a left-to-right sweep: a block is placed once everything glued
/// below it is placed, leftmost first. Each block gets its own level.
pub fn embed_levels(m: &ModelComplex) -> Result<Vec<i64>> {
    let n = m.blocks.len();
    let mut indeg = vec![0usize; n];
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for g in &m.gluings {
        indeg[g.upper] += 1;
        up[g.lower].push(g.upper);
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&b| indeg[b] == 0).map(Reverse).collect();
    let mut levels = vec![-1i64; n];
    let mut next = 0;
    while let Some(Reverse(b)) = ready.pop() {
        levels[b] = next;
        next += 1;
        for &u in &up[b] {
            indeg[u] -= 1;
            if indeg[u] == 0 {
                ready.push(Reverse(u));
            }
        }
    }
    if let Some(b) = levels.iter().position(|&l| l < 0) {
        return Err(Error::Internal(format!("gluing constraints are cyclic through block {b}")));
    }
    Ok(levels)
}

/// Vertical extent of every stretched three-holed sphere, in doubled units
/// (level `k` is height `2k`); `None` is unbounded.
fn slabs(m: &ModelComplex) -> Vec<(Option<i64>, Option<i64>)> {
    let mut out = Vec::new();
    for (b, blk) in m.blocks.iter().enumerate() {
        let here = 2 * m.levels[b];
        for (k, p) in blk.pieces.iter().enumerate() {
            let partner = match p.side {
                Side::Top => m.gluings.iter().find(|g| g.lower == b && g.pieces.iter().any(|x| x.0 == k)).map(|g| g.upper),
                Side::Bottom => m.gluings.iter().find(|g| g.upper == b && g.pieces.iter().any(|x| x.1 == k)).map(|g| g.lower),
            };
            match (p.side, partner) {
                (Side::Top, Some(u)) => out.push((Some(here), Some(2 * m.levels[u]))),
                (Side::Top, None) => out.push((Some(here), None)),
                (Side::Bottom, None) => out.push((None, Some(here))),
                // counted from the lower block's top
                (Side::Bottom, Some(_)) => {}
            }
        }
    }
    // the pants outside W_{v_i} lies only in the wheels at i ± 1; when both
    // are beyond the window it runs through every slice
    let hubs: Vec<usize> = m.hierarchy.wheels.iter().map(|w| w.hub).collect();
    for &i in &hubs {
        if !hubs.contains(&(i + 1)) && (i == 0 || !hubs.contains(&(i - 1))) {
            out.push((None, None));
        }
    }
    out
}

/// Euler characteristic of every horizontal slice: at each level and halfway
/// between levels, from just below the lowest block to just above the top.
/// Returns `(doubled height, χ)` pairs.
pub fn slice_euler_characteristics(m: &ModelComplex) -> Vec<(i64, i64)> {
    if m.blocks.is_empty() || m.levels.len() != m.blocks.len() {
        return Vec::new();
    }
    let lo = 2 * m.levels.iter().min().copied().unwrap_or(0);
    let hi = 2 * m.levels.iter().max().copied().unwrap_or(0);
    let slabs = slabs(m);
    (lo - 1..=hi + 1)
        .map(|t| {
            let cores = m.levels.iter().filter(|&&l| 2 * l == t).count() as i64;
            let crossing = slabs.iter().filter(|(a, b)| a.is_none_or(|a| a < t) && b.is_none_or(|b| t < b)).count() as i64;
            (t, -2 * cores - crossing)
        })
        .collect()
}
