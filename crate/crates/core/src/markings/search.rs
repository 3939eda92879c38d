//! Breadth-first search in the graph of markings.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;

use super::{neighbours, Marking, Move};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MoveDistance {
    /// Found, with a shortest move word.
    Exact { n: usize, path: Vec<Move> },
    /// Every marking within `n − 1` moves was visited before the cap ran out.
    LowerBound { n: usize, visited: usize },
}

impl MoveDistance {
    pub fn exact(&self) -> Option<usize> {
        match self {
            MoveDistance::Exact { n, .. } => Some(*n),
            MoveDistance::LowerBound { .. } => None,
        }
    }

    /// The distance, or the certified lower bound.
    pub fn lower(&self) -> usize {
        match self {
            MoveDistance::Exact { n, .. } | MoveDistance::LowerBound { n, .. } => *n,
        }
    }
}

/// Markings are compared as unordered sets of pairs, so relabelling the
/// pairs costs nothing. Layers are expanded in parallel and merged in order,
/// so paths do not depend on the thread count.
pub fn move_distance(a: &Marking, b: &Marking, node_cap: usize) -> Result<MoveDistance> {
    a.validate()?;
    b.validate()?;
    let target = b.key();
    if a.key() == target {
        return Ok(MoveDistance::Exact { n: 0, path: Vec::new() });
    }
    // marking key → (parent key, move)
    let mut seen: HashMap<_, Option<(_, Move)>> = HashMap::from([(a.key(), None)]);
    let mut layer = vec![a.clone()];
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        let expanded: Vec<Vec<(Move, Marking)>> = layer.par_iter().map(neighbours).collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (from, nbrs) in layer.iter().zip(expanded) {
            for (mv, m) in nbrs {
                let k = m.key();
                if seen.contains_key(&k) {
                    continue;
                }
                seen.insert(k.clone(), Some((from.key(), mv)));
                if k == target {
                    let mut path = vec![mv];
                    let mut cur = from.key();
                    while let Some(Some((p, mv))) = seen.get(&cur) {
                        path.push(*mv);
                        cur = p.clone();
                    }
                    path.reverse();
                    return Ok(MoveDistance::Exact { n: depth, path });
                }
                next.push(m);
            }
            if seen.len() >= node_cap {
                return Ok(MoveDistance::LowerBound { n: depth, visited: seen.len() });
            }
        }
        layer = next;
    }
    Err(crate::error::Error::Internal("marking graph search ran dry".into()))
}
