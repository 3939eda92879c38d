//! Subsurface distances between markings.
//!
//! `d_W(μ, μ')` is the Hausdorff distance between the projections of the
//! curves of `μ` and of `μ'` that meet `W` (with `d_W` between single curves
//! as in [`subsurface_distance`]), so `d_W(μ, μ) = 0` and curves the markings
//! share do not hide the ones they do not.
//!
//! The supremum runs over the whole surface and the annuli and four-holed
//! complements of a finite list of curves: those of both markings first,
//! then their images under single half-twist generators, breadth first.

use serde::Serialize;
use std::collections::{HashSet, VecDeque};

use super::Marking;
use crate::cplx::{subsurface_distance, SearchBudget};
use crate::error::{Error, Result};
use crate::subsurface::{complementary_four_holed, Subsurface};
use crate::surface::{apply_mapping_class, MappingClassWord, NormalCurve, SurfaceKind};

/// Largest `d_W(μ, move(μ))` seen over the small-case search of the test
/// suite; every elementary move changes every projection by at most this.
pub const MOVE_LIPSCHITZ_CONSTANT: u64 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupDw {
    pub m: u64,
    pub witness: Subsurface,
    /// Subsurfaces where both markings project nontrivially.
    pub examined: usize,
    /// Subsurfaces enumerated but skipped (a projection was empty).
    pub skipped: usize,
}

/// `d_W(μ, μ')`, or `None` when one marking misses `W`. Pairs of curves
/// whose distance cannot be certified are left out.
pub fn marking_distance(w: &Subsurface, a: &Marking, b: &Marking, budget: &SearchBudget) -> Result<Option<u64>> {
    // table[x][y] = d_W(x, y); rows and columns of curves missing W stay empty
    let mut table = [[None; 4]; 4];
    for (i, x) in a.curves().into_iter().enumerate() {
        for (j, y) in b.curves().into_iter().enumerate() {
            table[i][j] = match subsurface_distance(w, x, y, budget) {
                Ok(r) => Some(r.d),
                // an empty projection, or an uncertified distance on the whole surface
                Err(Error::Unavailable(_) | Error::Budget(_)) => None,
                Err(e) => return Err(e),
            };
        }
    }
    let rows: Vec<u64> = (0..4).filter_map(|i| (0..4).filter_map(|j| table[i][j]).min()).collect();
    let cols: Vec<u64> = (0..4).filter_map(|j| (0..4).filter_map(|i| table[i][j]).min()).collect();
    Ok(rows.into_iter().chain(cols).max())
}

/// The first `cap` subsurfaces of the enumeration order.
pub fn candidate_subsurfaces(a: &Marking, b: &Marking, cap: usize) -> Result<Vec<Subsurface>> {
    let mut out = Vec::new();
    if cap == 0 {
        return Ok(out);
    }
    out.push(Subsurface::Whole { surface: SurfaceKind::S05 });
    let mut seen: HashSet<NormalCurve> = HashSet::new();
    let mut queue: VecDeque<NormalCurve> = VecDeque::new();
    for c in a.curves().into_iter().chain(b.curves()) {
        if seen.insert(c.clone()) {
            queue.push_back(c.clone());
        }
    }
    let gens: Vec<MappingClassWord> = (1..5).flat_map(|k| [MappingClassWord::gen(k, false), MappingClassWord::gen(k, true)]).collect();
    while let Some(v) = queue.pop_front() {
        for w in [Subsurface::Annulus { core: v.clone() }, Subsurface::FourHoled { w: complementary_four_holed(SurfaceKind::S05, &v)? }] {
            if out.len() == cap {
                return Ok(out);
            }
            out.push(w);
        }
        for g in &gens {
            let c = apply_mapping_class(g, &v)?;
            if seen.insert(c.clone()) {
                queue.push_back(c);
            }
        }
    }
    Ok(out)
}

/// `sup_W d_W(μ, μ')` over the first `cap` subsurfaces, with the first
/// subsurface attaining it.
pub fn sup_dw(a: &Marking, b: &Marking, cap: usize) -> Result<SupDw> {
    a.validate()?;
    b.validate()?;
    let budget = SearchBudget::default();
    let subs = candidate_subsurfaces(a, b, cap)?;
    if subs.is_empty() {
        return Err(Error::Unavailable(format!("enumeration cap {cap} admits no subsurface")));
    }
    let mut best: Option<(u64, Subsurface)> = None;
    let (mut examined, mut skipped) = (0, 0);
    for w in subs {
        match marking_distance(&w, a, b, &budget)? {
            Some(d) => {
                examined += 1;
                if best.as_ref().is_none_or(|(m, _)| d > *m) {
                    best = Some((d, w));
                }
            }
            None => skipped += 1,
        }
    }
    let (m, witness) = best.ok_or_else(|| Error::Unavailable("no enumerated subsurface meets both markings".into()))?;
    Ok(SupDw { m, witness, examined, skipped })
}
