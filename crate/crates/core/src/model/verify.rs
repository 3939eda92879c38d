//! Independent re-checks of an assembled model.

use serde::Serialize;
use std::collections::HashMap;

use super::levels::slice_euler_characteristics;
use super::tubes::tube_closes;
use super::{classify_pants, gluing_type, BoundaryClass, ModelComplex, Side, MODEL_SCHEMA};
use crate::hier::{rim_edges, verify_hierarchy};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub blocks: usize,
    /// Gluings of type 1, 2, 3.
    pub gluings_by_type: [usize; 3],
    pub tubes: usize,
    pub block_count_ok: bool,
    pub gluings_ok: bool,
    pub classes_ok: bool,
    pub levels_ok: bool,
    pub slices_ok: bool,
    pub tubes_ok: bool,
    pub violations: Vec<String>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Hub a missing partner of an unglued end piece would sit at.
fn partner_hub(m: &ModelComplex, side: Side, class: BoundaryClass, curves: &[crate::surface::NormalCurve]) -> i64 {
    let idx: Vec<i64> = curves.iter().filter_map(|c| m.hierarchy.base.iter().position(|b| b == c)).map(|i| i as i64).collect();
    let lone = i64::from(class == BoundaryClass::III);
    match side {
        Side::Top => idx.iter().max().copied().unwrap_or(0) + lone,
        Side::Bottom => idx.iter().min().copied().unwrap_or(0) - lone,
    }
}

pub fn verify_model(m: &ModelComplex) -> ModelReport {
    let mut v: Vec<String> = Vec::new();
    let h = &m.hierarchy;
    let mut by_type = [0usize; 3];
    for g in &m.gluings {
        by_type[u8::from(g.kind) as usize - 1] += 1;
    }
    if m.schema != MODEL_SCHEMA {
        v.push(format!("unknown schema {:?}", m.schema));
    }
    match verify_hierarchy(h) {
        Ok(r) if r.ok() => {}
        Ok(r) => v.extend(r.violations.into_iter().map(|x| format!("hierarchy: {}", x.message))),
        Err(e) => v.push(format!("hierarchy: {e}")),
    }

    // blocks are the rim edges
    let rims = rim_edges(h);
    let mut block_count_ok = rims.len() == m.blocks.len();
    for (e, b) in rims.iter().zip(&m.blocks) {
        if (e.wheel, e.edge, e.hub, &e.minus, &e.plus) != (b.wheel, b.edge, b.hub, &b.minus, &b.plus) || b.pieces.len() != 4 {
            block_count_ok = false;
        }
    }
    let mut r = ModelReport {
        blocks: m.blocks.len(),
        gluings_by_type: by_type,
        tubes: m.tubes.len(),
        block_count_ok,
        gluings_ok: false,
        classes_ok: false,
        levels_ok: false,
        slices_ok: false,
        tubes_ok: false,
        violations: Vec::new(),
    };
    if !block_count_ok {
        v.push(format!("{} blocks for {} rim edges", m.blocks.len(), rims.len()));
        r.violations = v;
        return r;
    }

    // classes
    let mut classes_ok = true;
    for (bi, b) in m.blocks.iter().enumerate() {
        for (k, p) in b.pieces.iter().enumerate() {
            let c = classify_pants(h, &p.pants);
            if c.is_none() || c != p.class {
                classes_ok = false;
                v.push(format!("block {bi} piece {k}: class {:?}, recomputed {c:?}", p.class));
            }
            let x = if p.side == Side::Top { &b.plus } else { &b.minus };
            if !p.pants.curves.contains(x) {
                classes_ok = false;
                v.push(format!("block {bi} piece {k} is not bounded by its trench curve"));
            }
        }
    }

    // gluings: matching pieces, correct tags, each piece used at most once
    let mut gluings_ok = true;
    let mut uses: HashMap<(usize, usize), usize> = HashMap::new();
    for (gi, g) in m.gluings.iter().enumerate() {
        let (Some(lo), Some(up)) = (m.blocks.get(g.lower), m.blocks.get(g.upper)) else {
            gluings_ok = false;
            v.push(format!("gluing {gi} refers to a missing block"));
            continue;
        };
        let t = gluing_type(h, lo, up);
        if t != Some(g.kind) {
            gluings_ok = false;
            v.push(format!("gluing {gi} is tagged type {} but classifies as {:?}", u8::from(g.kind), t.map(u8::from)));
        }
        for &(a, b) in &g.pieces {
            let ok = matches!((lo.pieces.get(a), up.pieces.get(b)), (Some(p), Some(q))
                if p.side == Side::Top && q.side == Side::Bottom && p.pants == q.pants);
            if !ok {
                gluings_ok = false;
                v.push(format!("gluing {gi} identifies non-matching pieces ({a}, {b})"));
            }
            *uses.entry((g.lower, a)).or_default() += 1;
            *uses.entry((g.upper, b)).or_default() += 1;
        }
    }
    let last_hub = h.base.len() as i64 - 2;
    for (bi, b) in m.blocks.iter().enumerate() {
        for (k, p) in b.pieces.iter().enumerate() {
            let n = uses.get(&(bi, k)).copied().unwrap_or(0);
            let Some(class) = p.class else { continue };
            let fine = match n {
                1 => true,
                0 if class.interior() => false,
                0 => {
                    let hub = partner_hub(m, p.side, class, &p.pants.curves);
                    hub < 1 || hub > last_hub
                }
                _ => false,
            };
            if !fine {
                gluings_ok = false;
                v.push(format!("block {bi} piece {k} (class {class:?}) is glued {n} times"));
            }
        }
    }

    // levels: one core per level, every gluing goes up
    let mut levels_ok = m.levels.len() == m.blocks.len();
    if levels_ok {
        let mut seen = m.levels.clone();
        seen.sort();
        seen.dedup();
        levels_ok &= seen.len() == m.levels.len();
        levels_ok &= m.gluings.iter().all(|g| matches!((m.levels.get(g.lower), m.levels.get(g.upper)), (Some(a), Some(b)) if a < b));
    }
    (r.gluings_ok, r.classes_ok, r.levels_ok) = (gluings_ok, classes_ok, levels_ok);
    if !levels_ok {
        v.push("level assignment violates a gluing constraint".into());
        r.violations = v;
        return r;
    }
    let bad: Vec<(i64, i64)> = slice_euler_characteristics(m).into_iter().filter(|&(_, chi)| chi != -3).collect();
    let slices_ok = bad.is_empty();
    if !slices_ok {
        v.push(format!("slices with χ ≠ −3 at doubled heights {bad:?}"));
    }

    // tubes
    let expected = h.base.len().saturating_sub(2) + h.wheels.iter().map(|w| w.vertices.len().saturating_sub(2)).sum::<usize>();
    let mut tubes_ok = m.tubes.len() == expected;
    if !tubes_ok {
        v.push(format!("{} tubes, expected {expected}", m.tubes.len()));
    }
    let h0 = m.constants.annulus_height;
    for (ti, t) in m.tubes.iter().enumerate() {
        if t.faces.iter().any(|f| f.block >= m.blocks.len()) || !tube_closes(m, t) {
            tubes_ok = false;
            v.push(format!("walls of tube {ti} around {} do not close up", t.vertex));
            continue;
        }
        let h = t.faces.len() as f64 * h0;
        if (t.omega.im - h).abs() > 1e-12 || !(t.omega.im > 0.0) || (!t.truncated && t.omega.im < 2.0 * h0) {
            tubes_ok = false;
            v.push(format!("tube {ti}: ω = {} does not match its {} walls", t.omega, t.faces.len()));
        }
    }
    (r.slices_ok, r.tubes_ok) = (slices_ok, tubes_ok);
    r.violations = v;
    r
}
