use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use super::ModelComplex;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            _ => Err(Error::Validation(format!("unknown model export format {s:?} (json, dot)"))),
        }
    }
}

/// JSON: the whole structure. DOT: blocks and tubes as nodes, gluings as
/// edges labelled by type, and each tube joined to the blocks walling it.
pub fn export_model(m: &ModelComplex, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => m.to_json(),
        ExportFormat::Dot => {
            let mut out = String::from("graph model {\n");
            for (i, b) in m.blocks.iter().enumerate() {
                let level = m.levels.get(i).copied().unwrap_or_default();
                let _ = writeln!(out, "  b{i} [shape=box, label=\"B{i} hub {} edge {}.{} level {level}\"];", b.hub, b.wheel, b.edge);
            }
            for (j, t) in m.tubes.iter().enumerate() {
                let _ = writeln!(out, "  t{j} [shape=ellipse, label=\"U({}) ω={:.3}{:+.3}i\"];", t.vertex, t.omega.re, t.omega.im);
            }
            for g in &m.gluings {
                let _ = writeln!(out, "  b{} -- b{} [label=\"{}\"];", g.lower, g.upper, u8::from(g.kind));
            }
            for (j, t) in m.tubes.iter().enumerate() {
                let walls: BTreeSet<usize> = t.faces.iter().map(|f| f.block).collect();
                for b in walls {
                    let _ = writeln!(out, "  t{j} -- b{b} [style=dotted];");
                }
            }
            out.push_str("}\n");
            out
        }
    }
}
