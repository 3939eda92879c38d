//! How the number of elementary moves between two markings grows with the
//! largest subsurface projection distance between them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{flip_cleanups, move_distance, sup_dw, Direction, Marking, Move};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusKind {
    /// Random words in all moves.
    Mixed,
    /// Half-twists about `u₁` only, all in one direction.
    PureTwist,
    /// Empty words.
    Identical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: CorpusKind,
    pub pairs: usize,
    pub max_word: usize,
    pub seed: u64,
    /// Node cap of the move-distance search.
    pub node_cap: usize,
    /// Subsurface cap of the projection supremum.
    pub subsurface_cap: usize,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec { kind: CorpusKind::Mixed, pairs: 100, max_word: 8, seed: 7, node_cap: 4000, subsurface_cap: 24 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub word: String,
    /// `sup_W d_W` between the base marking and the end of the word.
    pub m: u64,
    /// Move distance if the search finished, else the word length.
    pub n: usize,
    pub exact: bool,
}

/// `n ≈ C · M^ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerFit {
    pub xi: f64,
    /// `exp` of the least-squares intercept.
    pub c_fit: f64,
    /// Smallest `C` with `n ≤ C·M^ξ` on every fitted point.
    pub c_envelope: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub spec: ExperimentSpec,
    pub rows: Vec<ExperimentRow>,
    /// `None` when fewer than two distinct positive `M` occur.
    pub fit: Option<PowerFit>,
}

impl ScalingReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("M,n,exact,word\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{}\n", r.m, r.n, r.exact, r.word));
        }
        s
    }
}

/// Least-squares line through `(log M, log n)` over points with both positive.
pub fn fit_power_law(points: &[(u64, usize)]) -> Option<PowerFit> {
    let pts: Vec<(f64, f64)> = points.iter().filter(|p| p.0 > 0 && p.1 > 0).map(|&(m, n)| ((m as f64).ln(), (n as f64).ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx <= 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let xi = sxy / sxx;
    let c_envelope = pts.iter().map(|p| (p.1 - xi * p.0).exp()).fold(0.0, f64::max);
    Some(PowerFit { xi, c_fit: (my - xi * mx).exp(), c_envelope, points: pts.len() })
}

fn random_word(m: &Marking, kind: CorpusKind, len: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<Move>, Marking)> {
    let mut cur = m.clone();
    let mut word = Vec::with_capacity(len);
    for _ in 0..len {
        let mv = match kind {
            CorpusKind::Identical => break,
            CorpusKind::PureTwist => Move::Twist { pair: 0, direction: Direction::Plus },
            CorpusKind::Mixed => {
                let pair = rng.gen_range(0..2);
                match rng.gen_range(0..3) {
                    0 => Move::Twist { pair, direction: Direction::Plus },
                    1 => Move::Twist { pair, direction: Direction::Minus },
                    _ => Move::Flip { pair, cleanup: rng.gen_range(0..flip_cleanups(&cur, pair)?.len()) },
                }
            }
        };
        cur = cur.apply(mv)?;
        word.push(mv);
    }
    Ok((word, cur))
}

/// Words of length `1..=max_word` from the base marking; for each, the
/// projection supremum `M` and the move count `n`.
pub fn scaling_experiment(spec: &ExperimentSpec) -> Result<ScalingReport> {
    let base = Marking::base();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut words = Vec::with_capacity(spec.pairs);
    for _ in 0..spec.pairs {
        let len = rng.gen_range(1..=spec.max_word.max(1));
        words.push(random_word(&base, spec.kind, len, &mut rng)?);
    }
    let rows: Vec<ExperimentRow> = words
        .par_iter()
        .map(|(word, end)| {
            let m = sup_dw(&base, end, spec.subsurface_cap)?.m;
            let d = move_distance(&base, end, spec.node_cap)?;
            let text = word.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ");
            Ok(match d.exact() {
                Some(n) => ExperimentRow { word: text, m, n, exact: true },
                None => ExperimentRow { word: text, m, n: word.len(), exact: false },
            })
        })
        .collect::<Result<_>>()?;
    let fit = fit_power_law(&rows.iter().map(|r| (r.m, r.n)).collect::<Vec<_>>());
    Ok(ScalingReport { spec: *spec, rows, fit })
}
