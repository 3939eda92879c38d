//! Shared generators for integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use lamina::cplx::{cc_distance, SearchBudget};
use lamina::farey::Slope;
use lamina::surface::{apply_mapping_class, edge_curve, intersection_number, round_curve, Generator, MappingClassWord, NormalCurve, SurfaceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_word(rng: &mut ChaCha8Rng, len: usize) -> MappingClassWord {
    MappingClassWord((0..len).map(|_| Generator::new(rng.gen_range(1..=4), rng.gen_bool(0.5))).collect())
}

pub fn random_curve(rng: &mut ChaCha8Rng, len: usize) -> NormalCurve {
    let c = round_curve(SurfaceKind::S05, rng.gen_range(0..5));
    apply_mapping_class(&random_word(rng, len), &c).unwrap()
}

/// Certified geodesic segments of length in `lengths`, from random pairs.
pub fn geodesic_corpus(seed: u64, count: usize, lengths: std::ops::RangeInclusive<u32>) -> Vec<Vec<NormalCurve>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = SearchBudget { intersection_cap: None, node_cap: 400 };
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(tries < 50 * count, "corpus generation stalled at {} segments", out.len());
        let a = random_curve(&mut rng, 4);
        let len = rng.gen_range(6..=12);
        let b = apply_mapping_class(&random_word(&mut rng, len), &a).unwrap();
        // pairs meeting this often are mostly beyond the node budget
        if intersection_number(&a, &b).unwrap() > 120 {
            continue;
        }
        let r = cc_distance(&a, &b, &budget).unwrap();
        if r.exact && lengths.contains(&r.lo) {
            out.push(r.path.expect("exact distances come with a path"));
        }
    }
    out
}

/// Reduced slopes `p/q` with `|p| ≤ n`, `1 ≤ q ≤ n`, and `1/0`.
pub fn box_slopes(n: i64) -> Vec<Slope> {
    let mut v = vec![Slope::INFINITY];
    for q in 1..=n {
        for p in -n..=n {
            let s = Slope::new(p, q).unwrap();
            if s.p() == p && s.q() == q {
                v.push(s);
            }
        }
    }
    v
}

/// Farey-graph distances between all pairs, by breadth-first search.
pub fn all_pairs_bfs(v: &[Slope]) -> Vec<Vec<u8>> {
    let adj: Vec<Vec<usize>> = (0..v.len()).map(|i| (0..v.len()).filter(|&j| j != i && v[i].det(v[j]) == 1).collect()).collect();
    (0..v.len())
        .map(|s| {
            let mut d = vec![u8::MAX; v.len()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if d[y] == u8::MAX {
                        d[y] = d[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            d
        })
        .collect()
}

/// A word in `s1..s(n-1)` and inverses, via the text parser.
pub fn random_word_on(rng: &mut ChaCha8Rng, len: usize, n: u8) -> MappingClassWord {
    let s: String = (0..len).map(|_| format!("{}{}", if rng.gen_bool(0.5) { 's' } else { 'S' }, rng.gen_range(1..n))).collect();
    s.parse().unwrap()
}

/// `i(w1·∂N(e), b)` without tracing: move `b` back by `w1`; the boundary of
/// a neighbourhood of edge `e` meets a curve twice per crossing of `e`.
pub fn edge_oracle(e: usize, w1: &MappingClassWord, b: &NormalCurve) -> u64 {
    let moved = apply_mapping_class(&w1.inverse(), b).unwrap();
    if moved == edge_curve(b.surface(), e).unwrap() {
        return 0;
    }
    2 * moved.coords()[e] as u64
}
