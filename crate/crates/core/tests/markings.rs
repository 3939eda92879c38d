mod common;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use lamina::cplx::{annular_distance, SearchBudget};
use lamina::markings::*;
use lamina::subsurface::Subsurface;
use lamina::surface::{apply_mapping_class, intersection_number};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn walk(seed: u64, len: usize) -> Marking {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Marking::base();
    for _ in 0..len {
        let nb = neighbours(&m).unwrap();
        m = nb[rng.gen_range(0..nb.len())].1.clone();
    }
    m
}

/// Markings within `r` moves of `m`.
fn ball(m: &Marking, r: usize) -> Vec<Marking> {
    let mut seen = HashSet::from([m.key()]);
    let mut out = vec![m.clone()];
    let mut layer = vec![m.clone()];
    for _ in 0..r {
        let mut next = Vec::new();
        for x in &layer {
            for (_, y) in neighbours(x).unwrap() {
                if seen.insert(y.key()) {
                    next.push(y.clone());
                    out.push(y);
                }
            }
        }
        layer = next;
    }
    out
}

/// Plain breadth-first distance, up to `limit`.
fn bfs_oracle(a: &Marking, b: &Marking, limit: usize) -> Option<usize> {
    let mut dist = HashMap::from([(a.key(), 0usize)]);
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x.key()];
        if x.key() == b.key() {
            return Some(d);
        }
        if d == limit {
            continue;
        }
        for (_, y) in neighbours(&x).unwrap() {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y.key()) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    None
}

#[test]
fn half_twists_trace_out_the_neighbours_of_the_pants_curve() {
    for seed in 0..12 {
        let m = walk(seed, 4);
        for i in 0..2 {
            let mut cur = m.clone();
            let mut last = 0;
            for k in 1..=5u64 {
                cur = twist_move(&cur, i, Direction::Plus).unwrap();
                cur.validate().unwrap();
                assert_eq!(cur.u, m.u);
                let n = intersection_number(&cur.t[i], &m.t[i]).unwrap();
                assert!(n > last, "seed {seed} pair {i}: i(twist^{k} t, t) = {n} after {last}");
                assert_eq!(n, 2 * k);
                last = n;
            }
            let back = twist_move(&twist_move(&m, i, Direction::Minus).unwrap(), i, Direction::Plus).unwrap();
            assert_eq!(back, m);
        }
    }
}

#[test]
fn flips_exchange_and_come_back() {
    for seed in 0..12 {
        let m = walk(seed, 5);
        for i in 0..2 {
            let cleanups = flip_cleanups(&m, i).unwrap();
            for c in 0..cleanups.len() {
                let f = flip_move(&m, i, c).unwrap();
                f.validate().unwrap();
                assert_eq!((&f.u[i], &f.t[i], &f.u[1 - i]), (&m.t[i], &m.u[i], &m.u[1 - i]));
                assert_eq!(intersection_number(&f.t[i], &f.u[i]).unwrap(), 2);
                // the cleanup is as cheap as any neighbour of u_j in W_{t_i}
                let back = flip_move(&f, i, 0).unwrap();
                let d = move_distance(&m, &back, 2000).unwrap().exact().unwrap();
                assert!(d <= 2 * (cleanups.len() - 1), "seed {seed}: flip twice lands {d} moves away");
            }
        }
    }
}

#[test]
fn twisting_is_seen_by_the_annulus() {
    let b = Marking::base();
    let bud = SearchBudget::default();
    assert_eq!(sup_dw(&b, &b, 24).unwrap().m, 0);
    for k in 1..=6usize {
        let m = b.apply_all(&vec![Move::Twist { pair: 0, direction: Direction::Plus }; k]).unwrap();
        let s = sup_dw(&b, &m, 24).unwrap();
        assert_eq!(s.witness, Subsurface::Annulus { core: b.u[0].clone() }, "k = {k}");
        let (d, _) = annular_distance(&b.u[0], &b.t[0], &m.t[0]).unwrap();
        assert_eq!(s.m, d);
        // a half-twist is half a Dehn twist: the arcs cross ⌈k/2⌉ times
        assert_eq!(s.m, k.div_ceil(2) as u64 + 1);
        let w = Subsurface::Annulus { core: b.u[0].clone() };
        assert_eq!(marking_distance(&w, &m, &b, &bud).unwrap(), Some(d));
    }
    assert!(matches!(sup_dw(&b, &b, 0), Err(lamina::Error::Unavailable(_))));
}

#[test]
fn sup_dw_is_symmetric() {
    for seed in 0..6 {
        let (a, b) = (walk(seed, 3), walk(seed + 100, 4));
        assert_eq!(sup_dw(&a, &b, 24).unwrap().m, sup_dw(&b, &a, 24).unwrap().m);
    }
}

#[test]
fn move_distances_match_the_oracle() {
    let b = Marking::base();
    assert_eq!(move_distance(&b, &b, 10).unwrap().exact(), Some(0));
    let one = b.apply(Move::Twist { pair: 1, direction: Direction::Minus }).unwrap();
    assert_eq!(move_distance(&b, &one, 100).unwrap().exact(), Some(1));
    let word = parse_moves("f1 t1+ t1+").unwrap();
    let target = b.apply_all(&word).unwrap();
    let d = move_distance(&b, &target, 10_000).unwrap();
    let MoveDistance::Exact { n: 3, path } = d else { panic!("{d:?}") };
    assert_eq!(b.apply_all(&path).unwrap().key(), target.key());
    assert!(ball(&b, 2).iter().all(|x| x.key() != target.key()));
    assert_eq!(bfs_oracle(&b, &target, 4), Some(3));
    let far = walk(3, 9);
    match move_distance(&b, &far, 30).unwrap() {
        MoveDistance::LowerBound { n, .. } => assert!(bfs_oracle(&b, &far, n - 1).is_none()),
        MoveDistance::Exact { n, .. } => assert_eq!(bfs_oracle(&b, &far, n), Some(n)),
    }
}

#[test]
fn move_distance_is_a_metric_on_a_ball() {
    let pts = ball(&Marking::base(), 1);
    let n = pts.len();
    let mut d = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = move_distance(&pts[i], &pts[j], 50_000).unwrap().exact().unwrap();
        }
    }
    for i in 0..n {
        assert_eq!(d[i][i], 0);
        for j in 0..n {
            assert_eq!(d[i][j], d[j][i]);
            assert_eq!(d[i][j] == 0, i == j);
            for k in 0..n {
                assert!(d[i][k] <= d[i][j] + d[j][k]);
            }
        }
    }
}

#[test]
fn one_move_moves_every_projection_boundedly() {
    let bud = SearchBudget::default();
    let mut worst = 0;
    for m in ball(&Marking::base(), 3) {
        for (_, x) in neighbours(&m).unwrap() {
            for w in candidate_subsurfaces(&m, &x, 40).unwrap() {
                worst = worst.max(marking_distance(&w, &m, &x, &bud).unwrap().unwrap_or(0));
            }
        }
    }
    assert_eq!(worst, MOVE_LIPSCHITZ_CONSTANT);
}

#[test]
fn markings_fall_into_finitely_many_types() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut types = BTreeSet::new();
    for m in ball(&Marking::base(), 2) {
        for _ in 0..6 {
            let len = rng.gen_range(0..=6);
            let g = common::random_word(&mut rng, len);
            let im = |c| apply_mapping_class(&g, c).unwrap();
            let x = Marking::new([im(&m.u[0]), im(&m.u[1])], [im(&m.t[0]), im(&m.t[1])]).unwrap();
            if x.complexity() <= 80 {
                types.insert(x.normal_form().unwrap());
            }
        }
    }
    // one orbit: the standard intersection pattern, and consecutive curves of
    // the chain u1, t1, t2, u2 share a puncture
    let only = MarkingType {
        intersections: [[0, 0, 2, 0], [0, 0, 0, 2], [2, 0, 0, 2], [0, 2, 2, 0]],
        overlaps: [[2, 0, 1, 0], [0, 2, 0, 1], [1, 0, 2, 1], [0, 1, 1, 2]],
    };
    assert_eq!(types, BTreeSet::from([only]));
}

#[test]
fn degenerate_and_pure_twist_corpora() {
    let spec = ExperimentSpec { kind: CorpusKind::Identical, pairs: 5, ..Default::default() };
    let r = scaling_experiment(&spec).unwrap();
    assert!(r.rows.iter().all(|x| (x.m, x.n) == (0, 0)) && r.fit.is_none());
    let spec = ExperimentSpec { kind: CorpusKind::PureTwist, pairs: 12, max_word: 6, ..Default::default() };
    for row in scaling_experiment(&spec).unwrap().rows {
        let k = row.word.split(' ').count();
        assert_eq!(row.m, k.div_ceil(2) as u64 + 1);
        assert!(row.n <= k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn moves_keep_markings_valid(word in proptest::collection::vec((0usize..2, 0u8..3), 1..8)) {
        let mut m = Marking::base();
        for (pair, k) in word {
            let mv = match k {
                0 => Move::Twist { pair, direction: Direction::Plus },
                1 => Move::Twist { pair, direction: Direction::Minus },
                _ => Move::Flip { pair, cleanup: 0 },
            };
            let next = m.apply(mv).unwrap();
            prop_assert!(next.validate().is_ok());
            prop_assert_eq!(next.normal_form().unwrap(), m.normal_form().unwrap());
            m = next;
        }
    }
}
