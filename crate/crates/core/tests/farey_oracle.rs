//! Farey geodesics against breadth-first search on a box of slopes.

mod common;

use common::{all_pairs_bfs, box_slopes};
use lamina::farey::{farey_adjacent, farey_distance, farey_geodesic, Slope};
use proptest::prelude::*;

#[test]
fn geodesics_match_bfs_on_small_box() {
    let v = box_slopes(8);
    let d = all_pairs_bfs(&v);
    for i in 0..v.len() {
        for j in 0..v.len() {
            let g = farey_geodesic(v[i], v[j]);
            assert_eq!(g.len() - 1, d[i][j] as usize, "{} -> {}", v[i], v[j]);
            assert!(g.windows(2).all(|w| w[0].det(w[1]) == 1));
        }
    }
}

#[test]
fn three_fifths_goes_through_one_half() {
    let v = box_slopes(8);
    let d = all_pairs_bfs(&v);
    let idx = |s: &str| v.iter().position(|&x| x == s.parse::<Slope>().unwrap()).unwrap();
    assert_eq!(d[idx("0")][idx("3/5")], 2);
    let half: Slope = "1/2".parse().unwrap();
    assert!(farey_adjacent(half, Slope::ZERO).unwrap() && farey_adjacent(half, "3/5".parse().unwrap()).unwrap());
}

/// Maximum over geodesic triangles of the distance from a point on one side
/// to the union of the other two, for slopes with `|p|, q ≤ 21`.
#[test]
fn triangles_are_thin() {
    const DELTA: u8 = 1;
    let v = box_slopes(21);
    let n = v.len();
    let d = all_pairs_bfs(&v);
    let index: std::collections::HashMap<Slope, usize> = v.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    // every side, as vertex indices (ladder vertices stay in the box)
    let side = |i: usize, j: usize| -> Vec<usize> { farey_geodesic(v[i], v[j]).iter().map(|s| index[s]).collect() };
    let sides: Vec<Vec<Vec<usize>>> = (0..n).map(|i| (0..n).map(|j| if i < j { side(i, j) } else { vec![] }).collect()).collect();
    let get = |i: usize, j: usize| if i < j { &sides[i][j] } else { &sides[j][i] };
    let mut worst = 0u8;
    for a in 0..n {
        for b in a + 1..n {
            let ab = get(a, b);
            for c in b + 1..n {
                let (bc, ca) = (get(b, c), get(a, c));
                for (s, o1, o2) in [(ab, bc, ca), (bc, ab, ca), (ca, ab, bc)] {
                    for &x in &s[1..s.len() - 1] {
                        let m = o1.iter().chain(o2.iter()).map(|&y| d[x][y]).min().unwrap();
                        worst = worst.max(m);
                    }
                }
            }
        }
    }
    assert_eq!(worst, DELTA);
}

fn slope() -> impl Strategy<Value = Slope> {
    (-40i64..=40, 0i64..=40).prop_filter_map("0/0", |(p, q)| Slope::new(p, q).ok())
}

proptest! {
    #[test]
    fn adjacency_is_modular(a in slope(), b in slope(), k in -5i64..=5) {
        prop_assume!(a != b);
        let adj = farey_adjacent(a, b).unwrap();
        prop_assert_eq!(adj, farey_adjacent(a.shift(k), b.shift(k)).unwrap());
        prop_assert_eq!(adj, farey_adjacent(a.negate_inverse(), b.negate_inverse()).unwrap());
    }

    #[test]
    fn distance_is_a_metric(a in slope(), b in slope(), c in slope()) {
        let (ab, bc, ac) = (farey_distance(a, b), farey_distance(b, c), farey_distance(a, c));
        prop_assert_eq!(ab, farey_distance(b, a));
        prop_assert!(ac <= ab + bc);
        prop_assert_eq!(ab == 0, a == b);
    }

    #[test]
    fn distance_is_modular(a in slope(), b in slope(), k in -5i64..=5) {
        prop_assert_eq!(farey_distance(a, b), farey_distance(a.shift(k), b.shift(k)));
        prop_assert_eq!(farey_distance(a, b), farey_distance(a.negate_inverse(), b.negate_inverse()));
    }
}
