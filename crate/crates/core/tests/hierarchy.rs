mod common;

use lamina::farey::SelectionRule;
use lamina::hier::{build_hierarchy, rim_edges, verify_hierarchy, Check, DuplicateCase, Hierarchy};
use lamina::surface::{intersection_number, round_curve, SurfaceKind};
use lamina::Error;

fn corpus() -> Vec<Hierarchy> {
    common::geodesic_corpus(11, 12, 3..=5).iter().map(|g| build_hierarchy(g, SelectionRule::Lexicographic).unwrap()).collect()
}

#[test]
fn built_hierarchies_verify() {
    for h in corpus() {
        let r = verify_hierarchy(&h).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!(h.wheels.len(), h.base.len() - 2);
        let rims = rim_edges(&h);
        assert_eq!(rims.len(), h.wheels.iter().map(|w| w.len()).sum::<usize>());
        for e in &rims {
            // rim edges are Farey edges: the two curves meet twice
            assert_eq!(intersection_number(&e.minus, &e.plus).unwrap(), 2);
            assert_eq!(intersection_number(&e.minus, &h.base[e.hub]).unwrap(), 0);
        }
        let back = Hierarchy::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        assert!(h.to_dot().starts_with("graph hierarchy {"));
    }
}

#[test]
fn non_geodesic_base_names_the_triple() {
    let k = SurfaceKind::S05;
    let g = [round_curve(k, 0), round_curve(k, 2), round_curve(k, 0)];
    match build_hierarchy(&g, SelectionRule::Lexicographic) {
        Err(Error::Validation(m)) => assert!(m.contains("index 0") && m.contains("two apart"), "{m}"),
        other => panic!("expected a validation error, got {other:?}"),
    }
}

#[test]
fn adjacent_pair_has_no_wheels() {
    let k = SurfaceKind::S05;
    let h = build_hierarchy(&[round_curve(k, 0), round_curve(k, 2)], SelectionRule::Lexicographic).unwrap();
    assert!(h.wheels.is_empty());
    assert!(verify_hierarchy(&h).unwrap().ok());
}

fn duplicate_case(h: &Hierarchy) -> Vec<DuplicateCase> {
    let r = verify_hierarchy(h).unwrap();
    assert!(!r.distinct);
    r.violations.iter().filter(|v| v.check == Check::Distinct).filter_map(|v| v.case).collect()
}

#[test]
fn injected_duplicates_carry_their_case() {
    let hs = corpus();
    // three consecutive wheels with interior vertices
    let (h, i) = hs
        .iter()
        .find_map(|h| (0..h.wheels.len().saturating_sub(2)).find(|&i| h.wheels[i..i + 3].iter().all(|w| w.len() >= 2)).map(|i| (h, i)))
        .expect("a long hierarchy");
    let x = h.wheels[i].vertices[1].clone();

    // same wheel: repeat an interior vertex
    let mut same = h.clone();
    let w = &mut same.wheels[i];
    let last = w.vertices.len() - 1;
    w.vertices.insert(last, x.clone());
    w.slopes.insert(last, w.slopes[1]);
    assert!(duplicate_case(&same).contains(&DuplicateCase::SameHub));

    // neighbouring wheel
    let mut adj = h.clone();
    adj.wheels[i + 1].vertices[1] = x.clone();
    assert_eq!(duplicate_case(&adj), vec![DuplicateCase::AdjacentHubs]);

    // wheels two apart
    let mut two = h.clone();
    two.wheels[i + 2].vertices[1] = x.clone();
    assert_eq!(duplicate_case(&two), vec![DuplicateCase::HubsTwoApart]);
}
