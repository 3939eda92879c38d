mod common;

use lamina::farey::{curve_of_slope, farey_distance, SelectionRule, Slope, SlopeFrame};
use lamina::hier::{build_hierarchy, rim_edges, Hierarchy};
use lamina::model::{
    build_model, export_model, slice_euler_characteristics, verify_model, ExportFormat, FaceKind, GluingType, ModelComplex, VertexRole,
};
use lamina::subsurface::complementary_four_holed;
use lamina::surface::{round_curve, SurfaceKind};

fn hierarchies() -> Vec<Hierarchy> {
    common::geodesic_corpus(5, 12, 3..=5).iter().map(|g| build_hierarchy(g, SelectionRule::Lexicographic).unwrap()).collect()
}

#[test]
fn corpus_models_pass_every_check() {
    for h in hierarchies() {
        let m = build_model(&h).unwrap();
        let r = verify_model(&m);
        assert!(r.ok(), "{:#?}", r);
        assert_eq!(m.blocks.len(), rim_edges(&h).len());
        assert!(slice_euler_characteristics(&m).iter().all(|&(_, chi)| chi == -3));
        assert!(m.gluings.iter().any(|g| g.kind == GluingType::Two));
        for t in m.tubes.iter().filter(|t| !t.truncated) {
            assert!(t.omega.im >= 2.0 * m.constants.annulus_height);
        }
        assert_eq!(ModelComplex::from_json(&m.to_json()).unwrap(), m);
        let dot = export_model(&m, ExportFormat::Dot);
        assert_eq!(dot.lines().filter(|l| l.contains("shape=")).count(), m.blocks.len() + m.tubes.len());
    }
}

/// A one-wheel hierarchy: hub `round_curve(3)`, ends of slopes `s0`, `s1`.
fn one_wheel(s0: &str, s1: &str) -> Hierarchy {
    let hub = round_curve(SurfaceKind::S05, 3);
    let f = SlopeFrame::new(complementary_four_holed(SurfaceKind::S05, &hub).unwrap()).unwrap();
    let c = |s: &str| curve_of_slope(&f, s.parse().unwrap()).unwrap();
    build_hierarchy(&[c(s0), hub.clone(), c(s1)], SelectionRule::Lexicographic).unwrap()
}

#[test]
fn two_rim_edges_give_one_type_one_gluing() {
    let m = build_model(&one_wheel("0", "2")).unwrap();
    assert_eq!(m.blocks.len(), 2);
    assert_eq!(m.gluings.len(), 1);
    assert_eq!(m.gluings[0].kind, GluingType::One);
    assert_eq!(m.gluings[0].pieces.len(), 2);
    assert_eq!(m.levels, vec![0, 1]);
    let r = verify_model(&m);
    assert!(r.ok(), "{:?}", r.violations);
}

#[test]
fn a_wheel_is_a_chain_of_rising_levels() {
    for end in ["1/2", "2/3", "3/5", "5/8", "8/13"] {
        let h = one_wheel("0", end);
        let n = farey_distance(Slope::integer(0), end.parse().unwrap());
        let m = build_model(&h).unwrap();
        assert_eq!(m.blocks.len(), n);
        assert_eq!(m.levels, (0..n as i64).collect::<Vec<_>>());
        assert!(m.gluings.iter().all(|g| g.kind == GluingType::One && m.levels[g.upper] == m.levels[g.lower] + 1));
        assert!(verify_model(&m).ok(), "{end}");
    }
}

#[test]
fn hub_meridian_grows_with_its_wheel() {
    let mut last = 0.0;
    for end in ["1/2", "2/3", "3/5", "5/8", "8/13"] {
        let m = build_model(&one_wheel("0", end)).unwrap();
        let hub = m.tubes.iter().find(|t| t.role == VertexRole::Base { index: 1 }).unwrap();
        assert!(hub.meridian_length() >= last);
        last = hub.meridian_length();
    }
}

#[test]
fn rim_tubes_measure_dehn_twisting() {
    // around slope ∞ a full Dehn twist moves slopes by 2
    let h0 = build_model(&one_wheel("0", "2")).unwrap().constants.annulus_height;
    for k in [-4i64, -3, -2, 2, 3, 4] {
        let m = build_model(&one_wheel("0", &(2 * k).to_string())).unwrap();
        assert_eq!(m.hierarchy.wheels[0].slopes[1], "1/0".parse().unwrap());
        let t = m.tubes.iter().find(|t| matches!(t.role, VertexRole::Rim { .. })).unwrap();
        assert!(t.twist_available && !t.truncated);
        assert_eq!(t.faces.iter().map(|f| f.kind).collect::<Vec<_>>(), [FaceKind::TopTrench, FaceKind::BottomTrench]);
        assert_eq!(t.omega.im, 2.0 * h0);
        assert!((t.omega.re - k as f64).abs() <= 1.0, "k = {k}: ω = {}", t.omega);
    }
}

#[test]
fn adjacent_pair_gives_an_empty_model() {
    let k = SurfaceKind::S05;
    let h = build_hierarchy(&[round_curve(k, 0), round_curve(k, 2)], SelectionRule::Lexicographic).unwrap();
    let m = build_model(&h).unwrap();
    assert!(m.blocks.is_empty() && m.tubes.is_empty() && m.gluings.is_empty());
    assert!(verify_model(&m).ok());
    assert_eq!(ModelComplex::from_json(&export_model(&m, ExportFormat::Json)).unwrap(), m);
}

#[test]
fn tampered_gluing_tag_is_caught() {
    let h = hierarchies().into_iter().find(|h| h.wheels.len() >= 2).unwrap();
    let mut m = build_model(&h).unwrap();
    let g = m.gluings.iter_mut().find(|g| g.kind == GluingType::Two).unwrap();
    g.kind = GluingType::Three;
    let r = verify_model(&m);
    assert!(!r.gluings_ok && !r.ok());
}

#[test]
fn gluing_to_a_missing_block_is_reported() {
    let h = hierarchies().into_iter().find(|h| h.wheels.len() >= 2).unwrap();
    let mut m = build_model(&h).unwrap();
    m.gluings[0].upper = m.blocks.len() + 3;
    let r = verify_model(&m);
    assert!(!r.gluings_ok && !r.levels_ok && !r.ok());
}
