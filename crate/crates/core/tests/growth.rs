use eberhard_core::catalog;
use eberhard_core::growth::{grow, grow_at, grow_diamond, grow_square, grow_vertex, GrowthError, MarkerKind};
use eberhard_core::patch::Patch;
use eberhard_core::{verify, CountSequence, Exec};

fn seq(s: &str) -> CountSequence {
    s.parse().unwrap()
}

/// Census oracle written out per kind, independent of the library's helper.
fn expected(p: &CountSequence, kind: MarkerKind, k1: u32, k2: u32, k: u64) -> CountSequence {
    if k == 0 {
        return p.clone();
    }
    let (tri, g) = match kind {
        MarkerKind::Square => (2 * k, k as u32),
        MarkerKind::Diamond | MarkerKind::Vertex => (6 * k, 3 * k as u32),
    };
    let mut out: std::collections::BTreeMap<u32, i64> = p.iter().map(|(s, c)| (s, c as i64)).collect();
    *out.entry(k1).or_default() -= 1;
    *out.entry(k2).or_default() -= 1;
    *out.entry(3).or_default() += tri as i64;
    *out.entry(k1 + g).or_default() += 1;
    *out.entry(k2 + g).or_default() += 1;
    out.into_iter().filter(|&(_, c)| c != 0).map(|(s, c)| (s, u64::try_from(c).unwrap())).collect()
}

fn same_cyclic(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|o| (0..a.len()).all(|i| a[(o + i) % a.len()] == b[i]))
}

#[test]
fn every_shipped_marker_for_k_up_to_five() {
    for name in ["Q2", "PN35", "PN37", "PF35"] {
        let body = catalog::get_patch(name).unwrap();
        let p = body.patch().unwrap().clone();
        for (idx, m) in p.markers().iter().enumerate() {
            let (k1, k2) = (p.map().face_size(m.target1) as u32, p.map().face_size(m.target2) as u32);
            for k in 0..=5 {
                let g = grow_at(&p, idx, k).unwrap_or_else(|e| panic!("{name} marker {idx} k={k}: {e}"));
                assert_eq!(g.patch.p_vector(), expected(&p.p_vector(), m.kind, k1, k2, k as u64), "{name} {idx} {k}");
                assert!(g.patch.is_r_patch(4));
                let before = p.boundary_walk();
                let after = g.patch.boundary_walk();
                assert!(same_cyclic(&after.weights, &before.weights), "{name} {idx} {k}");
                assert_eq!(g.patch.markers()[idx], g.marker);
                if let eberhard_core::format::Body::Expansion(e) = &body {
                    let e2 = e.after_growth(&g).unwrap_or_else(|err| panic!("{name} {idx} {k}: {err}"));
                    assert_eq!(e2.outer_tuple(), e.outer_tuple());
                }
            }
        }
    }
}

#[test]
fn q2_diamond() {
    let q2 = catalog::get_plain_patch("Q2").unwrap();
    let g = grow_diamond(&q2, &q2.markers()[0], 1).unwrap();
    assert_eq!(g.patch.p_vector(), seq("3:6,7:2"));
}

#[test]
fn pn35_squares() {
    let pn = catalog::get_plain_patch("PN35").unwrap();
    for (k, p) in [(1, "3:8,6:4"), (2, "3:12,7:4")] {
        let g = grow_square(&pn, &pn.markers()[0], k).unwrap();
        let g = grow_square(&g.patch, &g.patch.markers()[1], k).unwrap();
        assert_eq!(g.patch.p_vector(), seq(p));
    }
}

#[test]
fn pf35_diamond_and_vertex() {
    let pf = catalog::get_plain_patch("PF35").unwrap();
    let kinds: Vec<MarkerKind> = pf.markers().iter().map(|m| m.kind).collect();
    assert_eq!(kinds, [MarkerKind::Diamond, MarkerKind::Diamond, MarkerKind::Diamond, MarkerKind::Vertex]);
    let g = grow_diamond(&pf, &pf.markers()[0], 1).unwrap();
    assert_eq!(g.patch.p_vector(), seq("3:14,5:6,8:2"));
    let g = grow_vertex(&pf, &pf.markers()[3], 1).unwrap();
    assert_eq!(g.patch.p_vector(), seq("3:14,5:6,8:2"));
    let twice = grow_vertex(&g.patch, &g.marker, 1).unwrap();
    let once = grow_vertex(&pf, &pf.markers()[3], 2).unwrap();
    assert_eq!(twice.patch.p_vector(), once.patch.p_vector());
}

#[test]
fn grown_pf35_still_fills_a_quadrangle() {
    let mut p = catalog::get_plain_patch("PF35").unwrap();
    for i in 0..4 {
        p = grow_at(&p, i, 1).unwrap().patch;
    }
    assert_eq!(p.p_vector(), seq("3:32,8:8"));
    assert!(p.is_w_k_gonal(&[1, 2, 1, 3, 2, 3], 4, 4));
}

#[test]
fn squares_keep_faces_meeting_properly() {
    let pn = catalog::get_plain_patch("PN35").unwrap();
    let outer = pn.outer_face();
    assert!(verify::first_improper_pair(pn.map(), Exec::Sequential, |f| f != outer).is_none());
    let g = grow_at(&pn, 0, 3).unwrap();
    let outer = g.patch.outer_face();
    assert!(verify::first_improper_pair(g.patch.map(), Exec::Sequential, |f| f != outer).is_none());
}

#[test]
fn wrong_kind_and_bad_markers() {
    let pn = catalog::get_plain_patch("PN35").unwrap();
    let m = pn.markers()[0];
    assert!(matches!(grow_diamond(&pn, &m, 1), Err(GrowthError::WrongKind { .. })));
    assert!(matches!(grow_at(&pn, 7, 1), Err(GrowthError::NoSuchMarker(7))));
    // the square edge is not the common edge of its targets
    let mut d = m;
    d.kind = MarkerKind::Diamond;
    assert!(matches!(grow(&pn, &d, 1), Err(GrowthError::MarkerInvalid(_))));
    let mut same = m;
    same.target2 = same.target1;
    assert!(matches!(grow(&pn, &same, 1), Err(GrowthError::MarkerInvalid(_))));
}

#[test]
fn three_patch_is_rejected() {
    let h = catalog::get_plain_patch("H").unwrap();
    let (sq, built) = Patch::from_inner_faces(&[vec![0, 1, 2, 3], vec![0, 3, 4, 5]], 4).unwrap();
    let shared = sq.map().edge_of(built.dart_between(0, 3).unwrap());
    let m = eberhard_core::growth::GrowthMarker { kind: MarkerKind::Diamond, anchor: shared, target1: 0, target2: 1 };
    assert!(grow(&sq, &m, 1).is_ok());
    assert!(matches!(grow(&h, &m, 1), Err(GrowthError::NotFourPatch(_))));
}

#[test]
fn diamond_growth_makes_its_targets_share_two_edges() {
    let q2 = catalog::get_plain_patch("Q2").unwrap();
    let m = q2.markers()[0];
    let g = grow_diamond(&q2, &m, 1).unwrap();
    let map = g.patch.map();
    let (a, b) = (g.marker.target1, g.marker.target2);
    let shared = (0..map.num_edges())
        .filter(|&e| {
            let d = map.edge_dart(e);
            let pair = (map.face_of(d), map.face_of(map.alpha(d)));
            pair == (a, b) || pair == (b, a)
        })
        .count();
    assert_eq!(shared, 2);
    assert!(!verify::meets_properly(map, a, b).unwrap());
}
