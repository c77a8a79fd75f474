use eberhard_core::catalog;
use eberhard_core::expansion::{edge_patch, face_origin, has_polyhedral_property, ring, ExpansionError, FaceOrigin};
use eberhard_core::patch::is_self_fitting;
use eberhard_core::{CountSequence, Exec};

fn seq(s: &str) -> CountSequence {
    s.parse().unwrap()
}

#[test]
fn outer_tuples_of_shipped_expansion_patches() {
    let cases: [(&str, &[u32]); 4] = [
        ("H", &[2, 1]),
        ("Q2", &[2, 2]),
        ("PN35", &[1, 2, 1, 3, 2, 3]),
        ("PN37", &[2, 2, 3, 2, 1, 3, 2, 1, 2, 2]),
    ];
    for (name, tuple) in cases {
        let e = catalog::get_expansion_patch(name).unwrap();
        assert_eq!(e.outer_tuple(), tuple, "{name}");
        assert!(is_self_fitting(tuple, e.r()));
    }
}

#[test]
fn shipped_censuses() {
    let cases = [("H", "6:1"), ("Q2", "4:2"), ("PN35", "3:4,5:4"), ("PN37", "3:6,7:2"), ("PF35", "3:8,5:8")];
    for (name, p) in cases {
        assert_eq!(catalog::get_plain_patch(name).unwrap().p_vector(), seq(p), "{name}");
    }
}

#[test]
fn q2_boundary_weights() {
    let q2 = catalog::get_plain_patch("Q2").unwrap();
    let w = q2.boundary_walk().weights;
    let pattern = [1, 2, 1, 1, 2, 1];
    assert!((0..6).any(|o| (0..6).all(|i| w[(o + i) % 6] == pattern[i])), "{w:?}");
}

#[test]
fn pf35_fills_a_quadrangle() {
    let pf = catalog::get_plain_patch("PF35").unwrap();
    assert!(pf.is_w_k_gonal(&[1, 2, 1, 3, 2, 3], 4, 4));
    assert!(pf.is_r_patch(4));
    assert!(!pf.is_r_patch(3));
}

#[test]
fn ring_census_matches_formula() {
    for name in ["H", "Q2", "PN35", "PN37"] {
        let e = catalog::get_expansion_patch(name).unwrap();
        for k in 3..=8usize {
            let m = ring(&e, k).unwrap();
            // oracle: [k] + k * p(E), with the census read off the built map
            let mut expected = e.patch().p_vector().scale(k as u64);
            expected = expected.add(&CountSequence::unit(k as u32).unwrap());
            assert_eq!(m.p_vector(), expected, "{name} k={k}");
            assert!(m.is_w_k_gonal(e.outer_tuple(), k, e.r()), "{name} k={k}");
        }
    }
}

#[test]
fn ring_examples() {
    let h = catalog::get_expansion_patch("H").unwrap();
    assert_eq!(ring(&h, 6).unwrap().p_vector(), seq("6:7"));
    let q2 = catalog::get_expansion_patch("Q2").unwrap();
    assert_eq!(ring(&q2, 4).unwrap().p_vector(), seq("4:9"));
    assert!(ring(&q2, 4).unwrap().is_w_k_gonal(&[2, 2], 4, 4));
    let pn = catalog::get_expansion_patch("PN35").unwrap();
    assert_eq!(ring(&pn, 3).unwrap().p_vector(), seq("3:13,5:12"));
    assert_eq!(ring(&pn, 2).unwrap_err(), ExpansionError::KTooSmall(2));
}

#[test]
fn ring_center_is_last() {
    let pn = catalog::get_expansion_patch("PN35").unwrap();
    let m = ring(&pn, 5).unwrap();
    let last = m.num_inner_faces() - 1;
    assert_eq!(m.map().face_size(m.face_of_inner_index(last)), 5);
    assert_eq!(face_origin(&pn, Some(5), last), FaceOrigin::Center);
    assert_eq!(face_origin(&pn, Some(5), 9), FaceOrigin::Copy { copy: 1, face: 1 });
}

#[test]
fn edge_patches() {
    for (name, p) in [("H", "6:4"), ("Q2", "4:8"), ("PN35", "3:16,5:16"), ("PN37", "3:24,7:8")] {
        let e = catalog::get_expansion_patch(name).unwrap();
        let ep = edge_patch(&e).unwrap();
        assert_eq!(ep.p_vector(), seq(p), "{name}");
        assert!(ep.is_r_patch(e.r()));
    }
}

#[test]
fn polyhedral_property() {
    for name in ["H", "Q2", "PN35"] {
        let e = catalog::get_expansion_patch(name).unwrap();
        let seqv = has_polyhedral_property(&e, Exec::Sequential).unwrap();
        assert!(seqv.holds(), "{name}: {:?}", seqv.witness);
        assert_eq!(has_polyhedral_property(&e, Exec::Parallel).unwrap(), seqv);
    }
}
