#![allow(clippy::approx_constant)] // coordinates transcribed from drawings

//! The shipped patch files are generated from straight-line drawings below.
//! Run with `UPDATE_CATALOG=1` to rewrite `data/*.map` after editing a drawing.

use std::collections::BTreeMap;

use eberhard_core::catalog;
use eberhard_core::expansion::{validate_expansion_patch, ExpansionRoles};
use eberhard_core::format::{self, Body, Document};
use eberhard_core::growth::{GrowthMarker, MarkerKind};
use eberhard_core::patch::Patch;
use eberhard_core::OrientedMap;

struct Drawing {
    name: &'static str,
    comments: &'static [&'static str],
    r: u32,
    points: Vec<(&'static str, f64, f64)>,
    edges: Vec<(&'static str, &'static str)>,
    /// `(i_0, m, n, s)`
    roles: Option<(&'static str, usize, usize, usize)>,
    /// Anchor point names and one point inside each target face.
    markers: Vec<(MarkerKind, &'static [&'static str], [(f64, f64); 2])>,
}

fn cycle(names: &[&'static str]) -> Vec<(&'static str, &'static str)> {
    (0..names.len()).map(|i| (names[i], names[(i + 1) % names.len()])).collect()
}

fn inside(poly: &[(f64, f64)], (x, y): (f64, f64)) -> bool {
    let mut c = false;
    for i in 0..poly.len() {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % poly.len()];
        if (y1 > y) != (y2 > y) && x < x1 + (y - y1) * (x2 - x1) / (y2 - y1) {
            c = !c;
        }
    }
    c
}

fn build(d: &Drawing) -> Document {
    let index: BTreeMap<&str, usize> = d.points.iter().enumerate().map(|(i, p)| (p.0, i)).collect();
    let pts: Vec<(f64, f64)> = d.points.iter().map(|p| (p.1, p.2)).collect();
    let edges: Vec<(usize, usize)> = d.edges.iter().map(|(a, b)| (index[a], index[b])).collect();
    let (map, outer) = OrientedMap::from_straight_line_drawing(&pts, &edges).unwrap();
    let mut vertex_of_point = vec![usize::MAX; pts.len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        vertex_of_point[a] = map.origin(2 * e);
        vertex_of_point[b] = map.origin(2 * e + 1);
    }
    let mut point_of_vertex = vec![0; map.num_vertices()];
    for (p, &v) in vertex_of_point.iter().enumerate() {
        point_of_vertex[v] = p;
    }
    let vx = |name: &str| vertex_of_point[index[name]];
    let labels = (0..map.num_vertices())
        .map(|v| (map.vertex_darts(v)[0], d.points[point_of_vertex[v]].0.to_string()))
        .collect();
    let map = map.with_labels(labels);
    let face_at = |q: (f64, f64)| {
        let hits: Vec<usize> = (0..map.num_faces())
            .filter(|&f| f != outer)
            .filter(|&f| {
                let poly: Vec<(f64, f64)> = map.face_vertices(f).iter().map(|&v| pts[point_of_vertex[v]]).collect();
                inside(&poly, q)
            })
            .collect();
        assert_eq!(hits.len(), 1, "{}: point {q:?} is not inside exactly one face", d.name);
        hits[0]
    };
    let markers = d
        .markers
        .iter()
        .map(|(kind, anchor, targets)| {
            let anchor = match kind {
                MarkerKind::Vertex => vx(anchor[0]),
                _ => {
                    let (a, b) = (vx(anchor[0]), vx(anchor[1]));
                    let dart = map.vertex_darts(a).iter().copied().find(|&x| map.target(x) == b).unwrap();
                    map.edge_of(dart)
                }
            };
            GrowthMarker { kind: *kind, anchor, target1: face_at(targets[0]), target2: face_at(targets[1]) }
        })
        .collect();
    let patch = Patch::new(map, outer, d.r).unwrap().with_markers(markers);
    let body = match d.roles {
        None => Body::Patch(patch),
        Some((i0, m, n, s)) => {
            let walk = patch.boundary_walk();
            let start = walk.position(vx(i0)).unwrap();
            let roles = ExpansionRoles::from_walk(&walk, start, m, n, s).unwrap();
            Body::Expansion(validate_expansion_patch(patch, roles).unwrap())
        }
    };
    Document::new(body).with_comments(d.comments.iter().copied())
}

fn drawings() -> Vec<Drawing> {
    let hexagon: Vec<(&str, f64, f64)> = ["h0", "h1", "h2", "h3", "h4", "h5"]
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let a = std::f64::consts::PI * (1.0 - i as f64 / 3.0);
            (n, a.cos(), a.sin())
        })
        .collect();
    let pn35_points = vec![
        ("A", 0.5, 1.0),
        ("B", -0.5, 1.0),
        ("C", -1.5, 3.0),
        ("D", -4.0, 6.0),
        ("E", -3.5, 7.0),
        ("F", -2.5, 7.0),
        ("G", -1.0, 6.5),
        ("H", -0.5, 7.0),
        ("I", 0.5, 7.0),
        ("J", 1.0, 7.5),
        ("K", 2.5, 7.0),
        ("L", 1.5, 3.0),
        ("M", -0.5, 4.5),
        ("N", 0.5, 3.0),
        ("P", -1.0, 6.0),
    ];
    let mut pn35_edges = cycle(&["A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L"]);
    pn35_edges.extend([
        ("C", "M"),
        ("M", "N"),
        ("N", "A"),
        ("D", "P"),
        ("P", "G"),
        ("C", "P"),
        ("M", "P"),
        ("M", "I"),
        ("N", "I"),
        ("N", "J"),
    ]);
    let a: [&'static str; 17] = [
        "a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11", "a12", "a13", "a14", "a15", "a16",
    ];
    let pn37_coords = [
        (0.0, 1.5),
        (-1.0, 2.0),
        (-0.5, 3.0),
        (0.5, 3.5),
        (1.5, 3.0),
        (2.5, 3.0),
        (4.5, 2.5),
        (5.5, 3.0),
        (6.5, 2.5),
        (5.5, 2.0),
        (5.0, 1.0),
        (4.0, 0.5),
        (3.0, 0.5),
        (2.0, 0.0),
        (2.0, 1.0),
        (1.0, 1.5),
        (2.0, 2.0),
    ];
    let mut pn37_edges = cycle(&a[..16]);
    pn37_edges.extend([
        ("a12", "a14"),
        ("a14", "a16"),
        ("a16", "a15"),
        ("a4", "a16"),
        ("a16", "a5"),
        ("a10", "a6"),
        ("a6", "a9"),
        ("a9", "a7"),
    ]);
    let x: [&'static str; 31] = [
        "x0", "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11", "x12", "x13", "x14", "x15", "x16",
        "x17", "x18", "x19", "x20", "x21", "x22", "x23", "x24", "x25", "x26", "x27", "x28", "x29", "x30",
    ];
    let pf35_coords = [
        (-0.145531, 0.231610),
        (-0.063274, -0.419927),
        (0.405804, -0.125166),
        (-0.993712, 0.111964),
        (-0.993712, -0.111964),
        (-0.330279, -0.943883),
        (-0.111964, -0.993712),
        (0.111964, -0.993712),
        (0.943883, -0.330279),
        (0.993712, -0.111964),
        (0.993712, 0.111964),
        (0.330279, 0.943883),
        (0.111964, 0.993712),
        (-0.943883, 0.330279),
        (-0.111964, 0.993712),
        (-0.532032, 0.846724),
        (-0.707107, 0.707107),
        (-0.846724, 0.532032),
        (-0.330279, 0.943883),
        (-0.846724, -0.532032),
        (-0.707107, -0.707107),
        (-0.532032, -0.846724),
        (-0.943883, -0.330279),
        (0.532032, -0.846724),
        (0.707107, -0.707107),
        (0.846724, -0.532032),
        (0.330279, -0.943883),
        (0.846724, 0.532032),
        (0.707107, 0.707107),
        (0.532032, 0.846724),
        (0.943883, 0.330279),
    ];
    let pf35_edges = [
        (0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 1), (5, 6), (6, 1), (6, 7), (7, 8), (8, 2),
        (8, 9), (9, 2), (9, 10), (10, 11), (11, 0), (11, 12), (12, 13), (13, 3), (12, 14), (14, 13), (14, 15),
        (15, 16), (16, 17), (17, 13), (14, 18), (18, 15), (4, 19), (19, 20), (20, 21), (21, 5), (4, 22),
        (22, 19), (7, 23), (23, 24), (24, 25), (25, 8), (7, 26), (26, 23), (10, 27), (27, 28), (28, 29),
        (29, 11), (10, 30), (30, 27),
    ];
    vec![
        Drawing {
            name: "H",
            comments: &["Hexagon as an expansion 3-patch; outer tuple (2,1)."],
            r: 3,
            points: hexagon,
            edges: cycle(&["h0", "h1", "h2", "h3", "h4", "h5"]),
            roles: Some(("h0", 1, 3, 2)),
            markers: vec![],
        },
        Drawing {
            name: "Q2",
            comments: &["Two quadrangles sharing an edge, as an expansion 4-patch; outer tuple (2,2)."],
            r: 4,
            points: vec![
                ("q0", -2.0, -1.0),
                ("q1", -2.0, 1.0),
                ("q2", 0.0, 1.0),
                ("q3", 2.0, 1.0),
                ("q4", 2.0, -1.0),
                ("q5", 0.0, -1.0),
            ],
            edges: {
                let mut e = cycle(&["q0", "q1", "q2", "q3", "q4", "q5"]);
                e.push(("q2", "q5"));
                e
            },
            roles: Some(("q0", 1, 3, 2)),
            markers: vec![(MarkerKind::Diamond, &["q2", "q5"], [(-1.0, 0.0), (1.0, 0.0)])],
        },
        Drawing {
            name: "PN35",
            comments: &[
                "Expansion 4-patch of triangles and pentagons, p = {3:4, 5:4}; outer tuple (1,2,1,3,2,3).",
                "Two square edges, each pointing at two pentagons.",
            ],
            r: 4,
            points: pn35_points,
            edges: pn35_edges,
            roles: Some(("B", 2, 7, 1)),
            markers: vec![
                (MarkerKind::Square, &["C", "P"], [(-0.5, 2.5), (-2.0, 6.5)]),
                (MarkerKind::Square, &["N", "I"], [(1.0, 4.0), (-0.25, 6.25)]),
            ],
        },
        Drawing {
            name: "PN37",
            comments: &[
                "Expansion 4-patch of triangles and heptagons, p = {3:6, 7:2}; outer tuple (2,2,3,2,1,3,2,1,2,2).",
                "One marked vertex between the two heptagons.",
            ],
            r: 4,
            points: a.iter().zip(pn37_coords).map(|(&n, (px, py))| (n, px, py)).collect(),
            edges: pn37_edges,
            roles: Some(("a0", 2, 11, 1)),
            markers: vec![(MarkerKind::Vertex, &["a16"], [(0.5, 2.5), (3.5, 1.5)])],
        },
        Drawing {
            name: "PF35",
            comments: &[
                "4-patch of triangles and pentagons, p = {3:8, 5:8}, filling a quadrangle:",
                "its boundary is the (1,2,1,3,2,3)-expansion of a 4-gon.",
                "Three diamond edges and one marked vertex.",
            ],
            r: 4,
            points: x.iter().zip(pf35_coords).map(|(&n, (px, py))| (n, px, py)).collect(),
            edges: pf35_edges.iter().map(|&(p, q)| (x[p], x[q])).collect(),
            roles: None,
            markers: vec![
                (MarkerKind::Diamond, &["x4", "x5"], [(-0.505302, -0.226440), (-0.581971, -0.728342)]),
                (MarkerKind::Diamond, &["x7", "x8"], [(0.257283, -0.572559), (0.748342, -0.571971)]),
                (MarkerKind::Diamond, &["x10", "x11"], [(0.515595, 0.210065), (0.581971, 0.728342)]),
                (MarkerKind::Vertex, &["x13"], [(-0.328177, 0.522290), (-0.628342, 0.681971)]),
            ],
        },
    ]
}

#[test]
fn catalog_files_match_drawings() {
    let update = std::env::var_os("UPDATE_CATALOG").is_some();
    for d in drawings() {
        let text = format::write(&build(&d));
        if update {
            let path = format!("{}/data/{}.map", env!("CARGO_MANIFEST_DIR"), d.name);
            std::fs::write(path, &text).unwrap();
        } else {
            assert_eq!(text, catalog::patch_text(d.name).unwrap(), "{} is stale; rerun with UPDATE_CATALOG=1", d.name);
        }
    }
}

#[test]
fn catalog_round_trips() {
    for name in catalog::patch_names() {
        let text = catalog::patch_text(name).unwrap();
        let doc = format::parse(text).unwrap();
        assert_eq!(format::write(&doc), text, "{name}");
    }
}
