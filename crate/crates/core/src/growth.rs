//! Local rewrites of 4-patches that enlarge two marked polygons while adding
//! only triangles.
//!
//! * square edge: the edge is doubled into a strip of two triangles; each
//!   target polygon gains one corner.
//! * diamond edge: the edge is replaced by a column of six triangles; each
//!   target polygon gains three corners.
//! * circled vertex: the vertex is split into two joined by six triangles;
//!   each target polygon gains three corners.
//!
//! Every rewrite is a face-list edit followed by a full rebuild, and returns a
//! relocated marker so it can be applied again. The p-vector formula of each
//! rewrite is checked against the census of the rebuilt patch afterwards.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::assembly::{self, Assembled};
use crate::patch::{LabeledMarker, Patch, PatchError};
use crate::seq::CountSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkerKind {
    /// Edge whose endpoints touch the two targets at the same rotational position.
    Square,
    /// Edge shared by the two targets.
    Diamond,
    /// Vertex touching the two targets at opposite corners.
    Vertex,
}

impl MarkerKind {
    pub fn name(self) -> &'static str {
        match self {
            MarkerKind::Square => "square",
            MarkerKind::Diamond => "diamond",
            MarkerKind::Vertex => "vertex",
        }
    }

    /// Corners each target gains per step.
    pub fn growth_per_step(self) -> u64 {
        match self {
            MarkerKind::Square => 1,
            MarkerKind::Diamond | MarkerKind::Vertex => 3,
        }
    }

    /// Triangles added per step.
    pub fn triangles_per_step(self) -> u64 {
        match self {
            MarkerKind::Square => 2,
            MarkerKind::Diamond | MarkerKind::Vertex => 6,
        }
    }
}

impl fmt::Display for MarkerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MarkerKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "square" => Ok(MarkerKind::Square),
            "diamond" => Ok(MarkerKind::Diamond),
            "vertex" => Ok(MarkerKind::Vertex),
            other => Err(format!("unknown marker kind `{other}`")),
        }
    }
}

/// A marked edge (square, diamond) or vertex plus its two target faces.
/// `anchor` is an edge id or vertex id, targets are face ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthMarker {
    pub kind: MarkerKind,
    pub anchor: usize,
    pub target1: usize,
    pub target2: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrowthError {
    #[error("expected a {expected} marker, got {got}")]
    WrongKind { expected: MarkerKind, got: MarkerKind },
    #[error("no marker with index {0}")]
    NoSuchMarker(usize),
    #[error("marker does not fit the patch: {0}")]
    MarkerInvalid(String),
    #[error("input is not a 4-patch: {0}")]
    NotFourPatch(String),
    #[error("rewrite broke its postcondition: {0}")]
    PostconditionFailed(String),
    #[error(transparent)]
    Patch(#[from] PatchError),
}

/// Result of a rewrite.
#[derive(Clone, Debug)]
pub struct Grown {
    pub patch: Patch,
    /// The relocated marker, also stored in `patch.markers()` at the index
    /// the input marker had (or appended when it was not stored).
    pub marker: GrowthMarker,
    /// Old vertex id -> vertex id holding the same place in the new patch.
    /// A boundary vertex pushed inside by the rewrite maps to the new vertex
    /// that took its boundary position.
    pub vertex_map: Vec<usize>,
}

fn invalid(msg: impl Into<String>) -> GrowthError {
    GrowthError::MarkerInvalid(msg.into())
}

/// Inserts `seq` (listed from `x` towards `y`) between adjacent corners `x`, `y`.
fn insert_between(face: &mut Vec<usize>, x: usize, y: usize, seq: &[usize]) -> Result<(), GrowthError> {
    let n = face.len();
    for j in 0..n {
        let (a, b) = (face[j], face[(j + 1) % n]);
        let run: Vec<usize> = if a == x && b == y {
            seq.to_vec()
        } else if a == y && b == x {
            seq.iter().rev().copied().collect()
        } else {
            continue;
        };
        for (i, s) in run.into_iter().enumerate() {
            face.insert(j + 1 + i, s);
        }
        return Ok(());
    }
    Err(invalid(format!("labels {x} and {y} are not adjacent on the expected face")))
}

fn replace_vertex(face: &mut [usize], old: usize, new: usize) -> Result<(), GrowthError> {
    let slot = face.iter_mut().find(|v| **v == old).ok_or_else(|| invalid("face lost a corner"))?;
    *slot = new;
    Ok(())
}

/// A patch as labeled inner faces; rewrites edit this and rebuild.
struct Work {
    faces: Vec<Vec<usize>>,
    markers: Vec<LabeledMarker>,
    next: usize,
    r: u32,
    /// Boundary positions handed from an old label to a new one, in order.
    renames: Vec<(usize, usize)>,
}

impl Work {
    fn from_patch(p: &Patch) -> Self {
        Self {
            faces: p.inner_face_lists(),
            markers: p.labeled_markers(|v| v),
            next: p.map().num_vertices(),
            r: p.r(),
            renames: Vec::new(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// Map used to navigate; face id `i` is inner face `i`, the outer face is last.
    fn nav(&self) -> Result<Assembled, GrowthError> {
        Ok(assembly::build_disk(&self.faces).map_err(PatchError::from)?)
    }

    fn reverse_all(&mut self) {
        for f in &mut self.faces {
            f.reverse();
        }
    }

    /// Replaces `old` by `new` in face `f`, or records a boundary rename when
    /// `f` is the outer face.
    fn replace_in(&mut self, f: usize, old: usize, new: usize) -> Result<(), GrowthError> {
        if f < self.faces.len() {
            replace_vertex(&mut self.faces[f], old, new)
        } else {
            self.renames.push((old, new));
            Ok(())
        }
    }

    fn add_faces(&mut self, new_faces: Vec<Vec<usize>>) -> Result<(), GrowthError> {
        self.faces.extend(new_faces);
        self.faces = assembly::orient_faces(&self.faces).map_err(PatchError::from)?;
        Ok(())
    }
}

fn check_targets(nav: &Assembled, m: &LabeledMarker) -> Result<(), GrowthError> {
    let inner = nav.outer_face.expect("disk");
    if m.targets.iter().any(|&t| t >= inner) {
        return Err(invalid("a target is not an inner face"));
    }
    if m.targets[0] == m.targets[1] {
        return Err(invalid("both targets are the same face"));
    }
    Ok(())
}

fn anchor_dart(nav: &Assembled, m: &LabeledMarker) -> Result<usize, GrowthError> {
    if m.anchor.len() != 2 {
        return Err(invalid("edge marker needs two endpoints"));
    }
    nav.dart_between(m.anchor[0], m.anchor[1]).ok_or_else(|| invalid("marked edge does not exist"))
}

fn label(nav: &Assembled, v: usize) -> usize {
    nav.vertex_label[v]
}

/// Dart `a -> b` of the square edge with `a` on target 1, and whether the
/// targets sit counterclockwise of the edge (`true`) or clockwise.
fn square_config(nav: &Assembled, m: &LabeledMarker) -> Result<(usize, bool), GrowthError> {
    let map = &nav.map;
    check_targets(nav, m)?;
    let d = anchor_dart(nav, m)?;
    let [t1, t2] = m.targets;
    let touches = |v: usize, f: usize| map.vertex_darts(v).iter().any(|&x| map.face_of(x) == f);
    let (u, v) = (map.origin(d), map.target(d));
    let a_dart = if touches(u, t1) && touches(v, t2) && !touches(u, t2) && !touches(v, t1) {
        d
    } else if touches(v, t1) && touches(u, t2) && !touches(v, t2) && !touches(u, t1) {
        map.alpha(d)
    } else {
        return Err(invalid("each target must touch exactly one endpoint of the square edge"));
    };
    let (a, b) = (map.origin(a_dart), map.target(a_dart));
    if map.degree(a) != 4 || map.degree(b) != 4 {
        return Err(invalid("square edge endpoints must be 4-valent"));
    }
    let e0 = map.alpha(a_dart);
    let ccw2 = |x: usize| map.sigma(map.sigma(x));
    if map.face_of(ccw2(a_dart)) == t1 && map.face_of(ccw2(e0)) == t2 {
        return Ok((a_dart, true));
    }
    if map.face_of(map.sigma_inv(a_dart)) == t1 && map.face_of(map.sigma_inv(e0)) == t2 {
        return Ok((a_dart, false));
    }
    Err(invalid("targets are not at the same rotational position around both endpoints"))
}

/// Square step with the targets counterclockwise of the edge.
///
/// Around `a`, counterclockwise from `b`: neighbors `y1, y2, y3`, with target
/// 1 between `y1` and `y2`. Around `b` from `a`: `z1, z2, z3`, target 2
/// between `z1` and `z2`. A new vertex `c` splits off `a` taking `y2, y3`, a
/// new vertex `d` splits off `b` taking `z1`, and triangles `a c d`, `a d b`
/// fill the gap.
fn square_apply(w: &mut Work, nav: &Assembled, a_dart: usize, m: &LabeledMarker) -> Result<(), GrowthError> {
    let map = &nav.map;
    let outer = nav.outer_face.expect("disk");
    let d0 = a_dart;
    let d2 = map.sigma(map.sigma(d0));
    let d3 = map.sigma(d2);
    let e0 = map.alpha(d0);
    let e1 = map.sigma(e0);
    let [t1, t2] = m.targets;
    let f23 = map.face_of(d3);
    let f3b = map.face_of(d0);
    if f3b == outer {
        return Err(invalid("the face below the square edge must be inner"));
    }
    let faces = [t1, t2, f23, f3b];
    for i in 0..4 {
        for j in i + 1..4 {
            if faces[i] == faces[j] {
                return Err(invalid("faces around the square edge are not distinct"));
            }
        }
    }
    let a = label(nav, map.origin(d0));
    let b = label(nav, map.target(d0));
    let y2 = label(nav, map.target(d2));
    let z1 = label(nav, map.target(e1));
    let c = w.fresh();
    let d = w.fresh();
    insert_between(&mut w.faces[t1], a, y2, &[c])?;
    w.replace_in(f23, a, c)?;
    replace_vertex(&mut w.faces[f3b], a, c)?;
    replace_vertex(&mut w.faces[f3b], b, d)?;
    insert_between(&mut w.faces[t2], z1, b, &[d])?;
    w.add_faces(vec![vec![a, c, d], vec![a, d, b]])
}

fn square_step(w: &mut Work, mi: usize) -> Result<(), GrowthError> {
    let m = w.markers[mi].clone();
    let nav = w.nav()?;
    let (a_dart, ccw) = square_config(&nav, &m)?;
    if ccw {
        return square_apply(w, &nav, a_dart, &m);
    }
    // in the mirror image the targets sit counterclockwise
    w.reverse_all();
    let nav = w.nav()?;
    let (a_dart, ccw) = square_config(&nav, &m)?;
    debug_assert!(ccw);
    square_apply(w, &nav, a_dart, &m)?;
    w.reverse_all();
    Ok(())
}

/// Diamond step: the edge `B T` between the targets becomes `B p1 .. p4 T`
/// with `p1 L p4` on target 1's side, `p1 R p4` on target 2's side and six
/// triangles in between. The new marked edge is `p4 T`.
fn diamond_step(w: &mut Work, mi: usize) -> Result<(), GrowthError> {
    let m = w.markers[mi].clone();
    let nav = w.nav()?;
    check_targets(&nav, &m)?;
    let map = &nav.map;
    let d = anchor_dart(&nav, &m)?;
    let [t1, t2] = m.targets;
    let d = if map.face_of(d) == t1 && map.face_of(map.alpha(d)) == t2 {
        d
    } else if map.face_of(map.alpha(d)) == t1 && map.face_of(d) == t2 {
        map.alpha(d)
    } else {
        return Err(invalid("diamond edge is not the common edge of its targets"));
    };
    let bottom = label(&nav, map.origin(d));
    let top = label(&nav, map.target(d));
    let p: Vec<usize> = (0..4).map(|_| w.fresh()).collect();
    let (l, r) = (w.fresh(), w.fresh());
    insert_between(&mut w.faces[t1], bottom, top, &[p[0], l, p[3]])?;
    insert_between(&mut w.faces[t2], bottom, top, &[p[0], r, p[3]])?;
    w.add_faces(vec![
        vec![p[0], p[1], l],
        vec![p[1], p[2], l],
        vec![p[2], p[3], l],
        vec![p[0], p[1], r],
        vec![p[1], p[2], r],
        vec![p[2], p[3], r],
    ])?;
    w.markers[mi].anchor = vec![p[3], top];
    Ok(())
}

/// Vertex step: around `V` counterclockwise the neighbors are `UL, DL, DR, UR`
/// with target 1 between `UL, DL` and target 2 between `DR, UR`. `V` keeps
/// `UL, UR`; a new `Vb` takes `DL, DR`; the two are joined through six
/// triangles around a new 4-valent center. `V` stays marked.
fn vertex_step(w: &mut Work, mi: usize) -> Result<(), GrowthError> {
    let m = w.markers[mi].clone();
    let nav = w.nav()?;
    check_targets(&nav, &m)?;
    let map = &nav.map;
    let outer = nav.outer_face.expect("disk");
    let v = *nav.label_vertex.get(&m.anchor[0]).ok_or_else(|| invalid("marked vertex does not exist"))?;
    if map.degree(v) != 4 {
        return Err(invalid("marked vertex must be 4-valent"));
    }
    let darts = map.vertex_darts(v);
    let face = |i: usize| map.face_of(darts[i % 4]);
    let [t1, t2] = m.targets;
    let (j, first, second) = if let Some(j) = (0..4).find(|&j| face(j + 1) == t1 && face(j + 3) == t2) {
        (j, t1, t2)
    } else if let Some(j) = (0..4).find(|&j| face(j + 1) == t2 && face(j + 3) == t1) {
        (j, t2, t1)
    } else {
        return Err(invalid("targets are not at opposite corners of the marked vertex"));
    };
    let bottom = face(j + 2);
    if face(j) == face(j + 2) {
        return Err(invalid("faces around the marked vertex are not distinct"));
    }
    let nb = |i: usize| label(&nav, map.target(darts[(j + i) % 4]));
    let (dl, dr) = (nb(1), nb(2));
    let vl = m.anchor[0];
    let vb = w.fresh();
    let (pp, q, s, t, x) = (w.fresh(), w.fresh(), w.fresh(), w.fresh(), w.fresh());
    insert_between(&mut w.faces[first], vl, dl, &[pp, s, vb])?;
    insert_between(&mut w.faces[second], vl, dr, &[q, t, vb])?;
    if bottom == outer {
        w.renames.push((vl, vb));
    } else {
        replace_vertex(&mut w.faces[bottom], vl, vb)?;
    }
    w.add_faces(vec![
        vec![vl, pp, q],
        vec![vb, s, t],
        vec![x, pp, q],
        vec![x, s, t],
        vec![x, pp, s],
        vec![x, q, t],
    ])
}

/// Applies `k` steps of the rewrite named by `marker.kind`.
///
/// `marker` must be one of `p.markers()` or a marker valid for `p`; the
/// relocated marker replaces it in the output's marker list (or is appended).
pub fn grow(p: &Patch, marker: &GrowthMarker, k: usize) -> Result<Grown, GrowthError> {
    if p.r() != 4 {
        return Err(GrowthError::NotFourPatch(format!("patch has r = {}", p.r())));
    }
    let report = p.r_patch_report(4);
    if !report.holds() {
        return Err(GrowthError::NotFourPatch(report.to_string()));
    }
    for t in [marker.target1, marker.target2] {
        if t >= p.map().num_faces() || t == p.outer_face() {
            return Err(invalid("a target is not an inner face"));
        }
    }
    match marker.kind {
        MarkerKind::Vertex if marker.anchor >= p.map().num_vertices() => return Err(invalid("anchor vertex out of range")),
        MarkerKind::Square | MarkerKind::Diamond if marker.anchor >= p.map().num_edges() => {
            return Err(invalid("anchor edge out of range"))
        }
        _ => {}
    }
    let mut w = Work::from_patch(p);
    let mi = match p.markers().iter().position(|x| x == marker) {
        Some(i) => i,
        None => {
            w.markers.extend(Patch::clone(p).with_markers(vec![*marker]).labeled_markers(|v| v));
            w.markers.len() - 1
        }
    };
    let sizes = (p.map().face_size(marker.target1) as u32, p.map().face_size(marker.target2) as u32);
    for _ in 0..k {
        match marker.kind {
            MarkerKind::Square => square_step(&mut w, mi)?,
            MarkerKind::Diamond => diamond_step(&mut w, mi)?,
            MarkerKind::Vertex => vertex_step(&mut w, mi)?,
        }
    }
    let (patch, built) = Patch::from_inner_faces(&w.faces, w.r)?;
    let new_marker = patch
        .resolve_marker(&built, &w.markers[mi])
        .ok_or_else(|| GrowthError::PostconditionFailed("relocated marker is missing".into()))?;
    let patch = patch.attach_markers(&built, &w.markers);
    let vertex_map = (0..p.map().num_vertices())
        .map(|v| {
            let mut l = v;
            for &(old, new) in &w.renames {
                if old == l {
                    l = new;
                }
            }
            built.vertex(l)
        })
        .collect();
    let grown = Grown { patch, marker: new_marker, vertex_map };
    check_postconditions(p, &grown, marker.kind, sizes, k as u64)?;
    Ok(grown)
}

/// Applies `k` steps using the marker stored at `index`.
pub fn grow_at(p: &Patch, index: usize, k: usize) -> Result<Grown, GrowthError> {
    let m = *p.markers().get(index).ok_or(GrowthError::NoSuchMarker(index))?;
    grow(p, &m, k)
}

fn grow_kind(p: &Patch, m: &GrowthMarker, k: usize, expected: MarkerKind) -> Result<Grown, GrowthError> {
    if m.kind != expected {
        return Err(GrowthError::WrongKind { expected, got: m.kind });
    }
    grow(p, m, k)
}

/// `p - [k1, k2] + [2k x 3] + [k1 + k, k2 + k]`.
pub fn grow_square(p: &Patch, m: &GrowthMarker, k: usize) -> Result<Grown, GrowthError> {
    grow_kind(p, m, k, MarkerKind::Square)
}

/// `p - [k1, k2] + [6k x 3] + [k1 + 3k, k2 + 3k]`.
pub fn grow_diamond(p: &Patch, m: &GrowthMarker, k: usize) -> Result<Grown, GrowthError> {
    grow_kind(p, m, k, MarkerKind::Diamond)
}

/// `p - [k1, k2] + [6k x 3] + [k1 + 3k, k2 + 3k]`.
pub fn grow_vertex(p: &Patch, m: &GrowthMarker, k: usize) -> Result<Grown, GrowthError> {
    grow_kind(p, m, k, MarkerKind::Vertex)
}

/// The census a rewrite must produce.
pub fn predicted_p_vector(p: &CountSequence, kind: MarkerKind, k1: u32, k2: u32, k: u64) -> Option<CountSequence> {
    if k == 0 {
        return Some(p.clone());
    }
    let g = (kind.growth_per_step() * k) as u32;
    let removed = CountSequence::bracket(&[(1, k1), (1, k2)]).ok()?;
    let added = CountSequence::bracket(&[(kind.triangles_per_step() * k, 3), (1, k1 + g), (1, k2 + g)]).ok()?;
    Some(p.checked_sub(&removed)?.add(&added))
}

fn check_postconditions(
    before: &Patch,
    after: &Grown,
    kind: MarkerKind,
    (k1, k2): (u32, u32),
    k: u64,
) -> Result<(), GrowthError> {
    let fail = |m: String| Err(GrowthError::PostconditionFailed(m));
    let expected = predicted_p_vector(&before.p_vector(), kind, k1, k2, k).expect("targets are inner faces");
    let got = after.patch.p_vector();
    if got != expected {
        return fail(format!("census {got}, expected {expected}"));
    }
    let report = after.patch.r_patch_report(4);
    if !report.holds() {
        return fail(format!("not a 4-patch: {report}"));
    }
    let old = before.boundary_walk();
    let new = after.patch.boundary_walk();
    let start = new.position(after.vertex_map[old.vertices[0]]);
    let same = start.is_some_and(|s| {
        let rot = new.rotated(s);
        rot.weights == old.weights
            && rot.vertices.iter().zip(&old.vertices).all(|(&n, &o)| after.vertex_map[o] == n)
    });
    if !same {
        return fail("boundary walk changed".into());
    }
    Ok(())
}
