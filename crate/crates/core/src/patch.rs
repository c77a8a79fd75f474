//! Patches: plane maps with a distinguished outer face whose boundary
//! vertices may be 2-valent.

use std::fmt;

use thiserror::Error;

use crate::assembly::{self, Assembled, AssemblyError, UnionFind};
use crate::growth::{GrowthMarker, MarkerKind};
use crate::map::{MapError, OrientedMap};
use crate::seq::CountSequence;
use crate::verify;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatchError {
    #[error("r must be at least 3, got {0}")]
    BadR(u32),
    #[error("outer face {0} does not exist")]
    BadOuterFace(usize),
    #[error("patch is not planar (euler characteristic {0})")]
    NotPlanar(i64),
    #[error("outer boundary passes vertex {0} more than once")]
    BoundaryNotSimple(usize),
    #[error("patch graph is not simple: {0}")]
    NotSimple(String),
    #[error("inner face {0} has fewer than 3 sides")]
    DegenerateInnerFace(usize),
    #[error("vertex {0} off the boundary has valence {1}")]
    InnerVertexLowValence(usize, usize),
    #[error("paths have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("path is not a run of at least two consecutive boundary vertices")]
    PathNotOnBoundary,
    #[error("weights at path index {index} sum to {sum}, expected r")]
    FitViolation { index: usize, sum: u32 },
    #[error("endpoint weights sum to {sum}, above r")]
    EndpointFit { sum: u32 },
    #[error("glued result is not an r-patch: {0}")]
    ResultNotRPatch(String),
    #[error("patches have different r ({0} vs {1})")]
    RMismatch(u32, u32),
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Boundary vertices with weights `w(v) = deg(v) - 1`, walked in the same
/// rotational sense as inner faces and starting at the origin of the
/// smallest outer dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub vertices: Vec<usize>,
    pub weights: Vec<u32>,
}

impl BoundaryWalk {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }

    /// The walk restarted at position `start`.
    pub fn rotated(&self, start: usize) -> BoundaryWalk {
        let n = self.len();
        BoundaryWalk {
            vertices: (0..n).map(|i| self.vertices[(start + i) % n]).collect(),
            weights: (0..n).map(|i| self.weights[(start + i) % n]).collect(),
        }
    }

    /// Whether `path` occurs as consecutive vertices in walk direction.
    pub fn contains_run(&self, path: &[usize]) -> bool {
        let Some(start) = path.first().and_then(|&v| self.position(v)) else {
            return false;
        };
        path.len() <= self.len()
            && path.iter().enumerate().all(|(i, &v)| self.vertices[(start + i) % self.len()] == v)
    }
}

/// Violations of the r-patch condition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RPatchReport {
    /// Off-boundary vertices whose valence is not r.
    pub inner_wrong: Vec<(usize, usize)>,
    /// Boundary vertices with valence outside `[2, r]`.
    pub boundary_out_of_range: Vec<(usize, usize)>,
}

impl RPatchReport {
    pub fn holds(&self) -> bool {
        self.inner_wrong.is_empty() && self.boundary_out_of_range.is_empty()
    }
}

impl fmt::Display for RPatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, d) in &self.inner_wrong {
            parts.push(format!("inner vertex {v} has valence {d}"));
        }
        for (v, d) in &self.boundary_out_of_range {
            parts.push(format!("boundary vertex {v} has valence {d}"));
        }
        if parts.is_empty() {
            f.write_str("ok")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// `t_i + t_{n+1-i} = r` for every index. Returns the first failing index (1-based).
pub fn self_fitting_violation(t: &[u32], r: u32) -> Option<usize> {
    let n = t.len();
    (0..n).find(|&i| t[i] + t[n - 1 - i] != r).map(|i| i + 1)
}

pub fn is_self_fitting(t: &[u32], r: u32) -> bool {
    self_fitting_violation(t, r).is_none()
}

/// Marker in terms of vertex labels and inner-face indices, so it survives
/// rebuilding the dart tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LabeledMarker {
    pub kind: MarkerKind,
    pub anchor: Vec<usize>,
    pub targets: [usize; 2],
}

#[derive(Clone, Debug)]
pub struct Patch {
    map: OrientedMap,
    outer: usize,
    r: u32,
    markers: Vec<GrowthMarker>,
}

impl Patch {
    /// Checks that `map` is a plane map whose face `outer` is bounded by a
    /// simple cycle, with a simple graph, inner faces of size at least 3 and
    /// 2-valent vertices only on the boundary.
    pub fn new(map: OrientedMap, outer: usize, r: u32) -> Result<Self, PatchError> {
        if r < 3 {
            return Err(PatchError::BadR(r));
        }
        if outer >= map.num_faces() {
            return Err(PatchError::BadOuterFace(outer));
        }
        let chi = map.euler_characteristic();
        if chi != 2 {
            return Err(PatchError::NotPlanar(chi));
        }
        let mut on_boundary = vec![false; map.num_vertices()];
        for v in map.face_vertices(outer) {
            if on_boundary[v] {
                return Err(PatchError::BoundaryNotSimple(v));
            }
            on_boundary[v] = true;
        }
        let (loops, multi) = verify::graph_defects(&map);
        if !loops.is_empty() || !multi.is_empty() {
            let report = verify::SimplicityReport { loops, multi_edges: multi, low_valence: vec![] };
            return Err(PatchError::NotSimple(report.to_string().trim().replace('\n', "; ")));
        }
        for f in 0..map.num_faces() {
            if f != outer && map.face_size(f) < 3 {
                return Err(PatchError::DegenerateInnerFace(f));
            }
        }
        for v in 0..map.num_vertices() {
            if !on_boundary[v] && map.degree(v) < 3 {
                return Err(PatchError::InnerVertexLowValence(v, map.degree(v)));
            }
        }
        Ok(Self { map, outer, r, markers: Vec::new() })
    }

    /// Builds a patch from inner faces over arbitrary labels (see
    /// [`assembly::build_disk`]); inner face `i` becomes face id `i`.
    pub fn from_inner_faces(faces: &[Vec<usize>], r: u32) -> Result<(Self, Assembled), PatchError> {
        let a = assembly::build_disk(faces)?;
        let p = Self::new(a.map.clone(), a.outer_face.expect("disk build"), r)?;
        Ok((p, a))
    }

    pub fn with_markers(mut self, markers: Vec<GrowthMarker>) -> Self {
        self.markers = markers;
        self
    }

    pub fn map(&self) -> &OrientedMap {
        &self.map
    }
    pub fn outer_face(&self) -> usize {
        self.outer
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn markers(&self) -> &[GrowthMarker] {
        &self.markers
    }

    /// Inner faces in id order.
    pub fn inner_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.map.num_faces()).filter(move |&f| f != self.outer)
    }

    pub fn num_inner_faces(&self) -> usize {
        self.map.num_faces() - 1
    }

    /// Rank of an inner face among inner faces.
    pub fn inner_index(&self, f: usize) -> Option<usize> {
        match f.cmp(&self.outer) {
            std::cmp::Ordering::Less => Some(f),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(f - 1),
        }
    }

    pub fn face_of_inner_index(&self, i: usize) -> usize {
        if i < self.outer {
            i
        } else {
            i + 1
        }
    }

    /// Inner faces as vertex-id lists, in inner-index order.
    pub fn inner_face_lists(&self) -> Vec<Vec<usize>> {
        assembly::faces_as_vertex_lists(&self.map, Some(self.outer))
    }

    /// Census of inner faces.
    pub fn p_vector(&self) -> CountSequence {
        self.inner_faces().map(|f| (self.map.face_size(f) as u32, 1)).collect()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.map.face_darts(self.outer).iter().any(|&d| self.map.origin(d) == v)
    }

    pub fn boundary_walk(&self) -> BoundaryWalk {
        let darts = self.map.face_darts(self.outer);
        let n = darts.len();
        let vertices: Vec<usize> = (0..n).map(|i| self.map.origin(darts[(n - i) % n])).collect();
        let weights = vertices.iter().map(|&v| self.map.degree(v) as u32 - 1).collect();
        BoundaryWalk { vertices, weights }
    }

    /// Weight `w(v) = deg(v) - 1`.
    pub fn weight(&self, v: usize) -> u32 {
        self.map.degree(v) as u32 - 1
    }

    pub fn r_patch_report(&self, r: u32) -> RPatchReport {
        let mut report = RPatchReport::default();
        let mut on_boundary = vec![false; self.map.num_vertices()];
        for v in self.map.face_vertices(self.outer) {
            on_boundary[v] = true;
        }
        for v in 0..self.map.num_vertices() {
            let d = self.map.degree(v);
            if on_boundary[v] {
                if d < 2 || d > r as usize {
                    report.boundary_out_of_range.push((v, d));
                }
            } else if d != r as usize {
                report.inner_wrong.push((v, d));
            }
        }
        report
    }

    pub fn is_r_patch(&self, r: u32) -> bool {
        self.r_patch_report(r).holds()
    }

    /// Boundary weights are, up to rotation, `k` repetitions of `1, w_1..w_n`.
    pub fn is_w_k_gonal(&self, w: &[u32], k: usize, r: u32) -> bool {
        self.is_r_patch(r) && self.w_k_gonal_offset(w, k).is_some()
    }

    /// First walk position where the `1, w_1..w_n` pattern starts.
    pub fn w_k_gonal_offset(&self, w: &[u32], k: usize) -> Option<usize> {
        let walk = self.boundary_walk();
        let period = w.len() + 1;
        if k == 0 || walk.len() != k * period {
            return None;
        }
        let expected = |i: usize| if i.is_multiple_of(period) { 1 } else { w[i % period - 1] };
        (0..walk.len()).find(|&o| (0..walk.len()).all(|i| walk.weights[(o + i) % walk.len()] == expected(i)))
    }

    pub(crate) fn labeled_markers(&self, label: impl Fn(usize) -> usize) -> Vec<LabeledMarker> {
        self.markers
            .iter()
            .map(|m| {
                let anchor = match m.kind {
                    MarkerKind::Vertex => vec![label(m.anchor)],
                    MarkerKind::Square | MarkerKind::Diamond => {
                        let d = self.map.edge_dart(m.anchor);
                        vec![label(self.map.origin(d)), label(self.map.target(d))]
                    }
                };
                let t = |f: usize| self.inner_index(f).unwrap_or(usize::MAX);
                LabeledMarker { kind: m.kind, anchor, targets: [t(m.target1), t(m.target2)] }
            })
            .collect()
    }

    /// Resolves a labeled marker against a patch built by
    /// [`Patch::from_inner_faces`]; `None` when the anchor no longer exists.
    pub(crate) fn resolve_marker(&self, built: &Assembled, m: &LabeledMarker) -> Option<GrowthMarker> {
        let anchor = match m.kind {
            MarkerKind::Vertex => built.label_vertex.get(&m.anchor[0]).copied(),
            _ => built.dart_between(m.anchor[0], m.anchor[1]).map(|d| self.map.edge_of(d)),
        }?;
        let nf = self.num_inner_faces();
        if m.targets.iter().any(|&t| t >= nf) {
            return None;
        }
        Some(GrowthMarker {
            kind: m.kind,
            anchor,
            target1: self.face_of_inner_index(m.targets[0]),
            target2: self.face_of_inner_index(m.targets[1]),
        })
    }

    /// Re-attaches labeled markers to a patch built by [`Patch::from_inner_faces`].
    /// Markers whose anchor no longer exists are dropped.
    pub(crate) fn attach_markers(mut self, built: &Assembled, markers: &[LabeledMarker]) -> Self {
        self.markers = markers.iter().filter_map(|m| self.resolve_marker(built, m)).collect();
        self
    }
}

/// A glued patch and where the vertices of the two inputs went.
#[derive(Clone, Debug)]
pub struct Glued {
    pub patch: Patch,
    /// Vertex id in the first input -> vertex id in the result.
    pub first: Vec<usize>,
    /// Vertex id in the second input -> vertex id in the result.
    pub second: Vec<usize>,
}

/// Glues `p2` to `p1` identifying `path1[i]` with `path2[n-1-i]`.
///
/// Both paths run along their boundary walks. Interior path vertices must
/// have weights summing to r; endpoint sums must not exceed r, and the result
/// must again be an r-patch. Inner faces of `p1` come first in the result,
/// followed by those of `p2`, both in their original order; markers of both
/// inputs are carried over.
pub fn glue_along(p1: &Patch, path1: &[usize], p2: &Patch, path2: &[usize]) -> Result<Glued, PatchError> {
    if p1.r() != p2.r() {
        return Err(PatchError::RMismatch(p1.r(), p2.r()));
    }
    let r = p1.r();
    let n = path1.len();
    if n != path2.len() {
        return Err(PatchError::LengthMismatch(n, path2.len()));
    }
    if n < 2 || !p1.boundary_walk().contains_run(path1) || !p2.boundary_walk().contains_run(path2) {
        return Err(PatchError::PathNotOnBoundary);
    }
    for i in 1..n - 1 {
        let sum = p1.weight(path1[i]) + p2.weight(path2[n - 1 - i]);
        if sum != r {
            return Err(PatchError::FitViolation { index: i, sum });
        }
    }
    for (a, b) in [(path1[0], path2[n - 1]), (path1[n - 1], path2[0])] {
        let sum = p1.weight(a) + p2.weight(b);
        if sum > r {
            return Err(PatchError::EndpointFit { sum });
        }
    }

    let v1 = p1.map().num_vertices();
    let v2 = p2.map().num_vertices();
    let mut uf = UnionFind::new(v1 + v2);
    for i in 0..n {
        uf.union(path1[i], v1 + path2[n - 1 - i]);
    }
    let rep: Vec<usize> = (0..v1 + v2).map(|x| uf.find(x)).collect();
    let mut faces = p1.inner_face_lists();
    faces.extend(p2.inner_face_lists().into_iter().map(|f| f.into_iter().map(|v| v + v1).collect()));
    for f in &mut faces {
        for v in f.iter_mut() {
            *v = rep[*v];
        }
    }
    let (patch, built) = Patch::from_inner_faces(&faces, r)?;
    let report = patch.r_patch_report(r);
    if !report.holds() {
        return Err(PatchError::ResultNotRPatch(report.to_string()));
    }
    let f1 = p1.num_inner_faces();
    let mut markers = p1.labeled_markers(|v| rep[v]);
    let mut m2 = p2.labeled_markers(|v| rep[v + v1]);
    for m in &mut m2 {
        for t in &mut m.targets {
            *t += f1;
        }
    }
    markers.extend(m2);
    let patch = patch.attach_markers(&built, &markers);
    let first = (0..v1).map(|v| built.vertex(rep[v])).collect();
    let second = (0..v2).map(|v| built.vertex(rep[v + v1])).collect();
    Ok(Glued { patch, first, second })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hexagon() -> Patch {
        Patch::from_inner_faces(&[vec![0, 1, 2, 3, 4, 5]], 3).unwrap().0
    }

    #[test]
    fn hexagon_walk() {
        let h = hexagon();
        let w = h.boundary_walk();
        assert_eq!(w.weights, vec![1; 6]);
        // inner face order: the walk agrees with the face's own order
        let face = h.map().face_vertices(0);
        let start = face.iter().position(|&v| v == w.vertices[0]).unwrap();
        let rotated: Vec<_> = (0..6).map(|i| face[(start + i) % 6]).collect();
        assert_eq!(rotated, w.vertices);
        assert!(h.is_r_patch(3));
        // six corners of weight 1: a triangle with one side vertex per edge,
        // or a 2-gon with two
        assert!(h.is_w_k_gonal(&[1], 3, 3));
        assert!(h.is_w_k_gonal(&[1, 1], 2, 3));
        assert!(!h.is_w_k_gonal(&[1, 1], 3, 3));
    }

    #[test]
    fn self_fitting() {
        assert!(is_self_fitting(&[2, 2], 4));
        assert!(is_self_fitting(&[1, 2, 1, 3, 2, 3], 4));
        assert!(!is_self_fitting(&[1, 1], 4));
        assert_eq!(self_fitting_violation(&[1, 2, 2], 4), Some(1));
        assert!(is_self_fitting(&[], 4));
    }

    #[test]
    fn two_hexagons_along_an_edge() {
        let h = hexagon();
        let w = h.boundary_walk();
        let path = [w.vertices[0], w.vertices[1]];
        let g = glue_along(&h, &path, &h, &path).unwrap();
        assert_eq!(g.patch.p_vector().to_string(), "6:2");
        assert_eq!(g.patch.boundary_walk().len(), 10);
        assert!(g.patch.is_r_patch(3));
    }

    #[test]
    fn fit_violation() {
        let h = hexagon();
        let w = h.boundary_walk();
        let path: Vec<_> = w.vertices[0..3].to_vec();
        // interior weights 1 + 1 != 3
        let err = glue_along(&h, &path, &h, &path).unwrap_err();
        assert_eq!(err, PatchError::FitViolation { index: 1, sum: 2 });
        let err = glue_along(&h, &path, &h, &path[..2]).unwrap_err();
        assert_eq!(err, PatchError::LengthMismatch(3, 2));
        let err = glue_along(&h, &[w.vertices[1], w.vertices[0]], &h, &path[..2]).unwrap_err();
        assert_eq!(err, PatchError::PathNotOnBoundary);
    }

    #[test]
    fn square_is_not_two_two_gonal() {
        let (sq, _) = Patch::from_inner_faces(&[vec![0, 1, 2, 3]], 4).unwrap();
        assert!(!sq.is_w_k_gonal(&[2, 2], 4, 4));
    }
}
