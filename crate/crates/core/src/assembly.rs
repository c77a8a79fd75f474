//! Building maps from oriented face lists.
//!
//! Every gluing and rewrite in the crate is expressed as a list of faces over
//! integer vertex labels; the builders here turn such a list into dart tables.
//! A face `[a, b, c, ...]` contributes darts `a->b`, `b->c`, ... in that order,
//! and is walked in exactly that order by `phi` in the resulting map. Darts are
//! numbered face by face, so face `i` of the input becomes face id `i`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use thiserror::Error;

use crate::map::{Dart, MapError, OrientedMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssemblyError {
    #[error("face {0} has fewer than 3 corners")]
    DegenerateFace(usize),
    #[error("directed edge {0} -> {1} occurs in two faces (orientation clash)")]
    DuplicateDirectedEdge(usize, usize),
    #[error("edge {0} - {1} has no partner face in a closed surface")]
    OpenEdge(usize, usize),
    #[error("boundary is pinched at vertex label {0}")]
    PinchedBoundary(usize),
    #[error("boundary consists of {0} cycles, expected one")]
    BoundaryNotOneCycle(usize),
    #[error("edge {0} - {1} lies on more than two faces")]
    NonManifoldEdge(usize, usize),
    #[error("faces cannot be oriented consistently")]
    NonOrientable,
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A map built from labeled faces, with the label of every vertex.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub map: OrientedMap,
    /// Vertex id -> label.
    pub vertex_label: Vec<usize>,
    /// Label -> vertex id.
    pub label_vertex: HashMap<usize, usize>,
    /// Face id of the boundary face for disk builds.
    pub outer_face: Option<usize>,
}

impl Assembled {
    pub fn vertex(&self, label: usize) -> usize {
        self.label_vertex[&label]
    }

    /// Dart from `a` to `b` (labels), if that edge exists.
    pub fn dart_between(&self, a: usize, b: usize) -> Option<Dart> {
        let (va, vb) = (*self.label_vertex.get(&a)?, *self.label_vertex.get(&b)?);
        self.map.vertex_darts(va).iter().copied().find(|&d| self.map.target(d) == vb)
    }
}

fn face_darts(faces: &[Vec<usize>]) -> Result<(Vec<(usize, usize)>, HashMap<(usize, usize), Dart>), AssemblyError> {
    let mut darts = Vec::new();
    let mut index = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        if f.len() < 3 {
            return Err(AssemblyError::DegenerateFace(i));
        }
        for j in 0..f.len() {
            let e = (f[j], f[(j + 1) % f.len()]);
            if index.insert(e, darts.len()).is_some() {
                return Err(AssemblyError::DuplicateDirectedEdge(e.0, e.1));
            }
            darts.push(e);
        }
    }
    Ok((darts, index))
}

fn finish(
    darts: Vec<(usize, usize)>,
    alpha: Vec<Dart>,
    phi: Vec<Dart>,
    outer_face: Option<usize>,
) -> Result<Assembled, AssemblyError> {
    // phi = sigma . alpha, hence sigma = phi . alpha
    let sigma = (0..darts.len()).map(|d| phi[alpha[d]]).collect();
    let map = OrientedMap::new(alpha, sigma)?;
    let mut vertex_label = vec![usize::MAX; map.num_vertices()];
    let mut label_vertex = HashMap::new();
    for (d, &(from, _)) in darts.iter().enumerate() {
        let v = map.origin(d);
        if vertex_label[v] == usize::MAX {
            vertex_label[v] = from;
            label_vertex.insert(from, v);
        } else if vertex_label[v] != from {
            // two labels in one rotation orbit: the faces around a vertex do
            // not close up into a disk
            return Err(AssemblyError::PinchedBoundary(from));
        }
    }
    if label_vertex.len() != map.num_vertices() {
        // one label split over several rotation orbits
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &l in &vertex_label {
            *count.entry(l).or_insert(0) += 1;
        }
        let bad = count.into_iter().filter(|&(_, c)| c > 1).map(|(l, _)| l).min().unwrap_or(0);
        return Err(AssemblyError::PinchedBoundary(bad));
    }
    Ok(Assembled { map, vertex_label, label_vertex, outer_face })
}

fn phi_within_faces(faces: &[Vec<usize>], n: usize) -> Vec<Dart> {
    let mut phi = vec![0; n];
    let mut base = 0;
    for f in faces {
        for j in 0..f.len() {
            phi[base + j] = base + (j + 1) % f.len();
        }
        base += f.len();
    }
    phi
}

/// Closed surface from faces where every directed edge has its reverse.
pub fn build_closed(faces: &[Vec<usize>]) -> Result<Assembled, AssemblyError> {
    let (darts, index) = face_darts(faces)?;
    let mut alpha = vec![0; darts.len()];
    for (d, &(a, b)) in darts.iter().enumerate() {
        alpha[d] = *index.get(&(b, a)).ok_or(AssemblyError::OpenEdge(a, b))?;
    }
    let phi = phi_within_faces(faces, darts.len());
    finish(darts, alpha, phi, None)
}

/// Disk from inner faces: unpaired darts get partners that together form one
/// extra face, the boundary, with id `faces.len()`.
pub fn build_disk(faces: &[Vec<usize>]) -> Result<Assembled, AssemblyError> {
    let (mut darts, index) = face_darts(faces)?;
    let inner = darts.len();
    let mut alpha = vec![usize::MAX; inner];
    let mut outer_from: HashMap<usize, Dart> = HashMap::new();
    for d in 0..inner {
        let (a, b) = darts[d];
        if let Some(&r) = index.get(&(b, a)) {
            alpha[d] = r;
        } else {
            let o = darts.len();
            darts.push((b, a));
            alpha[d] = o;
            alpha.push(d);
            if outer_from.insert(b, o).is_some() {
                return Err(AssemblyError::PinchedBoundary(b));
            }
        }
    }
    let mut phi = phi_within_faces(faces, inner);
    for o in inner..darts.len() {
        let (_, to) = darts[o];
        phi.push(*outer_from.get(&to).ok_or(AssemblyError::PinchedBoundary(to))?);
    }
    let mut seen = vec![false; darts.len()];
    let mut cycles = 0;
    for o in inner..darts.len() {
        if !seen[o] {
            cycles += 1;
            let mut d = o;
            while !seen[d] {
                seen[d] = true;
                d = phi[d];
            }
        }
    }
    if cycles != 1 {
        return Err(AssemblyError::BoundaryNotOneCycle(cycles));
    }
    finish(darts, alpha, phi, Some(faces.len()))
}

/// Orients faces consistently, keeping face 0 as given; each undirected edge
/// must lie on at most two faces.
pub fn orient_faces(faces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, AssemblyError> {
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for j in 0..f.len() {
            let (a, b) = (f[j], f[(j + 1) % f.len()]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    for (&(a, b), fs) in &by_edge {
        if fs.len() > 2 {
            return Err(AssemblyError::NonManifoldEdge(a, b));
        }
    }
    let has_directed = |f: &[usize], a: usize, b: usize| (0..f.len()).any(|j| f[j] == a && f[(j + 1) % f.len()] == b);
    let mut out: Vec<Option<Vec<usize>>> = vec![None; faces.len()];
    for root in 0..faces.len() {
        if out[root].is_some() {
            continue;
        }
        out[root] = Some(faces[root].clone());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let f = out[i].clone().expect("oriented");
            for j in 0..f.len() {
                let (a, b) = (f[j], f[(j + 1) % f.len()]);
                for &other in &by_edge[&(a.min(b), a.max(b))] {
                    if other == i {
                        continue;
                    }
                    match &out[other] {
                        Some(g) => {
                            if has_directed(g, a, b) {
                                return Err(AssemblyError::NonOrientable);
                            }
                        }
                        None => {
                            let mut g = faces[other].clone();
                            if has_directed(&g, a, b) {
                                g.reverse();
                            }
                            out[other] = Some(g);
                            queue.push_back(other);
                        }
                    }
                }
            }
        }
    }
    Ok(out.into_iter().map(|f| f.expect("all faces visited")).collect())
}

/// Inner faces of a map as label lists (label = vertex id), skipping `outer`.
pub fn faces_as_vertex_lists(map: &OrientedMap, outer: Option<usize>) -> Vec<Vec<usize>> {
    (0..map.num_faces()).filter(|&f| Some(f) != outer).map(|f| map.face_vertices(f)).collect()
}

/// Union-find over labels `0..n`; the representative is the smallest label.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}
