//! Simplicity, proper meeting of faces, polyhedrality and 3-connectivity.

use std::collections::BTreeMap;
use std::fmt;

use crate::exec::Exec;
use crate::map::{MapError, OrientedMap};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicityReport {
    /// Edge ids whose two darts start at the same vertex.
    pub loops: Vec<usize>,
    /// Vertex pairs `(u, v)`, `u < v`, joined by more than one edge, with the count.
    pub multi_edges: Vec<(usize, usize, usize)>,
    /// Vertices of valence below 3, with their valence.
    pub low_valence: Vec<(usize, usize)>,
}

impl SimplicityReport {
    pub fn is_simple(&self) -> bool {
        self.loops.is_empty() && self.multi_edges.is_empty() && self.low_valence.is_empty()
    }
}

impl fmt::Display for SimplicityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.loops {
            writeln!(f, "loop: edge {e}")?;
        }
        for (u, v, c) in &self.multi_edges {
            writeln!(f, "multi-edge: vertices {u} {v} joined {c} times")?;
        }
        for (v, d) in &self.low_valence {
            writeln!(f, "valence: vertex {v} has valence {d}")?;
        }
        Ok(())
    }
}

/// Loops and multi-edges only; valence is checked by the caller.
pub(crate) fn graph_defects(m: &OrientedMap) -> (Vec<usize>, Vec<(usize, usize, usize)>) {
    let mut loops = Vec::new();
    let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in 0..m.num_edges() {
        let d = m.edge_dart(e);
        let (u, v) = (m.origin(d), m.target(d));
        if u == v {
            loops.push(e);
        } else {
            *pairs.entry((u.min(v), u.max(v))).or_insert(0) += 1;
        }
    }
    let multi = pairs.into_iter().filter(|&(_, c)| c > 1).map(|((u, v), c)| (u, v, c)).collect();
    (loops, multi)
}

pub fn simplicity_report(m: &OrientedMap) -> SimplicityReport {
    let (loops, multi_edges) = graph_defects(m);
    let low_valence = (0..m.num_vertices())
        .filter(|&v| m.degree(v) < 3)
        .map(|v| (v, m.degree(v)))
        .collect();
    SimplicityReport { loops, multi_edges, low_valence }
}

pub fn is_simple_valid_map(m: &OrientedMap) -> bool {
    simplicity_report(m).is_simple()
}

/// Sorted, deduplicated vertex set of a face.
fn face_vertex_set(m: &OrientedMap, f: usize) -> Vec<usize> {
    let mut vs = m.face_vertices(f);
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

/// Edges lying on both faces: one dart in `f1`, the other in `f2`.
fn count_shared_edges(m: &OrientedMap, f1: usize, f2: usize) -> usize {
    m.face_darts(f1).iter().filter(|&&d| m.face_of(m.alpha(d)) == f2).count()
}

fn proper(shared_vertices: usize, shared_edges: usize) -> bool {
    match (shared_vertices, shared_edges) {
        (0, 0) | (1, 0) => true,
        (2, 1) => true,
        _ => false,
    }
}

/// Two distinct faces meet properly when they share nothing, exactly one
/// vertex, or exactly one edge and its two endpoints.
pub fn meets_properly(m: &OrientedMap, f1: usize, f2: usize) -> Result<bool, MapError> {
    if f1 == f2 {
        return Err(MapError::SameFace);
    }
    for f in [f1, f2] {
        if f >= m.num_faces() {
            return Err(MapError::NoSuchFace(f));
        }
    }
    let sv = count_common(&face_vertex_set(m, f1), &face_vertex_set(m, f2));
    Ok(proper(sv, count_shared_edges(m, f1, f2)))
}

/// First improper pair `(f1, f2)`, `f1 < f2`, in lexicographic order among
/// the faces accepted by `keep`.
///
/// Pairs sharing no vertex meet properly, so for each `f1` only faces around
/// its vertices are examined; the verdict equals the all-pairs scan.
pub fn first_improper_pair(
    m: &OrientedMap,
    exec: Exec,
    keep: impl Fn(usize) -> bool + Sync + Send,
) -> Option<(usize, usize)> {
    let nf = m.num_faces();
    let sets: Vec<Vec<usize>> = exec.map_range(nf, |f| face_vertex_set(m, f));
    let mut faces_at: Vec<Vec<usize>> = vec![Vec::new(); m.num_vertices()];
    for (f, vs) in sets.iter().enumerate() {
        if keep(f) {
            for &v in vs {
                faces_at[v].push(f);
            }
        }
    }
    exec.find_map_first(nf, |f1| {
        if !keep(f1) {
            return None;
        }
        let mut shared: BTreeMap<usize, usize> = BTreeMap::new();
        for &v in &sets[f1] {
            for &f2 in &faces_at[v] {
                if f2 > f1 {
                    *shared.entry(f2).or_insert(0) += 1;
                }
            }
        }
        shared
            .into_iter()
            .find(|&(f2, sv)| !proper(sv, count_shared_edges(m, f1, f2)))
            .map(|(f2, _)| (f1, f2))
    })
}

/// Literal all-pairs scan; kept as an oracle for [`first_improper_pair`].
pub fn first_improper_pair_all_pairs(m: &OrientedMap, keep: impl Fn(usize) -> bool) -> Option<(usize, usize)> {
    let nf = m.num_faces();
    for f1 in 0..nf {
        for f2 in f1 + 1..nf {
            if keep(f1) && keep(f2) && !meets_properly(m, f1, f2).expect("distinct faces") {
                return Some((f1, f2));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralVerdict {
    pub simplicity: SimplicityReport,
    /// First pair of faces that does not meet properly.
    pub witness: Option<(usize, usize)>,
}

impl PolyhedralVerdict {
    pub fn is_polyhedral(&self) -> bool {
        self.simplicity.is_simple() && self.witness.is_none()
    }
}

pub fn polyhedral_verdict(m: &OrientedMap, exec: Exec) -> PolyhedralVerdict {
    PolyhedralVerdict {
        simplicity: simplicity_report(m),
        witness: first_improper_pair(m, exec, |_| true),
    }
}

pub fn is_polyhedral(m: &OrientedMap, exec: Exec) -> bool {
    polyhedral_verdict(m, exec).is_polyhedral()
}

fn adjacency(m: &OrientedMap) -> Vec<Vec<usize>> {
    (0..m.num_vertices())
        .map(|v| {
            let mut ns: Vec<usize> = m.neighbors(v).filter(|&u| u != v).collect();
            ns.sort_unstable();
            ns.dedup();
            ns
        })
        .collect()
}

/// Connected after deleting the vertices flagged in `removed`?
fn connected_without(adj: &[Vec<usize>], removed: &[bool]) -> bool {
    let n = adj.len();
    let Some(start) = (0..n).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = removed.to_vec();
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Whether deleting `x` leaves a graph with a cut vertex (iterative Tarjan).
fn has_cut_vertex_without(adj: &[Vec<usize>], x: usize) -> bool {
    let n = adj.len();
    let Some(root) = (0..n).find(|&v| v != x) else {
        return false;
    };
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    disc[x] = usize::MAX - 1; // treated as deleted
    let mut time = 0;
    disc[root] = time;
    low[root] = time;
    time += 1;
    let mut root_children = 0;
    // (vertex, parent, next neighbor index)
    let mut stack = vec![(root, usize::MAX, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        if top.2 < adj[v].len() {
            let u = adj[v][top.2];
            top.2 += 1;
            if u == x || u == parent {
                continue;
            }
            if disc[u] == usize::MAX {
                disc[u] = time;
                low[u] = time;
                time += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((u, v, 0));
            } else {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != root && low[v] >= disc[parent] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}

/// At least 3 vertices and the underlying graph stays connected after
/// deleting any two vertices.
///
/// Runs one articulation-point search per deleted vertex, `O(V (V + E))`;
/// [`is_three_connected_brute`] is the pairwise deletion oracle.
pub fn is_three_connected(m: &OrientedMap, exec: Exec) -> bool {
    let n = m.num_vertices();
    if n < 3 {
        return false;
    }
    let adj = adjacency(m);
    if !connected_without(&adj, &vec![false; n]) {
        return false;
    }
    exec.all(n, |x| {
        let mut removed = vec![false; n];
        removed[x] = true;
        connected_without(&adj, &removed) && !has_cut_vertex_without(&adj, x)
    })
}

/// Deletes every vertex pair and checks connectivity, `O(V^2 (V + E))`.
pub fn is_three_connected_brute(m: &OrientedMap) -> bool {
    let n = m.num_vertices();
    if n < 3 {
        return false;
    }
    let adj = adjacency(m);
    let mut removed = vec![false; n];
    if !connected_without(&adj, &removed) {
        return false;
    }
    for a in 0..n {
        for b in a + 1..n {
            removed[a] = true;
            removed[b] = true;
            let ok = connected_without(&adj, &removed);
            removed[a] = false;
            removed[b] = false;
            if !ok {
                return false;
            }
        }
    }
    true
}
