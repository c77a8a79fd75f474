use std::collections::BTreeMap;

use super::PipelineError;
use crate::assembly;
use crate::exec::Exec;
use crate::expansion::{ring, ExpansionPatch};
use crate::map::OrientedMap;
use crate::patch::{self, Patch};
use crate::verify;

/// A map built by replacing every face of a seed map with a patch.
#[derive(Clone, Debug)]
pub struct Expanded {
    pub map: OrientedMap,
    /// Seed vertex id -> vertex id in `map`.
    pub seed_vertex: Vec<usize>,
    /// Number of vertices added, all of them r-valent.
    pub d: u64,
}

/// Subdivides every edge of `m` by `w.len()` vertices and fills face `f`
/// with `assign[f]`, which must be w-k-gonal for the face size k.
///
/// Side vertices are numbered along the edge's representative dart; a face
/// walking the edge the other way meets them in reverse, so their two
/// weights are `w_j` and `w_{n+1-j}`, which sum to r exactly when `w` is
/// self-fitting.
pub fn expand_map(m: &OrientedMap, w: &[u32], r: u32, assign: &[&Patch], exec: Exec) -> Result<Expanded, PipelineError> {
    if !patch::is_self_fitting(w, r) {
        return Err(PipelineError::NotSelfFitting { tuple: w.to_vec(), r });
    }
    assert_eq!(assign.len(), m.num_faces(), "one patch per face");
    let n = w.len();
    let mut offsets = Vec::with_capacity(m.num_faces());
    for (f, p) in assign.iter().enumerate() {
        let k = m.face_size(f);
        if p.r() != r {
            return Err(PipelineError::RMismatch { face: f, got: p.r(), expected: r });
        }
        let offset = p
            .w_k_gonal_offset(w, k)
            .filter(|_| p.is_r_patch(r))
            .ok_or(PipelineError::PatchShapeMismatch { face: f, size: k })?;
        offsets.push(offset);
    }
    let nv = m.num_vertices();
    let side = |d: usize, j: usize| {
        let e = m.edge_of(d);
        let j = if d == m.edge_dart(e) { j } else { n - 1 - j };
        nv + e * n + j
    };
    let mut inner_base = Vec::with_capacity(m.num_faces());
    let mut next = nv + m.num_edges() * n;
    for p in assign {
        inner_base.push(next);
        next += p.map().num_vertices() - p.boundary_walk().len();
    }
    let per_face: Vec<Vec<Vec<usize>>> = exec.map_range(m.num_faces(), |f| {
        let p = assign[f];
        let darts = m.face_darts(f);
        let walk = p.boundary_walk().rotated(offsets[f]);
        let mut label = vec![usize::MAX; p.map().num_vertices()];
        for (i, &v) in walk.vertices.iter().enumerate() {
            let (t, j) = (i / (n + 1), i % (n + 1));
            label[v] = if j == 0 { m.origin(darts[t]) } else { side(darts[t], j - 1) };
        }
        let mut fresh = inner_base[f];
        for l in label.iter_mut().filter(|l| **l == usize::MAX) {
            *l = fresh;
            fresh += 1;
        }
        p.inner_face_lists().into_iter().map(|face| face.into_iter().map(|v| label[v]).collect()).collect()
    });
    let faces: Vec<Vec<usize>> = per_face.into_iter().flatten().collect();
    let built = assembly::build_closed(&faces).map_err(|e| PipelineError::GlueConflict(e.to_string()))?;
    let map = built.map;
    for label in nv..next {
        let v = built.label_vertex[&label];
        if map.degree(v) != r as usize {
            return Err(PipelineError::GlueConflict(format!(
                "new vertex {v} has valence {}, expected {r}",
                map.degree(v)
            )));
        }
    }
    let seed_vertex = (0..nv).map(|v| built.label_vertex[&v]).collect();
    let d = (map.num_vertices() - nv) as u64;
    Ok(Expanded { map, seed_vertex, d })
}

/// Fills every k-gon of `m` with the ring of `k` copies of `e`, or 4-gons
/// with `four_gon` when given, and verifies that the result is polyhedral.
pub fn expand_polyhedral(
    m: &OrientedMap,
    e: &ExpansionPatch,
    four_gon: Option<&Patch>,
    exec: Exec,
) -> Result<Expanded, PipelineError> {
    let out = expand_with_rings(m, e, four_gon, exec)?;
    check_polyhedral(&out.map, exec)?;
    Ok(out)
}

pub(crate) fn check_polyhedral(m: &OrientedMap, exec: Exec) -> Result<(), PipelineError> {
    let verdict = verify::polyhedral_verdict(m, exec);
    if !verdict.is_polyhedral() {
        let why = match verdict.witness {
            Some((f1, f2)) => format!("faces {f1} and {f2} do not meet properly"),
            None => verdict.simplicity.to_string().trim().replace('\n', "; "),
        };
        return Err(PipelineError::PolyhedralityFailed(why));
    }
    Ok(())
}

/// [`expand_polyhedral`] without the final verification.
pub(crate) fn expand_with_rings(
    m: &OrientedMap,
    e: &ExpansionPatch,
    four_gon: Option<&Patch>,
    exec: Exec,
) -> Result<Expanded, PipelineError> {
    let mut sizes: Vec<usize> = (0..m.num_faces()).map(|f| m.face_size(f)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let four_gon = four_gon.filter(|_| sizes.contains(&4));
    if let Some(pf) = four_gon {
        sizes.retain(|&k| k != 4);
        if !pf.is_w_k_gonal(e.outer_tuple(), 4, e.r()) {
            let face = (0..m.num_faces()).find(|&f| m.face_size(f) == 4).unwrap_or(0);
            return Err(PipelineError::PatchShapeMismatch { face, size: 4 });
        }
    }
    let rings = exec.map_range(sizes.len(), |i| ring(e, sizes[i]));
    let mut by_size: BTreeMap<usize, Patch> = BTreeMap::new();
    for (k, p) in sizes.iter().zip(rings) {
        by_size.insert(*k, p?);
    }
    let assign: Vec<&Patch> = (0..m.num_faces())
        .map(|f| match (m.face_size(f), four_gon) {
            (4, Some(pf)) => pf,
            (k, _) => &by_size[&k],
        })
        .collect();
    expand_map(m, e.outer_tuple(), e.r(), &assign, exec)
}
