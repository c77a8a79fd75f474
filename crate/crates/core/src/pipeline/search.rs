//! Backtracking search for a patch with a prescribed boundary.
//!
//! The boundary is laid out as a labeled cycle (the frontier) and the
//! unfilled region is shrunk one face at a time. Each new face covers a run
//! of consecutive frontier edges and closes it with a fresh path back, so the
//! unfilled region stays a single disk. Frontier vertices carry how many
//! more edges they need; a vertex that needs none must be swallowed by the
//! next face around it, which is where most branches die.
//!
//! Only patches that can be peeled this way from their boundary are found;
//! the order of exploration is fixed (face count first, then the order moves
//! are generated), so results are reproducible.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::PipelineError;
use crate::exec::Exec;
use crate::patch::Patch;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_faces: usize,
    pub max_vertices: usize,
    /// Search nodes before giving up with `BoundsExhausted`.
    pub max_nodes: u64,
    /// Number of weight-1 corners on the boundary.
    pub corners: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { max_faces: 12, max_vertices: 64, max_nodes: 5_000_000, corners: 4 }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(Patch),
    /// Every candidate within the bounds was explored.
    NoneWithinBounds,
}

#[derive(Clone)]
struct State {
    frontier: Vec<usize>,
    need: Vec<i64>,
    edges: HashSet<(usize, usize)>,
    faces: Vec<Vec<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

struct Ctx<'a> {
    r: u32,
    gons: &'a [usize],
    max_vertices: usize,
    max_nodes: u64,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Ctx<'_> {
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.max_nodes {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        self.exhausted.load(Ordering::Relaxed)
    }

    fn lower_bound(&self, len: usize) -> usize {
        let gmax = *self.gons.last().expect("non-empty");
        if len <= gmax {
            1
        } else {
            1 + (len - gmax).div_ceil(gmax.saturating_sub(2).max(1))
        }
    }

    /// All faces that can be placed next, in generation order.
    fn moves(&self, s: &State) -> Vec<State> {
        let len = s.frontier.len();
        let at = |i: isize| s.frontier[i.rem_euclid(len as isize) as usize];
        let need = |v: usize| s.need[v];
        let pinned = (0..len).find(|&i| need(s.frontier[i]) == 0);
        let pivot = pinned.unwrap_or_else(|| (0..len).min_by_key(|&i| need(s.frontier[i])).expect("non-empty"));
        let pivot = pivot as isize;
        let min_before = if pinned.is_some() { 1 } else { 0 };
        let gmax = *self.gons.last().expect("non-empty");
        let mut out = Vec::new();
        for t in 1..len.min(gmax) {
            for a in min_before..t {
                let b = t - a;
                let start = at(pivot - a as isize);
                let end = at(pivot + b as isize);
                if need(start) < 1 || need(end) < 1 {
                    continue;
                }
                if (1..t).any(|j| need(at(pivot - a as isize + j as isize)) != 0) {
                    continue;
                }
                for &g in self.gons.iter().filter(|&&g| g > t) {
                    let fresh = g - t - 1;
                    let nv = s.need.len();
                    if nv + fresh > self.max_vertices {
                        continue;
                    }
                    if fresh == 0 && s.edges.contains(&key(start, end)) {
                        continue;
                    }
                    let mut n = s.clone();
                    let run: Vec<usize> = (0..=t).map(|j| at(pivot - a as isize + j as isize)).collect();
                    let path: Vec<usize> = (nv..nv + fresh).collect();
                    let mut face = run.clone();
                    face.extend(&path);
                    n.need[start] -= 1;
                    n.need[end] -= 1;
                    n.need.extend(std::iter::repeat_n(self.r as i64 - 2, fresh));
                    let mut chain = vec![end];
                    chain.extend(&path);
                    chain.push(start);
                    for w in chain.windows(2) {
                        n.edges.insert(key(w[0], w[1]));
                    }
                    // remaining region: frontier arc from `end` round to `start`, then back along the path
                    let end_pos = (pivot + b as isize).rem_euclid(len as isize);
                    let mut frontier: Vec<usize> = (0..=len - t).map(|j| at(end_pos + j as isize)).collect();
                    frontier.extend(path.iter().rev());
                    n.frontier = frontier;
                    n.faces.push(face);
                    out.push(n);
                }
            }
        }
        out
    }

    fn closes(&self, s: &State) -> bool {
        self.gons.contains(&s.frontier.len()) && s.frontier.iter().all(|&v| s.need[v] == 0)
    }

    fn dfs(&self, s: &State, faces_left: usize) -> Option<Vec<Vec<usize>>> {
        if self.tick() || faces_left == 0 {
            return None;
        }
        if self.closes(s) {
            let mut faces = s.faces.clone();
            faces.push(s.frontier.clone());
            return Some(faces);
        }
        if faces_left < 2 || self.lower_bound(s.frontier.len()) > faces_left {
            return None;
        }
        self.moves(s).iter().find_map(|n| self.dfs(n, faces_left - 1))
    }
}

/// Looks for an r-patch of `gons`-gons whose boundary is the `outer`
/// expansion of a `bounds.corners`-gon.
pub fn search_patch(
    outer: &[u32],
    r: u32,
    gons: &[u32],
    bounds: &SearchBounds,
    exec: Exec,
) -> Result<SearchOutcome, PipelineError> {
    let mut gons: Vec<usize> = gons.iter().map(|&g| g as usize).filter(|&g| g >= 3).collect();
    gons.sort_unstable();
    gons.dedup();
    if gons.is_empty() || bounds.corners < 1 || outer.iter().any(|&w| w < 1 || w + 1 > r) {
        return Ok(SearchOutcome::NoneWithinBounds);
    }
    let mut weights = Vec::new();
    for _ in 0..bounds.corners {
        weights.push(1);
        weights.extend_from_slice(outer);
    }
    let len = weights.len();
    let start = State {
        frontier: (0..len).collect(),
        need: weights.iter().map(|&w| w as i64 - 1).collect(),
        edges: (0..len).map(|i| key(i, (i + 1) % len)).collect(),
        faces: Vec::new(),
    };
    if len > bounds.max_vertices {
        return Ok(SearchOutcome::NoneWithinBounds);
    }
    let ctx = Ctx {
        r,
        gons: &gons,
        max_vertices: bounds.max_vertices,
        max_nodes: bounds.max_nodes,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    for limit in 1..=bounds.max_faces {
        let found = if ctx.closes(&start) {
            ctx.dfs(&start, limit)
        } else {
            let first = ctx.moves(&start);
            exec.find_map_first(first.len(), |i| ctx.dfs(&first[i], limit.saturating_sub(1)))
        };
        if ctx.exhausted.load(Ordering::Relaxed) {
            return Err(PipelineError::BoundsExhausted(ctx.nodes.load(Ordering::Relaxed)));
        }
        if let Some(faces) = found {
            let (p, _) = Patch::from_inner_faces(&faces, r).map_err(|e| PipelineError::GlueConflict(e.to_string()))?;
            if p.is_w_k_gonal(outer, bounds.corners, r) {
                return Ok(SearchOutcome::Found(p));
            }
            return Err(PipelineError::GlueConflict("search produced a patch with the wrong boundary".into()));
        }
    }
    Ok(SearchOutcome::NoneWithinBounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn found(outer: &[u32], r: u32, gons: &[u32], corners: usize, exec: Exec) -> Patch {
        let b = SearchBounds { corners, ..SearchBounds::default() };
        match search_patch(outer, r, gons, &b, exec).unwrap() {
            SearchOutcome::Found(p) => p,
            SearchOutcome::NoneWithinBounds => panic!("nothing found for {outer:?}"),
        }
    }

    #[test]
    fn quadrangle_grid() {
        let p = found(&[2, 2], 4, &[4], 4, Exec::Sequential);
        assert_eq!(p.p_vector().to_string(), "4:9");
    }

    #[test]
    fn hexagon_flower() {
        let p = found(&[2, 1], 3, &[6], 6, Exec::Parallel);
        assert_eq!(p.p_vector().to_string(), "6:7");
        assert!(p.is_r_patch(3));
    }

    #[test]
    fn single_face() {
        let p = found(&[1], 3, &[6], 3, Exec::Sequential);
        assert_eq!(p.p_vector().to_string(), "6:1");
    }

    #[test]
    fn too_few_faces() {
        let b = SearchBounds { max_faces: 1, corners: 4, ..SearchBounds::default() };
        assert!(matches!(search_patch(&[2, 2], 4, &[4], &b, Exec::Sequential), Ok(SearchOutcome::NoneWithinBounds)));
    }

    #[test]
    fn node_budget() {
        let b = SearchBounds { max_nodes: 10, max_faces: 30, max_vertices: 200, corners: 4 };
        let out = search_patch(&[2, 2, 3, 2, 1, 3, 2, 1, 2, 2], 4, &[3, 7], &b, Exec::Sequential);
        assert!(matches!(out, Err(PipelineError::BoundsExhausted(_))));
    }
}
