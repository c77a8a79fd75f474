//! Oriented combinatorial maps on darts.
//!
//! A map is a pair of permutations on darts `0..n`: `alpha` pairs the two
//! darts of an edge, `sigma` is the counterclockwise successor around the
//! dart's origin. Faces are the orbits of `phi = sigma . alpha`, so a face
//! walk keeps its face on the right: bounded faces of a plane drawing are
//! walked clockwise and the unbounded one counterclockwise.
//!
//! Vertex, edge and face ids are orbit indices ordered by the smallest dart
//! in the orbit, so they are determined by the dart tables alone.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::seq::CountSequence;

pub type Dart = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("map has no darts")]
    Empty,
    #[error("alpha and sigma have different lengths ({alpha} vs {sigma})")]
    LengthMismatch { alpha: usize, sigma: usize },
    #[error("alpha is not a fixed-point-free involution at dart {0}")]
    NotInvolution(Dart),
    #[error("sigma is not a permutation (dart {0} is hit twice or out of range)")]
    NotPermutation(Dart),
    #[error("map is not connected")]
    Disconnected,
    #[error("faces must be distinct")]
    SameFace,
    #[error("no face with id {0}")]
    NoSuchFace(usize),
    #[error("point {index} repeats an earlier point")]
    CoincidentPoints { index: usize },
    #[error("edge {0} is a loop or uses an unknown point")]
    BadEdge(usize),
}

/// Vertex/edge/face counts and the two count sequences of a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSummary {
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_faces: usize,
    pub euler_characteristic: i64,
    pub genus: u64,
    pub p_vector: CountSequence,
    pub v_vector: CountSequence,
    /// Faces with fewer than 3 sides; these cannot enter `p_vector`.
    pub degenerate_faces: usize,
    /// Vertices of valence below 3; these cannot enter `v_vector`.
    pub degenerate_vertices: usize,
}

impl fmt::Display for MapSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.num_vertices)?;
        writeln!(f, "edges {}", self.num_edges)?;
        writeln!(f, "faces {}", self.num_faces)?;
        writeln!(f, "euler_characteristic {}", self.euler_characteristic)?;
        writeln!(f, "genus {}", self.genus)?;
        writeln!(f, "p_vector {}", self.p_vector)?;
        writeln!(f, "v_vector {}", self.v_vector)?;
        if self.degenerate_faces > 0 {
            writeln!(f, "degenerate_faces {}", self.degenerate_faces)?;
        }
        if self.degenerate_vertices > 0 {
            writeln!(f, "degenerate_vertices {}", self.degenerate_vertices)?;
        }
        Ok(())
    }
}

/// Orbits of one permutation: ids by smallest dart, each orbit listed from
/// its smallest dart in permutation order.
#[derive(Clone, Debug)]
struct Orbits {
    of: Vec<usize>,
    lists: Vec<Vec<Dart>>,
}

impl Orbits {
    fn of_perm(n: usize, next: impl Fn(Dart) -> Dart) -> Self {
        let mut of = vec![usize::MAX; n];
        let mut lists = Vec::new();
        for start in 0..n {
            if of[start] != usize::MAX {
                continue;
            }
            let id = lists.len();
            let mut orbit = Vec::new();
            let mut d = start;
            loop {
                of[d] = id;
                orbit.push(d);
                d = next(d);
                if d == start {
                    break;
                }
            }
            lists.push(orbit);
        }
        Self { of, lists }
    }
}

#[derive(Clone, Debug)]
pub struct OrientedMap {
    alpha: Vec<Dart>,
    sigma: Vec<Dart>,
    sigma_inv: Vec<Dart>,
    vertices: Orbits,
    faces: Orbits,
    edge_of: Vec<usize>,
    edges: Vec<Dart>,
    labels: BTreeMap<Dart, String>,
}

impl OrientedMap {
    /// Validates the dart tables and caches vertex, edge and face orbits.
    pub fn new(alpha: Vec<Dart>, sigma: Vec<Dart>) -> Result<Self, MapError> {
        let n = alpha.len();
        if sigma.len() != n {
            return Err(MapError::LengthMismatch { alpha: n, sigma: sigma.len() });
        }
        if n == 0 {
            return Err(MapError::Empty);
        }
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n || a == d || alpha[a] != d {
                return Err(MapError::NotInvolution(d));
            }
        }
        let mut sigma_inv = vec![usize::MAX; n];
        for (d, &s) in sigma.iter().enumerate() {
            if s >= n || sigma_inv[s] != usize::MAX {
                return Err(MapError::NotPermutation(d));
            }
            sigma_inv[s] = d;
        }

        // connectivity under <alpha, sigma>
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [alpha[d], sigma[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        if count != n {
            return Err(MapError::Disconnected);
        }

        let vertices = Orbits::of_perm(n, |d| sigma[d]);
        let faces = Orbits::of_perm(n, |d| sigma[alpha[d]]);
        let mut edge_of = vec![0; n];
        let mut edges = Vec::with_capacity(n / 2);
        for d in 0..n {
            if d < alpha[d] {
                edge_of[d] = edges.len();
                edge_of[alpha[d]] = edges.len();
                edges.push(d);
            }
        }
        Ok(Self { alpha, sigma, sigma_inv, vertices, faces, edge_of, edges, labels: BTreeMap::new() })
    }

    /// Builds a plane map from a straight-line drawing.
    ///
    /// Edge `e = (u, v)` becomes darts `2e` (from `u`) and `2e + 1` (from `v`);
    /// darts around each point are sorted by angle, counterclockwise. Returns
    /// the map and the face of positive signed area (the unbounded face).
    pub fn from_straight_line_drawing(
        points: &[(f64, f64)],
        edges: &[(usize, usize)],
    ) -> Result<(Self, usize), MapError> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| q == p) {
                return Err(MapError::CoincidentPoints { index: i });
            }
        }
        let n = 2 * edges.len();
        let mut alpha = vec![0; n];
        let mut origin = vec![0; n];
        let mut around: Vec<Vec<Dart>> = vec![Vec::new(); points.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == v || u >= points.len() || v >= points.len() {
                return Err(MapError::BadEdge(e));
            }
            alpha[2 * e] = 2 * e + 1;
            alpha[2 * e + 1] = 2 * e;
            origin[2 * e] = u;
            origin[2 * e + 1] = v;
            around[u].push(2 * e);
            around[v].push(2 * e + 1);
        }
        let angle = |d: Dart| {
            let (x0, y0) = points[origin[d]];
            let (x1, y1) = points[origin[alpha[d]]];
            (y1 - y0).atan2(x1 - x0)
        };
        let mut sigma = vec![0; n];
        for darts in &mut around {
            darts.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
            for i in 0..darts.len() {
                sigma[darts[i]] = darts[(i + 1) % darts.len()];
            }
        }
        let map = Self::new(alpha, sigma)?;
        let area = |f: usize| -> f64 {
            map.face_darts(f)
                .iter()
                .map(|&d| {
                    let (x0, y0) = points[origin[d]];
                    let (x1, y1) = points[origin[map.alpha(d)]];
                    x0 * y1 - x1 * y0
                })
                .sum()
        };
        let outer = (0..map.num_faces())
            .find(|&f| area(f) > 0.0)
            .ok_or(MapError::Disconnected)?;
        Ok((map, outer))
    }

    pub fn with_labels(mut self, labels: BTreeMap<Dart, String>) -> Self {
        self.labels = labels.into_iter().filter(|(d, _)| *d < self.num_darts()).collect();
        self
    }

    pub fn labels(&self) -> &BTreeMap<Dart, String> {
        &self.labels
    }

    pub fn num_darts(&self) -> usize {
        self.alpha.len()
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.lists.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn num_faces(&self) -> usize {
        self.faces.lists.len()
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }
    pub fn sigma_inv(&self, d: Dart) -> Dart {
        self.sigma_inv[d]
    }
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }
    pub fn alpha_table(&self) -> &[Dart] {
        &self.alpha
    }
    pub fn sigma_table(&self) -> &[Dart] {
        &self.sigma
    }

    /// Vertex the dart starts at.
    pub fn origin(&self, d: Dart) -> usize {
        self.vertices.of[d]
    }
    /// Vertex the dart points to.
    pub fn target(&self, d: Dart) -> usize {
        self.vertices.of[self.alpha[d]]
    }
    pub fn face_of(&self, d: Dart) -> usize {
        self.faces.of[d]
    }
    pub fn edge_of(&self, d: Dart) -> usize {
        self.edge_of[d]
    }

    /// Darts leaving `v`, counterclockwise from the smallest.
    pub fn vertex_darts(&self, v: usize) -> &[Dart] {
        &self.vertices.lists[v]
    }
    /// Darts of face `f` in walk order from the smallest.
    pub fn face_darts(&self, f: usize) -> &[Dart] {
        &self.faces.lists[f]
    }
    /// Smallest dart of edge `e`.
    pub fn edge_dart(&self, e: usize) -> Dart {
        self.edges[e]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices.lists[v].len()
    }
    pub fn face_size(&self, f: usize) -> usize {
        self.faces.lists[f].len()
    }

    /// Vertices of face `f` in walk order.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.face_darts(f).iter().map(|&d| self.origin(d)).collect()
    }

    /// Neighbors of `v` in counterclockwise order (with repetition for multi-edges).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertex_darts(v).iter().map(|&d| self.target(d))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn summary(&self) -> MapSummary {
        let mut p = CountSequence::new();
        let mut degenerate_faces = 0;
        for f in 0..self.num_faces() {
            let k = self.face_size(f);
            if k >= 3 {
                p.try_add_count(k as u32, 1).expect("k >= 3");
            } else {
                degenerate_faces += 1;
            }
        }
        let mut v = CountSequence::new();
        let mut degenerate_vertices = 0;
        for x in 0..self.num_vertices() {
            let k = self.degree(x);
            if k >= 3 {
                v.try_add_count(k as u32, 1).expect("k >= 3");
            } else {
                degenerate_vertices += 1;
            }
        }
        let chi = self.euler_characteristic();
        MapSummary {
            num_vertices: self.num_vertices(),
            num_edges: self.num_edges(),
            num_faces: self.num_faces(),
            euler_characteristic: chi,
            genus: ((2 - chi) / 2).max(0) as u64,
            p_vector: p,
            v_vector: v,
            degenerate_faces,
            degenerate_vertices,
        }
    }

    /// The dual map on the same darts: `alpha` is kept and `phi` becomes the
    /// rotation. Vertex `i` of the dual is face `i` of `self` and vice versa,
    /// and `dual(dual(m))` has exactly the dart tables of `m`.
    pub fn dual(&self) -> Self {
        let sigma = (0..self.num_darts()).map(|d| self.phi(d)).collect();
        Self::new(self.alpha.clone(), sigma).expect("dual of a valid map is valid")
    }

    /// The same surface with the opposite orientation.
    pub fn mirror(&self) -> Self {
        Self::new(self.alpha.clone(), self.sigma_inv.clone()).expect("mirror of a valid map is valid")
    }
}
