//! Expansion patches: patches whose boundary carries the `i`/`o`/`i'` role
//! labeling, and the two constructions built from them, the ring around a
//! k-gon and the four-copy edge patch.
//!
//! The boundary walk of an expansion patch, starting at `i_0`, reads
//!
//! ```text
//! i_0 i_1 .. i_{m-1} (i_m = o_0) o_1 .. o_{n-1} (o_n = i'_m) i'_{m-1} .. i'_0
//! ```
//!
//! so it has length `2m + n + 1` and `i'_0` is followed by `i_0` again.

use thiserror::Error;

use crate::assembly::{self, UnionFind};
use crate::exec::Exec;
use crate::growth::Grown;
use crate::patch::{self, glue_along, Patch, PatchError};
use crate::verify;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("w(i_0) + w(i'_0) = {sum}, expected r - 1 = {expected}")]
    I0Condition { sum: u32, expected: u32 },
    #[error("patch does not fit itself along the i-paths: w(i_{0}) + w(i'_{0}) != r")]
    SelfFitAlongI(usize),
    #[error("w(o_s) = {0}, expected 1")]
    OsNotOne(u32),
    #[error("outer tuple {tuple:?} is not self-fitting at position {index}")]
    OuterTupleNotSelfFitting { tuple: Vec<u32>, index: usize },
    #[error("roles do not match the boundary walk: {0}")]
    RolesMismatch(String),
    #[error("patch is not an r-patch: {0}")]
    NotRPatch(String),
    #[error("ring needs k >= 3, got {0}")]
    KTooSmall(usize),
    #[error(transparent)]
    Patch(#[from] PatchError),
}

/// Boundary roles as vertex ids: `i[l] = i_l`, `o[j] = o_j`, `i_prime[l] = i'_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRoles {
    pub i: Vec<usize>,
    pub o: Vec<usize>,
    pub i_prime: Vec<usize>,
    pub s: usize,
}

impl ExpansionRoles {
    /// Reads roles off a boundary walk, with `i_0` at walk position `start`.
    pub fn from_walk(walk: &patch::BoundaryWalk, start: usize, m: usize, n: usize, s: usize) -> Result<Self, ExpansionError> {
        let len = walk.len();
        if m == 0 || len != 2 * m + n + 1 {
            return Err(ExpansionError::RolesMismatch(format!(
                "walk of length {len} cannot hold m = {m}, n = {n}"
            )));
        }
        let at = |i: usize| walk.vertices[(start + i) % len];
        Ok(Self {
            i: (0..=m).map(at).collect(),
            o: (0..=n).map(|j| at(m + j)).collect(),
            i_prime: (0..=m).map(|l| at(2 * m + n - l)).collect(),
            s,
        })
    }

    pub fn m(&self) -> usize {
        self.i.len() - 1
    }

    pub fn n(&self) -> usize {
        self.o.len() - 1
    }

    /// The walk the roles describe, starting at `i_0`.
    pub fn walk_order(&self) -> Vec<usize> {
        let mut w = self.i.clone();
        w.extend(&self.o[1..]);
        w.extend(self.i_prime[..self.m()].iter().rev());
        w
    }

    /// Roles after every vertex `v` is renamed to `f(v)`.
    pub fn renamed(&self, f: impl Fn(usize) -> usize) -> Self {
        Self {
            i: self.i.iter().map(|&v| f(v)).collect(),
            o: self.o.iter().map(|&v| f(v)).collect(),
            i_prime: self.i_prime.iter().map(|&v| f(v)).collect(),
            s: self.s,
        }
    }

    fn check_shape(&self, p: &Patch) -> Result<(), ExpansionError> {
        let (m, n) = (self.m(), self.n());
        let bad = |msg: String| Err(ExpansionError::RolesMismatch(msg));
        if m == 0 || self.i_prime.len() != m + 1 {
            return bad("i-paths must have equal length at least 2".into());
        }
        if self.s == 0 || self.s >= n {
            return bad(format!("s = {} outside 1..{n}", self.s));
        }
        if self.i[m] != self.o[0] || self.o[n] != self.i_prime[m] {
            return bad("i_m must equal o_0 and o_n must equal i'_m".into());
        }
        let walk = p.boundary_walk();
        let order = self.walk_order();
        if order.len() != walk.len() {
            return bad(format!("roles cover {} positions, boundary has {}", order.len(), walk.len()));
        }
        let start = walk.position(order[0]).ok_or(ExpansionError::RolesMismatch("i_0 is not on the boundary".into()))?;
        if walk.rotated(start).vertices != order {
            return bad("roles are not the boundary walk in order".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ExpansionPatch {
    patch: Patch,
    roles: ExpansionRoles,
    outer_tuple: Vec<u32>,
}

/// Checks the role conditions and computes the outer tuple
/// `(w(o_{s+1}) .. w(o_{n-1}), w(o_n) + w(o_0), w(o_1) .. w(o_{s-1}))`.
pub fn validate_expansion_patch(p: Patch, roles: ExpansionRoles) -> Result<ExpansionPatch, ExpansionError> {
    let r = p.r();
    let report = p.r_patch_report(r);
    if !report.holds() {
        return Err(ExpansionError::NotRPatch(report.to_string()));
    }
    roles.check_shape(&p)?;
    let w = |v: usize| p.weight(v);
    let (m, n, s) = (roles.m(), roles.n(), roles.s);
    let sum = w(roles.i[0]) + w(roles.i_prime[0]);
    if sum != r - 1 {
        return Err(ExpansionError::I0Condition { sum, expected: r - 1 });
    }
    if let Some(l) = (1..m).find(|&l| w(roles.i[l]) + w(roles.i_prime[l]) != r) {
        return Err(ExpansionError::SelfFitAlongI(l));
    }
    if w(roles.o[s]) != 1 {
        return Err(ExpansionError::OsNotOne(w(roles.o[s])));
    }
    let mut tuple: Vec<u32> = (s + 1..n).map(|j| w(roles.o[j])).collect();
    tuple.push(w(roles.o[n]) + w(roles.o[0]));
    tuple.extend((1..s).map(|j| w(roles.o[j])));
    if let Some(index) = patch::self_fitting_violation(&tuple, r) {
        return Err(ExpansionError::OuterTupleNotSelfFitting { tuple, index });
    }
    Ok(ExpansionPatch { patch: p, roles, outer_tuple: tuple })
}

impl ExpansionPatch {
    pub fn patch(&self) -> &Patch {
        &self.patch
    }
    pub fn roles(&self) -> &ExpansionRoles {
        &self.roles
    }
    pub fn outer_tuple(&self) -> &[u32] {
        &self.outer_tuple
    }
    pub fn r(&self) -> u32 {
        self.patch.r()
    }

    pub fn into_patch(self) -> Patch {
        self.patch
    }

    /// Revalidates after a rewrite, carrying the roles through its vertex map.
    pub fn after_growth(&self, grown: &Grown) -> Result<ExpansionPatch, ExpansionError> {
        let roles = self.roles.renamed(|v| grown.vertex_map[v]);
        validate_expansion_patch(grown.patch.clone(), roles)
    }
}

/// Where a face of a ring or edge patch came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceOrigin {
    /// Inner face `face` (inner index) of copy `copy`.
    Copy { copy: usize, face: usize },
    /// The central k-gon of a ring.
    Center,
}

/// Origin of inner face `index` of a ring (`k = Some(k)`) or edge patch
/// (`k = None`) built from `e`: copies are laid out one after another and the
/// ring center comes last.
pub fn face_origin(e: &ExpansionPatch, k: Option<usize>, index: usize) -> FaceOrigin {
    let per = e.patch.num_inner_faces();
    if k.is_some_and(|k| index == k * per) {
        return FaceOrigin::Center;
    }
    FaceOrigin::Copy { copy: index / per, face: index % per }
}

/// `k` copies around a central k-gon: copy `j` is attached to side
/// `{i_0, i'_0}` of the center and `i'_l` of copy `j` is identified with
/// `i_l` of copy `j + 1`. Inner faces of copy `j` come first in order, the
/// center is the last inner face.
pub fn ring(e: &ExpansionPatch, k: usize) -> Result<Patch, ExpansionError> {
    if k < 3 {
        return Err(ExpansionError::KTooSmall(k));
    }
    let r = e.r();
    let nv = e.patch.map().num_vertices();
    let mut uf = UnionFind::new(k * nv);
    for j in 0..k {
        let next = (j + 1) % k;
        for (&ip, &i) in e.roles.i_prime.iter().zip(&e.roles.i) {
            uf.union(j * nv + ip, next * nv + i);
        }
    }
    let base = e.patch.inner_face_lists();
    let mut faces = Vec::with_capacity(k * base.len() + 1);
    for j in 0..k {
        for f in &base {
            faces.push(f.iter().map(|&v| uf.find(j * nv + v)).collect::<Vec<_>>());
        }
    }
    faces.push((0..k).map(|j| uf.find(j * nv + e.roles.i[0])).collect());
    let faces = assembly::orient_faces(&faces).map_err(PatchError::from)?;
    let (p, _) = Patch::from_inner_faces(&faces, r)?;
    let report = p.r_patch_report(r);
    if !report.holds() {
        return Err(PatchError::ResultNotRPatch(report.to_string()).into());
    }
    Ok(p)
}

/// Two copies glued along the i-paths (`i_l` of the first onto `i'_l` of the
/// second), then two such doubles glued along their `o` boundaries. Copies
/// 0 and 1 form the first double, 2 and 3 the second.
pub fn edge_patch(e: &ExpansionPatch) -> Result<Patch, ExpansionError> {
    let p = &e.patch;
    let roles = &e.roles;
    let (n, s) = (roles.n(), roles.s);
    let back: Vec<usize> = roles.i_prime.iter().rev().copied().collect();
    let double = glue_along(p, &roles.i, p, &back)?;
    let (a, b) = (&double.first, &double.second);
    let mut x: Vec<usize> = (s..n).map(|j| b[roles.o[j]]).collect();
    x.push(a[roles.o[0]]);
    x.extend((1..=s).map(|j| a[roles.o[j]]));
    let glued = glue_along(&double.patch, &x, &double.patch, &x)?;
    Ok(glued.patch)
}

/// Verdict of the polyhedral-property check with the first offending pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralProperty {
    pub witness: Option<(FaceOrigin, FaceOrigin)>,
}

impl PolyhedralProperty {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether all inner faces of the edge patch meet properly.
pub fn has_polyhedral_property(e: &ExpansionPatch, exec: Exec) -> Result<PolyhedralProperty, ExpansionError> {
    let ep = edge_patch(e)?;
    let outer = ep.outer_face();
    let witness = verify::first_improper_pair(ep.map(), exec, |f| f != outer).map(|(f1, f2)| {
        let origin = |f: usize| face_origin(e, None, ep.inner_index(f).expect("inner face"));
        (origin(f1), origin(f2))
    });
    Ok(PolyhedralProperty { witness })
}
