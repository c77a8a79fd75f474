//! Shipped patches and seed maps.
//!
//! Patches are stored as text files under `data/` (see [`crate::format`])
//! and fully revalidated when loaded. Seeds are generated from face lists.

use thiserror::Error;

use crate::assembly;
use crate::expansion::ExpansionPatch;
use crate::format::{self, Body, FormatError};
use crate::map::OrientedMap;
use crate::patch::Patch;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("`{0}` is not an expansion patch")]
    NotAnExpansionPatch(String),
    #[error("catalog file `{name}` is corrupt: {err}")]
    Corrupt { name: String, err: FormatError },
}

/// Names and file contents of the shipped patches.
pub const PATCHES: [(&str, &str); 5] = [
    ("H", include_str!("../data/H.map")),
    ("Q2", include_str!("../data/Q2.map")),
    ("PN35", include_str!("../data/PN35.map")),
    ("PN37", include_str!("../data/PN37.map")),
    ("PF35", include_str!("../data/PF35.map")),
];

pub const SEEDS: [&str; 5] = ["tetrahedron", "cube", "octahedron", "icosahedron", "torus_grid(m,n)"];

pub fn patch_names() -> impl Iterator<Item = &'static str> {
    PATCHES.iter().map(|(n, _)| *n)
}

pub fn patch_text(name: &str) -> Result<&'static str, CatalogError> {
    PATCHES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

/// Parsed and validated catalog patch (a plain patch or an expansion patch).
pub fn get_patch(name: &str) -> Result<Body, CatalogError> {
    let text = patch_text(name)?;
    let doc = format::parse(text).map_err(|err| CatalogError::Corrupt { name: name.to_string(), err })?;
    Ok(doc.body)
}

pub fn get_expansion_patch(name: &str) -> Result<ExpansionPatch, CatalogError> {
    match get_patch(name)? {
        Body::Expansion(e) => Ok(e),
        _ => Err(CatalogError::NotAnExpansionPatch(name.to_string())),
    }
}

/// The patch of any catalog entry, dropping expansion roles.
pub fn get_plain_patch(name: &str) -> Result<Patch, CatalogError> {
    match get_patch(name)? {
        Body::Expansion(e) => Ok(e.into_patch()),
        Body::Patch(p) => Ok(p),
        Body::Map(_) => Err(CatalogError::UnknownName(name.to_string())),
    }
}

fn closed(faces: &[Vec<usize>]) -> OrientedMap {
    let faces = assembly::orient_faces(faces).expect("seed faces are orientable");
    assembly::build_closed(&faces).expect("seed faces close up").map
}

pub fn tetrahedron() -> OrientedMap {
    closed(&[vec![0, 1, 2], vec![0, 1, 3], vec![1, 2, 3], vec![0, 2, 3]])
}

pub fn cube() -> OrientedMap {
    // vertex bits are coordinates
    closed(&[
        vec![0, 1, 3, 2],
        vec![4, 5, 7, 6],
        vec![0, 1, 5, 4],
        vec![2, 3, 7, 6],
        vec![0, 2, 6, 4],
        vec![1, 3, 7, 5],
    ])
}

pub fn octahedron() -> OrientedMap {
    // 0/1 = -x/+x, 2/3 = -y/+y, 4/5 = -z/+z
    let mut faces = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                faces.push(vec![a, b, c]);
            }
        }
    }
    closed(&faces)
}

pub fn icosahedron() -> OrientedMap {
    // apex 0, upper ring 1..=5, lower ring 6..=10, apex 11; lower vertex
    // 5 + i sits between upper i and i + 1
    let mut faces = Vec::new();
    for i in 1..=5 {
        let j = i % 5 + 1;
        faces.push(vec![0, i, j]);
        faces.push(vec![11, 5 + i, 5 + j]);
        faces.push(vec![i, j, 5 + i]);
        faces.push(vec![j, 5 + j, 5 + i]);
    }
    closed(&faces)
}

/// Quadrangulated torus with `m` rows and `n` columns of 4-valent vertices.
pub fn torus_grid(m: usize, n: usize) -> Result<OrientedMap, CatalogError> {
    if m < 3 || n < 3 {
        return Err(CatalogError::BadParams(format!(
            "torus_grid needs m, n >= 3 (got {m}, {n}); smaller grids have doubled edges"
        )));
    }
    let at = |i: usize, j: usize| (i % m) * n + j % n;
    let faces: Vec<Vec<usize>> = (0..m)
        .flat_map(|i| (0..n).map(move |j| vec![at(i, j), at(i, j + 1), at(i + 1, j + 1), at(i + 1, j)]))
        .collect();
    Ok(closed(&faces))
}

/// Seed by name; `torus_grid(m,n)` takes its parameters inline.
pub fn get_seed(name: &str) -> Result<OrientedMap, CatalogError> {
    let name = name.trim();
    match name {
        "tetrahedron" => return Ok(tetrahedron()),
        "cube" => return Ok(cube()),
        "octahedron" => return Ok(octahedron()),
        "icosahedron" => return Ok(icosahedron()),
        _ => {}
    }
    let args = name
        .strip_prefix("torus_grid(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    let bad = || CatalogError::BadParams(format!("cannot read grid size from `{name}`"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let m = parts[0].parse().map_err(|_| bad())?;
    let n = parts[1].parse().map_err(|_| bad())?;
    torus_grid(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::CountSequence;

    fn census(m: &OrientedMap) -> (CountSequence, CountSequence, i64) {
        let s = m.summary();
        (s.p_vector, s.v_vector, s.euler_characteristic)
    }

    #[test]
    fn solids() {
        let seq = |s: &str| s.parse::<CountSequence>().unwrap();
        assert_eq!(census(&tetrahedron()), (seq("3:4"), seq("3:4"), 2));
        assert_eq!(census(&cube()), (seq("4:6"), seq("3:8"), 2));
        assert_eq!(census(&octahedron()), (seq("3:8"), seq("4:6"), 2));
        assert_eq!(census(&icosahedron()), (seq("3:20"), seq("5:12"), 2));
        assert_eq!(census(&get_seed("torus_grid(3,4)").unwrap()), (seq("4:12"), seq("4:12"), 0));
    }

    #[test]
    fn bad_names_and_params() {
        assert_eq!(get_seed("dodecahedron").unwrap_err(), CatalogError::UnknownName("dodecahedron".into()));
        assert!(matches!(get_seed("torus_grid(2,3)"), Err(CatalogError::BadParams(_))));
        assert!(matches!(get_seed("torus_grid(3)"), Err(CatalogError::BadParams(_))));
        assert!(matches!(get_patch("PF37"), Err(CatalogError::UnknownName(_))));
    }
}
