//! Whole-map constructions: admissibility of (p, v) pairs, replacing every
//! face of a map by a patch, the polyhedral expansion, the family realizer
//! and a bounded search for patches.

mod admissible;
mod expand;
mod realize;
mod search;

pub use admissible::{check_admissible, AdmissibilityReport};
pub use expand::{expand_map, expand_polyhedral, Expanded};
pub use realize::{realize_family, Family, FamilyPatches, FamilySpec, RealizationReport, RealizeOptions};
pub use search::{search_patch, SearchBounds, SearchOutcome};

use thiserror::Error;

use crate::catalog::CatalogError;
use crate::expansion::ExpansionError;
use crate::growth::GrowthError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("euler characteristic {0} is not even and at most 2")]
    BadChi(i64),
    #[error("tuple {tuple:?} is not self-fitting for r = {r}")]
    NotSelfFitting { tuple: Vec<u32>, r: u32 },
    #[error("patch for face {face} ({size}-gon) does not match the subdivided face")]
    PatchShapeMismatch { face: usize, size: usize },
    #[error("patch for face {face} has r = {got}, expected {expected}")]
    RMismatch { face: usize, got: u32, expected: u32 },
    #[error("patches do not fit across an edge: {0}")]
    GlueConflict(String),
    #[error("result is not polyhedral: {0}")]
    PolyhedralityFailed(String),
    #[error("final patch lacks the polyhedral property: {0}")]
    FinalPatchLacksProperty(String),
    #[error("seed has 4-gons but no 4-gon patch of triangles and heptagons is available")]
    MissingPF37,
    #[error("face census change {delta} is not a positive integer multiple of {q}")]
    NotProportional { delta: String, q: String },
    #[error("search gave up after {0} nodes without settling the bounds")]
    BoundsExhausted(u64),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}
