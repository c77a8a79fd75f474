//! Construction and verification of polyhedral maps built by patch expansion.
//!
//! Maps are dart-based rotation systems ([`map::OrientedMap`]); patches are
//! plane maps with a distinguished outer face ([`patch::Patch`]). Expansion
//! patches can be arranged into rings and edge patches, grown by local
//! rewrites, and substituted for every face of a seed map to realize new
//! p-vectors on the same surface.

pub mod assembly;
pub mod catalog;
pub mod exec;
pub mod format;
pub mod expansion;
pub mod growth;
pub mod map;
pub mod patch;
pub mod pipeline;
pub mod seq;
pub mod verify;

pub use exec::Exec;
pub use map::{Dart, MapError, MapSummary, OrientedMap};
pub use seq::{CountSequence, SeqError};
