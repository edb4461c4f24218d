//! Structure analysis for rational fusion rings.
//!
//! Given the fusion coefficients of a commutative rational fusion ring
//! (optionally with a modular S-matrix and exact rational conformal
//! weights), this crate computes the full structure of its fusion-closed
//! subsets:
//!
//! * validation of the ring axioms and quantum dimensions via the common
//!   Perron-Frobenius eigenvector ([`ring::FusionRing::validate`]);
//! * the one-dimensional characters of the Verlinde algebra and their
//!   attachment to primaries ([`chars::CharacterTable`]);
//! * classes, blocks, duals, extents, orthogonality relations and the
//!   block/class overlap table ([`fcset`]);
//! * the modular lattice of all fusion-closed sets with meet, join and the
//!   duality anti-isomorphism ([`lattice`]);
//! * centers, central quotients and central extensions ([`center`]);
//! * locality, twisters, the Ramond class, weight congruences, nilpotency
//!   and the character-ring integrality checks ([`local`]).
//!
//! The `fcring` binary exposes all of this behind a command-line interface;
//! model files use the JSON format described in [`model`]. A zoo of
//! reference models ships with the crate ([`zoo`]).
//!
//! Everything is deterministic: random choices (used only to split joint
//! eigenspaces) come from a seeded generator, and all reported orders are
//! canonical.

pub mod center;
pub mod chars;
pub mod error;
pub mod fcset;
pub mod lattice;
pub mod local;
pub mod model;
pub mod report;
pub mod ring;
pub mod set;
pub mod zoo;

pub use chars::{Attachment, CharacterTable, Config};
pub use error::{Error, Result};
pub use fcset::{BlockPartition, ClassPartition, FcSet, OverlapMatrix};
pub use lattice::{check_modularity, interval_counting_check, FcLattice};
pub use local::{CheckStatus, LocalityProfile, PropertyReport};
pub use model::{parse_model, serialize_model, ModelFile};
pub use ring::{verlinde_consistency, FusionRing, RawRing};
pub use set::PrimarySet;
