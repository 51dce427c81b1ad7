//! Exact integer quadratic-lattice toolkit for hyperkähler Picard
//! lattices.
//!
//! Everything runs on arbitrary-precision integers; there is no floating
//! point anywhere. The main capabilities:
//!
//! - [`lattice`]: Gram-matrix lattices with exact form evaluation,
//!   signatures, discriminants, divisibility invariants, saturation
//!   (primitive closure), isotropic quotients, and recognition of the
//!   hyperbolic plane U(N).
//! - [`isotropy`]: exhaustive box enumeration of primitive isotropic rays
//!   and non-orthogonal ray pairs with their pairing invariant N.
//! - [`embedding`]: deterministic construction of primitive U(N)
//!   sublattices with N above any requested bound, with verifiable
//!   certificates (saturation index, hyperbolic basis, divisor bound).
//! - [`chambers`]: positive-cone boundary rays, candidate walls
//!   orthogonal to admissible negative classes, chamber decompositions,
//!   and roundness certificates for rank-2 lattices.
//! - [`catalog`]: the standard second-cohomology lattices of the known
//!   hyperkähler deformation types, as ready-made fixtures.
//! - [`json`]: the lattice file format and machine-readable reports.
//!
//! All operations are pure functions of immutable inputs and fully
//! deterministic: identical inputs produce bit-identical outputs.

pub mod catalog;
pub mod chambers;
pub mod embedding;
pub mod error;
pub mod isotropy;
pub mod json;
pub mod lattice;
mod linalg;
pub mod surd;

pub use catalog::CatalogEntry;
pub use chambers::{ChamberDecomposition, MbmSpec, Roundness, Wall};
pub use embedding::{EmbedOutcome, RoundPicardOutcome, RoundPicardWitness, UnWitness};
pub use error::{Error, Result};
pub use isotropy::{IsotropicPair, IsotropicRay, IsotropicSearch, SearchBudget};
pub use lattice::{int_vec, GramLattice, IntVector, Signature, SublatticeEmbedding};
pub use surd::{QuadExt, SurdRay};
