//! Error type shared across the toolkit.
//!
//! Contract violations (bad vector lengths, non-isotropic inputs where an
//! isotropic one is required, unsupported ranks) are distinguished from
//! input-format problems (malformed lattice files, unknown catalog keys)
//! so the CLI can map them to distinct exit codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: expected vector of length {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{op}: the zero vector is not allowed")]
    ZeroVector { op: &'static str },

    #[error("gram matrix is not square: row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("gram matrix is not symmetric at ({i},{j}): {a} != {b}")]
    NotSymmetric {
        i: usize,
        j: usize,
        a: String,
        b: String,
    },

    #[error("{op}: input vectors are linearly dependent")]
    DependentVectors { op: &'static str },

    #[error("{op}: lattice is degenerate")]
    DegenerateLattice { op: &'static str },

    #[error("{op}: lattice is definite, no isotropic vector exists")]
    DefiniteLattice { op: &'static str },

    #[error("{op}: vector {vector} is not isotropic (square {square})")]
    NotIsotropic {
        op: &'static str,
        vector: String,
        square: String,
    },

    #[error("{op}: vector {vector} is not primitive (content {content})")]
    NotPrimitive {
        op: &'static str,
        vector: String,
        content: String,
    },

    #[error("{op}: vectors pair to zero, a non-orthogonal pair is required")]
    OrthogonalPair { op: &'static str },

    #[error("{op}: rank {rank} is unsupported, {required}")]
    UnsupportedRank {
        op: &'static str,
        rank: usize,
        required: &'static str,
    },

    #[error("{op}: signature {found} is unsupported, {required}")]
    WrongSignature {
        op: &'static str,
        found: String,
        required: &'static str,
    },

    #[error("unknown catalog key {key:?}")]
    UnknownCatalogKey { key: String },

    #[error("catalog key {key:?}: {msg}")]
    CatalogParameter { key: String, msg: String },

    #[error("invalid lattice input: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by malformed or unresolvable *input* (exit
    /// code 2 in the CLI) as opposed to contract violations (exit code 1).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::NotSymmetric { .. }
                | Error::UnknownCatalogKey { .. }
                | Error::CatalogParameter { .. }
                | Error::Parse(_)
        )
    }
}
