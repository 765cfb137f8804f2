//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building theory data or evaluating an
/// invariant.  The CLI maps these onto exit codes: parse and i/o errors exit
/// with 2, everything else (domain, capacity, degeneracy, unsupported
/// combinations) with 3; exit code 4 is reserved for verification suites
/// that ran but found failing checks.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the supported domain (level < 1, rank < 2,
    /// coprimality or integrality conditions violated, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A fusion coefficient computed from the S matrix failed to round to a
    /// nonnegative integer within tolerance.  This indicates inconsistent
    /// modular data rather than a user mistake.
    #[error("fusion coefficient N[{i},{j}]^{k} = {value} is not a nonnegative integer")]
    NonIntegralFusion {
        /// First fused label index.
        i: usize,
        /// Second fused label index.
        j: usize,
        /// Target label index.
        k: usize,
        /// The offending numerical value.
        value: String,
    },

    /// Derived data fails a structural requirement (for instance a derived S
    /// matrix that is not unitary, so the theory is not modular).
    #[error("degenerate theory: {0}")]
    Degenerate(String),

    /// The requested computation exceeds a hard resource cap (cable width,
    /// number of colorings, ...).  Caps exist so that requests fail fast and
    /// predictably instead of running for hours.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    /// A theory/manifold combination that the engines cannot evaluate, such
    /// as coset colors of rank >= 3 on a generic braid-closure link.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// Malformed textual input (theory strings, manifold strings, link
    /// files, serialized tables).
    #[error("parse error: {0}")]
    Parse(String),

    /// Underlying I/O failure (link files, cache).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code used by the command line tool for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            _ => 3,
        }
    }
}
