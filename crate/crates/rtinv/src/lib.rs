//! Quantum invariants of closed oriented 3-manifolds.
//!
//! Every closed oriented 3-manifold is obtained by surgery on a framed link
//! in the 3-sphere.  Given the modular data of a suitable braided category
//! (an S and T matrix, quantum dimensions, twists and fusion rules), the
//! surgery presentation yields a numerical invariant of the manifold: a
//! weighted sum of colored link invariants, normalized by the rank of the
//! category and a signature-dependent anomaly factor.
//!
//! This crate assembles that pipeline for several families of input data:
//!
//! * affine `SU(N)` theories at integer level (`affine`),
//! * rank-one lattice theories `U(1)` at even level (`u1`),
//! * three quotient/extension constructions built on top of these:
//!   parafermion cosets, diagonal cosets and simple-current extensions
//!   (`coset`),
//! * restricted "projective" `SU(N)` sums (`invariant`).
//!
//! Colored link invariants are computed two independent ways: a diagrammatic
//! Temperley-Lieb engine with cabling and Jones-Wenzl projectors for `SU(2)`
//! (`skein`), and a Hecke-algebra trace engine for the vector color of
//! `SU(N)` (`hecke`).  Chains of unknots (which cover all lens spaces) are
//! evaluated in closed form for arbitrary modular data (`surgery`).
//!
//! The `verify` module bundles the consistency suites exposed by the CLI,
//! and `io` holds the text serializations and the on-disk table cache.

pub mod affine;
pub mod coset;
pub mod error;
pub mod hecke;
pub mod invariant;
pub mod io;
pub mod modular;
pub mod skein;
pub mod surgery;
pub mod u1;
pub mod verify;

pub use error::Error;

/// Shorthand used throughout the crate.
pub type Complex = num_complex::Complex64;
