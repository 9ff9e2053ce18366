#![forbid(unsafe_code)]

//! `topoindex` computes mean-based degree ("bond incident degree")
//! topological indices of molecular graphs — chiefly the
//! harmonic-arithmetic (HA) index — and exhaustively verifies their
//! extremal behaviour over all (molecular) trees of a given order, using
//! isomorphism-free enumeration and exact rational arithmetic.
//!
//! The pieces:
//!
//! * [`graph`] — simple graphs, degree statistics, edge partitions, and
//!   canonical tree codes.
//! * [`dsl`] — a small expression language for per-edge weight functions
//!   built from the five classical means of the endpoint degrees.
//! * [`index`] — index evaluation (builtins and expressions) with an exact
//!   rational fast path, plus the molecular-tree reduction of HA.
//! * [`enumerate`] — isomorphism-free generation of free trees (with an
//!   optional maximum-degree bound) and of small connected graphs.
//! * [`verify`] — exhaustive extremal scans that produce machine-readable
//!   reports.
//! * [`chem`] — property datasets and index/property correlation.
//! * [`cli`] — the `topoindex` command-line front end.
//!
//! # Example
//!
//! ```
//! use topoindex::enumerate::make_path;
//! use topoindex::index::ha_index;
//! use topoindex::scalar::rat;
//!
//! // HA(P_6) = 6 - 11/9 = 43/9, exactly.
//! assert_eq!(ha_index(&make_path(6)), rat(43, 9));
//! ```

pub mod chem;
pub mod cli;
pub mod dsl;
pub mod enumerate;
pub mod graph;
pub mod index;
pub mod scalar;
pub mod verify;

/// Exact arbitrary-precision rational used for all exactness-sensitive
/// arithmetic in this crate.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer backing [`Rational`].
pub type Int = num_bigint::BigInt;

/// Floating-point scalar used on the numeric evaluation path.
pub type Float = f64;

pub use graph::{parse_edge_list, CanonicalCode, SimpleGraph};
pub use scalar::ExactScalar;
