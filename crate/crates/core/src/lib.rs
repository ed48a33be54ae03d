//! Finite categories, finite simplicial sets in Eilenberg–Zilber form,
//! tensor products over index categories, bar cofibrant approximations and
//! homotopy colimits, with integral homology as the test for equivalences.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion `barcof` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod approx;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod fincat;
pub mod homology;
pub mod sset;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};

/// Dimension cap used when the caller does not supply one.
pub const DEFAULT_DIM_CAP: usize = 6;

/// Node budget for map enumeration and isomorphism search.
pub const DEFAULT_BUDGET: usize = 1_000_000;
