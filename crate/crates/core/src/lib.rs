//! Graph potentials of colored trivalent graphs.
//!
//! The crate builds the Laurent polynomial attached to a colored trivalent
//! graph, relates potentials of graphs that differ by an elementary
//! transformation through an explicit rational change of coordinates, and
//! computes period sequences in two independent ways: by brute-force constant
//! terms of powers, and by traces of powers of a Bessel-kernel operator.

pub mod algebra;
pub mod error;
pub mod graph;
pub mod mutation;
pub mod period;
pub mod potential;
pub mod tqft;

pub use error::{Error, Result};
