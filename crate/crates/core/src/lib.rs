//! Combinatorics of Mullineux symbols, residue symbols and
//! Jantzen-Seitz (JS) partitions of the symmetric groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`partitions`]: partitions, nodes, residues, block quantities and
//!   exhaustive enumeration.
//! - [`cores`]: p-rims, p-cores, weights and n-vectors.
//! - [`symbols`]: Mullineux and residue symbols and the Mullineux map.
//! - [`signatures`]: signature sequences, normal and good nodes.
//! - [`js_construction`]: the construction graph of JS residue symbols,
//!   its core and weight labels.
//! - [`fixed_points`]: Mullineux-fixed JS-partitions.
//! - [`verify`]: exhaustive verification suites.

pub mod cores;
pub mod error;
pub mod fixed_points;
pub mod js_construction;
pub mod partitions;
pub mod signatures;
pub mod symbols;
pub mod verify;

pub use cores::{CoreShape, NVector};
pub use error::{Error, Result};
pub use partitions::{enumerate_p_regular, Node, Partition};
pub use signatures::{Sign, SignatureSequence};
pub use symbols::{MullineuxSymbol, ResidueSymbol};
