//! Non-redundancy classification of Boolean CSP predicates.
//!
//! The crate enumerates predicate classes up to coordinate permutation and
//! negation, bounds each class's non-redundancy growth exponent from below
//! (OR projections) and above (integer lattices, with explicit polynomial
//! certificates), and builds machine-checked extremal instances for the
//! predicates those two bounds leave open.

pub mod certificate;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod instance_io;
pub mod lattice;
pub mod or_projection;
pub mod oracle;
pub mod predicate;

pub use error::{NrdError, Result};
pub use predicate::{Predicate, SymmetryElement};
