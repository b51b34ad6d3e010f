//! Counting, enumeration and classification of the finite-index sublattices
//! of `Z^n`.
//!
//! The number of sublattices of index `m` is computed three ways
//! ([`counting`]) and checked against an explicit enumeration of Hermite
//! bases ([`enumeration`]). Sublattices are grouped into unimodular
//! equivalence classes by their Smith invariant chain, and the number of
//! classes is checked against the product of partition counts of the prime
//! exponents of `m`.
//!
//! ```
//! use sublattice_core::{counting, enumeration};
//!
//! assert_eq!(counting::f_product(2, 4).unwrap().to_string(), "7");
//! let census = enumeration::classify(2, 4, enumeration::DEFAULT_CAP).unwrap();
//! assert_eq!(census.classes.len(), 2);
//! ```

pub mod arith;
pub mod cli;
pub mod counting;
pub mod enumeration;
pub mod error;
pub mod lattice;
pub mod normal_forms;
pub mod oracle;

pub use error::{Error, Result};
pub use lattice::Sublattice;
pub use normal_forms::{HnfBasis, IntMatrix, InvariantChain};

use num_bigint::BigUint;
use serde::Serializer;

// Unbounded counts go over the wire as decimal strings.
pub(crate) fn serde_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
