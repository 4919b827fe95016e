//! Trapped-ion two-qubit gate design and verification toolkit.
//!
//! The crate has two halves. The analytic half designs pulse schedules for
//! the kicked phase gate: commensurability conditions on the kick times,
//! the accumulated gate phase, and solvers producing Protocol I and
//! Protocol II schedules. The numeric half checks everything by exact
//! operator products in truncated Fock space: sideband Hamiltonians, the
//! Cirac-Zoller 1995 gate, and a brute-force phase-extraction oracle for
//! kick sequences.

// `!(x > 0.0)` is used deliberately in argument guards: unlike `x <= 0.0`
// it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cz95;
pub mod error;
pub mod fastgate;
pub mod fockspace;
pub mod hamiltonians;
pub mod linalg;
pub mod roots;
pub mod verify;

pub use error::{IonGateError, Result};
