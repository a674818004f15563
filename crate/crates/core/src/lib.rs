//! Exact character theory for finite p-groups.
//!
//! Groups are given by permutation generators and fully enumerated.
//! Character values live in cyclotomic integer rings and every computation
//! is exact: no floating point anywhere.

pub mod charops;
pub mod chartab;
pub mod clifford;
pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
