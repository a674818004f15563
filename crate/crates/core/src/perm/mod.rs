//! Permutation groups: elements, conjugacy classes, series.

mod classes;
mod group;
pub mod io;
mod permutation;

pub use classes::ConjugacyClassSet;
pub(crate) use group::smallest_prime_factor;
pub use group::{group_from_generators, PGroupInfo, PermGroup, DEFAULT_ORDER_CAP};
pub use permutation::Permutation;
