//! Irreducible character tables.

mod cache;
mod character;
mod dixon;
pub(crate) mod modular;

pub use cache::{CachedTable, TableCache, CACHE_VERSION, DEFAULT_CACHE_DIR};
pub use character::{CharTable, Character};
pub use dixon::{
    character_table, character_table_with_prime, class_matrix, class_mult_coefficients,
};
pub use modular::admissible_primes;
