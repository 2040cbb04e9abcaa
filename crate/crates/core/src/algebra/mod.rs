//! Finite fields, matrices over them, permutations and permutation actions.

mod action;
mod field;
mod matrix;
mod perm;

pub use action::{genset_validate, ActionSpec, ValidatedAction, IDENTITY_LABEL};
pub use field::{Field, MAX_FIELD_ORDER};
pub use matrix::{
    independent_tuple_count, perm_from_matrix, transvection_generators, tuples_enumerate,
    FqMatrix, TupleSet,
};
pub use perm::Permutation;

use crate::error::{Error, Result};

/// Least prime dividing `m`, for `m >= 2`.
pub fn smallest_prime_divisor(m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("smallest prime divisor of {m}")));
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            return Ok(d);
        }
        d += 1;
    }
    Ok(m)
}
