//! Integer scalar abstraction.
//!
//! Every algorithm in this crate is written against [`Int`], so the same code
//! runs on machine words for bounded sweeps and on [`num_bigint::BigInt`] when
//! inputs are unbounded. Fixed-width instantiations do not guard against
//! overflow; callers pick a width that covers `|a·d − b·c|` and the
//! intermediate constant terms of the reduction.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed integer usable as the coefficient type.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Converts a small count or index into the scalar type.
    fn from_u64_lossless(n: u64) -> Self {
        Self::from_u64(n).expect("value does not fit the scalar type")
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}
