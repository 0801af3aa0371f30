use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Integer scalar used for basis coordinates.
///
/// Anything that behaves like a signed integer with exact square roots
/// qualifies; `i64` (fast path) and `num_bigint::BigInt` (unbounded) are the
/// two instances used by the crate-root aliases. `i32`/`i128` also qualify.
pub trait Coord:
    Integer
    + Roots
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Clone
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Coord for T where
    T: Integer
        + Roots
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Clone
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts a `u64` that is known to be small (ring parameters, bounds) into `I`.
pub fn coord_from_u64<I: Coord>(n: u64) -> I {
    I::from_u64(n).expect("scalar type cannot represent parameter")
}

/// Converts an `i64` that is known to be small into `I`.
pub fn coord_from_i64<I: Coord>(n: i64) -> I {
    I::from_i64(n).expect("scalar type cannot represent parameter")
}

/// Exact floor square root of a nonnegative scalar.
pub fn floor_sqrt<I: Coord>(n: &I) -> I {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// True iff `n` is a perfect square; returns the root.
pub fn exact_sqrt<I: Coord>(n: &I) -> Option<I> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(r.clone() * r.clone()) == n {
        Some(r)
    } else {
        None
    }
}
