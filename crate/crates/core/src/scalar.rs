//! The integer scalar trait shared by the exact linear algebra layer.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer ring element.
///
/// The linear algebra in [`crate::lattice`] and [`crate::normal_form`] is
/// written against this trait. Geometry uses [`num_bigint::BigInt`]
/// throughout; the fixed-width impls exist for small hand-checked cases.
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

/// Floor of `a / b` for `b != 0`.
pub(crate) fn div_floor<T: Int>(a: &T, b: &T) -> T {
    a.div_floor(b)
}

/// Ceiling of `a / b` for `b != 0`.
pub(crate) fn div_ceil<T: Int>(a: &T, b: &T) -> T {
    -((-a.clone()).div_floor(b))
}
