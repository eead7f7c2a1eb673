//! Scalar abstractions shared by every exact algorithm in the crate.
//!
//! [`Ring`] is the minimum needed for products, traces and fraction-free
//! elimination (the division used there is always exact). [`Int`] adds what
//! the lattice and number-theoretic routines need on top of that.
//!
//! Fixed-width instantiations (`i64`, `i128`) are only sound when the caller
//! bounds every intermediate value; the arbitrary-precision aliases at the
//! crate root are the default.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Exact commutative ring elements with exact division where it is defined.
pub trait Ring: Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync {}

impl<T> Ring for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> + Send + Sync {}

/// Integers: machine words or arbitrary precision.
pub trait Int:
    Ring + Integer + Signed + Roots + Hash + Ord + FromPrimitive + ToPrimitive + Display
{
}

impl<T> Int for T where
    T: Ring + Integer + Signed + Roots + Hash + Ord + FromPrimitive + ToPrimitive + Display
{
}

/// Exact rationals over an integer type.
pub type Rational<T> = Ratio<T>;

/// Arbitrary-precision rational.
pub type BigRational = Ratio<BigInt>;

/// Converts between integer types, panicking if the value does not fit.
///
/// Only used on values whose range the caller has already bounded.
pub fn cast<S: Int, T: Int>(x: &S) -> T {
    if let Some(v) = x.to_i64() {
        T::from_i64(v).expect("value out of range for target integer type")
    } else {
        let s = x.to_string();
        T::from_str_radix(&s, 10)
            .ok()
            .expect("value out of range for target integer type")
    }
}

/// Largest integer `m` with `m <= x * x`, computed exactly from the binary
/// value of `x`. Negative or non-finite inputs are rejected by returning `None`.
pub fn floor_square(x: f64) -> Option<BigInt> {
    if !x.is_finite() || x < 0.0 {
        return None;
    }
    let r = Ratio::<BigInt>::from_float(x)?;
    let sq = &r * &r;
    Some(sq.floor().to_integer())
}

/// Largest integer `m` with `m <= x`, exactly. `None` for non-finite input.
pub fn floor_real(x: f64) -> Option<BigInt> {
    if !x.is_finite() {
        return None;
    }
    Some(Ratio::<BigInt>::from_float(x)?.floor().to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_square_is_exact() {
        assert_eq!(floor_square(3.0), Some(BigInt::from(9)));
        assert_eq!(floor_square(2.5), Some(BigInt::from(6)));
        assert_eq!(floor_square(26f64.sqrt()).map(|v| v <= BigInt::from(26)), Some(true));
        assert_eq!(floor_square(-1.0), None);
    }

    #[test]
    fn cast_round_trips_small_values() {
        let b = BigInt::from(-42);
        let v: i64 = cast(&b);
        assert_eq!(v, -42);
        let back: BigInt = cast(&v);
        assert_eq!(back, b);
    }
}
