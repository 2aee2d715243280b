//! Scalar abstraction for the coefficient field.
//!
//! All core computations (slopes, Laplacian solves, cochain ranks, pairing
//! integrals) only use field operations, so they are written against the
//! [`Scalar`] trait. The crate-root alias [`crate::Rat`] instantiates
//! everything with arbitrary-precision rationals, which is what the CLI and
//! the verdict layers use; `f64` also satisfies the bounds for quick
//! approximate experiments.

use num_traits::{FromPrimitive, Num, Signed};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Field scalar used for lengths, values, coefficients and weights.
pub trait Scalar:
    Num
    + Signed
    + FromPrimitive
    + Sum
    + Clone
    + Debug
    + Display
    + PartialOrd
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Num
        + Signed
        + FromPrimitive
        + Sum
        + Clone
        + Debug
        + Display
        + PartialOrd
        + Send
        + Sync
        + 'static
{
}

/// The scalar for an integer literal.
pub fn int<S: Scalar>(n: i64) -> S {
    S::from_i64(n).expect("integer does not fit in scalar")
}

/// The scalar `p/q`. Panics if `q == 0`.
pub fn ratio<S: Scalar>(p: i64, q: i64) -> S {
    assert!(q != 0, "zero denominator");
    int::<S>(p) / int::<S>(q)
}

/// Total-order comparison for scalars (rationals are totally ordered;
/// floats are assumed to be non-NaN here).
pub fn cmp<S: Scalar>(a: &S, b: &S) -> std::cmp::Ordering {
    a.partial_cmp(b).expect("incomparable scalars")
}
