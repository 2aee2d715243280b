//! The dimension lattice `ℤ≥0 ∪ {∞}`.
//!
//! Vector-space dimensions produced by the engine live here so that the
//! infinite-dimensional verdict is a first-class value rather than a
//! sentinel. Addition absorbs infinity; subtraction is only defined between
//! finite values.

use serde::Serialize;
use std::fmt;
use std::ops::Add;

/// A dimension: a non-negative integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

impl Dimension {
    pub fn is_finite(self) -> bool {
        matches!(self, Dimension::Finite(_))
    }

    pub fn is_zero(self) -> bool {
        self == Dimension::Finite(0)
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            Dimension::Infinite => None,
        }
    }

    /// `self - rhs` for finite operands, `None` when either side is
    /// infinite or the difference would be negative.
    pub fn checked_sub(self, rhs: Dimension) -> Option<Dimension> {
        match (self, rhs) {
            (Dimension::Finite(a), Dimension::Finite(b)) if a >= b => {
                Some(Dimension::Finite(a - b))
            }
            _ => None,
        }
    }
}

impl Add for Dimension {
    type Output = Dimension;

    fn add(self, rhs: Dimension) -> Dimension {
        match (self, rhs) {
            (Dimension::Finite(a), Dimension::Finite(b)) => Dimension::Finite(a + b),
            _ => Dimension::Infinite,
        }
    }
}

impl From<usize> for Dimension {
    fn from(n: usize) -> Self {
        Dimension::Finite(n)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{}", n),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Dimension {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}
