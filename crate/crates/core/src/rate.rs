use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// An exact proportion `numerator / denominator` of example counts.
///
/// Rates are kept as reduced integer ratios and only turned into floating
/// point at the edges (reports, verdict comparison).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rate(Ratio<u64>);

impl Rate {
    pub const ZERO: Rate = Rate(Ratio::new_raw(0, 1));

    /// Panics if `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Rate {
        Rate(Ratio::new(numerator, denominator))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.numerator() == 0
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Rate) -> Option<Rate> {
        if other > self {
            None
        } else {
            Some(Rate(self.0 - other.0))
        }
    }

    /// `self / other`, or `None` when `other` is zero.
    pub fn checked_div(&self, other: &Rate) -> Option<Rate> {
        if other.is_zero() {
            None
        } else {
            Some(Rate(self.0 / other.0))
        }
    }

    /// Renders as `n/d`.
    pub fn exact(&self) -> String {
        format!("{}/{}", self.numerator(), self.denominator())
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.*}", p, self.to_f64()),
            None => write!(f, "{}", self.to_f64()),
        }
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}
