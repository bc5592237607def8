use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::NumCast;

/// Value type of a dataset cell.
///
/// Mining only ever compares cells, so anything totally ordered works:
/// `f64`/`f32` for measured quantities, integer types for counts. Float
/// implementations reject NaN and infinities at parse time through
/// [`Scalar::is_finite_value`]; exact types are always finite.
pub trait Scalar: Copy + PartialOrd + Display + Debug + FromStr + NumCast + 'static {
    fn is_finite_value(self) -> bool {
        true
    }
}

impl Scalar for f64 {
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl Scalar for i64 {}
impl Scalar for i32 {}
impl Scalar for u32 {}
