//! Scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type usable for heights, spacings and weights: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + FromStr + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`; used for constants and generator output.
    fn of(value: f64) -> Self {
        Self::from_f64(value).unwrap_or_else(Self::nan)
    }

    /// Lossy conversion to `f64`; used for formatting and statistics.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Format a value rounded to `digits` significant digits, in the shortest
/// decimal form that parses back to the rounded value.
pub(crate) fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        // normalises -0.0 as well
        return if value == 0.0 {
            "0".to_owned()
        } else {
            value.to_string()
        };
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), value)
        .parse()
        .unwrap_or(value);
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.234_567_890_12, 9), "1.23456789");
        assert_eq!(format_significant(2.5, 9), "2.5");
        assert_eq!(format_significant(-0.0, 9), "0");
        assert_eq!(format_significant(123_456_789_012.0, 9), "123456789000");
        assert_eq!(format_significant(1.0e-7, 9), "0.0000001");
    }

    #[test]
    fn conversions() {
        assert_eq!(<f32 as Scalar>::of(0.5), 0.5f32);
        assert_eq!(Scalar::as_f64(0.25f32), 0.25);
    }
}
