//! Exact rational bounds with their integer floors.

use num_rational::Ratio;
use num_traits::ToPrimitive;

pub type Rational = Ratio<i64>;

/// An exact rational upper bound together with its floor; thickness is an
/// integer, so both forms appear in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalBound {
    pub exact: Rational,
    pub floor: i64,
}

impl RationalBound {
    pub fn new(exact: Rational) -> Self {
        let floor = exact.floor().to_integer();
        RationalBound { exact, floor }
    }
}

/// `"27/2"` for non-integers, `"27"` otherwise.
pub fn ratio_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Lossy float view, for human-readable route strings only.
pub fn ratio_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_and_strings() {
        let b = RationalBound::new(Rational::new(27, 2));
        assert_eq!(b.floor, 13);
        assert_eq!(ratio_string(&b.exact), "27/2");
        let b = RationalBound::new(Rational::new(-3, 2));
        assert_eq!(b.floor, -2);
        assert_eq!(ratio_string(&Rational::from_integer(27)), "27");
    }
}
