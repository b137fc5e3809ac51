//! Field scalars underlying the coefficient ring.
//!
//! Everything exact in this crate runs over [`Rational`]; `f64` is wired in
//! so the polynomial layer can also be evaluated numerically.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// A field element usable as a polynomial coefficient.
pub trait Scalar:
    Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn is_negative(&self) -> bool;

    /// Renders `|self|`. The flag is true when the text must be parenthesised
    /// before being multiplied against a symbol (e.g. `(4/5)*b`).
    fn render_abs(&self) -> (String, bool);

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("i64 fits every scalar")
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Scalar for BigRational {
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn render_abs(&self) -> (String, bool) {
        let a = self.abs();
        if a.denom().is_one() {
            (a.numer().to_string(), false)
        } else {
            (format!("{}/{}", a.numer(), a.denom()), true)
        }
    }
}

impl Scalar for f64 {
    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn render_abs(&self) -> (String, bool) {
        (format!("{}", self.abs()), false)
    }
}

/// Parses `"3"`, `"-2/7"` or `" 1/2 "` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::BadRational(text.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text of a rational, `"-4/5"` style.
pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let q = parse_rational(" -6/8 ").unwrap();
        assert_eq!(render_rational(&q), "-3/4");
        assert_eq!(render_rational(&parse_rational("5").unwrap()), "5");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = parse_rational("0/7").unwrap();
        assert!(z.denom().is_one());
        assert!(z.is_zero());
    }
}
