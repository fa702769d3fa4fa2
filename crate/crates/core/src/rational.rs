//! Exact rational helpers and the rounding conventions used throughout.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator. The rounding function is `R(x) = floor(x + 1/2)` and
//! the signed fractional part is `{x} = x - R(x)`, which lies in `[-1/2, 1/2)`
//! (for example `{5/2} = -1/2`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `floor(x + 1/2)`.
pub fn round_nearest(x: &Rational) -> BigInt {
    (x + rat(1, 2)).floor().to_integer()
}

/// `x - round_nearest(x)`, always in `[-1/2, 1/2)`.
pub fn signed_frac(x: &Rational) -> Rational {
    x - Rational::from_integer(round_nearest(x))
}

/// `x - floor(x)`, always in `[0, 1)`.
pub fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil_int(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn to_f64(x: &Rational) -> f64 {
    // BigRational::to_f64 is correctly rounded for the magnitudes used here.
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Converts to `i64` when the value is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-2.375"`.
///
/// Decimal strings are converted exactly; nothing is rounded.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let err = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(err("empty string"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, fraction)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if fraction.is_empty() && digits.is_empty() {
            return Err(err("no digits"));
        }
        if !fraction.chars().all(|c| c.is_ascii_digit()) || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(err("invalid decimal digits"));
        }
        let int_part: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| err("bad integer part"))? };
        let frac_num: BigInt = if fraction.is_empty() { BigInt::zero() } else { fraction.parse().map_err(|_| err("bad fraction"))? };
        let scale = num_traits::pow(BigInt::from(10), fraction.len());
        let value = Rational::from_integer(int_part) + Rational::new(frac_num, scale);
        return Ok(if negative { -value } else { value });
    }
    let v: BigInt = s.parse().map_err(|_| err("not a rational"))?;
    Ok(Rational::from_integer(v))
}

/// True when `x` is strictly between 0 and 1.
pub fn in_open_unit(x: &Rational) -> bool {
    x.is_positive() && x < &Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn round_examples() {
        assert_eq!(round_nearest(&int(0)), BigInt::from(0));
        assert_eq!(round_nearest(&rat(5, 2)), BigInt::from(3));
        assert_eq!(round_nearest(&rat(-1, 2)), BigInt::from(0));
        assert_eq!(round_nearest(&rat(-3, 2)), BigInt::from(-1));
    }

    #[test]
    fn signed_frac_examples() {
        assert_eq!(signed_frac(&int(3)), int(0));
        assert_eq!(signed_frac(&rat(5, 2)), rat(-1, 2));
        assert_eq!(signed_frac(&rat(9, 4)), rat(1, 4));
        assert_eq!(signed_frac(&rat(-1, 2)), rat(-1, 2));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("5/2").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("2.375").unwrap(), rat(19, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(".25").unwrap(), rat(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..500).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn frac_plus_round_is_identity(x in arb_rational()) {
            let f = signed_frac(&x);
            prop_assert_eq!(&f + Rational::from_integer(round_nearest(&x)), x.clone());
            prop_assert!(f >= rat(-1, 2) && f < rat(1, 2));
        }

        #[test]
        fn signed_frac_is_one_periodic(x in arb_rational(), m in -50i64..50) {
            prop_assert_eq!(signed_frac(&(&x + int(m))), signed_frac(&x));
        }
    }
}
