//! Exact rational scalars.
//!
//! Everything in the crate is computed over `BigRational`, which keeps
//! values in lowest terms with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `base^exp` with the convention `0^0 = 1`.
///
/// Panics on `0^exp` for negative `exp`.
pub fn pow(base: i64, exp: i32) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    assert!(base != 0 || exp > 0, "0 raised to a negative power");
    Pow::pow(int(base), exp)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Canonical text form: always `num/den`, lowest terms, sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer. Rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Domain(format!("invalid rational `{s}`: {msg}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad("numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad("denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad("integer"))?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// `(-1)^k` as a rational.
pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow(0, 0), int(1));
        assert_eq!(pow(0, 3), int(0));
        assert_eq!(pow(-2, 3), int(-8));
        assert_eq!(pow(2, -2), ratio(1, 4));
    }

    #[test]
    fn text_form_is_canonical() {
        assert_eq!(format_rational(&ratio(4, -6)), "-2/3");
        assert_eq!(format_rational(&int(5)), "5/1");
        assert_eq!(parse_rational("-2/3").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
