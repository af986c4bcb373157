//! Exact rational scalars.
//!
//! All structure constants, cocycle values and automorphism parameters are
//! rational, so the whole crate works over `BigRational` and never rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `(m^3 - m) / 12`, the central-extension coefficient of the Virasoro cocycle.
pub fn virasoro_coefficient(m: i64) -> Rational {
    let m = BigInt::from(m);
    Rational::new(&m * &m * &m - &m, BigInt::from(12))
}

/// `base^exp` for any integer exponent; `base` must be nonzero when `exp < 0`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let e = i32::try_from(exp).expect("exponent fits in i32");
    num_traits::Pow::pow(base, e)
}

/// Formats as `p` or `p/q`, the textual form used everywhere in reports.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q` with decimal digits.
pub fn parse(s: &str) -> Result<Rational> {
    parse_at(s, 0)
}

pub(crate) fn parse_at(s: &str, offset: usize) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::parse(offset, format!("invalid rational `{t}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let digits = |x: &str| {
        let body = x.strip_prefix(['-', '+']).unwrap_or(x);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(num) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
    };
    if d.is_zero() {
        return Err(Error::parse(offset, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn virasoro_values() {
        assert_eq!(virasoro_coefficient(2), ratio(1, 2));
        assert_eq!(virasoro_coefficient(1), int(0));
        assert_eq!(virasoro_coefficient(3), int(2));
        assert_eq!(virasoro_coefficient(-3), int(-2));
    }

    #[test]
    fn negative_powers_are_exact() {
        assert_eq!(pow(&int(2), -3), ratio(1, 8));
        assert_eq!(pow(&ratio(-2, 3), 3), ratio(-8, 27));
        assert_eq!(pow(&int(5), 0), int(1));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(format(&ratio(-3, 2)), "-3/2");
        assert_eq!(format(&int(7)), "7");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
    }
}
