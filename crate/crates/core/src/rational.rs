//! Exact rational helpers on top of `num`'s arbitrary precision ratio type.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest dyadic exponent accepted anywhere in the crate.
pub const MAX_EXPONENT: i64 = 64;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn check_exponent(e: i64) -> Result<i32> {
    if e.abs() > MAX_EXPONENT {
        Err(Error::ExponentOverflow(e))
    } else {
        Ok(e as i32)
    }
}

/// `2^e` as an exact rational.
pub fn pow2(e: i32) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Largest `k` with `2^k <= q`, for `q > 0`.
pub fn floor_log2(q: &Rational) -> i64 {
    assert!(q.is_positive(), "floor_log2 needs a positive argument");
    let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
    // the bit-length estimate is off by at most one in either direction
    while pow2_i64(k) > *q {
        k -= 1;
    }
    while pow2_i64(k + 1) <= *q {
        k += 1;
    }
    k
}

fn pow2_i64(k: i64) -> Rational {
    let p = BigInt::one() << k.unsigned_abs();
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// `ln(1 + q)` evaluated so that small `q` keep full relative precision.
pub fn ln_1p(q: &Rational) -> f64 {
    to_f64(q).ln_1p()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| Error::ParseRational(s.into()))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::ParseRational(s.into()))?;
            if q.is_zero() {
                return Err(Error::ParseRational(s.into()));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(t.parse().map_err(|_| Error::ParseRational(s.into()))?),
    };
    Ok(parsed)
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_format() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(8, 4)), "2");
        assert_eq!(parse_rational(" -32/7 ").unwrap(), rat(-32, 7));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn powers_and_logs() {
        assert_eq!(pow2(3), int(8));
        assert_eq!(pow2(-2), rat(1, 4));
        assert_eq!(floor_log2(&rat(32, 7)), 2);
        assert_eq!(floor_log2(&int(4)), 2);
        assert_eq!(floor_log2(&rat(4, 7)), -1);
        assert_eq!(floor_log2(&rat(1, 2)), -1);
        assert_eq!(floor_log2(&rat(511, 1024)), -2);
    }

    #[test]
    fn exponent_cap() {
        assert!(check_exponent(64).is_ok());
        assert_eq!(check_exponent(-65), Err(Error::ExponentOverflow(-65)));
    }
}
