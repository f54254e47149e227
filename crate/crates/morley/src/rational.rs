//! Exact rational scalars: thin helpers around `num_rational::BigRational`.
//!
//! `BigRational` already keeps the invariants we need (always reduced,
//! positive denominator, no rounding anywhere), so the module only adds
//! construction shortcuts, the `"p/q"` string format used by every
//! serialized artifact, and exact square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// The only scalar type of the crate.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Format as `"p/q"`, with `/q` omitted when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse the `"p/q"` (or plain `"p"`) format.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(p)?, den))
        }
    }
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt_exact(x: &Rational) -> Option<Rational> {
    let p = int_sqrt_exact(x.numer())?;
    let q = int_sqrt_exact(x.denom())?;
    Some(Rational::new(p, q))
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(xs: &[Rational]) -> BigInt {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trip() {
        for x in [rat(3, 4), rat_i(-7), rat(-10, 15), rat_i(0)] {
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert_eq!(format_rational(&rat_i(5)), "5");
        assert_eq!(format_rational(&rat(-2, 3)), "-2/3");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn sqrt_exact() {
        assert_eq!(rational_sqrt_exact(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rational_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(rational_sqrt_exact(&rat(-4, 1)), None);
        assert_eq!(rational_sqrt_exact(&rat_i(0)), Some(rat_i(0)));
    }
}
