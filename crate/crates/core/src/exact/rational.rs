use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactError;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Whitespace around the parts is ignored.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let bad = || ExactError::InvalidLiteral(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert_eq!(parse_rational("3/-9").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    proptest! {
        #![proptest_config(crate::fixed_seed(500))]

        #[test]
        fn printing_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = rat(n, d);
            prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
        }
    }
}
