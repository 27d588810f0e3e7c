use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds `num/den`, rejecting a zero denominator instead of panicking.
pub fn ratio(num: i64, den: i64) -> Result<Rational, PolyError> {
    if den == 0 {
        return Err(PolyError::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `a`, `-a`, or `a/b` with integer `a`, `b`.
pub fn parse_rational(text: &str) -> Result<Rational, PolyError> {
    let text = text.trim();
    let bad = || PolyError::Parse {
        pos: 0,
        msg: format!("not a rational number: `{text}`"),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text: `a/b`, with `/1` omitted.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn abs_is_one(r: &Rational) -> bool {
    r.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(ratio(1, 0), Err(PolyError::ZeroDenominator));
        assert_eq!(ratio(0, 0), Err(PolyError::ZeroDenominator));
        assert_eq!(parse_rational("3/0"), Err(PolyError::ZeroDenominator));
    }

    #[test]
    fn normalization() {
        let r = ratio(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(render_rational(&r), "-3/2");
        assert_eq!(render_rational(&ratio(10, 5).unwrap()), "2");
        assert_eq!(parse_rational(" -10/4 ").unwrap(), ratio(-5, 2).unwrap());
    }
}
