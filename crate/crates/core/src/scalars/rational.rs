use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ScalarError;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical text form: `"p/q"`, or `"p"` when `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    if s.starts_with('-') && digits == "0" {
        return None;
    }
    s.parse().ok()
}

/// Parses the canonical form produced by [`format_rational`]. Unreduced
/// fractions, unit denominators, signs on the denominator, leading zeros
/// and `-0` are all rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::Malformed(format!("non-canonical rational {s:?}"));
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s, true).ok_or_else(bad)?)),
        Some((p, q)) => {
            let p = parse_int(p, true).ok_or_else(bad)?;
            let q = parse_int(q, false).ok_or_else(bad)?;
            if q.is_zero() || q.is_one() || p.is_zero() {
                return Err(bad());
            }
            let r = Rational::new(p.clone(), q.clone());
            if r.numer() != &p || r.denom() != &q || !q.is_positive() {
                return Err(bad());
            }
            Ok(r)
        }
    }
}
