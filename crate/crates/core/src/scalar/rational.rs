use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{GeomError, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a rational if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn is_square(r: &Rational) -> bool {
    rational_sqrt(r).is_some()
}

/// Parses an integer, `p/q`, or a decimal string such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = |msg: &str| GeomError::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    if s.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err("bad numerator"))?;
        let q: BigInt = q.trim().parse().map_err(|_| err("bad denominator"))?;
        if q.is_zero() {
            return Err(err("zero denominator"));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(err("bad decimal"));
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err("bad decimal"));
    }
    let digits: BigInt = format!("{ip}{fp}0").parse().map_err(|_| err("bad decimal"))?;
    let scale = exp - fp.len() as i64 - 1;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(digits);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Least common multiple of the denominators.
pub(crate) fn denom_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Gcd of the numerators (non-negative).
pub(crate) fn numer_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
}

/// Splits a nonzero rational `r` as `k^2 * m` with `m` an integer whose small
/// square factors have been removed; returns `(k, m)`.
pub(crate) fn square_factor(r: &Rational) -> (Rational, BigInt) {
    // sqrt(p/q) = sqrt(p*q)/q
    let mut m = r.numer() * r.denom();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(2000u32);
    while p <= limit {
        let p2 = &p * &p;
        if p2 > m.abs() {
            break;
        }
        while (&m % &p2).is_zero() {
            m /= &p2;
            k *= &p;
        }
        p += 1u32;
    }
    let s = m.abs().sqrt();
    if &s * &s == m.abs() {
        k *= &s;
        m = if m.is_negative() { -BigInt::one() } else { BigInt::one() };
    }
    (Rational::new(k, r.denom().clone()), m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_number_forms() {
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("1e3").unwrap(), int(1000));
        assert_eq!(parse_rational("2.5e-1").unwrap(), rat(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        let (k, m) = square_factor(&rat(8, 9));
        assert_eq!((k, m), (rat(2, 3), BigInt::from(2)));
        let (k, m) = square_factor(&rat(-12, 1));
        assert_eq!((k, m), (int(2), BigInt::from(-3)));
    }
}
