//! Exact rational scalars and their decimal boundary.
//!
//! Everything algebraic in this crate is computed over [`Q`]; decimals only
//! appear when parsing user input and when formatting output.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Q = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty number literal")]
    Empty,
    #[error("invalid number literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal literal such as `36.7`, `-0.25` or `1e-3` exactly.
pub fn parse_decimal(src: &str) -> Result<Q, ParseRationalError> {
    let s = src.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let invalid = || ParseRationalError::Invalid(src.to_string());
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..].parse().map_err(|_| invalid())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return Err(invalid());
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid());
    }
    let all_digits = format!("{whole}{frac}");
    let numer: BigInt = if all_digits.is_empty() {
        BigInt::zero()
    } else {
        all_digits.parse().map_err(|_| invalid())?
    };
    let scale = exponent - frac.len() as i64;
    let ten = BigInt::from(10);
    let mut value = Q::from_integer(numer);
    if scale >= 0 {
        value *= Q::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Q::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Parses `a/b`, an integer, or a decimal literal.
pub fn parse_rational(src: &str) -> Result<Q, ParseRationalError> {
    let s = src.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| ParseRationalError::Invalid(src.into()))?;
            let d: BigInt = d.trim().parse().map_err(|_| ParseRationalError::Invalid(src.into()))?;
            if d.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(src.into()));
            }
            Ok(Q::new(n, d))
        }
        None => parse_decimal(s),
    }
}

/// Integer power with negative exponents allowed for nonzero bases.
pub fn pow(base: &Q, exp: i64) -> Q {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// `a/b` or a plain integer when the denominator is one.
pub fn to_exact_string(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Divides with round-half-even to the nearest integer.
fn round_half_even(q: &Q) -> BigInt {
    let (n, d) = (q.numer(), q.denom());
    let (quot, rem) = n.div_mod_floor(d);
    let twice: BigInt = &rem * 2;
    match twice.cmp(d) {
        std::cmp::Ordering::Less => quot,
        std::cmp::Ordering::Greater => quot + 1,
        std::cmp::Ordering::Equal => {
            if quot.is_even() {
                quot
            } else {
                quot + 1
            }
        }
    }
}

/// Renders `q` in plain decimal notation with `digits` significant digits,
/// rounding half to even. Trailing zeros are kept so the digit count is
/// visible (`43/10` at 4 digits is `4.300`).
pub fn to_significant(q: &Q, digits: usize) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return if digits == 1 { "0".into() } else { format!("0.{}", "0".repeat(digits - 1)) };
    }
    let negative = q.is_negative();
    let a = q.abs();
    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let mut e = (a.numer().bits() as i64 - a.denom().bits() as i64) * 3 / 10;
    let ten = int(10);
    loop {
        let lo = pow(&ten, e);
        if lo > a {
            e -= 1;
            continue;
        }
        if pow(&ten, e + 1) <= a {
            e += 1;
            continue;
        }
        break;
    }
    // Scale so that the integer part has exactly `digits` digits.
    let shift = digits as i64 - 1 - e;
    let mut mantissa = round_half_even(&(&a * pow(&ten, shift)));
    let mut shift = shift;
    if mantissa.to_string().len() > digits {
        // Rounding carried into a new leading digit (9.99 -> 10.0).
        mantissa = round_half_even(&Q::new(mantissa, BigInt::from(10)));
        shift -= 1;
    }
    let raw = mantissa.to_string();
    let body = if shift <= 0 {
        format!("{raw}{}", "0".repeat((-shift) as usize))
    } else {
        let shift = shift as usize;
        if raw.len() > shift {
            let (w, f) = raw.split_at(raw.len() - shift);
            format!("{w}.{f}")
        } else {
            format!("0.{}{raw}", "0".repeat(shift - raw.len()))
        }
    };
    if negative && mantissa.sign() != Sign::NoSign {
        format!("-{body}")
    } else {
        body
    }
}
