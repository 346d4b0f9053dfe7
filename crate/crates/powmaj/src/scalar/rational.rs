//! Exact rational plumbing: parsing, formatting, integer powers and directed
//! decimal/dyadic rounding used by the enclosure layer and the serializers.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// The exact tier of the toolkit: arbitrary-precision rationals, always in
/// lowest terms with a positive denominator (guaranteed by `num-rational`).
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand used pervasively in tests and builders.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_u32(n: u32) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"`, `"n/d"` or a plain decimal such as `"-0.25"` into an exact
/// rational. Grid steps and CLI inputs arrive in any of the three shapes.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_owned());
    if let Some((numer, denom)) = s.split_once('/') {
        let n: BigInt = numer.trim().parse().map_err(|_| malformed())?;
        let d: BigInt = denom.trim().parse().map_err(|_| malformed())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_owned()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.is_empty() && !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| malformed())?
        };
        let frac: BigInt = frac_part.parse().map_err(|_| malformed())?;
        let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
        let magnitude = whole * &scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| malformed())?;
    Ok(Rational::from_integer(n))
}

/// Canonical display form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Integer power with sign handling; `x` must be nonzero when `k < 0`.
pub fn rational_pow_int(x: &Rational, k: i64) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    let mag = k.unsigned_abs();
    assert!(mag <= u32::MAX as u64, "integer exponent out of range");
    let numer = x.numer().pow(mag as u32);
    let denom = x.denom().pow(mag as u32);
    if k > 0 {
        Rational::new(numer, denom)
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        Rational::new(denom, numer)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundDir {
    Down,
    Up,
}

/// Rounds `x` onto the grid of multiples of `2^-bits`, in the given direction.
pub fn dyadic_round(x: &Rational, bits: u32, dir: RoundDir) -> Rational {
    let scaled = x * Rational::from_integer(BigInt::one() << bits as usize);
    let floored = scaled.floor();
    let grid = match dir {
        RoundDir::Down => floored,
        RoundDir::Up => {
            if scaled.is_integer() {
                scaled
            } else {
                floored + Rational::one()
            }
        }
    };
    grid / Rational::from_integer(BigInt::one() << bits as usize)
}

/// Exact decimal rendering of `x` with `digits` places after the point,
/// rounded in the requested direction. Used for enclosure endpoints, where
/// outward rounding keeps the printed interval sound.
pub fn decimal_string(x: &Rational, digits: usize, dir: RoundDir) -> String {
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = x * Rational::from_integer(scale.clone());
    let mut units = scaled.floor().to_integer();
    if dir == RoundDir::Up && !scaled.is_integer() {
        units += 1;
    }
    let negative = units.sign() == Sign::Minus;
    let mag: BigUint = units.magnitude().clone();
    let raw = mag.to_string();
    let padded = if raw.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - raw.len()), raw)
    } else {
        raw
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - digits);
    let body = if digits == 0 {
        int_part.to_owned()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if negative && body.bytes().any(|b| b.is_ascii_digit() && b != b'0') {
        format!("-{body}")
    } else {
        body
    }
}

/// How many decimal places are needed to not lose a `2^-bits` resolution.
pub fn digits_for_bits(bits: u32) -> usize {
    // log10(2) < 0.302; two guard digits.
    (bits as usize * 302) / 1000 + 2
}
