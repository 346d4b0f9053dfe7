//! Two-tier certified arithmetic.
//!
//! A [`Scalar`] is either an exact rational or a lazily evaluated real whose
//! value can be enclosed in an interval at any requested precision. Exact
//! values stay exact through `+ - * /` and integer powers; fractional powers
//! fall back to enclosures unless the result is detected to be rational.
//! Comparisons refine adaptively: start at the policy's precision, double
//! until the intervals separate, and report an honest tie when the budget is
//! exhausted. Only the exact tier can declare two values equal.

pub mod enclosure;
pub mod rational;

use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enclosure::{exact_root, ln_enclosure, root_bounds, Enclosure};
pub use rational::{
    decimal_string, digits_for_bits, format_rational, parse_rational, rat, rat_int, rat_u32,
    rational_pow_int, ParseRationalError, Rational, RoundDir,
};

use num_traits::{One, Signed, Zero};

/// Hard ceiling for internal sign-refinement loops (division, positive-base
/// checks). Structurally positive quantities separate from zero far below
/// this; hitting it means the caller divided by an exact zero in disguise.
const SIGN_REFINE_CAP_BITS: u32 = 1 << 20;

/// Guards against pathological exponents; every exponent in scope is tiny.
const MAX_EXP_NUMER: i64 = 1 << 16;
const MAX_EXP_DENOM: u32 = 1 << 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("base must be strictly positive, got {0}")]
    NonpositiveBase(String),
    #[error("root operands must be strictly positive")]
    NonpositiveRootOperand,
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("exponent {0} outside supported range (|numerator| <= {MAX_EXP_NUMER}, denominator <= {MAX_EXP_DENOM})")]
    ExponentTooLarge(String),
}

/// Adaptive-precision budget, passed explicitly to every comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl PrecisionPolicy {
    pub fn new(start_bits: u32, max_bits: u32) -> Self {
        let start = start_bits.max(8);
        PrecisionPolicy { start_bits: start, max_bits: max_bits.max(start) }
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { start_bits: 64, max_bits: 4096 }
    }
}

/// Outcome of a certified comparison. `ExactlyEqual` is only ever produced by
/// exact rational arithmetic or by comparing a value against itself;
/// enclosures can at best report a tie with the residual interval width.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComparisonVerdict {
    CertainlyLess,
    CertainlyGreater,
    ExactlyEqual,
    TieWithinTolerance {
        #[serde(with = "rational_as_string")]
        residual_width: Rational,
    },
}

impl ComparisonVerdict {
    /// Certified `lhs <= rhs`?
    pub fn is_le(&self) -> bool {
        matches!(self, ComparisonVerdict::CertainlyLess | ComparisonVerdict::ExactlyEqual)
    }

    /// Certified `lhs >= rhs`?
    pub fn is_ge(&self) -> bool {
        matches!(self, ComparisonVerdict::CertainlyGreater | ComparisonVerdict::ExactlyEqual)
    }

    pub fn is_tie(&self) -> bool {
        matches!(self, ComparisonVerdict::TieWithinTolerance { .. })
    }
}

impl fmt::Display for ComparisonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonVerdict::CertainlyLess => write!(f, "certainly_less"),
            ComparisonVerdict::CertainlyGreater => write!(f, "certainly_greater"),
            ComparisonVerdict::ExactlyEqual => write!(f, "exactly_equal"),
            ComparisonVerdict::TieWithinTolerance { residual_width } => {
                write!(f, "tie_within_tolerance(width={})", format_rational(residual_width))
            }
        }
    }
}

/// Serializes rationals as `"n/d"` strings inside derived types.
pub mod rational_as_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}

/// Serializes rational lists as arrays of `"n/d"` strings.
pub mod rational_vec_as_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|x| parse_rational(x).map_err(D::Error::custom)).collect()
    }
}

/// A lazily evaluated certified real: a pure function from a precision budget
/// to an enclosure that always contains the true value. Evaluations are
/// memoized per exact bit count, so re-comparing the same value is cheap.
#[derive(Clone)]
pub struct CertifiedReal {
    eval: Arc<dyn Fn(u32) -> Enclosure + Send + Sync>,
    cache: Arc<Mutex<Vec<(u32, Enclosure)>>>,
}

impl CertifiedReal {
    fn new(eval: impl Fn(u32) -> Enclosure + Send + Sync + 'static) -> Self {
        CertifiedReal { eval: Arc::new(eval), cache: Arc::new(Mutex::new(Vec::new())) }
    }

    fn enclose(&self, bits: u32) -> Enclosure {
        if let Some((_, e)) = self.cache.lock().unwrap().iter().find(|(b, _)| *b == bits) {
            return e.clone();
        }
        let e = (self.eval)(bits);
        let mut cache = self.cache.lock().unwrap();
        if !cache.iter().any(|(b, _)| *b == bits) {
            if cache.len() >= 8 {
                // Keep the highest-precision entries.
                let min_pos = cache
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, (b, _))| *b)
                    .map(|(i, _)| i)
                    .unwrap();
                cache.swap_remove(min_pos);
            }
            cache.push((bits, e.clone()));
        }
        e
    }
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CertifiedReal(..)")
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(Rational),
    Certified(CertifiedReal),
}

impl Scalar {
    pub fn exact(x: Rational) -> Self {
        Scalar::Exact(x)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(rat_int(n))
    }

    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Rational::one())
    }

    pub fn certified(eval: impl Fn(u32) -> Enclosure + Send + Sync + 'static) -> Self {
        Scalar::Certified(CertifiedReal::new(eval))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Certified(_) => None,
        }
    }

    /// An interval guaranteed to contain the value, at roughly `2^-bits`
    /// resolution for primitive expressions (width grows with tree size).
    pub fn enclose(&self, bits: u32) -> Enclosure {
        match self {
            Scalar::Exact(x) => Enclosure::point(x.clone(), bits),
            Scalar::Certified(c) => c.enclose(bits),
        }
    }

    /// Enclosure refined until it certifies a strict sign, used where a
    /// structurally nonzero quantity gates a division or a fractional power.
    fn enclose_sign_definite(&self, bits: u32) -> Enclosure {
        let mut b = bits;
        loop {
            let e = self.enclose(b);
            if e.is_sign_definite() {
                return e;
            }
            assert!(
                b < SIGN_REFINE_CAP_BITS,
                "value could not be separated from zero at {b} bits; \
                 division or fractional power of a (near-)zero quantity"
            );
            b = b.saturating_mul(2);
        }
    }

    /// Sum with a flat evaluation tree (one pass over the terms per request).
    pub fn sum(items: &[Scalar]) -> Scalar {
        if items.iter().all(Scalar::is_exact) {
            let total = items
                .iter()
                .map(|s| s.as_exact().unwrap().clone())
                .fold(Rational::zero(), |acc, x| acc + x);
            return Scalar::Exact(total);
        }
        let items: Vec<Scalar> = items.to_vec();
        Scalar::certified(move |bits| {
            let mut acc = Enclosure::point(Rational::zero(), bits);
            for item in &items {
                acc = acc.add(&item.enclose(bits));
            }
            acc
        })
    }

    /// Serializable snapshot: the exact rational, or an outward-rounded
    /// decimal enclosure evaluated at `bits`.
    pub fn repr(&self, bits: u32) -> ScalarRepr {
        match self {
            Scalar::Exact(x) => ScalarRepr::Exact(format_rational(x)),
            Scalar::Certified(c) => {
                let e = c.enclose(bits);
                let digits = digits_for_bits(bits);
                ScalarRepr::Enclosure {
                    lo: decimal_string(e.lo(), digits, RoundDir::Down),
                    hi: decimal_string(e.hi(), digits, RoundDir::Up),
                    bits,
                }
            }
        }
    }
}

fn binary(
    a: &Scalar,
    b: &Scalar,
    exact: impl Fn(&Rational, &Rational) -> Rational + Send + Sync + 'static,
    interval: impl Fn(&Enclosure, &Enclosure) -> Enclosure + Send + Sync + 'static,
) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(exact(x, y)),
        _ => {
            let (a, b) = (a.clone(), b.clone());
            Scalar::certified(move |bits| interval(&a.enclose(bits), &b.enclose(bits)))
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        binary(self, rhs, |x, y| x + y, Enclosure::add)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        binary(self, rhs, |x, y| x - y, Enclosure::sub)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        binary(self, rhs, |x, y| x * y, Enclosure::mul)
    }
}

impl std::ops::Div for &Scalar {
    type Output = Scalar;
    /// Division; the divisor must be structurally nonzero. An exact zero
    /// divisor panics, a certified divisor is refined until its sign is
    /// certain.
    fn div(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(x), Scalar::Exact(y)) => {
                assert!(!y.is_zero(), "exact division by zero");
                Scalar::Exact(x / y)
            }
            _ => {
                let (a, b) = (self.clone(), rhs.clone());
                Scalar::certified(move |bits| {
                    let divisor = b.enclose_sign_definite(bits);
                    a.enclose(bits).div(&divisor)
                })
            }
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(-x.clone()),
            Scalar::Certified(_) => {
                let a = self.clone();
                Scalar::certified(move |bits| a.enclose(bits).neg())
            }
        }
    }
}

fn split_exponent(exp: &Rational) -> Result<(i64, u32), ScalarError> {
    let err = || ScalarError::ExponentTooLarge(format_rational(exp));
    let numer: i64 = exp.numer().try_into().map_err(|_| err())?;
    let denom: u32 = exp.denom().try_into().map_err(|_| err())?;
    if numer.abs() > MAX_EXP_NUMER || denom > MAX_EXP_DENOM {
        return Err(err());
    }
    Ok((numer, denom))
}

/// `base^exp` for a strictly positive base and rational exponent. Integer
/// exponents and perfect powers stay exact; everything else becomes a
/// certified enclosure with directed rounding.
pub fn pow_scalar(base: &Scalar, exp: &Rational) -> Result<Scalar, ScalarError> {
    let (s, q) = split_exponent(exp)?;
    if let Scalar::Exact(x) = base {
        if !x.is_positive() {
            return Err(ScalarError::NonpositiveBase(format_rational(x)));
        }
    }
    if s == 0 {
        return Ok(Scalar::one());
    }
    match base {
        Scalar::Exact(x) => {
            if q == 1 {
                return Ok(Scalar::Exact(rational_pow_int(x, s)));
            }
            let t = rational_pow_int(x, s);
            if let Some(root) = exact_root(&t, q) {
                return Ok(Scalar::Exact(root));
            }
            Ok(Scalar::certified(move |bits| {
                let (lo, hi) = root_bounds(&t, q, bits);
                Enclosure::new(lo, hi, bits)
            }))
        }
        Scalar::Certified(_) => {
            let base = base.clone();
            Ok(Scalar::certified(move |bits| {
                // Guard bits on the base so endpoint rounding stays dominant.
                let e = base.enclose_sign_definite(bits + 2);
                assert!(
                    e.is_strictly_positive(),
                    "fractional power of a certified value that is not positive"
                );
                if q == 1 {
                    e.pow_int(s)
                } else {
                    e.pow_rational(s, q, bits)
                }
            }))
        }
    }
}

/// Certified natural logarithm of a positive rational (exact zero at 1).
pub fn ln_rational(x: &Rational) -> Result<Scalar, ScalarError> {
    if !x.is_positive() {
        return Err(ScalarError::NonpositiveBase(format_rational(x)));
    }
    if x.is_one() {
        return Ok(Scalar::zero());
    }
    let x = x.clone();
    Ok(Scalar::certified(move |bits| ln_enclosure(&x, bits)))
}

/// Adaptive certified comparison. Exact pairs decide immediately; otherwise
/// enclosures are refined by doubling the precision until they separate or
/// the policy budget runs out.
pub fn compare(a: &Scalar, b: &Scalar, policy: &PrecisionPolicy) -> ComparisonVerdict {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => ComparisonVerdict::CertainlyLess,
            std::cmp::Ordering::Greater => ComparisonVerdict::CertainlyGreater,
            std::cmp::Ordering::Equal => ComparisonVerdict::ExactlyEqual,
        },
        _ => {
            if let (Scalar::Certified(ca), Scalar::Certified(cb)) = (a, b) {
                // One expression compared against itself: equal by purity,
                // and never separable by intervals.
                if Arc::ptr_eq(&ca.eval, &cb.eval) {
                    return ComparisonVerdict::ExactlyEqual;
                }
            }
            let mut bits = policy.start_bits;
            loop {
                let ea = a.enclose(bits);
                let eb = b.enclose(bits);
                if ea.hi() < eb.lo() {
                    return ComparisonVerdict::CertainlyLess;
                }
                if ea.lo() > eb.hi() {
                    return ComparisonVerdict::CertainlyGreater;
                }
                if bits >= policy.max_bits {
                    let residual = (ea.hi() - eb.lo()) - (ea.lo() - eb.hi());
                    return ComparisonVerdict::TieWithinTolerance { residual_width: residual };
                }
                bits = bits.saturating_mul(2).min(policy.max_bits);
            }
        }
    }
}

/// Decides `a^(1/p)` vs `b^(1/q)` exactly by cross-powering: both sides are
/// positive, so comparing `a^q` with `b^p` in exact arithmetic settles it.
pub fn root_compare(
    a: &Rational,
    p: u32,
    b: &Rational,
    q: u32,
) -> Result<ComparisonVerdict, ScalarError> {
    if p == 0 || q == 0 {
        return Err(ScalarError::ZeroRootIndex);
    }
    if !a.is_positive() || !b.is_positive() {
        return Err(ScalarError::NonpositiveRootOperand);
    }
    let lhs = rational_pow_int(a, q as i64);
    let rhs = rational_pow_int(b, p as i64);
    Ok(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => ComparisonVerdict::CertainlyLess,
        std::cmp::Ordering::Greater => ComparisonVerdict::CertainlyGreater,
        std::cmp::Ordering::Equal => ComparisonVerdict::ExactlyEqual,
    })
}

/// Serialized form of a scalar: a rational string, or a decimal enclosure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Exact(String),
    Enclosure { lo: String, hi: String, bits: u32 },
}

impl ScalarRepr {
    /// Decimal digits shared by both endpoints — the certain prefix.
    pub fn certified_digits(&self) -> String {
        match self {
            ScalarRepr::Exact(s) => s.clone(),
            ScalarRepr::Enclosure { lo, hi, .. } => {
                if lo == hi {
                    return lo.clone();
                }
                let common: String = lo
                    .chars()
                    .zip(hi.chars())
                    .take_while(|(a, b)| a == b)
                    .map(|(a, _)| a)
                    .collect();
                if common.is_empty() || !common.bytes().any(|b| b.is_ascii_digit()) {
                    format!("[{lo}, {hi}]")
                } else {
                    format!("{common}…")
                }
            }
        }
    }
}

impl fmt::Display for ScalarRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRepr::Exact(s) => f.write_str(s),
            ScalarRepr::Enclosure { lo, hi, bits } => {
                write!(f, "{} (enclosure [{lo}, {hi}] at {bits} bits)", self.certified_digits())
            }
        }
    }
}
