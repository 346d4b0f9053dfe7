//! Power sums of positive nondecreasing sequences, the normalized ratio
//! sequence they induce, its limit cases, and the second-difference operator
//! behind the convexity checks.
//!
//! For a sequence `a` and exponent `r`, the central object is
//!
//! ```text
//! ratio(a, n, r) = ( ((1/n) Σ_{i=1..n} a_i^r) / ((1/(n+1)) Σ_{i=1..n+1} a_i^r) )^(1/r)
//! ```
//!
//! with the geometric-mean form `(Π_{1..n} a_i)^(1/n) / (Π_{1..n+1} a_i)^(1/(n+1))`
//! at `r = 0`. Over the natural numbers this interpolates between `n/(n+1)`
//! (as `r → +∞`) and `1` (as `r → −∞`).

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{format_rational, pow_scalar, rat_u32, Rational, Scalar, ScalarError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PowerSumError {
    #[error("explicit sequence must have at least one term")]
    EmptySequence,
    #[error("sequence terms must be strictly positive, term {index} is {value}")]
    NonpositiveTerm { index: usize, value: String },
    #[error("sequence terms must be nondecreasing, term {index} decreases")]
    DecreasingTerm { index: usize },
    #[error("operation needs {needed} terms but the sequence provides {available}")]
    NotEnoughTerms { needed: u32, available: u32 },
    #[error("index must be at least 1")]
    ZeroIndex,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A strictly positive, nondecreasing sequence: either the naturals
/// `1, 2, 3, …` or an explicit finite list of rational terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceSpec {
    Naturals,
    Explicit {
        #[serde(with = "rational_terms")]
        terms: Vec<Rational>,
    },
}

mod rational_terms {
    use super::Rational;
    use crate::scalar::{format_rational, parse_rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(terms: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(terms.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

impl SequenceSpec {
    /// Builds an explicit sequence, rejecting empty, nonpositive, or
    /// decreasing term lists.
    pub fn explicit(terms: Vec<Rational>) -> Result<Self, PowerSumError> {
        let seq = SequenceSpec::Explicit { terms };
        seq.validate()?;
        Ok(seq)
    }

    pub fn validate(&self) -> Result<(), PowerSumError> {
        if let SequenceSpec::Explicit { terms } = self {
            if terms.is_empty() {
                return Err(PowerSumError::EmptySequence);
            }
            for (i, t) in terms.iter().enumerate() {
                if !t.is_positive() {
                    return Err(PowerSumError::NonpositiveTerm {
                        index: i + 1,
                        value: format_rational(t),
                    });
                }
                if i > 0 && t < &terms[i - 1] {
                    return Err(PowerSumError::DecreasingTerm { index: i + 1 });
                }
            }
        }
        Ok(())
    }

    /// 1-based term access.
    pub fn term(&self, i: u32) -> Result<Rational, PowerSumError> {
        if i == 0 {
            return Err(PowerSumError::ZeroIndex);
        }
        match self {
            SequenceSpec::Naturals => Ok(rat_u32(i)),
            SequenceSpec::Explicit { terms } => terms
                .get(i as usize - 1)
                .cloned()
                .ok_or(PowerSumError::NotEnoughTerms { needed: i, available: terms.len() as u32 }),
        }
    }

    fn require_terms(&self, needed: u32) -> Result<(), PowerSumError> {
        if let SequenceSpec::Explicit { terms } = self {
            if (terms.len() as u32) < needed {
                return Err(PowerSumError::NotEnoughTerms {
                    needed,
                    available: terms.len() as u32,
                });
            }
        }
        Ok(())
    }
}

/// A power-sum request: `Σ_{i=1..n} a_i^r` over the chosen sequence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSumQuery {
    pub seq: SequenceSpec,
    pub n: u32,
    #[serde(with = "crate::scalar::rational_as_string")]
    pub r: Rational,
}

impl PowerSumQuery {
    pub fn validate(&self) -> Result<(), PowerSumError> {
        if self.n == 0 {
            return Err(PowerSumError::ZeroIndex);
        }
        self.seq.validate()?;
        self.seq.require_terms(self.n)
    }
}

/// `Σ_{i=1..n} a_i^r`. Exact whenever `r` is an integer or every term power
/// collapses to a rational; a certified enclosure otherwise. Runs of equal
/// terms share a single power evaluation.
pub fn power_sum(q: &PowerSumQuery) -> Result<Scalar, PowerSumError> {
    q.validate()?;
    if q.r.is_zero() {
        return Ok(Scalar::exact(rat_u32(q.n)));
    }
    let mut contributions: Vec<Scalar> = Vec::new();
    let mut i = 1u32;
    while i <= q.n {
        let value = q.seq.term(i)?;
        let mut count = 1u32;
        while i + count <= q.n && q.seq.term(i + count)? == value {
            count += 1;
        }
        let powered = pow_scalar(&Scalar::exact(value), &q.r)?;
        contributions.push(if count == 1 {
            powered
        } else {
            &Scalar::exact(rat_u32(count)) * &powered
        });
        i += count;
    }
    Ok(Scalar::sum(&contributions))
}

/// The normalized mean ratio at cutoff `n`:
/// means `(1/n) Σ_{1..n} a_i^r` over `(1/(n+1)) Σ_{1..n+1} a_i^r`, raised to
/// `1/r` — or the geometric-mean ratio when `r = 0`. Needs `n+1` terms.
///
/// At `r = 0` the root indices are `n` and `n+1`, so `n` is capped by the
/// exponent guard (4095); every other `r` has no such cap.
pub fn ratio_r(seq: &SequenceSpec, n: u32, r: &Rational) -> Result<Scalar, PowerSumError> {
    if n == 0 {
        return Err(PowerSumError::ZeroIndex);
    }
    seq.validate()?;
    seq.require_terms(n + 1)?;
    if r.is_zero() {
        let product = |upper: u32| -> Result<Rational, PowerSumError> {
            let mut acc = Rational::one();
            for i in 1..=upper {
                acc *= seq.term(i)?;
            }
            Ok(acc)
        };
        let num = pow_scalar(&Scalar::exact(product(n)?), &Rational::new(1.into(), n.into()))?;
        let den = pow_scalar(
            &Scalar::exact(product(n + 1)?),
            &Rational::new(1.into(), (n + 1).into()),
        )?;
        return Ok(&num / &den);
    }
    let head = power_sum(&PowerSumQuery { seq: seq.clone(), n, r: r.clone() })?;
    let tail = power_sum(&PowerSumQuery { seq: seq.clone(), n: n + 1, r: r.clone() })?;
    // ((1/n) head) / ((1/(n+1)) tail) = ((n+1) head) / (n tail)
    let num = &Scalar::exact(rat_u32(n + 1)) * &head;
    let den = &Scalar::exact(rat_u32(n)) * &tail;
    let base = &num / &den;
    Ok(pow_scalar(&base, &r.recip())?)
}

/// The ratio sequence over the naturals at cutoff `n`.
pub fn p_n(n: u32, r: &Rational) -> Result<Scalar, PowerSumError> {
    ratio_r(&SequenceSpec::Naturals, n, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitDirection {
    PlusInfinity,
    MinusInfinity,
}

/// Limit of the naturals ratio sequence as the exponent runs to ±∞:
/// `n/(n+1)` upward, `1` downward. Exact.
pub fn p_limit(n: u32, direction: LimitDirection) -> Result<Rational, PowerSumError> {
    if n == 0 {
        return Err(PowerSumError::ZeroIndex);
    }
    Ok(match direction {
        LimitDirection::PlusInfinity => Rational::new(n.into(), (n + 1).into()),
        LimitDirection::MinusInfinity => Rational::one(),
    })
}

/// Second difference of the mean sequence `c_m = (1/m) Σ_{i=1..m} i^r` at
/// `m = n`: returns `c_{n+2} − 2 c_{n+1} + c_n`. Its sign detects convexity
/// or concavity of the mean sequence in `m`.
pub fn second_difference(r: &Rational, n: u32) -> Result<Scalar, PowerSumError> {
    if n == 0 {
        return Err(PowerSumError::ZeroIndex);
    }
    let mean = |m: u32| -> Result<Scalar, PowerSumError> {
        let sum = power_sum(&PowerSumQuery { seq: SequenceSpec::Naturals, n: m, r: r.clone() })?;
        Ok(&sum / &Scalar::exact(rat_u32(m)))
    };
    let (c0, c1, c2) = (mean(n)?, mean(n + 1)?, mean(n + 2)?);
    let twice = &Scalar::from_int(2) * &c1;
    Ok(&(&c2 - &twice) + &c0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{
        compare, parse_rational, rat, rat_int, rational_pow_int, ComparisonVerdict,
        PrecisionPolicy,
    };
    use proptest::prelude::*;

    fn naturals_query(n: u32, r: Rational) -> PowerSumQuery {
        PowerSumQuery { seq: SequenceSpec::Naturals, n, r }
    }

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn power_sum_small_integers() {
        let six = power_sum(&naturals_query(3, rat_int(1))).unwrap();
        assert_eq!(six.as_exact(), Some(&rat_int(6)));
        let nine = power_sum(&naturals_query(2, rat_int(3))).unwrap();
        assert_eq!(nine.as_exact(), Some(&rat_int(9)));
    }

    #[test]
    fn cube_sum_is_square_of_triangular() {
        for n in 1..=50u32 {
            let cubes = power_sum(&naturals_query(n, rat_int(3))).unwrap();
            let linear = power_sum(&naturals_query(n, rat_int(1))).unwrap();
            let squared = rational_pow_int(linear.as_exact().unwrap(), 2);
            assert_eq!(cubes.as_exact(), Some(&squared), "n={n}");
        }
    }

    #[test]
    fn fractional_exponent_gives_tight_enclosure() {
        // 1 + sqrt(2) = 2.41421356..., frozen from an independent
        // high-precision computation.
        let s = power_sum(&naturals_query(2, rat(1, 2))).unwrap();
        let e = s.enclose(64);
        let frozen =
            parse_rational("2.414213562373095048801688724209698078569671875376948073").unwrap();
        assert!(e.contains(&frozen));
        assert!(e.width() <= rat(1, 1i64 << 58));
    }

    #[test]
    fn power_sum_r_zero_counts_terms() {
        let s = power_sum(&naturals_query(7, rat_int(0))).unwrap();
        assert_eq!(s.as_exact(), Some(&rat_int(7)));
    }

    #[test]
    fn explicit_sequence_validation() {
        assert!(SequenceSpec::explicit(vec![]).is_err());
        assert!(SequenceSpec::explicit(vec![rat_int(0)]).is_err());
        assert!(SequenceSpec::explicit(vec![rat_int(2), rat_int(1)]).is_err());
        let seq = SequenceSpec::explicit(vec![rat(1, 2), rat(1, 2), rat_int(3)]).unwrap();
        assert_eq!(seq.term(3).unwrap(), rat_int(3));
        assert_eq!(
            power_sum(&PowerSumQuery { seq, n: 4, r: rat_int(1) }).unwrap_err(),
            PowerSumError::NotEnoughTerms { needed: 4, available: 3 }
        );
    }

    #[test]
    fn ratio_of_constant_sequence_is_one() {
        // Integer exponents and perfect-power terms stay exact.
        for (c, r) in [(rat(5, 3), rat_int(2)), (rat_int(4), rat(1, 2)), (rat(7, 2), rat_int(-1))]
        {
            let seq = SequenceSpec::explicit(vec![c.clone(); 4]).unwrap();
            let ratio = ratio_r(&seq, 3, &r).unwrap();
            assert_eq!(ratio.as_exact(), Some(&Rational::one()), "c={c} r={r}");
        }
        // Genuinely irrational term powers: the enclosure hugs 1.
        let seq = SequenceSpec::explicit(vec![rat_int(2); 4]).unwrap();
        let ratio = ratio_r(&seq, 3, &rat(1, 2)).unwrap();
        let e = ratio.enclose(64);
        assert!(e.contains(&Rational::one()));
        assert!(e.width() <= rat(1, 1i64 << 50));
    }

    #[test]
    fn ratio_examples_over_naturals() {
        let r = ratio_r(&SequenceSpec::Naturals, 1, &rat_int(1)).unwrap();
        assert_eq!(r.as_exact(), Some(&rat(2, 3)));
        // Geometric-mean form at r = 0: sqrt(2)/6^(1/3) = 0.77827171...,
        // frozen from an independent high-precision computation.
        let g = ratio_r(&SequenceSpec::Naturals, 2, &rat_int(0)).unwrap();
        let frozen =
            parse_rational("0.7782717162260105455547544392198254034133712743620389999").unwrap();
        assert!(g.enclose(96).contains(&frozen));
        assert!(g.enclose(96).width() <= rat(1, 1i64 << 60));
    }

    #[test]
    fn p_examples() {
        let frozen = |s: &str| parse_rational(s).unwrap();
        assert_eq!(p_n(2, &rat_int(1)).unwrap().as_exact(), Some(&rat(3, 4)));
        assert_eq!(p_n(2, &rat_int(-1)).unwrap().as_exact(), Some(&rat(22, 27)));
        // Frozen decimals below come from an independent high-precision
        // computation of (mean-ratio)^(1/r).
        let cases = [
            (2u32, rat_int(3), "0.7211247851537041911608191553900547941959346267496752888"),
            (2, rat_int(4), "0.7142142749974993122936846660329333861187313345384006871"),
            (1, rat_int(2), "0.6324555320336758663997787088865437067439110278650433654"),
            (2, rat(1, 2), "0.7628162031336509401143677365219045380174408928705411613"),
        ];
        for (n, r, digits) in cases {
            let p = p_n(n, &r).unwrap();
            let e = p.enclose(64);
            assert!(e.contains(&frozen(digits)), "P({n}, {r})");
            assert!(e.width() <= rat(1, 1i64 << 48), "P({n}, {r}) width {}", e.width());
        }
    }

    #[test]
    fn p_limit_examples() {
        assert_eq!(p_limit(1, LimitDirection::PlusInfinity).unwrap(), rat(1, 2));
        assert_eq!(p_limit(5, LimitDirection::PlusInfinity).unwrap(), rat(5, 6));
        assert_eq!(p_limit(7, LimitDirection::MinusInfinity).unwrap(), rat_int(1));
        assert!(p_limit(0, LimitDirection::PlusInfinity).is_err());
    }

    #[test]
    fn second_difference_examples() {
        // r=2, n=1: means are 1, 5/2, 14/3 → 14/3 - 5 + 1 = 2/3.
        let d = second_difference(&rat_int(2), 1).unwrap();
        assert_eq!(d.as_exact(), Some(&rat(2, 3)));
        for n in 1..=10 {
            let zero = second_difference(&rat_int(1), n).unwrap();
            assert_eq!(zero.as_exact(), Some(&Rational::zero()), "n={n}");
        }
        // Frozen from an independent high-precision computation of
        // 1 - (1 + sqrt 2) + (1 + sqrt 2 + sqrt 3)/3.
        let d = second_difference(&rat(1, 2), 1).unwrap();
        let frozen = parse_rational(
            "-0.03212543905910426802531036897117459673217949898117183943",
        )
        .unwrap();
        let e = d.enclose(64);
        assert!(e.contains(&frozen));
        assert!(e.width() <= rat(1, 1i64 << 55));
    }

    #[test]
    fn mean_sequence_convex_or_concave_by_exponent() {
        let ns = [1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 25, 50];
        for r in [rat_int(2), rat_int(3), rat_int(-1), rat_int(-2)] {
            for n in ns {
                let d = second_difference(&r, n).unwrap();
                let v = compare(&d, &Scalar::zero(), &policy());
                assert!(v.is_ge(), "r={r} n={n}: {v}");
            }
        }
        for r in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            for n in ns {
                let d = second_difference(&r, n).unwrap();
                let v = compare(&d, &Scalar::zero(), &policy());
                assert!(v.is_le(), "r={r} n={n}: {v}");
            }
        }
    }

    #[test]
    fn ratio_sandwiched_between_limits() {
        let ns = [1u32, 2, 5, 10, 50];
        for r in [rat_int(3), rat(1, 2), rat(5, 2)] {
            for n in ns {
                let p = p_n(n, &r).unwrap();
                let lower = Scalar::exact(p_limit(n, LimitDirection::PlusInfinity).unwrap());
                let upper = p_n(n, &rat_int(0)).unwrap();
                assert_eq!(
                    compare(&lower, &p, &policy()),
                    ComparisonVerdict::CertainlyLess,
                    "lower r={r} n={n}"
                );
                assert_eq!(
                    compare(&p, &upper, &policy()),
                    ComparisonVerdict::CertainlyLess,
                    "upper r={r} n={n}"
                );
            }
        }
        for r in [rat_int(-1), rat(-3, 2)] {
            for n in ns {
                let p = p_n(n, &r).unwrap();
                let lower = p_n(n, &rat_int(0)).unwrap();
                assert!(compare(&lower, &p, &policy()).is_le(), "lower r={r} n={n}");
                assert!(
                    compare(&p, &Scalar::one(), &policy()).is_le(),
                    "upper r={r} n={n}"
                );
            }
        }
    }

    #[test]
    fn ratio_is_scale_invariant() {
        for r in [rat_int(2), rat_int(-1), rat_int(5)] {
            for n in 1..=6u32 {
                let scaled: Vec<Rational> =
                    (1..=n + 1).map(|i| rat(3 * i as i64, 7)).collect();
                let seq = SequenceSpec::explicit(scaled).unwrap();
                let a = ratio_r(&seq, n, &r).unwrap();
                let b = p_n(n, &r).unwrap();
                assert_eq!(a.as_exact(), b.as_exact(), "r={r} n={n}");
            }
        }
        // Fractional exponent: verdicts against common thresholds agree.
        let n = 3u32;
        let r = rat(1, 2);
        let scaled: Vec<Rational> = (1..=n + 1).map(|i| rat(5 * i as i64, 1)).collect();
        let seq = SequenceSpec::explicit(scaled).unwrap();
        let a = ratio_r(&seq, n, &r).unwrap();
        let b = p_n(n, &r).unwrap();
        for threshold in
            [Scalar::exact(rat(3, 4)), Scalar::exact(rat(9, 10)), Scalar::exact(rat(1, 2))]
        {
            assert_eq!(
                compare(&a, &threshold, &policy()),
                compare(&b, &threshold, &policy())
            );
        }
    }

    #[test]
    fn sequence_spec_serde_round_trip() {
        let naturals = serde_json::to_string(&SequenceSpec::Naturals).unwrap();
        assert_eq!(naturals, r#"{"kind":"naturals"}"#);
        let seq = SequenceSpec::explicit(vec![rat(1, 2), rat_int(3)]).unwrap();
        let json = serde_json::to_string(&seq).unwrap();
        assert_eq!(json, r#"{"kind":"explicit","terms":["1/2","3"]}"#);
        let back: SequenceSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, seq);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Integer exponents keep everything exact and match a direct fold.
        #[test]
        fn integer_power_sums_are_exact(n in 1u32..30, r in -3i64..=4) {
            let s = power_sum(&naturals_query(n, rat_int(r))).unwrap();
            let direct = (1..=n)
                .map(|i| rational_pow_int(&rat_u32(i), r))
                .fold(Rational::zero(), |acc, x| acc + x);
            prop_assert_eq!(s.as_exact(), Some(&direct));
        }

        /// Uniform scaling cancels exactly for integer nonzero exponents.
        #[test]
        fn scaling_cancels_for_integer_exponents(
            n in 1u32..8,
            r in prop::sample::select(vec![-2i64, -1, 1, 2, 3]),
            num in 1i64..9,
            den in 1i64..9,
        ) {
            let scaled: Vec<Rational> =
                (1..=n + 1).map(|i| rat(num * i as i64, den)).collect();
            let seq = SequenceSpec::explicit(scaled).unwrap();
            let a = ratio_r(&seq, n, &rat_int(r)).unwrap();
            let b = p_n(n, &rat_int(r)).unwrap();
            prop_assert_eq!(a.as_exact(), b.as_exact());
        }
    }
}
