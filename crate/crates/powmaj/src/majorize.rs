//! Majorization order tests between positive weight tuples, with certified
//! verdicts throughout.
//!
//! `x` is majorized by `y` when both sort descending to equal totals and
//! every prefix sum of `x` stays at or below the matching prefix sum of `y`.
//! A failure is witnessed twice over: by the smallest violating prefix, and
//! by an explicit convex hinge function `u ↦ max(u − t, 0)` whose sums
//! certify the violation independently of any sorting argument.
//!
//! The module also hosts the power-majorization grid test (`Σx^p ≤ Σy^p`
//! outside `[0,1]`, `≥` inside) and the tuple constructions that tie ratio
//! monotonicity to majorization: normalized convolution families with their
//! index-wise admissibility conditions, and the repeated-weight tuples whose
//! majorization encodes a single monotonicity step of the natural-number
//! ratio sequence.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, ExecMode};
use crate::powersum::{PowerSumError, SequenceSpec};
use crate::scalar::{
    compare, pow_scalar, rat, ComparisonVerdict, PrecisionPolicy, Rational, Scalar, ScalarError,
    ScalarRepr,
};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MajorizeError {
    #[error("weight tuples must have equal lengths, got {lhs} and {rhs}")]
    LengthMismatch { lhs: usize, rhs: usize },
    #[error("weight tuples must be nonempty")]
    EmptyTuple,
    #[error("weight tuple entries must be strictly positive, entry {index} is not")]
    NonpositiveEntry { index: usize },
    #[error("could not certify positivity of entry {index}")]
    PositivityNotCertified { index: usize },
    #[error("comparison inconclusive at maximum precision ({stage}, index {index})")]
    Inconclusive { stage: &'static str, index: u32 },
    #[error("hypothesis not satisfied: {hypothesis} fails at index {index}")]
    HypothesisViolated { hypothesis: &'static str, index: u32 },
    #[error("exponent must be strictly positive")]
    NonpositiveExponent,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("cutoff must be at least {min}, got {n}")]
    CutoffTooSmall { n: u32, min: u32 },
    #[error("exponent grid must be nonempty")]
    EmptyGrid,
    #[error(transparent)]
    Sequence(#[from] PowerSumError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A tuple of strictly positive weights, stored as scaled numerators over a
/// shared positive denominator. Normalized constructors make "the total is
/// 1" an algebraic identity, which lets prefix and power-sum comparisons
/// cross-multiply instead of dividing — exactness survives, and certified
/// entries never face an interval-vs-interval equality test on totals.
#[derive(Clone, Debug)]
pub struct WeightTuple {
    scaled: Vec<Scalar>,
    denom: Scalar,
    unit_total: bool,
}

impl WeightTuple {
    /// Tuple holding the given entries as-is (denominator 1).
    pub fn new(entries: Vec<Scalar>) -> Result<Self, MajorizeError> {
        Self::from_parts(entries, Scalar::one(), false)
    }

    /// Tuple whose entries are `scaled[i] / Σ scaled`, so the total is 1 by
    /// construction.
    pub fn normalized(scaled: Vec<Scalar>) -> Result<Self, MajorizeError> {
        let denom = Scalar::sum(&scaled);
        Self::from_parts(scaled, denom, true)
    }

    /// Internal constructor for builders that know `Σ scaled = denom` holds
    /// as an algebraic identity even though the expressions differ.
    pub(crate) fn with_unit_total(
        scaled: Vec<Scalar>,
        denom: Scalar,
    ) -> Result<Self, MajorizeError> {
        Self::from_parts(scaled, denom, true)
    }

    fn from_parts(scaled: Vec<Scalar>, denom: Scalar, unit_total: bool) -> Result<Self, MajorizeError> {
        if scaled.is_empty() {
            return Err(MajorizeError::EmptyTuple);
        }
        for (index, s) in scaled.iter().enumerate() {
            match s {
                Scalar::Exact(x) => {
                    if !x.is_positive() {
                        return Err(MajorizeError::NonpositiveEntry { index });
                    }
                }
                Scalar::Certified(_) => {
                    if !s.enclose(64).is_strictly_positive()
                        && !s.enclose(256).is_strictly_positive()
                    {
                        return Err(MajorizeError::PositivityNotCertified { index });
                    }
                }
            }
        }
        Ok(WeightTuple { scaled, denom, unit_total })
    }

    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scaled.is_empty()
    }

    /// Scaled numerators (entries before division by the denominator).
    pub fn scaled(&self) -> &[Scalar] {
        &self.scaled
    }

    pub fn denominator(&self) -> &Scalar {
        &self.denom
    }

    pub fn has_unit_total(&self) -> bool {
        self.unit_total
    }

    pub fn entry(&self, index: usize) -> Scalar {
        match self.denom.as_exact() {
            Some(d) if d.is_one() => self.scaled[index].clone(),
            _ => &self.scaled[index] / &self.denom,
        }
    }

    pub fn entries(&self) -> Vec<Scalar> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }

    /// The tuple's total: exactly 1 for normalized tuples, a computed sum
    /// otherwise.
    pub fn total(&self) -> Scalar {
        if self.unit_total {
            Scalar::one()
        } else {
            let sum = Scalar::sum(&self.scaled);
            match self.denom.as_exact() {
                Some(d) if d.is_one() => sum,
                _ => &sum / &self.denom,
            }
        }
    }

    pub fn entries_repr(&self, bits: u32) -> Vec<ScalarRepr> {
        self.entries().iter().map(|e| e.repr(bits)).collect()
    }
}

/// Maps a certified comparison to an ordering, failing loudly on ties: a
/// verdict that cannot be certified is an error, never a guess.
fn certified_cmp(
    a: &Scalar,
    b: &Scalar,
    policy: &PrecisionPolicy,
    stage: &'static str,
    index: u32,
) -> Result<Ordering, MajorizeError> {
    match compare(a, b, policy) {
        ComparisonVerdict::CertainlyLess => Ok(Ordering::Less),
        ComparisonVerdict::CertainlyGreater => Ok(Ordering::Greater),
        ComparisonVerdict::ExactlyEqual => Ok(Ordering::Equal),
        ComparisonVerdict::TieWithinTolerance { .. } => {
            Err(MajorizeError::Inconclusive { stage, index })
        }
    }
}

/// Descending insertion sort driven by certified comparisons. Repeated
/// entries that share structure compare as equal without refinement; ties
/// between equal values are harmless for prefix sums.
fn sort_desc(
    scaled: &[Scalar],
    policy: &PrecisionPolicy,
    stage: &'static str,
) -> Result<Vec<Scalar>, MajorizeError> {
    let mut sorted: Vec<Scalar> = Vec::with_capacity(scaled.len());
    for (i, s) in scaled.iter().enumerate() {
        let mut lo = 0usize;
        let mut hi = sorted.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            if certified_cmp(s, &sorted[mid], policy, stage, i as u32)? == Ordering::Greater {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        sorted.insert(lo, s.clone());
    }
    Ok(sorted)
}

#[derive(Clone, Debug)]
pub enum MajorizationVerdict {
    Holds,
    /// The smallest prefix `k` (over descending-sorted entries) whose sum on
    /// the left certifiably exceeds the right. The carried prefix sums are
    /// the actual entry sums (after normalization).
    FailsAtPrefix { prefix_index: u32, lhs_prefix: Scalar, rhs_prefix: Scalar },
    TotalsDiffer { total_gap: Scalar },
}

impl MajorizationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, MajorizationVerdict::Holds)
    }

    pub fn repr(&self, bits: u32) -> MajorizationVerdictRepr {
        match self {
            MajorizationVerdict::Holds => MajorizationVerdictRepr::Holds,
            MajorizationVerdict::FailsAtPrefix { prefix_index, lhs_prefix, rhs_prefix } => {
                MajorizationVerdictRepr::FailsAtPrefix {
                    prefix_index: *prefix_index,
                    lhs_prefix: lhs_prefix.repr(bits),
                    rhs_prefix: rhs_prefix.repr(bits),
                }
            }
            MajorizationVerdict::TotalsDiffer { total_gap } => {
                MajorizationVerdictRepr::TotalsDiffer { total_gap: total_gap.repr(bits) }
            }
        }
    }
}

/// Serializable snapshot of a majorization verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MajorizationVerdictRepr {
    Holds,
    FailsAtPrefix { prefix_index: u32, lhs_prefix: ScalarRepr, rhs_prefix: ScalarRepr },
    TotalsDiffer { total_gap: ScalarRepr },
}

/// Certified majorization test: does `x ≤ y` in the majorization order?
///
/// Totals are compared first (exactly equal for normalized tuples), then
/// prefix sums of the descending sorts, cross-multiplied by the opposite
/// denominators so certified entries never divide. The first certified
/// prefix violation is returned with its witness sums; an unresolvable
/// comparison aborts with a diagnostic instead of guessing.
pub fn majorizes(
    x: &WeightTuple,
    y: &WeightTuple,
    policy: &PrecisionPolicy,
) -> Result<MajorizationVerdict, MajorizeError> {
    if x.len() != y.len() {
        return Err(MajorizeError::LengthMismatch { lhs: x.len(), rhs: y.len() });
    }
    if !(x.unit_total && y.unit_total) {
        match compare(&x.total(), &y.total(), policy) {
            ComparisonVerdict::ExactlyEqual => {}
            ComparisonVerdict::CertainlyLess | ComparisonVerdict::CertainlyGreater => {
                return Ok(MajorizationVerdict::TotalsDiffer {
                    total_gap: &y.total() - &x.total(),
                });
            }
            ComparisonVerdict::TieWithinTolerance { .. } => {
                return Err(MajorizeError::Inconclusive { stage: "totals", index: 0 });
            }
        }
    }
    let sx = sort_desc(&x.scaled, policy, "sorting lhs")?;
    let sy = sort_desc(&y.scaled, policy, "sorting rhs")?;
    let mut lx = Scalar::zero();
    let mut ly = Scalar::zero();
    for k in 1..x.len() as u32 {
        lx = &lx + &sx[k as usize - 1];
        ly = &ly + &sy[k as usize - 1];
        let lhs_cross = &lx * &y.denom;
        let rhs_cross = &ly * &x.denom;
        match compare(&lhs_cross, &rhs_cross, policy) {
            v if v.is_le() => {}
            ComparisonVerdict::CertainlyGreater => {
                return Ok(MajorizationVerdict::FailsAtPrefix {
                    prefix_index: k,
                    lhs_prefix: &lx / &x.denom,
                    rhs_prefix: &ly / &y.denom,
                });
            }
            _ => return Err(MajorizeError::Inconclusive { stage: "prefix sums", index: k }),
        }
    }
    Ok(MajorizationVerdict::Holds)
}

/// `max(u − t, 0)` as a scalar, exact when both inputs are.
fn hinge(u: &Scalar, t: &Scalar) -> Scalar {
    match (u, t) {
        (Scalar::Exact(a), Scalar::Exact(b)) => {
            let d = a - b;
            Scalar::exact(if d.is_positive() { d } else { Rational::zero() })
        }
        _ => {
            let diff = u - t;
            Scalar::certified(move |bits| diff.enclose(bits).positive_part())
        }
    }
}

fn hinge_sum(w: &WeightTuple, t: &Scalar) -> Scalar {
    let terms: Vec<Scalar> = w.entries().iter().map(|e| hinge(e, t)).collect();
    Scalar::sum(&terms)
}

/// An explicit convex function certifying a majorization failure: the hinge
/// `f(u) = max(u − t, 0)` with `Σ f(x) > Σ f(y)`.
#[derive(Clone, Debug)]
pub struct ConvexWitness {
    /// Hinge threshold: the k-th largest entry of `y` for the failing
    /// prefix k.
    pub threshold: Scalar,
    pub lhs_total: Scalar,
    pub rhs_total: Scalar,
    /// Comparison of the hinge sums; a genuine witness separates as
    /// `CertainlyGreater`.
    pub separation: ComparisonVerdict,
}

/// For a `FailsAtPrefix` verdict, produces the hinge witness; `Holds` and
/// `TotalsDiffer` yield no witness. A prefix failure at `k` guarantees the
/// hinge at the k-th largest `y` entry separates: the clipped `y` sum equals
/// its k-prefix overshoot exactly, while the clipped `x` sum is at least the
/// larger `x` overshoot.
pub fn convex_witness(
    x: &WeightTuple,
    y: &WeightTuple,
    verdict: &MajorizationVerdict,
    policy: &PrecisionPolicy,
) -> Result<Option<ConvexWitness>, MajorizeError> {
    let k = match verdict {
        MajorizationVerdict::FailsAtPrefix { prefix_index, .. } => *prefix_index,
        _ => return Ok(None),
    };
    let sy = sort_desc(&y.scaled, policy, "sorting rhs")?;
    let t = match y.denom.as_exact() {
        Some(d) if d.is_one() => sy[k as usize - 1].clone(),
        _ => &sy[k as usize - 1] / &y.denom,
    };
    let lhs_total = hinge_sum(x, &t);
    let rhs_total = hinge_sum(y, &t);
    let separation = compare(&lhs_total, &rhs_total, policy);
    Ok(Some(ConvexWitness { threshold: t, lhs_total, rhs_total, separation }))
}

/// Direction a power-sum comparison must satisfy at a given exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RequiredDirection {
    /// `Σx^p ≤ Σy^p`, required for p outside [0, 1].
    LhsAtMostRhs,
    /// `Σx^p ≥ Σy^p`, required for p inside [0, 1].
    LhsAtLeastRhs,
}

pub fn required_direction(p: &Rational) -> RequiredDirection {
    if p >= &Rational::zero() && p <= &Rational::one() {
        RequiredDirection::LhsAtLeastRhs
    } else {
        RequiredDirection::LhsAtMostRhs
    }
}

/// One grid point of a power-majorization test.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridVerdict {
    #[serde(with = "crate::scalar::rational_as_string")]
    pub p: Rational,
    pub direction: RequiredDirection,
    pub comparison: ComparisonVerdict,
    pub satisfied: bool,
    pub lhs: ScalarRepr,
    pub rhs: ScalarRepr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PowerMajorizationOverall {
    /// Every sampled exponent satisfied its required direction. Sampling
    /// cannot quantify over all real exponents, so this is evidence, not a
    /// proof, unless paired with a full-coverage reduction.
    ConsistentWithPowerMajorization,
    ViolatedAt {
        #[serde(with = "crate::scalar::rational_as_string")]
        p: Rational,
    },
    Inconclusive {
        #[serde(with = "crate::scalar::rational_as_string")]
        p: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerMajorizationReport {
    #[serde(with = "crate::scalar::rational_vec_as_string")]
    pub grid: Vec<Rational>,
    pub verdicts: Vec<GridVerdict>,
    pub overall: PowerMajorizationOverall,
}

/// Default exponent grid: −10 to 10 in steps of 1/4, with the auto-satisfied
/// points 0 and 1 removed.
pub fn default_power_grid() -> Vec<Rational> {
    (-40i64..=40)
        .filter(|i| *i != 0 && *i != 4)
        .map(|i| rat(i, 4))
        .collect()
}

fn evaluate_power_point(
    x: &WeightTuple,
    y: &WeightTuple,
    p: &Rational,
    policy: &PrecisionPolicy,
) -> Result<GridVerdict, MajorizeError> {
    let direction = required_direction(p);
    if p.is_one() && x.unit_total && y.unit_total {
        // Both totals are 1 by construction; no interval test could ever
        // certify that, so it is decided algebraically.
        return Ok(GridVerdict {
            p: p.clone(),
            direction,
            comparison: ComparisonVerdict::ExactlyEqual,
            satisfied: true,
            lhs: Scalar::one().repr(policy.start_bits),
            rhs: Scalar::one().repr(policy.start_bits),
        });
    }
    let powered_sum = |w: &WeightTuple| -> Result<Scalar, MajorizeError> {
        let terms: Result<Vec<Scalar>, ScalarError> =
            w.scaled.iter().map(|s| pow_scalar(s, p)).collect();
        Ok(Scalar::sum(&terms?))
    };
    let sum_x = powered_sum(x)?;
    let sum_y = powered_sum(y)?;
    let dx_p = pow_scalar(&x.denom, p)?;
    let dy_p = pow_scalar(&y.denom, p)?;
    // Σ (sx_i/Dx)^p vs Σ (sy_i/Dy)^p, cross-multiplied by the positive
    // denominators' powers.
    let comparison = compare(&(&sum_x * &dy_p), &(&sum_y * &dx_p), policy);
    let satisfied = match direction {
        RequiredDirection::LhsAtMostRhs => comparison.is_le(),
        RequiredDirection::LhsAtLeastRhs => comparison.is_ge(),
    };
    let lhs = &sum_x / &dx_p;
    let rhs = &sum_y / &dy_p;
    Ok(GridVerdict {
        p: p.clone(),
        direction,
        comparison,
        satisfied,
        lhs: lhs.repr(policy.start_bits),
        rhs: rhs.repr(policy.start_bits),
    })
}

/// Grid test of power majorization with the default execution mode.
pub fn power_majorizes(
    x: &WeightTuple,
    y: &WeightTuple,
    grid: &[Rational],
    policy: &PrecisionPolicy,
) -> Result<PowerMajorizationReport, MajorizeError> {
    power_majorizes_with_mode(x, y, grid, policy, ExecMode::default())
}

/// Grid test of power majorization: each exponent is checked independently
/// (in parallel under the default mode) against its required direction.
/// Unequal totals fail the p = 1 requirement and are reported as a violation
/// at 1 regardless of the grid.
pub fn power_majorizes_with_mode(
    x: &WeightTuple,
    y: &WeightTuple,
    grid: &[Rational],
    policy: &PrecisionPolicy,
    mode: ExecMode,
) -> Result<PowerMajorizationReport, MajorizeError> {
    if x.len() != y.len() {
        return Err(MajorizeError::LengthMismatch { lhs: x.len(), rhs: y.len() });
    }
    if grid.is_empty() {
        return Err(MajorizeError::EmptyGrid);
    }
    let mut totals_violation = false;
    if !(x.unit_total && y.unit_total) {
        match compare(&x.total(), &y.total(), policy) {
            ComparisonVerdict::ExactlyEqual => {}
            ComparisonVerdict::TieWithinTolerance { .. } => {
                return Err(MajorizeError::Inconclusive { stage: "totals", index: 0 });
            }
            _ => totals_violation = true,
        }
    }
    let results = exec::map(mode, grid.to_vec(), |p| evaluate_power_point(x, y, &p, policy));
    let verdicts: Vec<GridVerdict> = results.into_iter().collect::<Result<_, _>>()?;
    let overall = if totals_violation {
        PowerMajorizationOverall::ViolatedAt { p: Rational::one() }
    } else if let Some(v) = verdicts.iter().find(|v| {
        !v.satisfied && !matches!(v.comparison, ComparisonVerdict::TieWithinTolerance { .. })
    }) {
        PowerMajorizationOverall::ViolatedAt { p: v.p.clone() }
    } else if let Some(v) = verdicts.iter().find(|v| !v.satisfied) {
        PowerMajorizationOverall::Inconclusive { p: v.p.clone() }
    } else {
        PowerMajorizationOverall::ConsistentWithPowerMajorization
    };
    Ok(PowerMajorizationReport { grid: grid.to_vec(), verdicts, overall })
}

/// Index-wise admissibility conditions for the convolution constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConditionVariant {
    /// At index i (1 ≤ i ≤ n−1):
    /// `(n−i)·a_{n+1−i}^r / a_{n−i}^r + 1  ≤  (n−i+1)·a_{n+2−i}^r / a_{n+1−i}^r`.
    C21,
    /// At index i (1 ≤ i ≤ n−1):
    /// `(i+1)·a_{i+1}^r / a_{i+2}^r  ≤  1 + i·a_i^r / a_{i+1}^r`.
    C21prime,
}

/// Interpretive note attached to every C21prime evaluation: the exponent r
/// is applied uniformly to all sequence terms, including the final
/// denominator term `a_{i+2}`. Under the bare-index reading that term would
/// be unexponentiated, and the condition then fails even simple positive
/// cases it is expected to cover.
pub const C21PRIME_EXPONENT_NOTE: &str =
    "C21prime applies the exponent r to every sequence term, including a_{i+2}";

/// Certifies the chosen condition at every index 1 ≤ i ≤ n−1, returning the
/// per-index comparison verdicts (`is_le` means the index passes). Both
/// sides are cross-multiplied by the positive denominators, so integer
/// exponents stay exact.
pub fn check_condition(
    seq: &SequenceSpec,
    r: &Rational,
    n: u32,
    variant: ConditionVariant,
    policy: &PrecisionPolicy,
) -> Result<Vec<ComparisonVerdict>, MajorizeError> {
    if !r.is_positive() {
        return Err(MajorizeError::NonpositiveExponent);
    }
    if n < 2 {
        return Err(MajorizeError::CutoffTooSmall { n, min: 2 });
    }
    let t = term_powers(seq, r, n + 1)?;
    let mut out = Vec::with_capacity(n as usize - 1);
    for i in 1..n {
        let (lhs, rhs) = match variant {
            ConditionVariant::C21 => {
                let hi = &t[(n + 1 - i) as usize - 1];
                let mid = &t[(n - i) as usize - 1];
                let top = &t[(n + 2 - i) as usize - 1];
                // ((n−i)·t_{n+1−i} + t_{n−i})·t_{n+1−i} ≤ (n−i+1)·t_{n+2−i}·t_{n−i}
                let lhs = &(&(&Scalar::from_int((n - i) as i64) * hi) + mid) * hi;
                let rhs = &(&Scalar::from_int((n - i + 1) as i64) * top) * mid;
                (lhs, rhs)
            }
            ConditionVariant::C21prime => {
                let a = &t[i as usize - 1];
                let b = &t[i as usize];
                let c = &t[i as usize + 1];
                // (i+1)·t_{i+1}² ≤ (t_{i+1} + i·t_i)·t_{i+2}
                let lhs = &(&Scalar::from_int((i + 1) as i64) * b) * b;
                let rhs = &(b + &(&Scalar::from_int(i as i64) * a)) * c;
                (lhs, rhs)
            }
        };
        out.push(compare(&lhs, &rhs, policy));
    }
    Ok(out)
}

/// True when every per-index verdict certifies its inequality.
pub fn condition_holds(verdicts: &[ComparisonVerdict]) -> bool {
    verdicts.iter().all(|v| v.is_le())
}

fn term_powers(seq: &SequenceSpec, r: &Rational, upto: u32) -> Result<Vec<Scalar>, MajorizeError> {
    seq.validate()?;
    let mut t = Vec::with_capacity(upto as usize);
    for j in 1..=upto {
        t.push(pow_scalar(&Scalar::exact(seq.term(j)?), r)?);
    }
    Ok(t)
}

/// Normalizes a pair of positive families into weight tuples guaranteed (by
/// the averaging principle) to satisfy `majorizes(b, a) = Holds`, after
/// certifying the hypotheses: `β` positive nonincreasing and `β_i/α_i`
/// nondecreasing.
pub fn lemma1_normalize(
    alpha: &[Scalar],
    beta: &[Scalar],
    policy: &PrecisionPolicy,
) -> Result<(WeightTuple, WeightTuple), MajorizeError> {
    if alpha.len() != beta.len() {
        return Err(MajorizeError::LengthMismatch { lhs: alpha.len(), rhs: beta.len() });
    }
    if alpha.is_empty() {
        return Err(MajorizeError::EmptyTuple);
    }
    for i in 0..beta.len() - 1 {
        match compare(&beta[i + 1], &beta[i], policy) {
            v if v.is_le() => {}
            ComparisonVerdict::CertainlyGreater => {
                return Err(MajorizeError::HypothesisViolated {
                    hypothesis: "beta nonincreasing",
                    index: i as u32 + 1,
                });
            }
            _ => {
                return Err(MajorizeError::Inconclusive {
                    stage: "beta nonincreasing",
                    index: i as u32 + 1,
                })
            }
        }
        // β_i/α_i ≤ β_{i+1}/α_{i+1}  ⟺  β_i·α_{i+1} ≤ β_{i+1}·α_i
        let lhs = &beta[i] * &alpha[i + 1];
        let rhs = &beta[i + 1] * &alpha[i];
        match compare(&lhs, &rhs, policy) {
            v if v.is_le() => {}
            ComparisonVerdict::CertainlyGreater => {
                return Err(MajorizeError::HypothesisViolated {
                    hypothesis: "beta/alpha nondecreasing",
                    index: i as u32 + 1,
                });
            }
            _ => {
                return Err(MajorizeError::Inconclusive {
                    stage: "beta/alpha nondecreasing",
                    index: i as u32 + 1,
                })
            }
        }
    }
    let a = WeightTuple::normalized(alpha.to_vec())?;
    let b = WeightTuple::normalized(beta.to_vec())?;
    Ok((a, b))
}

/// Which convolution family a `Lemma2Tuples` value holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lemma2Variant {
    /// α_i = (n+1−i)·a_{n+2−i}^r + i·a_{n+1−i}^r with β_i = a_{n+1−i}^r.
    First,
    /// γ_i = (n+1−i)·a_i^{−r} + i·a_{i+1}^{−r} with δ_i = a_i^{−r}.
    Second,
}

/// The two positive families of a convolution construction and their
/// normalizations. When the matching admissibility condition passes,
/// `majorizes(normalized_b_or_d, normalized_c_or_e)` holds.
#[derive(Clone, Debug)]
pub struct Lemma2Tuples {
    pub variant: Lemma2Variant,
    pub alpha_or_gamma: Vec<Scalar>,
    pub beta_or_delta: Vec<Scalar>,
    pub normalized_b_or_d: WeightTuple,
    pub normalized_c_or_e: WeightTuple,
}

/// Builds the convolution families for the given sequence, exponent, and
/// cutoff. `First` uses powers `r` read from the top of the range down;
/// `Second` uses reciprocal powers read from the bottom up.
pub fn build_lemma2(
    seq: &SequenceSpec,
    r: &Rational,
    n: u32,
    variant: Lemma2Variant,
) -> Result<Lemma2Tuples, MajorizeError> {
    if !r.is_positive() {
        return Err(MajorizeError::NonpositiveExponent);
    }
    if n < 2 {
        return Err(MajorizeError::CutoffTooSmall { n, min: 2 });
    }
    let (alpha_or_gamma, beta_or_delta) = match variant {
        Lemma2Variant::First => {
            let t = term_powers(seq, r, n + 1)?;
            let alpha: Vec<Scalar> = (1..=n)
                .map(|i| {
                    let top = &t[(n + 2 - i) as usize - 1];
                    let next = &t[(n + 1 - i) as usize - 1];
                    &(&Scalar::from_int((n + 1 - i) as i64) * top)
                        + &(&Scalar::from_int(i as i64) * next)
                })
                .collect();
            let beta: Vec<Scalar> =
                (1..=n).map(|i| t[(n + 1 - i) as usize - 1].clone()).collect();
            (alpha, beta)
        }
        Lemma2Variant::Second => {
            let u = term_powers(seq, &-r.clone(), n + 1)?;
            let gamma: Vec<Scalar> = (1..=n)
                .map(|i| {
                    let here = &u[i as usize - 1];
                    let next = &u[i as usize];
                    &(&Scalar::from_int((n + 1 - i) as i64) * here)
                        + &(&Scalar::from_int(i as i64) * next)
                })
                .collect();
            let delta: Vec<Scalar> = (1..=n).map(|i| u[i as usize - 1].clone()).collect();
            (gamma, delta)
        }
    };
    let normalized_b_or_d = WeightTuple::normalized(beta_or_delta.clone())?;
    let normalized_c_or_e = WeightTuple::normalized(alpha_or_gamma.clone())?;
    Ok(Lemma2Tuples { variant, alpha_or_gamma, beta_or_delta, normalized_b_or_d, normalized_c_or_e })
}

/// Builds the repeated-weight tuple pair whose majorization encodes one
/// monotonicity step of the ratio sequence at exponent `r`: `x` repeats each
/// of the first n normalized term powers n+1 times, `y` repeats each of the
/// first n+1 (differently normalized) term powers n times. Both tuples have
/// n(n+1) entries and total exactly 1.
pub fn build_theorem1_tuples(
    seq: &SequenceSpec,
    r: &Rational,
    n: u32,
) -> Result<(WeightTuple, WeightTuple), MajorizeError> {
    if r.is_zero() {
        return Err(MajorizeError::ZeroExponent);
    }
    if n < 1 {
        return Err(MajorizeError::CutoffTooSmall { n, min: 1 });
    }
    let t = term_powers(seq, r, n + 1)?;
    let sum_head = Scalar::sum(&t[..n as usize]);
    let sum_all = Scalar::sum(&t);
    let denom_x = &Scalar::from_int((n + 1) as i64) * &sum_head;
    let denom_y = &Scalar::from_int(n as i64) * &sum_all;
    let mut scaled_x = Vec::with_capacity((n * (n + 1)) as usize);
    for ti in t.iter().take(n as usize) {
        for _ in 0..=n {
            scaled_x.push(ti.clone());
        }
    }
    let mut scaled_y = Vec::with_capacity((n * (n + 1)) as usize);
    for ti in t.iter() {
        for _ in 0..n {
            scaled_y.push(ti.clone());
        }
    }
    let x = WeightTuple::with_unit_total(scaled_x, denom_x)?;
    let y = WeightTuple::with_unit_total(scaled_y, denom_y)?;
    Ok((x, y))
}
