//! Exportable, machine-checkable counterexample certificates.
//!
//! A [`CounterexampleCertificate`] packages one weight-tuple pair for which
//! the toolkit certifies simultaneously that
//!
//! 1. majorization **fails** at a concrete prefix (with a hinge-function
//!    witness separating the two sides), and
//! 2. every sampled power-sum comparison satisfies the direction that power
//!    majorization requires.
//!
//! Together these refute "power-sum domination at every sampled exponent
//! implies majorization" for the recorded pair. The certificate embeds the
//! toolkit version, the precision policy, both tuples, every verdict, and a
//! SHA-256 digest of the canonical JSON body so third parties can detect
//! tampering and re-derive the whole object with [`verify_certificate`].
//!
//! The tuple family searched by [`find_counterexamples`] is the normalized
//! power-weight construction of
//! [`build_theorem1_tuples`](crate::majorize::build_theorem1_tuples) over
//! the naturals: for exponents `0 < r <= 1` the majorization relation holds
//! and the search records a skip; for `r > 1` the relation fails while the
//! power-sum directions persist, which is exactly the certified gap.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exec::{self, ExecMode};
use crate::majorize::{
    build_theorem1_tuples, convex_witness, default_power_grid, majorizes,
    power_majorizes_with_mode, MajorizationVerdict, MajorizationVerdictRepr, MajorizeError,
    PowerMajorizationOverall, PowerMajorizationReport,
};
use crate::powersum::{p_n, PowerSumError, SequenceSpec};
use crate::scalar::{compare, ComparisonVerdict, PrecisionPolicy, Rational, ScalarRepr};

/// Errors surfaced while building, searching for, or replaying certificates.
#[derive(Debug, Error, PartialEq)]
pub enum CertifyError {
    /// The tuple construction is undefined at exponent zero.
    #[error("the weight-tuple construction needs a nonzero exponent")]
    ZeroExponent,
    /// A required input collection was empty.
    #[error("empty {0} supplied")]
    EmptyInput(&'static str),
    /// A single-point certificate was requested where none exists.
    /// `decisive` distinguishes a certified non-counterexample from a
    /// precision-budget dead end.
    #[error("(n = {n}, r = {r}) yields no counterexample: {reason}")]
    NotACounterexample { n: u32, r: String, reason: String, decisive: bool },
    #[error(transparent)]
    Majorize(#[from] MajorizeError),
    #[error(transparent)]
    Sequence(#[from] PowerSumError),
    /// Canonical JSON encoding failed (should not happen for well-formed
    /// bodies).
    #[error("serialization failed: {0}")]
    Serialization(String),
}

/// Whether every number in the certificate is an exact rational or some are
/// directed-rounding enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    /// Integer exponent: entries, prefix sums, and witnesses are exact.
    Exact,
    /// Fractional exponent: certified enclosures with outward rounding.
    CertifiedEnclosure,
}

/// How far the power-sum evidence in a certificate reaches.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionNote {
    /// The sampled directions extend to every exponent via a registered
    /// monotonicity reduction (available for the `r = 3` construction).
    FullCoverage { explanation: String },
    /// Only the sampled exponents are certified.
    GridEvidenceOnly { explanation: String },
}

/// Hinge-function witness for the majorization failure: at the recorded
/// threshold `t`, `Σ max(x_i − t, 0)` certifiably exceeds
/// `Σ max(y_i − t, 0)`, which no majorizing pair can do.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HingeWitnessRecord {
    pub threshold: ScalarRepr,
    pub lhs_total: ScalarRepr,
    pub rhs_total: ScalarRepr,
    pub separation: ComparisonVerdict,
}

/// Everything the digest covers: the full replayable content of a
/// certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateBody {
    /// Version of this toolkit that produced the certificate.
    pub toolkit_version: String,
    /// Cutoff of the construction; the tuples have `n (n+1)` entries.
    pub n: u32,
    /// Power-weight exponent of the construction.
    #[serde(with = "crate::scalar::rational_as_string")]
    pub r: Rational,
    pub arithmetic_mode: ArithmeticMode,
    /// Precision budget every comparison was run under.
    pub policy: PrecisionPolicy,
    /// Bit width of the recorded enclosures.
    pub repr_bits: u32,
    pub x_entries: Vec<ScalarRepr>,
    pub y_entries: Vec<ScalarRepr>,
    /// The certified prefix failure of `x ≤ y` in the majorization order.
    pub majorization_failure: MajorizationVerdictRepr,
    pub hinge_witness: HingeWitnessRecord,
    /// Per-exponent directional checks and their overall reading.
    pub power_majorization: PowerMajorizationReport,
    pub reduction_note: ReductionNote,
}

/// A [`CertificateBody`] sealed with the SHA-256 digest of its canonical
/// JSON encoding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleCertificate {
    #[serde(flatten)]
    pub body: CertificateBody,
    /// Lowercase hex SHA-256 of `serde_json::to_string(&body)`.
    pub digest: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Digest of the canonical JSON encoding of `body`. Struct fields serialize
/// in declaration order and all numeric payloads are decimal strings, so
/// the encoding - and therefore the digest - is byte-stable across runs and
/// execution modes.
pub fn body_digest(body: &CertificateBody) -> Result<String, CertifyError> {
    let json =
        serde_json::to_string(body).map_err(|e| CertifyError::Serialization(e.to_string()))?;
    Ok(sha256_hex(json.as_bytes()))
}

enum Attempt {
    Cert(Box<CounterexampleCertificate>),
    /// No certificate at this point; `decisive` is true when that is
    /// certified (the order holds, the totals differ, or a power direction
    /// is certifiably violated) rather than a precision-budget dead end.
    Skip { reason: String, decisive: bool },
}

fn attempt(
    n: u32,
    r: &Rational,
    grid: &[Rational],
    policy: &PrecisionPolicy,
    mode: ExecMode,
) -> Result<Attempt, CertifyError> {
    use num_traits::Zero;
    if r.is_zero() {
        return Err(CertifyError::ZeroExponent);
    }
    let (x, y) = build_theorem1_tuples(&SequenceSpec::Naturals, r, n)?;
    let verdict = majorizes(&x, &y, policy)?;
    let failure = match &verdict {
        MajorizationVerdict::Holds => {
            return Ok(Attempt::Skip {
                reason: "majorization holds at this point; there is nothing to refute".into(),
                decisive: true,
            })
        }
        MajorizationVerdict::TotalsDiffer { .. } => {
            return Ok(Attempt::Skip {
                reason: "the tuple totals differ, so the pair is outside the majorization order"
                    .into(),
                decisive: true,
            })
        }
        failure @ MajorizationVerdict::FailsAtPrefix { .. } => failure.clone(),
    };
    let witness = convex_witness(&x, &y, &verdict, policy)?
        .expect("a prefix failure always yields a hinge witness");
    if witness.separation != ComparisonVerdict::CertainlyGreater {
        return Ok(Attempt::Skip {
            reason: format!(
                "the hinge witness did not certifiably separate ({})",
                witness.separation
            ),
            decisive: false,
        });
    }
    let report = power_majorizes_with_mode(&x, &y, grid, policy, mode)?;
    match &report.overall {
        PowerMajorizationOverall::ConsistentWithPowerMajorization => {}
        PowerMajorizationOverall::ViolatedAt { p } => {
            return Ok(Attempt::Skip {
                reason: format!("a power-sum direction is certifiably violated at p = {p}"),
                decisive: true,
            })
        }
        PowerMajorizationOverall::Inconclusive { p } => {
            return Ok(Attempt::Skip {
                reason: format!(
                    "the power-sum comparison at p = {p} did not resolve within the budget"
                ),
                decisive: false,
            })
        }
    }
    let bits = policy.start_bits;
    let reduction_note = if *r == Rational::from_integer(3.into()) {
        ReductionNote::FullCoverage {
            explanation: "for this construction the power-sum ratio at exponent p equals \
                          (P_n(r p) / P_n(r))^(r p), so each required direction is an \
                          instance of the registered claim PN3_EXT comparing P_n(3) \
                          against P_n(r') on either side of 3; the grid therefore \
                          spot-checks a family that is covered at every exponent"
                .into(),
        }
    } else {
        ReductionNote::GridEvidenceOnly {
            explanation: "the sampled exponents satisfy their required directions; \
                          exponents off the grid are not certified by this object"
                .into(),
        }
    };
    let body = CertificateBody {
        toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
        n,
        r: r.clone(),
        arithmetic_mode: if r.is_integer() {
            ArithmeticMode::Exact
        } else {
            ArithmeticMode::CertifiedEnclosure
        },
        policy: *policy,
        repr_bits: bits,
        x_entries: x.entries_repr(bits),
        y_entries: y.entries_repr(bits),
        majorization_failure: failure.repr(bits),
        hinge_witness: HingeWitnessRecord {
            threshold: witness.threshold.repr(bits),
            lhs_total: witness.lhs_total.repr(bits),
            rhs_total: witness.rhs_total.repr(bits),
            separation: witness.separation,
        },
        power_majorization: report,
        reduction_note,
    };
    let digest = body_digest(&body)?;
    Ok(Attempt::Cert(Box::new(CounterexampleCertificate { body, digest })))
}

/// Build the certificate for a single `(n, r)` point, or explain why none
/// exists there. Pass an empty `grid` for the default exponent grid.
pub fn counterexample_certificate(
    n: u32,
    r: &Rational,
    grid: &[Rational],
    policy: &PrecisionPolicy,
) -> Result<CounterexampleCertificate, CertifyError> {
    let grid_vec = if grid.is_empty() { default_power_grid() } else { grid.to_vec() };
    match attempt(n, r, &grid_vec, policy, ExecMode::default())? {
        Attempt::Cert(cert) => Ok(*cert),
        Attempt::Skip { reason, decisive } => {
            Err(CertifyError::NotACounterexample { n, r: r.to_string(), reason, decisive })
        }
    }
}

/// A searched point that produced no certificate, with the reason.
/// `decisive` is true when the skip is itself certified rather than a
/// precision-budget dead end.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedCase {
    pub n: u32,
    #[serde(with = "crate::scalar::rational_as_string")]
    pub r: Rational,
    pub reason: String,
    pub decisive: bool,
}

/// Outcome of [`find_counterexamples`]: the certificates found plus a
/// diagnostic row for every point that yielded none.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleSearch {
    pub certificates: Vec<CounterexampleCertificate>,
    pub skipped: Vec<SkippedCase>,
}

/// Search the `(n, r)` product of `n_range` and `r_candidates` for
/// certified counterexamples (parallel by default). An empty `grid` selects
/// the default exponent grid. Results keep the search order: `n` outer,
/// candidates inner.
pub fn find_counterexamples(
    n_range: RangeInclusive<u32>,
    r_candidates: &[Rational],
    grid: &[Rational],
    policy: &PrecisionPolicy,
) -> Result<CounterexampleSearch, CertifyError> {
    find_counterexamples_with_mode(n_range, r_candidates, grid, policy, ExecMode::default())
}

/// [`find_counterexamples`] with an explicit execution mode. The exponent
/// grid inside each point runs sequentially; the fan-out is across points.
pub fn find_counterexamples_with_mode(
    n_range: RangeInclusive<u32>,
    r_candidates: &[Rational],
    grid: &[Rational],
    policy: &PrecisionPolicy,
    mode: ExecMode,
) -> Result<CounterexampleSearch, CertifyError> {
    if r_candidates.is_empty() {
        return Err(CertifyError::EmptyInput("exponent candidate list"));
    }
    let pairs: Vec<(u32, Rational)> = n_range
        .flat_map(|n| r_candidates.iter().cloned().map(move |r| (n, r)))
        .collect();
    if pairs.is_empty() {
        return Err(CertifyError::EmptyInput("cutoff range"));
    }
    let grid_vec = if grid.is_empty() { default_power_grid() } else { grid.to_vec() };
    let pol = *policy;
    let outcomes = exec::map(mode, pairs, move |(n, r)| {
        attempt(n, &r, &grid_vec, &pol, ExecMode::Sequential).map(|a| (n, r, a))
    });
    let mut certificates = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        let (n, r, a) = outcome?;
        match a {
            Attempt::Cert(cert) => certificates.push(*cert),
            Attempt::Skip { reason, decisive } => {
                skipped.push(SkippedCase { n, r, reason, decisive })
            }
        }
    }
    Ok(CounterexampleSearch { certificates, skipped })
}

/// Result of replaying a certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// The stored digest matches the body's canonical encoding.
    pub digest_ok: bool,
    /// Re-deriving the body from `(n, r, grid, policy)` reproduced every
    /// field.
    pub replay_ok: bool,
    /// Dotted path and values of the first divergence, when replay fails.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch: Option<String>,
    pub valid: bool,
}

fn join_path(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn first_json_mismatch(
    stored: &serde_json::Value,
    replayed: &serde_json::Value,
    path: &str,
) -> Option<String> {
    use serde_json::Value;
    match (stored, replayed) {
        (Value::Object(a), Value::Object(b)) => {
            for (key, va) in a {
                let sub = join_path(path, key);
                match b.get(key) {
                    Some(vb) => {
                        if let Some(m) = first_json_mismatch(va, vb, &sub) {
                            return Some(m);
                        }
                    }
                    None => return Some(format!("{sub}: present in stored, absent in replay")),
                }
            }
            b.keys()
                .find(|k| !a.contains_key(*k))
                .map(|k| format!("{}: absent in stored, present in replay", join_path(path, k)))
        }
        (Value::Array(a), Value::Array(b)) => {
            if a.len() != b.len() {
                return Some(format!("{path}: array length {} != {}", a.len(), b.len()));
            }
            a.iter()
                .zip(b)
                .enumerate()
                .find_map(|(i, (va, vb))| first_json_mismatch(va, vb, &format!("{path}[{i}]")))
        }
        _ => (stored != replayed).then(|| format!("{path}: {stored} != {replayed}")),
    }
}

/// Check a certificate's digest, then re-derive the whole body from its
/// embedded `(n, r, grid, policy)` and compare field by field. The first
/// divergence is reported as a dotted JSON path.
pub fn verify_certificate(
    cert: &CounterexampleCertificate,
) -> Result<VerificationReport, CertifyError> {
    let digest_ok = body_digest(&cert.body)? == cert.digest;
    let replayed = attempt(
        cert.body.n,
        &cert.body.r,
        &cert.body.power_majorization.grid,
        &cert.body.policy,
        ExecMode::Sequential,
    )?;
    let first_mismatch = match replayed {
        Attempt::Cert(fresh) => {
            let stored = serde_json::to_value(&cert.body)
                .map_err(|e| CertifyError::Serialization(e.to_string()))?;
            let derived = serde_json::to_value(&fresh.body)
                .map_err(|e| CertifyError::Serialization(e.to_string()))?;
            first_json_mismatch(&stored, &derived, "")
        }
        Attempt::Skip { reason, .. } => {
            Some(format!("replay produced no certificate: {reason}"))
        }
    };
    let replay_ok = first_mismatch.is_none();
    Ok(VerificationReport { digest_ok, replay_ok, first_mismatch, valid: digest_ok && replay_ok })
}

/// Direction of one adjacent step in a ratio-sequence scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepDirection {
    /// The value certifiably drops across the step.
    Decreasing,
    /// The value certifiably rises across the step.
    Increasing,
    /// The two values are exactly equal.
    Flat,
    /// The comparison did not resolve within the budget.
    Unresolved,
}

fn step_direction(v: &ComparisonVerdict) -> StepDirection {
    match v {
        ComparisonVerdict::CertainlyGreater => StepDirection::Decreasing,
        ComparisonVerdict::CertainlyLess => StepDirection::Increasing,
        ComparisonVerdict::ExactlyEqual => StepDirection::Flat,
        ComparisonVerdict::TieWithinTolerance { .. } => StepDirection::Unresolved,
    }
}

/// Maximal block of adjacent steps sharing one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneRun {
    pub direction: StepDirection,
    /// Index of the first step in the run (step `i` compares exponent `i`
    /// to exponent `i + 1`).
    pub start: u32,
    pub steps: u32,
}

/// Certified scan of the naturals ratio sequence `P_n` across an exponent
/// list: the values, every adjacent comparison, and the monotone runs they
/// form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityScan {
    pub n: u32,
    #[serde(with = "crate::scalar::rational_vec_as_string")]
    pub exponents: Vec<Rational>,
    pub values: Vec<ScalarRepr>,
    /// `steps[i]` compares `P_n(exponents[i])` with `P_n(exponents[i+1])`.
    pub steps: Vec<ComparisonVerdict>,
    pub runs: Vec<MonotoneRun>,
}

/// Scan `P_n` over `exponents` (at least two, in caller order) and certify
/// each adjacent comparison.
pub fn monotonicity_scan(
    n: u32,
    exponents: &[Rational],
    policy: &PrecisionPolicy,
) -> Result<MonotonicityScan, CertifyError> {
    monotonicity_scan_with_mode(n, exponents, policy, ExecMode::default())
}

/// [`monotonicity_scan`] with an explicit execution mode for the value
/// evaluations.
pub fn monotonicity_scan_with_mode(
    n: u32,
    exponents: &[Rational],
    policy: &PrecisionPolicy,
    mode: ExecMode,
) -> Result<MonotonicityScan, CertifyError> {
    if exponents.len() < 2 {
        return Err(CertifyError::EmptyInput("exponent list (need at least two points)"));
    }
    let values = exec::map(mode, exponents.to_vec(), move |r| p_n(n, &r))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let steps: Vec<ComparisonVerdict> =
        values.windows(2).map(|w| compare(&w[0], &w[1], policy)).collect();
    let mut runs: Vec<MonotoneRun> = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let dir = step_direction(step);
        match runs.last_mut() {
            Some(run) if run.direction == dir => run.steps += 1,
            _ => runs.push(MonotoneRun { direction: dir, start: i as u32, steps: 1 }),
        }
    }
    let bits = policy.start_bits;
    Ok(MonotonicityScan {
        n,
        exponents: exponents.to_vec(),
        values: values.iter().map(|v| v.repr(bits)).collect(),
        steps,
        runs,
    })
}
