//! Certified arithmetic for power-sum inequalities and majorization order
//! tests.
//!
//! The crate decides order relations between power-sum expressions with
//! machine-checkable certainty: every verdict is backed either by exact
//! rational arithmetic or by interval enclosures with directed rounding,
//! refined adaptively until the comparison resolves or an explicit precision
//! budget is exhausted. On top of that sit majorization checks between
//! weight tuples, a registry of classical power-sum inequalities that can be
//! evaluated at arbitrary rational parameters, and exportable counterexample
//! certificates for majorization failures that third parties can re-verify.

pub mod certify;
pub mod exec;
pub mod inequality;
pub mod majorize;
pub mod powersum;
pub mod scalar;

pub use certify::{
    body_digest, counterexample_certificate, find_counterexamples,
    find_counterexamples_with_mode, monotonicity_scan, monotonicity_scan_with_mode,
    verify_certificate, ArithmeticMode, CertificateBody, CertifyError,
    CounterexampleCertificate, CounterexampleSearch, MonotonicityScan, VerificationReport,
};
pub use inequality::{
    evaluate_case, hadamard_power, ratio_principle_check, registry_entry, sweep,
    sweep_with_mode, CaseParams, CheckResult, ClaimStatus, InequalityError, InequalityId,
    SweepReport, REGISTRY,
};
pub use scalar::{
    compare, ln_rational, pow_scalar, root_compare, ComparisonVerdict, Enclosure,
    PrecisionPolicy, Rational, Scalar, ScalarError, ScalarRepr,
};
