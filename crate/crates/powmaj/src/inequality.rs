//! Registry of classical power-sum inequality claims with certified
//! evaluation at arbitrary rational parameters.
//!
//! Each [`RegistryEntry`] records a claimed order relation between two
//! power-sum expressions, the parameter region where the claim is asserted,
//! and (where one exists) the region where the reversed relation is
//! asserted. [`evaluate_case`] computes both sides with certified
//! arithmetic and reports whether the claim is [confirmed], [contradicted],
//! outside every claimed region, or unresolved within the precision budget.
//! [`sweep`] evaluates one entry over a whole parameter grid and tallies the
//! outcomes.
//!
//! Throughout, `P_n(r)` denotes the normalized mean ratio over the naturals
//! computed by [`crate::powersum::ratio_r`]:
//! `(((1/n) Σ_{i=1..n} i^r) / ((1/(n+1)) Σ_{i=1..n+1} i^r))^(1/r)`,
//! with the geometric-mean form at `r = 0`.
//!
//! [confirmed]: ClaimStatus::Confirmed
//! [contradicted]: ClaimStatus::Contradicted

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{self, ExecMode};
use crate::powersum::{p_n, power_sum, second_difference, PowerSumError, PowerSumQuery, SequenceSpec};
use crate::scalar::{
    compare, ln_rational, pow_scalar, ComparisonVerdict, PrecisionPolicy, Rational, Scalar,
    ScalarError, ScalarRepr,
};

/// Errors surfaced while evaluating registry claims.
#[derive(Debug, Error, PartialEq)]
pub enum InequalityError {
    /// The case parameters are missing a field this entry requires.
    #[error("{id} requires parameter `{name}`")]
    MissingParameter { id: InequalityId, name: &'static str },
    /// A parameter is present but outside the entry's domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    /// An identifier string did not name any registry entry.
    #[error("unknown inequality id `{given}`")]
    UnknownId { given: String },
    /// A power-sum evaluation failed.
    #[error(transparent)]
    Sequence(#[from] PowerSumError),
    /// A scalar operation failed.
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Identifier of a claim in the registry (plus the auxiliary interval claim
/// `Hadamard`, which is evaluated through [`hadamard_power`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InequalityId {
    #[serde(rename = "LS_LOW")]
    LsLow,
    #[serde(rename = "LS_HIGH")]
    LsHigh,
    #[serde(rename = "ALZER_LOW")]
    AlzerLow,
    #[serde(rename = "MARTINS_UP")]
    MartinsUp,
    #[serde(rename = "ALZER_NEG")]
    AlzerNeg,
    #[serde(rename = "BENNETT_R1")]
    BennettR1,
    #[serde(rename = "GAO_MONO")]
    GaoMono,
    #[serde(rename = "BEN_GEN")]
    BenGen,
    #[serde(rename = "BEN_SQ")]
    BenSq,
    #[serde(rename = "PN_2R1")]
    Pn2R1,
    #[serde(rename = "THM2_STEP")]
    Thm2Step,
    #[serde(rename = "COR4_STEP")]
    Cor4Step,
    #[serde(rename = "PN3_EXT")]
    Pn3Ext,
    #[serde(rename = "ALZER_RW")]
    AlzerRw,
    #[serde(rename = "BEN_CONVEX")]
    BenConvex,
    #[serde(rename = "BEN_THM10")]
    BenThm10,
    #[serde(rename = "BEN_COR1")]
    BenCor1,
    #[serde(rename = "DOM_S4")]
    DomS4,
    #[serde(rename = "DOM_SMALL_R")]
    DomSmallR,
    #[serde(rename = "HADAMARD")]
    Hadamard,
}

impl InequalityId {
    /// Every evaluatable identifier, registry entries first.
    pub const ALL: [InequalityId; 20] = [
        InequalityId::LsLow,
        InequalityId::LsHigh,
        InequalityId::AlzerLow,
        InequalityId::MartinsUp,
        InequalityId::AlzerNeg,
        InequalityId::BennettR1,
        InequalityId::GaoMono,
        InequalityId::BenGen,
        InequalityId::BenSq,
        InequalityId::Pn2R1,
        InequalityId::Thm2Step,
        InequalityId::Cor4Step,
        InequalityId::Pn3Ext,
        InequalityId::AlzerRw,
        InequalityId::BenConvex,
        InequalityId::BenThm10,
        InequalityId::BenCor1,
        InequalityId::DomS4,
        InequalityId::DomSmallR,
        InequalityId::Hadamard,
    ];

    /// Canonical name, as accepted by [`FromStr`] and used in JSON/CSV.
    pub fn name(self) -> &'static str {
        match self {
            InequalityId::LsLow => "LS_LOW",
            InequalityId::LsHigh => "LS_HIGH",
            InequalityId::AlzerLow => "ALZER_LOW",
            InequalityId::MartinsUp => "MARTINS_UP",
            InequalityId::AlzerNeg => "ALZER_NEG",
            InequalityId::BennettR1 => "BENNETT_R1",
            InequalityId::GaoMono => "GAO_MONO",
            InequalityId::BenGen => "BEN_GEN",
            InequalityId::BenSq => "BEN_SQ",
            InequalityId::Pn2R1 => "PN_2R1",
            InequalityId::Thm2Step => "THM2_STEP",
            InequalityId::Cor4Step => "COR4_STEP",
            InequalityId::Pn3Ext => "PN3_EXT",
            InequalityId::AlzerRw => "ALZER_RW",
            InequalityId::BenConvex => "BEN_CONVEX",
            InequalityId::BenThm10 => "BEN_THM10",
            InequalityId::BenCor1 => "BEN_COR1",
            InequalityId::DomS4 => "DOM_S4",
            InequalityId::DomSmallR => "DOM_SMALL_R",
            InequalityId::Hadamard => "HADAMARD",
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InequalityId {
    type Err = InequalityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        InequalityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == upper)
            .ok_or(InequalityError::UnknownId { given: s.to_string() })
    }
}

/// Static description of one registry claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegistryEntry {
    pub id: InequalityId,
    /// ASCII rendering of the claimed relation.
    pub formula: &'static str,
    /// Parameters the entry consumes.
    pub parameters: &'static str,
    /// Region where the stated direction is claimed.
    pub valid_region: &'static str,
    /// Region where the reversed direction is claimed, if any.
    pub reversal_region: Option<&'static str>,
    /// Whether the claimed relation is strict.
    pub strict: bool,
    /// Classical attribution used as a human-searchable anchor.
    pub anchor: &'static str,
}

/// The nineteen power-sum claims the toolkit certifies.
pub const REGISTRY: [RegistryEntry; 19] = [
    RegistryEntry {
        id: InequalityId::LsLow,
        formula: "sum_{i=1..n} i^r >= n (n+1)^r / (r+1)",
        parameters: "n, r",
        valid_region: "0 <= r <= 1",
        reversal_region: None,
        strict: false,
        anchor: "Levin-Steckin power-sum lower bound",
    },
    RegistryEntry {
        id: InequalityId::LsHigh,
        formula: "sum_{i=1..n} i^r >= (r/(r+1)) n^r (n+1)^r / ((n+1)^r - n^r), \
                  with rhs read as 1/ln(1 + 1/n) at r = 0",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: Some("-1 < r <= 1 (r = 0 via the limit form)"),
        strict: false,
        anchor: "Levin-Steckin sharp power-sum bound",
    },
    RegistryEntry {
        id: InequalityId::AlzerLow,
        formula: "n/(n+1) < P_n(r)",
        parameters: "n, r",
        valid_region: "r > 0",
        reversal_region: None,
        strict: true,
        anchor: "Alzer ratio lower bound",
    },
    RegistryEntry {
        id: InequalityId::MartinsUp,
        formula: "P_n(r) < P_n(0)",
        parameters: "n, r",
        valid_region: "r > 0",
        reversal_region: None,
        strict: true,
        anchor: "Martins ratio upper bound",
    },
    RegistryEntry {
        id: InequalityId::AlzerNeg,
        formula: "P_n(0) <= P_n(r) <= 1",
        parameters: "n, r",
        valid_region: "r < 0",
        reversal_region: None,
        strict: false,
        anchor: "Alzer negative-exponent bracket",
    },
    RegistryEntry {
        id: InequalityId::BennettR1,
        formula: "P_n(r) <= (n+1)/(n+2)",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: Some("0 < r <= 1"),
        strict: false,
        anchor: "Bennett ratio bound",
    },
    RegistryEntry {
        id: InequalityId::GaoMono,
        formula: "P_n(r) >= P_n(r2)",
        parameters: "n, r, r2",
        valid_region: "r < r2 and r <= 1",
        reversal_region: None,
        strict: false,
        anchor: "exponent monotonicity of the ratio sequence",
    },
    RegistryEntry {
        id: InequalityId::BenGen,
        formula: "(sum_{i=1..n} i^alpha)(sum_{i=1..n} i^beta) / sum_{i=1..n} i^(alpha+beta+1) \
                  >= the same expression at n+1",
        parameters: "n, alpha, beta",
        valid_region: "alpha >= 1 and beta >= 1",
        reversal_region: Some("alpha <= 1 and beta <= 1"),
        strict: false,
        anchor: "Bennett product-quotient monotonicity, two-exponent form",
    },
    RegistryEntry {
        id: InequalityId::BenSq,
        formula: "(((1/n) sum_{1..n} i^r) / ((1/(n+1)) sum_{1..n+1} i^r))^2 \
                  >= ((n+1)/n) ((1/n) sum_{1..n} i^(2r+1)) / ((1/(n+1)) sum_{1..n+1} i^(2r+1))",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: Some("r <= 1"),
        strict: false,
        anchor: "Bennett product-quotient monotonicity, squared form",
    },
    RegistryEntry {
        id: InequalityId::Pn2R1,
        formula: "P_n(r) >= P_n(2r+1)",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: None,
        strict: false,
        anchor: "ratio comparison between exponents r and 2r+1",
    },
    RegistryEntry {
        id: InequalityId::Thm2Step,
        formula: "T_n >= T_{n+1} where T_m = (sum_{1..m} i)^alpha / sum_{1..m} i^(2 alpha - 1)",
        parameters: "n, alpha",
        valid_region: "alpha >= 2",
        reversal_region: Some("1 < alpha < 2"),
        strict: false,
        anchor: "triangular-power step comparison",
    },
    RegistryEntry {
        id: InequalityId::Cor4Step,
        formula: "U_n >= U_{n+1} where U_m = (sum_{1..m} i^3)^alpha / sum_{1..m} i^(4 alpha - 1)",
        parameters: "n, alpha",
        valid_region: "alpha >= 1",
        reversal_region: Some("1/2 < alpha < 1"),
        strict: false,
        anchor: "cubic-sum power step comparison",
    },
    RegistryEntry {
        id: InequalityId::Pn3Ext,
        formula: "P_n(3) >= P_n(r) for r >= 3; P_n(3) <= P_n(r) for r < 3",
        parameters: "n, r",
        valid_region: "all r (direction switches at r = 3)",
        reversal_region: None,
        strict: false,
        anchor: "ratio comparison against exponent 3",
    },
    RegistryEntry {
        id: InequalityId::AlzerRw,
        formula: "sum_{i=1..n} i^r >= n^(1+r) (n+1)^r / ((n+1)^(1+r) - n^(1+r))",
        parameters: "n, r",
        valid_region: "r > 0",
        reversal_region: None,
        strict: false,
        anchor: "Alzer power-sum bound, reciprocal-weight form",
    },
    RegistryEntry {
        id: InequalityId::BenConvex,
        formula: "c_{n+2} - 2 c_{n+1} + c_n >= 0 where c_m = (1/m) sum_{1..m} i^r",
        parameters: "n, r",
        valid_region: "r >= 1 or r <= 0",
        reversal_region: Some("0 <= r <= 1"),
        strict: false,
        anchor: "Bennett mean-sequence convexity",
    },
    RegistryEntry {
        id: InequalityId::BenThm10,
        formula: "sum_{i=1..n} i^r >= n^r (n+1)^r ((n+2)^r - (n+1)^r) / \
                  (n^r (n+1)^r - 2 n^r (n+2)^r + (n+1)^r (n+2)^r)",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: Some("-1 < r <= 1, r != 0"),
        strict: false,
        anchor: "Bennett three-point power-sum bound",
    },
    RegistryEntry {
        id: InequalityId::BenCor1,
        formula: "sum_{i=1..n} i^r >= n^r (n + 1/2) (n+1)^r / ((n+1)^(r+1) - n^(r+1))",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: Some("-1 < r <= 1"),
        strict: false,
        anchor: "Bennett half-step power-sum bound",
    },
    RegistryEntry {
        id: InequalityId::DomS4,
        formula: "rhs(LS_HIGH) >= rhs(BEN_COR1)",
        parameters: "n, r",
        valid_region: "r >= 1",
        reversal_region: None,
        strict: false,
        anchor: "dominance of the sharp bound over the half-step bound",
    },
    RegistryEntry {
        id: InequalityId::DomSmallR,
        formula: "rhs(LS_LOW) >= rhs(ALZER_RW)",
        parameters: "n, r",
        valid_region: "0 < r <= 1",
        reversal_region: None,
        strict: false,
        anchor: "dominance of the simple bound over the reciprocal-weight bound",
    },
];

/// Auxiliary interval claim checked by [`hadamard_power`]; kept outside
/// [`REGISTRY`] because it compares integral means rather than power sums.
pub const HADAMARD_ENTRY: RegistryEntry = RegistryEntry {
    id: InequalityId::Hadamard,
    formula: "((a+b)/2)^s <= (1/(b-a)) integral_a^b u^s du <= (a^s + b^s)/2, \
              with the integral read as ln(b/a)/(b-a) at s = -1",
    parameters: "s, a, b",
    valid_region: "s >= 1 or s <= 0 (convex integrand)",
    reversal_region: Some("0 <= s <= 1 (concave integrand)"),
    strict: false,
    anchor: "Hermite-Hadamard bracket for power integrands",
};

/// Look up the static description of `id`.
pub fn registry_entry(id: InequalityId) -> &'static RegistryEntry {
    match id {
        InequalityId::Hadamard => &HADAMARD_ENTRY,
        _ => REGISTRY
            .iter()
            .find(|e| e.id == id)
            .expect("every non-auxiliary id has a registry row"),
    }
}

mod opt_rational_as_string {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|s| s.parse::<Rational>().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Parameter bundle for [`evaluate_case`]. Entries read only the fields
/// they need; see [`RegistryEntry::parameters`].
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub r: Option<Rational>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub r2: Option<Rational>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<Rational>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<Rational>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub s: Option<Rational>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub a: Option<Rational>,
    #[serde(with = "opt_rational_as_string", skip_serializing_if = "Option::is_none", default)]
    pub b: Option<Rational>,
}

impl CaseParams {
    pub fn nr(n: u32, r: Rational) -> Self {
        CaseParams { n: Some(n), r: Some(r), ..Default::default() }
    }

    pub fn with_r2(mut self, r2: Rational) -> Self {
        self.r2 = Some(r2);
        self
    }

    pub fn n_alpha(n: u32, alpha: Rational) -> Self {
        CaseParams { n: Some(n), alpha: Some(alpha), ..Default::default() }
    }

    pub fn n_alpha_beta(n: u32, alpha: Rational, beta: Rational) -> Self {
        CaseParams { n: Some(n), alpha: Some(alpha), beta: Some(beta), ..Default::default() }
    }

    pub fn interval_power(s: Rational, a: Rational, b: Rational) -> Self {
        CaseParams { s: Some(s), a: Some(a), b: Some(b), ..Default::default() }
    }
}

/// Outcome of judging a certified verdict against a claimed relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    /// The certified comparison agrees with the claimed relation.
    Confirmed,
    /// The certified comparison violates the claimed relation.
    Contradicted,
    /// The parameters fall outside every claimed region.
    NoClaim,
    /// The comparison did not resolve within the precision budget.
    Inconclusive,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Confirmed => "confirmed",
            ClaimStatus::Contradicted => "contradicted",
            ClaimStatus::NoClaim => "no_claim",
            ClaimStatus::Inconclusive => "inconclusive",
        })
    }
}

/// Which claimed region (if any) the parameters fall in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// Stated direction applies.
    Valid,
    /// Reversed direction applies.
    Reversed,
    /// No direction is claimed for these parameters.
    OutsideClaims,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClaimDir {
    StrictLess,
    LessEq,
    GreaterEq,
}

impl ClaimDir {
    fn relation(self) -> &'static str {
        match self {
            ClaimDir::StrictLess => "lhs < rhs",
            ClaimDir::LessEq => "lhs <= rhs",
            ClaimDir::GreaterEq => "lhs >= rhs",
        }
    }

    fn judge(self, v: &ComparisonVerdict) -> ClaimStatus {
        use ComparisonVerdict as V;
        match (self, v) {
            (_, V::TieWithinTolerance { .. }) => ClaimStatus::Inconclusive,
            (ClaimDir::StrictLess, V::CertainlyLess) => ClaimStatus::Confirmed,
            (ClaimDir::StrictLess, _) => ClaimStatus::Contradicted,
            (ClaimDir::LessEq, V::CertainlyLess | V::ExactlyEqual) => ClaimStatus::Confirmed,
            (ClaimDir::LessEq, _) => ClaimStatus::Contradicted,
            (ClaimDir::GreaterEq, V::CertainlyGreater | V::ExactlyEqual) => ClaimStatus::Confirmed,
            (ClaimDir::GreaterEq, _) => ClaimStatus::Contradicted,
        }
    }
}

/// One comparison inside a multi-part claim (bracket or chain).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubCheck {
    pub label: String,
    pub claimed_relation: String,
    pub lhs: ScalarRepr,
    pub rhs: ScalarRepr,
    pub verdict: ComparisonVerdict,
    pub status: ClaimStatus,
}

/// Result of evaluating one registry claim at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: InequalityId,
    pub params: CaseParams,
    pub region: Region,
    /// Relation asserted for these parameters, if any.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub claimed_relation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<ScalarRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<ScalarRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<ComparisonVerdict>,
    pub claim_status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    /// Present for multi-part claims (`ALZER_NEG`, `HADAMARD`).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parts: Option<Vec<SubCheck>>,
}

fn rint(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

fn rat_n(n: u32) -> Rational {
    Rational::from_integer(n.into())
}

fn nat_sum(n: u32, r: &Rational) -> Result<Scalar, PowerSumError> {
    power_sum(&PowerSumQuery { seq: SequenceSpec::Naturals, n, r: r.clone() })
}

fn powi(base: u32, e: &Rational) -> Result<Scalar, ScalarError> {
    pow_scalar(&Scalar::exact(rat_n(base)), e)
}

fn need_n(params: &CaseParams, id: InequalityId) -> Result<u32, InequalityError> {
    let n = params.n.ok_or(InequalityError::MissingParameter { id, name: "n" })?;
    if n == 0 {
        return Err(InequalityError::InvalidParameter {
            name: "n",
            reason: "cutoff must be at least 1".into(),
        });
    }
    Ok(n)
}

fn need_rat(
    field: &Option<Rational>,
    id: InequalityId,
    name: &'static str,
) -> Result<Rational, InequalityError> {
    field.clone().ok_or(InequalityError::MissingParameter { id, name })
}

/// Assemble a single-comparison result. `dir` is `None` outside the claimed
/// regions, in which case the verdict is informational and the status is
/// [`ClaimStatus::NoClaim`].
#[allow(clippy::too_many_arguments)]
fn single(
    id: InequalityId,
    params: &CaseParams,
    region: Region,
    dir: Option<ClaimDir>,
    lhs: &Scalar,
    rhs: &Scalar,
    verdict: ComparisonVerdict,
    note: Option<String>,
    bits: u32,
) -> CheckResult {
    let claim_status = match dir {
        Some(d) if region != Region::OutsideClaims => d.judge(&verdict),
        _ => ClaimStatus::NoClaim,
    };
    CheckResult {
        id,
        params: params.clone(),
        region,
        claimed_relation: dir
            .filter(|_| region != Region::OutsideClaims)
            .map(|d| d.relation().to_string()),
        lhs: Some(lhs.repr(bits)),
        rhs: Some(rhs.repr(bits)),
        verdict: Some(verdict),
        claim_status,
        note,
        parts: None,
    }
}

/// Assemble a result whose right-hand side could not be evaluated (vanishing
/// denominator or an unresolved denominator sign).
fn undefined_rhs(
    id: InequalityId,
    params: &CaseParams,
    region: Region,
    lhs: Option<&Scalar>,
    status: ClaimStatus,
    note: String,
    bits: u32,
) -> CheckResult {
    CheckResult {
        id,
        params: params.clone(),
        region,
        claimed_relation: None,
        lhs: lhs.map(|s| s.repr(bits)),
        rhs: None,
        verdict: None,
        claim_status: status,
        note: Some(note),
        parts: None,
    }
}

fn sub_check(
    label: &str,
    dir: ClaimDir,
    lhs: &Scalar,
    rhs: &Scalar,
    policy: &PrecisionPolicy,
) -> SubCheck {
    let verdict = compare(lhs, rhs, policy);
    let status = dir.judge(&verdict);
    SubCheck {
        label: label.to_string(),
        claimed_relation: dir.relation().to_string(),
        lhs: lhs.repr(policy.start_bits),
        rhs: rhs.repr(policy.start_bits),
        verdict,
        status,
    }
}

fn combine_statuses(parts: &[SubCheck]) -> ClaimStatus {
    if parts.iter().any(|p| p.status == ClaimStatus::Contradicted) {
        ClaimStatus::Contradicted
    } else if parts.iter().any(|p| p.status == ClaimStatus::Inconclusive) {
        ClaimStatus::Inconclusive
    } else {
        ClaimStatus::Confirmed
    }
}

/// `n (n+1)^r / (r+1)`; `None` at the pole `r = -1`.
fn bound_ls_low(n: u32, r: &Rational) -> Result<Option<Scalar>, InequalityError> {
    let r_plus_1 = r + rint(1);
    if r_plus_1.is_zero() {
        return Ok(None);
    }
    let num = &Scalar::exact(rat_n(n)) * &powi(n + 1, r)?;
    Ok(Some(&num / &Scalar::exact(r_plus_1)))
}

/// `(r/(r+1)) n^r (n+1)^r / ((n+1)^r - n^r)`, read as `1/ln(1 + 1/n)` at
/// `r = 0`; `None` at the pole `r = -1`. Also reports whether the limit
/// form was used.
fn bound_ls_high(n: u32, r: &Rational) -> Result<Option<(Scalar, bool)>, InequalityError> {
    if r.is_zero() {
        let log = ln_rational(&(rat_n(n + 1) / rat_n(n)))?;
        return Ok(Some((&Scalar::one() / &log, true)));
    }
    let r_plus_1 = r + rint(1);
    if r_plus_1.is_zero() {
        return Ok(None);
    }
    let a = powi(n, r)?;
    let b = powi(n + 1, r)?;
    let num = &Scalar::exact(r / &r_plus_1) * &(&a * &b);
    let den = &b - &a;
    Ok(Some((&num / &den, false)))
}

/// `n^(1+r) (n+1)^r / ((n+1)^(1+r) - n^(1+r))`; `None` at the pole `r = -1`.
fn bound_alzer_rw(n: u32, r: &Rational) -> Result<Option<Scalar>, InequalityError> {
    let e = r + rint(1);
    if e.is_zero() {
        return Ok(None);
    }
    let num = &powi(n, &e)? * &powi(n + 1, r)?;
    let den = &powi(n + 1, &e)? - &powi(n, &e)?;
    Ok(Some(&num / &den))
}

/// `n^r (n + 1/2) (n+1)^r / ((n+1)^(r+1) - n^(r+1))`; `None` at the pole
/// `r = -1`.
fn bound_ben_cor1(n: u32, r: &Rational) -> Result<Option<Scalar>, InequalityError> {
    let e = r + rint(1);
    if e.is_zero() {
        return Ok(None);
    }
    let half_step = Scalar::exact(rat_n(n) + Rational::new(1.into(), 2.into()));
    let num = &(&powi(n, r)? * &half_step) * &powi(n + 1, r)?;
    let den = &powi(n + 1, &e)? - &powi(n, &e)?;
    Ok(Some(&num / &den))
}

enum ThreePointBound {
    Value(Scalar),
    VanishingDenominator,
    UnresolvedDenominatorSign,
}

/// `n^r (n+1)^r ((n+2)^r - (n+1)^r)` over
/// `n^r (n+1)^r - 2 n^r (n+2)^r + (n+1)^r (n+2)^r`, with the denominator
/// sign certified before dividing.
fn bound_ben_thm10(
    n: u32,
    r: &Rational,
    policy: &PrecisionPolicy,
) -> Result<ThreePointBound, InequalityError> {
    let a = powi(n, r)?;
    let b = powi(n + 1, r)?;
    let c = powi(n + 2, r)?;
    let num = &(&a * &b) * &(&c - &b);
    let den = &(&(&a * &b) + &(&b * &c)) - &(&Scalar::from_int(2) * &(&a * &c));
    match compare(&den, &Scalar::zero(), policy) {
        ComparisonVerdict::ExactlyEqual => Ok(ThreePointBound::VanishingDenominator),
        ComparisonVerdict::TieWithinTolerance { .. } => {
            Ok(ThreePointBound::UnresolvedDenominatorSign)
        }
        _ => Ok(ThreePointBound::Value(&num / &den)),
    }
}

/// Evaluate one registry claim at one parameter point with certified
/// arithmetic. Outside the claimed regions both sides are still computed
/// when they are defined, but the status is [`ClaimStatus::NoClaim`].
pub fn evaluate_case(
    id: InequalityId,
    params: &CaseParams,
    policy: &PrecisionPolicy,
) -> Result<CheckResult, InequalityError> {
    let bits = policy.start_bits;
    match id {
        InequalityId::LsLow => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region = if !r.is_negative() && r <= rint(1) {
                Region::Valid
            } else {
                Region::OutsideClaims
            };
            let lhs = nat_sum(n, &r)?;
            match bound_ls_low(n, &r)? {
                Some(rhs) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    Ok(single(
                        id,
                        params,
                        region,
                        Some(ClaimDir::GreaterEq),
                        &lhs,
                        &rhs,
                        verdict,
                        None,
                        bits,
                    ))
                }
                None => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    Some(&lhs),
                    ClaimStatus::NoClaim,
                    "bound undefined at r = -1: the factor 1/(r+1) has a pole".into(),
                    bits,
                )),
            }
        }
        InequalityId::LsHigh => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let one = rint(1);
            let (region, dir) = if r >= one {
                (Region::Valid, ClaimDir::GreaterEq)
            } else if r > rint(-1) {
                (Region::Reversed, ClaimDir::LessEq)
            } else {
                (Region::OutsideClaims, ClaimDir::GreaterEq)
            };
            let lhs = nat_sum(n, &r)?;
            match bound_ls_high(n, &r)? {
                Some((rhs, used_limit)) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    let note = used_limit
                        .then(|| "r = 0: bound evaluated as the limit 1/ln(1 + 1/n)".to_string());
                    Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, note, bits))
                }
                None => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    Some(&lhs),
                    ClaimStatus::NoClaim,
                    "bound undefined at r = -1: the factor r/(r+1) has a pole".into(),
                    bits,
                )),
            }
        }
        InequalityId::AlzerLow => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region =
                if r.is_positive() { Region::Valid } else { Region::OutsideClaims };
            let lhs = Scalar::exact(rat_n(n) / rat_n(n + 1));
            let rhs = p_n(n, &r)?;
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, region, Some(ClaimDir::StrictLess), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::MartinsUp => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region =
                if r.is_positive() { Region::Valid } else { Region::OutsideClaims };
            let lhs = p_n(n, &r)?;
            let rhs = p_n(n, &Rational::zero())?;
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, region, Some(ClaimDir::StrictLess), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::AlzerNeg => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let p0 = p_n(n, &Rational::zero())?;
            let pr = p_n(n, &r)?;
            if !r.is_negative() {
                let verdict = compare(&p0, &pr, policy);
                return Ok(single(
                    id,
                    params,
                    Region::OutsideClaims,
                    None,
                    &p0,
                    &pr,
                    verdict,
                    Some("bracket is claimed only for r < 0".into()),
                    bits,
                ));
            }
            let parts = vec![
                sub_check("lower bound: P_n(0) <= P_n(r)", ClaimDir::LessEq, &p0, &pr, policy),
                sub_check("upper bound: P_n(r) <= 1", ClaimDir::LessEq, &pr, &Scalar::one(), policy),
            ];
            let claim_status = combine_statuses(&parts);
            Ok(CheckResult {
                id,
                params: params.clone(),
                region: Region::Valid,
                claimed_relation: Some("lhs <= mid <= rhs".into()),
                lhs: Some(p0.repr(bits)),
                rhs: Some(Scalar::one().repr(bits)),
                verdict: parts.first().map(|p| p.verdict.clone()),
                claim_status,
                note: Some("two-sided bracket: the ratio value sits between P_n(0) and 1".into()),
                parts: Some(parts),
            })
        }
        InequalityId::BennettR1 => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let one = rint(1);
            let (region, dir) = if r >= one {
                (Region::Valid, ClaimDir::LessEq)
            } else if r.is_positive() {
                (Region::Reversed, ClaimDir::GreaterEq)
            } else {
                (Region::OutsideClaims, ClaimDir::LessEq)
            };
            let lhs = p_n(n, &r)?;
            let rhs = Scalar::exact(rat_n(n + 1) / rat_n(n + 2));
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::GaoMono => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let r2 = need_rat(&params.r2, id, "r2")?;
            let in_region = r < r2 && r <= rint(1);
            let region = if in_region { Region::Valid } else { Region::OutsideClaims };
            let note = (!in_region).then(|| "claim requires r < r2 and r <= 1".to_string());
            let lhs = p_n(n, &r)?;
            let rhs = p_n(n, &r2)?;
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, region, Some(ClaimDir::GreaterEq), &lhs, &rhs, verdict, note, bits))
        }
        InequalityId::BenGen => {
            let n = need_n(params, id)?;
            let alpha = need_rat(&params.alpha, id, "alpha")?;
            let beta = need_rat(&params.beta, id, "beta")?;
            let one = rint(1);
            let (region, dir) = if alpha >= one && beta >= one {
                (Region::Valid, ClaimDir::GreaterEq)
            } else if alpha <= one && beta <= one {
                (Region::Reversed, ClaimDir::LessEq)
            } else {
                (Region::OutsideClaims, ClaimDir::GreaterEq)
            };
            let gamma = &(&alpha + &beta) + rint(1);
            let sum_pair = |e: &Rational| -> Result<(Scalar, Scalar), InequalityError> {
                let head = nat_sum(n, e)?;
                let next = &head + &powi(n + 1, e)?;
                Ok((head, next))
            };
            let (a_n, a_n1) = sum_pair(&alpha)?;
            let (b_n, b_n1) = sum_pair(&beta)?;
            let (c_n, c_n1) = sum_pair(&gamma)?;
            let lhs = &(&a_n * &b_n) / &c_n;
            let rhs = &(&a_n1 * &b_n1) / &c_n1;
            // Cross-multiplied comparison: denominators are positive sums.
            let verdict = compare(
                &(&(&a_n * &b_n) * &c_n1),
                &(&(&a_n1 * &b_n1) * &c_n),
                policy,
            );
            Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::BenSq => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let one = rint(1);
            let (region, dir) = if r >= one {
                (Region::Valid, ClaimDir::GreaterEq)
            } else {
                (Region::Reversed, ClaimDir::LessEq)
            };
            let r_sq = &(&r * rint(2)) + rint(1);
            let a_n = nat_sum(n, &r)?;
            let a_n1 = &a_n + &powi(n + 1, &r)?;
            let b_n = nat_sum(n, &r_sq)?;
            let b_n1 = &b_n + &powi(n + 1, &r_sq)?;
            let scale_num = Scalar::exact(rat_n(n + 1));
            let scale_den = Scalar::exact(rat_n(n));
            let q = &(&scale_num * &a_n) / &(&scale_den * &a_n1);
            let lhs = &q * &q;
            let rhs = &(&(&scale_num * &scale_num) * &b_n) / &(&(&scale_den * &scale_den) * &b_n1);
            // The normalization factors cancel in the cross-multiplied form.
            let verdict =
                compare(&(&(&a_n * &a_n) * &b_n1), &(&(&a_n1 * &a_n1) * &b_n), policy);
            Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::Pn2R1 => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region = if r >= rint(1) { Region::Valid } else { Region::OutsideClaims };
            let r2 = &(&r * rint(2)) + rint(1);
            let lhs = p_n(n, &r)?;
            let rhs = p_n(n, &r2)?;
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, region, Some(ClaimDir::GreaterEq), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::Thm2Step => {
            let n = need_n(params, id)?;
            let alpha = need_rat(&params.alpha, id, "alpha")?;
            let (region, dir) = if alpha >= rint(2) {
                (Region::Valid, ClaimDir::GreaterEq)
            } else if alpha > rint(1) {
                (Region::Reversed, ClaimDir::LessEq)
            } else {
                (Region::OutsideClaims, ClaimDir::GreaterEq)
            };
            let e = &(&alpha * rint(2)) - rint(1);
            let tri = |m: u32| Rational::new((u64::from(m) * u64::from(m + 1) / 2).into(), 1.into());
            let num_n = pow_scalar(&Scalar::exact(tri(n)), &alpha)?;
            let num_n1 = pow_scalar(&Scalar::exact(tri(n + 1)), &alpha)?;
            let den_n = nat_sum(n, &e)?;
            let den_n1 = &den_n + &powi(n + 1, &e)?;
            let lhs = &num_n / &den_n;
            let rhs = &num_n1 / &den_n1;
            let verdict = compare(&(&num_n * &den_n1), &(&num_n1 * &den_n), policy);
            let note = "direction note: the claim is the stepwise inequality T_n >= T_{n+1} \
                        for alpha >= 2 and the reverse for 1 < alpha < 2; at alpha = 2 the \
                        two sides agree identically"
                .to_string();
            Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, Some(note), bits))
        }
        InequalityId::Cor4Step => {
            let n = need_n(params, id)?;
            let alpha = need_rat(&params.alpha, id, "alpha")?;
            let one = rint(1);
            let (region, dir) = if alpha >= one {
                (Region::Valid, ClaimDir::GreaterEq)
            } else if alpha > Rational::new(1.into(), 2.into()) {
                (Region::Reversed, ClaimDir::LessEq)
            } else {
                (Region::OutsideClaims, ClaimDir::GreaterEq)
            };
            let e = &(&alpha * rint(4)) - rint(1);
            let cubes = |m: u32| {
                let t = u64::from(m) * u64::from(m + 1) / 2;
                Rational::new((t * t).into(), 1.into())
            };
            let num_n = pow_scalar(&Scalar::exact(cubes(n)), &alpha)?;
            let num_n1 = pow_scalar(&Scalar::exact(cubes(n + 1)), &alpha)?;
            let den_n = nat_sum(n, &e)?;
            let den_n1 = &den_n + &powi(n + 1, &e)?;
            let lhs = &num_n / &den_n;
            let rhs = &num_n1 / &den_n1;
            let verdict = compare(&(&num_n * &den_n1), &(&num_n1 * &den_n), policy);
            let note = "direction note: the claim is the stepwise inequality U_n >= U_{n+1} \
                        for alpha >= 1 and the reverse for 1/2 < alpha < 1; at alpha = 1 the \
                        two sides agree identically"
                .to_string();
            Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, Some(note), bits))
        }
        InequalityId::Pn3Ext => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let three = rint(3);
            let lhs = p_n(n, &three)?;
            let (rhs, dir) = if r == three {
                (lhs.clone(), ClaimDir::GreaterEq)
            } else if r > three {
                (p_n(n, &r)?, ClaimDir::GreaterEq)
            } else {
                (p_n(n, &r)?, ClaimDir::LessEq)
            };
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, Region::Valid, Some(dir), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::AlzerRw => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region =
                if r.is_positive() { Region::Valid } else { Region::OutsideClaims };
            let lhs = nat_sum(n, &r)?;
            match bound_alzer_rw(n, &r)? {
                Some(rhs) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    Ok(single(
                        id,
                        params,
                        region,
                        Some(ClaimDir::GreaterEq),
                        &lhs,
                        &rhs,
                        verdict,
                        None,
                        bits,
                    ))
                }
                None => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    Some(&lhs),
                    ClaimStatus::NoClaim,
                    "bound undefined at r = -1: the denominator vanishes".into(),
                    bits,
                )),
            }
        }
        InequalityId::BenConvex => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let one = rint(1);
            let (region, dir) = if r >= one || !r.is_positive() {
                (Region::Valid, ClaimDir::GreaterEq)
            } else {
                (Region::Reversed, ClaimDir::LessEq)
            };
            let lhs = second_difference(&r, n)?;
            let rhs = Scalar::zero();
            let verdict = compare(&lhs, &rhs, policy);
            Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, None, bits))
        }
        InequalityId::BenThm10 => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let one = rint(1);
            let (region, dir) = if r >= one {
                (Region::Valid, ClaimDir::GreaterEq)
            } else if r > rint(-1) && !r.is_zero() {
                (Region::Reversed, ClaimDir::LessEq)
            } else {
                (Region::OutsideClaims, ClaimDir::GreaterEq)
            };
            let lhs = nat_sum(n, &r)?;
            match bound_ben_thm10(n, &r, policy)? {
                ThreePointBound::Value(rhs) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, None, bits))
                }
                ThreePointBound::VanishingDenominator => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    Some(&lhs),
                    ClaimStatus::NoClaim,
                    "bound undefined: the three-point denominator vanishes exactly (this \
                     happens at r = -1 and r = 0)"
                        .into(),
                    bits,
                )),
                ThreePointBound::UnresolvedDenominatorSign => {
                    let status = if region == Region::OutsideClaims {
                        ClaimStatus::NoClaim
                    } else {
                        ClaimStatus::Inconclusive
                    };
                    Ok(undefined_rhs(
                        id,
                        params,
                        region,
                        Some(&lhs),
                        status,
                        "the three-point denominator sign did not resolve within the \
                         precision budget"
                            .into(),
                        bits,
                    ))
                }
            }
        }
        InequalityId::BenCor1 => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let one = rint(1);
            let (region, dir) = if r >= one {
                (Region::Valid, ClaimDir::GreaterEq)
            } else if r > rint(-1) {
                (Region::Reversed, ClaimDir::LessEq)
            } else {
                (Region::OutsideClaims, ClaimDir::GreaterEq)
            };
            let lhs = nat_sum(n, &r)?;
            match bound_ben_cor1(n, &r)? {
                Some(rhs) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    Ok(single(id, params, region, Some(dir), &lhs, &rhs, verdict, None, bits))
                }
                None => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    Some(&lhs),
                    ClaimStatus::NoClaim,
                    "bound undefined at r = -1: the denominator vanishes".into(),
                    bits,
                )),
            }
        }
        InequalityId::DomS4 => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region = if r >= rint(1) { Region::Valid } else { Region::OutsideClaims };
            let lhs = bound_ls_high(n, &r)?;
            let rhs = bound_ben_cor1(n, &r)?;
            match (lhs, rhs) {
                (Some((lhs, used_limit)), Some(rhs)) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    let note = used_limit
                        .then(|| "r = 0: sharp bound evaluated as the limit form".to_string());
                    Ok(single(
                        id,
                        params,
                        region,
                        Some(ClaimDir::GreaterEq),
                        &lhs,
                        &rhs,
                        verdict,
                        note,
                        bits,
                    ))
                }
                _ => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    None,
                    ClaimStatus::NoClaim,
                    "one of the compared bounds is undefined at r = -1".into(),
                    bits,
                )),
            }
        }
        InequalityId::DomSmallR => {
            let n = need_n(params, id)?;
            let r = need_rat(&params.r, id, "r")?;
            let region = if r.is_positive() && r <= rint(1) {
                Region::Valid
            } else {
                Region::OutsideClaims
            };
            let lhs = bound_ls_low(n, &r)?;
            let rhs = bound_alzer_rw(n, &r)?;
            match (lhs, rhs) {
                (Some(lhs), Some(rhs)) => {
                    let verdict = compare(&lhs, &rhs, policy);
                    Ok(single(
                        id,
                        params,
                        region,
                        Some(ClaimDir::GreaterEq),
                        &lhs,
                        &rhs,
                        verdict,
                        None,
                        bits,
                    ))
                }
                _ => Ok(undefined_rhs(
                    id,
                    params,
                    region,
                    None,
                    ClaimStatus::NoClaim,
                    "one of the compared bounds is undefined at r = -1".into(),
                    bits,
                )),
            }
        }
        InequalityId::Hadamard => {
            let s = need_rat(&params.s, id, "s")?;
            let a = need_rat(&params.a, id, "a")?;
            let b = need_rat(&params.b, id, "b")?;
            hadamard_power(&s, &a, &b, policy)
        }
    }
}

/// Tallies of a [`sweep`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub total: usize,
    pub confirmed: usize,
    pub contradicted: usize,
    pub inconclusive: usize,
    pub no_claim: usize,
}

/// One registry claim evaluated over a parameter grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub id: InequalityId,
    pub summary: SweepSummary,
    pub results: Vec<CheckResult>,
}

/// Evaluate `id` at every point of `cases` (parallel by default).
pub fn sweep(
    id: InequalityId,
    cases: &[CaseParams],
    policy: &PrecisionPolicy,
) -> Result<SweepReport, InequalityError> {
    sweep_with_mode(id, cases, policy, ExecMode::default())
}

/// [`sweep`] with an explicit execution mode.
pub fn sweep_with_mode(
    id: InequalityId,
    cases: &[CaseParams],
    policy: &PrecisionPolicy,
    mode: ExecMode,
) -> Result<SweepReport, InequalityError> {
    let pol = *policy;
    let results = exec::map(mode, cases.to_vec(), move |case| evaluate_case(id, &case, &pol))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut summary = SweepSummary { total: results.len(), ..Default::default() };
    for res in &results {
        match res.claim_status {
            ClaimStatus::Confirmed => summary.confirmed += 1,
            ClaimStatus::Contradicted => summary.contradicted += 1,
            ClaimStatus::Inconclusive => summary.inconclusive += 1,
            ClaimStatus::NoClaim => summary.no_claim += 1,
        }
    }
    Ok(SweepReport { id, summary, results })
}

/// Certified three-term bracket for the power integrand `u^s` on `[a, b]`:
/// midpoint value vs. integral mean vs. endpoint average. The integrand is
/// convex for `s >= 1` or `s <= 0` (bracket as stated) and concave for
/// `0 <= s <= 1` (bracket reversed). `a = 0` is accepted only for `s >= 1`,
/// where the integrand extends continuously by `0^s = 0`.
pub fn hadamard_power(
    s: &Rational,
    a: &Rational,
    b: &Rational,
    policy: &PrecisionPolicy,
) -> Result<CheckResult, InequalityError> {
    let id = InequalityId::Hadamard;
    let one = rint(1);
    if a.is_negative() {
        return Err(InequalityError::InvalidParameter {
            name: "a",
            reason: "interval endpoints must be nonnegative".into(),
        });
    }
    if b <= a {
        return Err(InequalityError::InvalidParameter {
            name: "b",
            reason: "interval must satisfy a < b".into(),
        });
    }
    if a.is_zero() && *s < one {
        return Err(InequalityError::InvalidParameter {
            name: "a",
            reason: "a = 0 requires s >= 1 (the integrand must extend continuously)".into(),
        });
    }
    let (region, dir) = if *s >= one || !s.is_positive() {
        (Region::Valid, ClaimDir::LessEq)
    } else {
        (Region::Reversed, ClaimDir::GreaterEq)
    };
    let h = |u: &Rational| -> Result<Scalar, InequalityError> {
        if u.is_zero() {
            Ok(Scalar::zero())
        } else {
            Ok(pow_scalar(&Scalar::exact(u.clone()), s)?)
        }
    };
    let width = b - a;
    let midpoint = (a + b) / rint(2);
    let mid_value = h(&midpoint)?;
    let s_plus_1 = s + &one;
    let (integral_mean, log_form) = if s_plus_1.is_zero() {
        let log = ln_rational(&(b / a))?;
        (&log / &Scalar::exact(width.clone()), true)
    } else {
        let antiderivative = |u: &Rational| -> Result<Scalar, InequalityError> {
            if u.is_zero() {
                Ok(Scalar::zero())
            } else {
                Ok(pow_scalar(&Scalar::exact(u.clone()), &s_plus_1)?)
            }
        };
        let num = &antiderivative(b)? - &antiderivative(a)?;
        let den = Scalar::exact(&s_plus_1 * &width);
        (&num / &den, false)
    };
    let endpoint_avg = &(&h(a)? + &h(b)?) / &Scalar::from_int(2);
    let parts = vec![
        sub_check("midpoint value vs integral mean", dir, &mid_value, &integral_mean, policy),
        sub_check("integral mean vs endpoint average", dir, &integral_mean, &endpoint_avg, policy),
    ];
    let claim_status = combine_statuses(&parts);
    let outer = compare(&mid_value, &endpoint_avg, policy);
    let mut notes: Vec<String> = Vec::new();
    if log_form {
        notes.push("s = -1: integral mean evaluated in the logarithmic form".into());
    }
    if *s == one || s.is_zero() {
        notes.push("affine boundary: all three quantities agree identically".into());
    }
    Ok(CheckResult {
        id,
        params: CaseParams {
            s: Some(s.clone()),
            a: Some(a.clone()),
            b: Some(b.clone()),
            ..Default::default()
        },
        region,
        claimed_relation: Some(match dir {
            ClaimDir::LessEq => "lhs <= mid <= rhs".into(),
            _ => "lhs >= mid >= rhs".into(),
        }),
        lhs: Some(mid_value.repr(policy.start_bits)),
        rhs: Some(endpoint_avg.repr(policy.start_bits)),
        verdict: Some(outer),
        claim_status,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
        parts: Some(parts),
    })
}

/// Where a ratio-principle hypothesis first failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisFailure {
    /// `"initial ratio"` or `"difference ratio"`.
    pub stage: String,
    /// 1-based index of the failing comparison.
    pub index: u32,
}

/// Exact transfer check for two increasing sequences: if `B_1/B_2 <= C_1/C_2`
/// and consecutive difference ratios satisfy
/// `(B_{n+1}-B_n)/(B_{n+2}-B_{n+1}) <= (C_{n+1}-C_n)/(C_{n+2}-C_{n+1})`,
/// then `B_n/B_{n+1} <= C_n/C_{n+1}` for every `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioPrincipleReport {
    /// Number of terms supplied.
    pub length: u32,
    /// `B_1/B_2` vs `C_1/C_2`.
    pub initial_ratio: ComparisonVerdict,
    /// Difference-ratio comparisons for `n = 1 ..= length-2`.
    pub difference_ratios: Vec<ComparisonVerdict>,
    pub hypotheses_hold: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_failed_hypothesis: Option<HypothesisFailure>,
    /// Conclusion comparisons `B_n/B_{n+1}` vs `C_n/C_{n+1}` for
    /// `n = 1 ..= length-1`, reported whether or not the hypotheses hold.
    pub conclusions: Vec<ComparisonVerdict>,
    /// `Confirmed` when the hypotheses hold and every conclusion does;
    /// `NoClaim` when a hypothesis fails.
    pub status: ClaimStatus,
}

fn ordering_verdict(ord: std::cmp::Ordering) -> ComparisonVerdict {
    match ord {
        std::cmp::Ordering::Less => ComparisonVerdict::CertainlyLess,
        std::cmp::Ordering::Equal => ComparisonVerdict::ExactlyEqual,
        std::cmp::Ordering::Greater => ComparisonVerdict::CertainlyGreater,
    }
}

/// Run the ratio-principle transfer check on two exact sequences. Both must
/// be strictly increasing and positive with the same length `>= 3`; every
/// comparison is exact.
pub fn ratio_principle_check(
    b: &[Rational],
    c: &[Rational],
) -> Result<RatioPrincipleReport, InequalityError> {
    if b.len() != c.len() {
        return Err(InequalityError::InvalidParameter {
            name: "c",
            reason: format!("sequences differ in length ({} vs {})", b.len(), c.len()),
        });
    }
    if b.len() < 3 {
        return Err(InequalityError::InvalidParameter {
            name: "b",
            reason: "need at least 3 terms".into(),
        });
    }
    for (name, seq) in [("b", b), ("c", c)] {
        if seq[0] <= Rational::zero() {
            return Err(InequalityError::InvalidParameter {
                name,
                reason: "terms must be positive".into(),
            });
        }
        if seq.windows(2).any(|w| w[1] <= w[0]) {
            return Err(InequalityError::InvalidParameter {
                name,
                reason: "terms must be strictly increasing".into(),
            });
        }
    }
    // B_1/B_2 <= C_1/C_2, cross-multiplied over positive denominators.
    let initial_ratio = ordering_verdict((&b[0] * &c[1]).cmp(&(&c[0] * &b[1])));
    let mut first_failed_hypothesis = if initial_ratio.is_le() {
        None
    } else {
        Some(HypothesisFailure { stage: "initial ratio".into(), index: 1 })
    };
    let mut difference_ratios = Vec::with_capacity(b.len() - 2);
    for i in 0..b.len() - 2 {
        let db0 = &b[i + 1] - &b[i];
        let db1 = &b[i + 2] - &b[i + 1];
        let dc0 = &c[i + 1] - &c[i];
        let dc1 = &c[i + 2] - &c[i + 1];
        let verdict = ordering_verdict((&db0 * &dc1).cmp(&(&dc0 * &db1)));
        if !verdict.is_le() && first_failed_hypothesis.is_none() {
            first_failed_hypothesis =
                Some(HypothesisFailure { stage: "difference ratio".into(), index: (i + 1) as u32 });
        }
        difference_ratios.push(verdict);
    }
    let hypotheses_hold = first_failed_hypothesis.is_none();
    let conclusions: Vec<ComparisonVerdict> = (0..b.len() - 1)
        .map(|i| ordering_verdict((&b[i] * &c[i + 1]).cmp(&(&c[i] * &b[i + 1]))))
        .collect();
    let status = if !hypotheses_hold {
        ClaimStatus::NoClaim
    } else if conclusions.iter().all(|v| v.is_le()) {
        ClaimStatus::Confirmed
    } else {
        ClaimStatus::Contradicted
    };
    Ok(RatioPrincipleReport {
        length: b.len() as u32,
        initial_ratio,
        difference_ratios,
        hypotheses_hold,
        first_failed_hypothesis,
        conclusions,
        status,
    })
}
