//! `powmaj` — command-line front end for the certified power-sum /
//! majorization toolkit.
//!
//! Exit codes: `0` every claim confirmed / operation succeeded (finding a
//! counterexample counts as success), `1` a certified violation (a
//! contradicted claim, a majorization failure, or a certificate that fails
//! verification), `2` inconclusive at the precision ceiling, `3` usage
//! error (malformed rationals, missing files, unknown identifiers).
//!
//! Reports go to standard output in the selected `--format`; `--out FILE`
//! additionally writes the same report as JSON, whatever the stdout format.
//! JSON output is deterministic: identical invocations produce identical
//! bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use powmaj::certify::{
    counterexample_certificate, find_counterexamples, verify_certificate, CertifyError,
    CounterexampleCertificate, HingeWitnessRecord,
};
use powmaj::inequality::{
    evaluate_case, sweep, CaseParams, CheckResult, ClaimStatus, InequalityId, Region,
    SweepReport,
};
use powmaj::majorize::{
    build_theorem1_tuples, convex_witness, majorizes, power_majorizes, MajorizationVerdictRepr,
    MajorizeError, PowerMajorizationOverall, PowerMajorizationReport, WeightTuple,
};
use powmaj::powersum::{ratio_r, SequenceSpec};
use powmaj::scalar::{
    format_rational, parse_rational, PrecisionPolicy, Rational, Scalar, ScalarRepr,
};

const EXIT_CONFIRMED: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Optional environment default for the precision policy, overridden by
/// `--precision-bits` / `--max-bits`. Format: `START` or `START:MAX`.
const PRECISION_ENV: &str = "POWMAJ_PRECISION_BITS";

#[derive(Parser)]
#[command(
    name = "powmaj",
    version,
    about = "Certified power-sum inequalities, majorization tests, and counterexample certificates",
    after_help = "Exit codes: 0 confirmed/success, 1 certified violation, \
                  2 inconclusive at max precision, 3 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for the report on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Also write the report to this file, always as JSON
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Starting precision for certified comparisons, in bits
    #[arg(long, global = true, value_name = "BITS")]
    precision_bits: Option<u32>,

    /// Precision ceiling for adaptive refinement, in bits
    #[arg(long, global = true, value_name = "BITS")]
    max_bits: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the ratio sequence P_n(r) over the naturals
    Pn {
        /// Sequence cutoff (at least 1)
        #[arg(long)]
        n: u32,
        /// Exponent, as a rational like `3`, `-1/2`, or `0.25`
        #[arg(long)]
        r: String,
    },
    /// Evaluate the ratio R_n(r; a) for a sequence from a file
    Ratio {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: String,
        /// Sequence file (JSON: {"kind":"naturals"} or
        /// {"kind":"explicit","terms":["1","3/2",...]}); naturals if omitted
        #[arg(long, value_name = "FILE")]
        seq: Option<PathBuf>,
    },
    /// Certified majorization order test: does x ≤ y hold?
    Majorize {
        /// Left tuple file (JSON array of rational strings)
        #[arg(long, value_name = "FILE")]
        x: Option<PathBuf>,
        /// Right tuple file (JSON array of rational strings)
        #[arg(long, value_name = "FILE")]
        y: Option<PathBuf>,
        /// Build both tuples from the power-weight construction at this cutoff
        #[arg(long)]
        n: Option<u32>,
        /// Exponent for the power-weight construction
        #[arg(long)]
        r: Option<String>,
    },
    /// Power-sum direction test across an exponent grid
    PowerMajorize {
        #[arg(long, value_name = "FILE")]
        x: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        y: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<String>,
        /// Exponent grid `LO:HI:STEP` or a single value; default is
        /// -10..10 in steps of 1/4 without {0, 1}
        #[arg(long, value_name = "GRID")]
        p_grid: Option<String>,
    },
    /// Evaluate one registered claim at one parameter point
    Check {
        /// Claim identifier, e.g. LS_HIGH (see the registry)
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<String>,
        /// Second exponent (monotonicity claims)
        #[arg(long)]
        r2: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        /// Power for the interval mean bracket
        #[arg(long)]
        s: Option<String>,
        /// Interval left endpoint
        #[arg(long)]
        a: Option<String>,
        /// Interval right endpoint
        #[arg(long)]
        b: Option<String>,
    },
    /// Sweep one registered claim across parameter grids
    Sweep {
        #[arg(long)]
        id: String,
        /// Grid `LO:HI:STEP` (or single value) for the claim's swept
        /// parameter: alpha for the step families and the product claim,
        /// s for the interval bracket, r otherwise
        #[arg(long, value_name = "GRID")]
        grid: String,
        /// Integer grid `LO:HI[:STEP]` of cutoffs
        #[arg(long, value_name = "GRID")]
        n_grid: Option<String>,
        /// Single cutoff (alternative to --n-grid)
        #[arg(long)]
        n: Option<u32>,
        /// Fixed second exponent (monotonicity claims)
        #[arg(long)]
        r2: Option<String>,
        /// Fixed beta (product claim)
        #[arg(long)]
        beta: Option<String>,
        /// Fixed interval left endpoint (interval bracket)
        #[arg(long)]
        a: Option<String>,
        /// Fixed interval right endpoint (interval bracket)
        #[arg(long)]
        b: Option<String>,
    },
    /// Search for a counterexample certificate and emit it
    Counterexample {
        /// Cutoff, or the low end of a range when --n-hi is given
        #[arg(long)]
        n: u32,
        /// High end of an inclusive cutoff range
        #[arg(long)]
        n_hi: Option<u32>,
        /// Construction exponent
        #[arg(long)]
        r: String,
        /// Power-sum evidence grid `LO:HI:STEP`; default as in power-majorize
        #[arg(long, value_name = "GRID")]
        p_grid: Option<String>,
    },
    /// Re-verify a certificate file (digest + full replay)
    VerifyCert {
        /// Certificate JSON produced by `counterexample`
        cert: PathBuf,
    },
}

struct CliError {
    message: String,
    code: u8,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { message: message.into(), code: EXIT_USAGE }
}

impl From<MajorizeError> for CliError {
    fn from(e: MajorizeError) -> Self {
        let code = if matches!(e, MajorizeError::Inconclusive { .. }) {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_USAGE
        };
        CliError { message: e.to_string(), code }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Majorize(inner) => inner.into(),
            other => usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_CONFIRMED,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let policy = resolve_policy(cli)?;
    match &cli.command {
        Command::Pn { n, r } => {
            let r = parse_rat(r, "--r")?;
            run_ratio(cli, &policy, SequenceSpec::Naturals, *n, &r, "pn")
        }
        Command::Ratio { n, r, seq } => {
            let r = parse_rat(r, "--r")?;
            let spec = match seq {
                None => SequenceSpec::Naturals,
                Some(path) => read_json(path)?,
            };
            run_ratio(cli, &policy, spec, *n, &r, "ratio")
        }
        Command::Majorize { x, y, n, r } => {
            let (xt, yt, source) = resolve_tuples(x, y, n, r)?;
            run_majorize(cli, &policy, &xt, &yt, source)
        }
        Command::PowerMajorize { x, y, n, r, p_grid } => {
            let (xt, yt, source) = resolve_tuples(x, y, n, r)?;
            let grid = match p_grid {
                Some(spec) => parse_grid(spec, "--p-grid")?,
                None => powmaj::majorize::default_power_grid(),
            };
            run_power_majorize(cli, &policy, &xt, &yt, &grid, source)
        }
        Command::Check { id, n, r, r2, alpha, beta, s, a, b } => {
            let id = parse_id(id)?;
            let params = CaseParams {
                n: *n,
                r: parse_opt_rat(r, "--r")?,
                r2: parse_opt_rat(r2, "--r2")?,
                alpha: parse_opt_rat(alpha, "--alpha")?,
                beta: parse_opt_rat(beta, "--beta")?,
                s: parse_opt_rat(s, "--s")?,
                a: parse_opt_rat(a, "--a")?,
                b: parse_opt_rat(b, "--b")?,
            };
            run_check(cli, &policy, id, &params)
        }
        Command::Sweep { id, grid, n_grid, n, r2, beta, a, b } => {
            let id = parse_id(id)?;
            let grid = parse_grid(grid, "--grid")?;
            let ns = resolve_cutoffs(n_grid, n)?;
            let cases = assemble_sweep_cases(
                id,
                &grid,
                &ns,
                parse_opt_rat(r2, "--r2")?,
                parse_opt_rat(beta, "--beta")?,
                parse_opt_rat(a, "--a")?,
                parse_opt_rat(b, "--b")?,
            )?;
            run_sweep(cli, &policy, id, &cases)
        }
        Command::Counterexample { n, n_hi, r, p_grid } => {
            let r = parse_rat(r, "--r")?;
            let grid = match p_grid {
                Some(spec) => parse_grid(spec, "--p-grid")?,
                None => Vec::new(), // the library substitutes its default
            };
            run_counterexample(cli, &policy, *n, *n_hi, &r, &grid)
        }
        Command::VerifyCert { cert } => run_verify(cli, cert),
    }
}

// ---------------------------------------------------------------------------
// Argument plumbing

fn resolve_policy(cli: &Cli) -> Result<PrecisionPolicy, CliError> {
    let mut policy = PrecisionPolicy::default();
    if let Ok(spec) = std::env::var(PRECISION_ENV) {
        let mut parts = spec.splitn(2, ':');
        let start = parts.next().unwrap_or_default();
        policy.start_bits = start
            .parse()
            .map_err(|_| usage(format!("{PRECISION_ENV} must be BITS or BITS:MAX, got '{spec}'")))?;
        if let Some(max) = parts.next() {
            policy.max_bits = max.parse().map_err(|_| {
                usage(format!("{PRECISION_ENV} must be BITS or BITS:MAX, got '{spec}'"))
            })?;
        } else if policy.max_bits < policy.start_bits {
            policy.max_bits = policy.start_bits;
        }
    }
    if let Some(bits) = cli.precision_bits {
        policy.start_bits = bits;
        if cli.max_bits.is_none() && policy.max_bits < bits {
            policy.max_bits = bits;
        }
    }
    if let Some(bits) = cli.max_bits {
        policy.max_bits = bits;
    }
    if policy.start_bits == 0 || policy.start_bits > policy.max_bits {
        return Err(usage(format!(
            "precision must satisfy 0 < start <= max, got {}..{}",
            policy.start_bits, policy.max_bits
        )));
    }
    Ok(policy)
}

fn parse_rat(text: &str, flag: &str) -> Result<Rational, CliError> {
    parse_rational(text.trim()).map_err(|e| usage(format!("{flag}: {e}")))
}

fn parse_opt_rat(text: &Option<String>, flag: &str) -> Result<Option<Rational>, CliError> {
    text.as_deref().map(|t| parse_rat(t, flag)).transpose()
}

fn parse_id(text: &str) -> Result<InequalityId, CliError> {
    InequalityId::from_str(text).map_err(|e| usage(e.to_string()))
}

/// `VALUE` or `LO:HI:STEP` over exact rationals, endpoints inclusive.
fn parse_grid(spec: &str, flag: &str) -> Result<Vec<Rational>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse_rat(single, flag)?]),
        [lo, hi, step] => {
            let lo = parse_rat(lo, flag)?;
            let hi = parse_rat(hi, flag)?;
            let step = parse_rat(step, flag)?;
            if step <= Rational::from_integer(0.into()) {
                return Err(usage(format!("{flag}: STEP must be positive")));
            }
            if hi < lo {
                return Err(usage(format!("{flag}: HI must be at least LO")));
            }
            let mut out = Vec::new();
            let mut v = lo;
            while v <= hi {
                out.push(v.clone());
                v += step.clone();
            }
            Ok(out)
        }
        _ => Err(usage(format!("{flag}: expected VALUE or LO:HI:STEP, got '{spec}'"))),
    }
}

/// Integer grid `LO:HI[:STEP]` or a single value.
fn parse_n_grid(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = |_| usage(format!("--n-grid: expected integers LO:HI[:STEP], got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    let ints: Vec<u32> =
        parts.iter().map(|p| p.trim().parse::<u32>().map_err(bad)).collect::<Result<_, _>>()?;
    match ints.as_slice() {
        [single] => Ok(vec![*single]),
        [lo, hi] => Ok((*lo..=*hi).collect()),
        [lo, hi, step] if *step > 0 => Ok((*lo..=*hi).step_by(*step as usize).collect()),
        _ => Err(usage(format!("--n-grid: expected integers LO:HI[:STEP], got '{spec}'"))),
    }
}

fn resolve_cutoffs(n_grid: &Option<String>, n: &Option<u32>) -> Result<Vec<u32>, CliError> {
    match (n_grid, n) {
        (Some(_), Some(_)) => Err(usage("give either --n or --n-grid, not both")),
        (Some(spec), None) => parse_n_grid(spec),
        (None, Some(n)) => Ok(vec![*n]),
        (None, None) => Ok(Vec::new()),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_tuple(path: &Path) -> Result<WeightTuple, CliError> {
    let raw: Vec<String> = read_json(path)?;
    let entries = raw
        .iter()
        .map(|s| parse_rational(s).map(Scalar::exact))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    WeightTuple::new(entries).map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[allow(clippy::type_complexity)]
fn resolve_tuples(
    x: &Option<PathBuf>,
    y: &Option<PathBuf>,
    n: &Option<u32>,
    r: &Option<String>,
) -> Result<(WeightTuple, WeightTuple, String), CliError> {
    match (x, y, n, r) {
        (Some(xp), Some(yp), None, None) => {
            let source = format!("{} vs {}", xp.display(), yp.display());
            Ok((load_tuple(xp)?, load_tuple(yp)?, source))
        }
        (None, None, Some(n), Some(r)) => {
            let r = parse_rat(r, "--r")?;
            let (xt, yt) = build_theorem1_tuples(&SequenceSpec::Naturals, &r, *n)?;
            let source =
                format!("power-weight construction at n = {n}, r = {}", format_rational(&r));
            Ok((xt, yt, source))
        }
        _ => Err(usage(
            "give both --x and --y (tuple files), or both --n and --r (the power-weight \
             construction), but not a mixture",
        )),
    }
}

// ---------------------------------------------------------------------------
// Report emission

fn to_pretty_json<T: Serialize>(report: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(report)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| usage(format!("serialization failed: {e}")))
}

/// Prints the report in the selected format and mirrors it to `--out` as
/// JSON. `csv` is None for subcommands without a CSV schema.
fn emit<T: Serialize>(
    cli: &Cli,
    report: &T,
    human: String,
    csv: Option<String>,
) -> Result<(), CliError> {
    let stdout_text = match cli.format {
        Format::Json => to_pretty_json(report)?,
        Format::Human => {
            let mut h = human;
            if !h.ends_with('\n') {
                h.push('\n');
            }
            h
        }
        Format::Csv => csv.ok_or_else(|| {
            usage("--format csv is only available for `check` and `sweep`")
        })?,
    };
    print!("{stdout_text}");
    if let Some(path) = &cli.out {
        fs::write(path, to_pretty_json(report)?)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn csv_scalar(value: &Option<ScalarRepr>) -> String {
    match value {
        None => String::new(),
        Some(ScalarRepr::Exact(s)) => s.clone(),
        Some(ScalarRepr::Enclosure { lo, hi, .. }) => format!("{lo}..{hi}"),
    }
}

fn csv_rat(value: &Option<Rational>) -> String {
    value.as_ref().map(format_rational).unwrap_or_default()
}

const CSV_HEADER: &str = "id,n,r,r2,alpha,beta,s,a,b,lhs,rhs,verdict,claim_status";

fn csv_row(res: &CheckResult) -> String {
    let p = &res.params;
    let cells = [
        res.id.to_string(),
        p.n.map(|n| n.to_string()).unwrap_or_default(),
        csv_rat(&p.r),
        csv_rat(&p.r2),
        csv_rat(&p.alpha),
        csv_rat(&p.beta),
        csv_rat(&p.s),
        csv_rat(&p.a),
        csv_rat(&p.b),
        csv_scalar(&res.lhs),
        csv_scalar(&res.rhs),
        res.verdict.as_ref().map(|v| v.to_string()).unwrap_or_default(),
        res.claim_status.to_string(),
    ];
    cells.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",")
}

fn region_name(region: Region) -> &'static str {
    match region {
        Region::Valid => "valid",
        Region::Reversed => "reversed",
        Region::OutsideClaims => "outside claims",
    }
}

fn params_summary(p: &CaseParams) -> String {
    let mut out = String::new();
    let mut push = |label: &str, value: String| {
        if !out.is_empty() {
            out.push_str(", ");
        }
        let _ = write!(out, "{label} = {value}");
    };
    if let Some(n) = p.n {
        push("n", n.to_string());
    }
    for (label, value) in [
        ("r", &p.r),
        ("r2", &p.r2),
        ("alpha", &p.alpha),
        ("beta", &p.beta),
        ("s", &p.s),
        ("a", &p.a),
        ("b", &p.b),
    ] {
        if let Some(v) = value {
            push(label, format_rational(v));
        }
    }
    out
}

fn human_check(res: &CheckResult) -> String {
    let mut line = format!(
        "{} at {} [{} region]: ",
        res.id,
        params_summary(&res.params),
        region_name(res.region)
    );
    match (&res.lhs, &res.rhs) {
        (Some(lhs), Some(rhs)) => {
            let _ = write!(line, "lhs = {lhs}, rhs = {rhs}");
        }
        (Some(lhs), None) => {
            let _ = write!(line, "lhs = {lhs}, rhs undefined");
        }
        _ => line.push_str("no comparison"),
    }
    if let Some(v) = &res.verdict {
        let _ = write!(line, " — {v}");
    }
    let _ = write!(line, " — {}", res.claim_status);
    if let Some(parts) = &res.parts {
        for part in parts {
            let _ = write!(
                line,
                "\n  {}: {} vs {} — {} — {}",
                part.label, part.lhs, part.rhs, part.verdict, part.status
            );
        }
    }
    if let Some(note) = &res.note {
        let _ = write!(line, "\n  note: {note}");
    }
    line
}

// ---------------------------------------------------------------------------
// Subcommand bodies

#[derive(Serialize)]
struct ValueReport {
    op: &'static str,
    sequence: SequenceSpec,
    n: u32,
    r: String,
    repr_bits: u32,
    value: ScalarRepr,
    certified_digits: String,
}

fn run_ratio(
    cli: &Cli,
    policy: &PrecisionPolicy,
    spec: SequenceSpec,
    n: u32,
    r: &Rational,
    op: &'static str,
) -> Result<u8, CliError> {
    let value = ratio_r(&spec, n, r).map_err(|e| usage(e.to_string()))?;
    let repr = value.repr(policy.start_bits);
    let report = ValueReport {
        op,
        sequence: spec,
        n,
        r: format_rational(r),
        repr_bits: policy.start_bits,
        value: repr.clone(),
        certified_digits: repr.certified_digits(),
    };
    let human = format!("P_{n}({}) = {repr}", format_rational(r));
    emit(cli, &report, human, None)?;
    Ok(EXIT_CONFIRMED)
}

#[derive(Serialize)]
struct MajorizeReport {
    source: String,
    repr_bits: u32,
    verdict: MajorizationVerdictRepr,
    #[serde(skip_serializing_if = "Option::is_none")]
    hinge_witness: Option<HingeWitnessRecord>,
}

fn run_majorize(
    cli: &Cli,
    policy: &PrecisionPolicy,
    x: &WeightTuple,
    y: &WeightTuple,
    source: String,
) -> Result<u8, CliError> {
    let verdict = majorizes(x, y, policy)?;
    let witness = convex_witness(x, y, &verdict, policy)?.map(|w| HingeWitnessRecord {
        threshold: w.threshold.repr(policy.start_bits),
        lhs_total: w.lhs_total.repr(policy.start_bits),
        rhs_total: w.rhs_total.repr(policy.start_bits),
        separation: w.separation,
    });
    let repr = verdict.repr(policy.start_bits);
    let (human, code) = match &repr {
        MajorizationVerdictRepr::Holds => {
            ("x <= y in the majorization order: holds".to_string(), EXIT_CONFIRMED)
        }
        MajorizationVerdictRepr::FailsAtPrefix { prefix_index, lhs_prefix, rhs_prefix } => {
            let mut h = format!(
                "majorization fails at sorted prefix {prefix_index}: {lhs_prefix} > {rhs_prefix}"
            );
            if let Some(w) = &witness {
                let _ = write!(
                    h,
                    "\nhinge witness at t = {}: {} vs {} ({})",
                    w.threshold, w.lhs_total, w.rhs_total, w.separation
                );
            }
            (h, EXIT_VIOLATION)
        }
        MajorizationVerdictRepr::TotalsDiffer { total_gap } => (
            format!("tuples are not comparable: totals differ by {total_gap}"),
            EXIT_VIOLATION,
        ),
    };
    let report =
        MajorizeReport { source, repr_bits: policy.start_bits, verdict: repr, hinge_witness: witness };
    emit(cli, &report, human, None)?;
    Ok(code)
}

fn run_power_majorize(
    cli: &Cli,
    policy: &PrecisionPolicy,
    x: &WeightTuple,
    y: &WeightTuple,
    grid: &[Rational],
    source: String,
) -> Result<u8, CliError> {
    #[derive(Serialize)]
    struct Report {
        source: String,
        #[serde(flatten)]
        report: PowerMajorizationReport,
    }
    let report = power_majorizes(x, y, grid, policy)?;
    let (human, code) = match &report.overall {
        PowerMajorizationOverall::ConsistentWithPowerMajorization => (
            format!(
                "{} exponents checked: consistent with power majorization",
                report.verdicts.len()
            ),
            EXIT_CONFIRMED,
        ),
        PowerMajorizationOverall::ViolatedAt { p } => (
            format!("power majorization certifiably violated at p = {}", format_rational(p)),
            EXIT_VIOLATION,
        ),
        PowerMajorizationOverall::Inconclusive { p } => (
            format!(
                "comparison at p = {} unresolved at the precision ceiling",
                format_rational(p)
            ),
            EXIT_INCONCLUSIVE,
        ),
    };
    emit(cli, &Report { source, report }, human, None)?;
    Ok(code)
}

fn claim_exit(status: ClaimStatus) -> u8 {
    match status {
        ClaimStatus::Confirmed | ClaimStatus::NoClaim => EXIT_CONFIRMED,
        ClaimStatus::Contradicted => EXIT_VIOLATION,
        ClaimStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn run_check(
    cli: &Cli,
    policy: &PrecisionPolicy,
    id: InequalityId,
    params: &CaseParams,
) -> Result<u8, CliError> {
    let res = evaluate_case(id, params, policy).map_err(|e| usage(e.to_string()))?;
    let csv = format!("{CSV_HEADER}\n{}\n", csv_row(&res));
    let human = human_check(&res);
    emit(cli, &res, human, Some(csv))?;
    Ok(claim_exit(res.claim_status))
}

#[allow(clippy::too_many_arguments)]
fn assemble_sweep_cases(
    id: InequalityId,
    grid: &[Rational],
    ns: &[u32],
    r2: Option<Rational>,
    beta: Option<Rational>,
    a: Option<Rational>,
    b: Option<Rational>,
) -> Result<Vec<CaseParams>, CliError> {
    if id == InequalityId::Hadamard {
        let a = a.ok_or_else(|| usage("HADAMARD sweeps need fixed --a and --b"))?;
        let b = b.ok_or_else(|| usage("HADAMARD sweeps need fixed --a and --b"))?;
        if !ns.is_empty() {
            return Err(usage("HADAMARD does not take cutoffs; drop --n/--n-grid"));
        }
        return Ok(grid
            .iter()
            .map(|s| CaseParams::interval_power(s.clone(), a.clone(), b.clone()))
            .collect());
    }
    if ns.is_empty() {
        return Err(usage("this sweep needs --n or --n-grid"));
    }
    let mut cases = Vec::with_capacity(ns.len() * grid.len());
    for &n in ns {
        for v in grid {
            let params = match id {
                InequalityId::GaoMono => {
                    let r2 = r2
                        .clone()
                        .ok_or_else(|| usage("GAO_MONO sweeps need a fixed --r2"))?;
                    CaseParams::nr(n, v.clone()).with_r2(r2)
                }
                InequalityId::Thm2Step | InequalityId::Cor4Step => {
                    CaseParams::n_alpha(n, v.clone())
                }
                InequalityId::BenGen => {
                    let beta = beta
                        .clone()
                        .ok_or_else(|| usage("BEN_GEN sweeps need a fixed --beta"))?;
                    CaseParams::n_alpha_beta(n, v.clone(), beta)
                }
                _ => CaseParams::nr(n, v.clone()),
            };
            cases.push(params);
        }
    }
    Ok(cases)
}

fn run_sweep(
    cli: &Cli,
    policy: &PrecisionPolicy,
    id: InequalityId,
    cases: &[CaseParams],
) -> Result<u8, CliError> {
    let report: SweepReport = sweep(id, cases, policy).map_err(|e| usage(e.to_string()))?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for res in &report.results {
        csv.push_str(&csv_row(res));
        csv.push('\n');
    }
    let s = &report.summary;
    let human = format!(
        "{}: {} cases — {} confirmed, {} contradicted, {} inconclusive, {} without a claim",
        report.id, s.total, s.confirmed, s.contradicted, s.inconclusive, s.no_claim
    );
    emit(cli, &report, human, Some(csv))?;
    Ok(if s.contradicted > 0 {
        EXIT_VIOLATION
    } else if s.inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_CONFIRMED
    })
}

fn human_certificate(cert: &CounterexampleCertificate) -> String {
    let mut h = format!(
        "counterexample at n = {}, r = {}: ",
        cert.body.n,
        format_rational(&cert.body.r)
    );
    if let MajorizationVerdictRepr::FailsAtPrefix { prefix_index, lhs_prefix, rhs_prefix } =
        &cert.body.majorization_failure
    {
        let _ = write!(h, "majorization fails at prefix {prefix_index} ({lhs_prefix} > {rhs_prefix})");
    }
    let _ = write!(
        h,
        "; {} power directions consistent; digest {}",
        cert.body.power_majorization.verdicts.len(),
        cert.digest
    );
    h
}

fn run_counterexample(
    cli: &Cli,
    policy: &PrecisionPolicy,
    n: u32,
    n_hi: Option<u32>,
    r: &Rational,
    grid: &[Rational],
) -> Result<u8, CliError> {
    match n_hi {
        None => match counterexample_certificate(n, r, grid, policy) {
            Ok(cert) => {
                let human = human_certificate(&cert);
                emit(cli, &cert, human, None)?;
                Ok(EXIT_CONFIRMED)
            }
            Err(CertifyError::NotACounterexample { reason, decisive, .. }) => {
                eprintln!("no counterexample at n = {n}, r = {}: {reason}", format_rational(r));
                Ok(if decisive { EXIT_VIOLATION } else { EXIT_INCONCLUSIVE })
            }
            Err(e) => Err(e.into()),
        },
        Some(n_hi) => {
            if n_hi < n {
                return Err(usage("--n-hi must be at least --n"));
            }
            let search =
                find_counterexamples(n..=n_hi, std::slice::from_ref(r), grid, policy)?;
            let found = search.certificates.len();
            let mut human = format!(
                "searched n = {n}..{n_hi} at r = {}: {found} certificate(s), {} skipped",
                format_rational(r),
                search.skipped.len()
            );
            for cert in &search.certificates {
                let _ = write!(human, "\n  {}", human_certificate(cert));
            }
            for skip in &search.skipped {
                let _ = write!(
                    human,
                    "\n  n = {}: skipped ({}){}",
                    skip.n,
                    skip.reason,
                    if skip.decisive { "" } else { " [unresolved]" }
                );
            }
            emit(cli, &search, human, None)?;
            Ok(if found > 0 {
                EXIT_CONFIRMED
            } else if search.skipped.iter().all(|s| s.decisive) {
                EXIT_VIOLATION
            } else {
                EXIT_INCONCLUSIVE
            })
        }
    }
}

fn run_verify(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let cert: CounterexampleCertificate = read_json(path)?;
    let report = verify_certificate(&cert)?;
    let human = if report.valid {
        format!("digest ok; replay ok; certificate {} is valid", path.display())
    } else {
        format!(
            "certificate {} is NOT valid: digest {}, replay {}{}",
            path.display(),
            if report.digest_ok { "ok" } else { "MISMATCH" },
            if report.replay_ok { "ok" } else { "MISMATCH" },
            report
                .first_mismatch
                .as_deref()
                .map(|m| format!(" — first divergence at {m}"))
                .unwrap_or_default()
        )
    };
    emit(cli, &report, human, None)?;
    Ok(if report.valid { EXIT_CONFIRMED } else { EXIT_VIOLATION })
}
