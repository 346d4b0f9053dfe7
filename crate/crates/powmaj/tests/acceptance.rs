//! Acceptance checklist for the certified power-sum / majorization toolkit.
//!
//! Each criterion is one test that prints a single PASS/FAIL line (visible
//! with `--nocapture`) including its measured runtime, and asserts both the
//! mathematical outcome and the runtime budget. All assertions ride on
//! certified verdicts: exact rational arithmetic or adaptive interval
//! enclosures, never bare floating point.

use std::collections::HashMap;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use powmaj::certify::{
    counterexample_certificate, find_counterexamples, monotonicity_scan_with_mode, MonotoneRun,
    StepDirection,
};
use powmaj::exec::{self, ExecMode};
use powmaj::inequality::{evaluate_case, CaseParams, ClaimStatus, InequalityId};
use powmaj::majorize::{
    build_theorem1_tuples, convex_witness, majorizes, power_majorizes, MajorizationVerdict,
    MajorizationVerdictRepr, PowerMajorizationOverall, WeightTuple,
};
use powmaj::powersum::{p_n, SequenceSpec};
use powmaj::scalar::{compare, pow_scalar, ComparisonVerdict, PrecisionPolicy, Rational, Scalar};
use powmaj::verify_certificate;

fn rq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::default()
}

/// Runs one criterion, prints its pass/fail line, and enforces the runtime
/// budget.
fn run_criterion<F>(number: u32, label: &str, budget: Duration, body: F)
where
    F: FnOnce() -> String,
{
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    match &outcome {
        Ok(detail) => println!(
            "criterion {number:2} [{label}]: PASS in {elapsed:.2?} (budget {budget:?}) — {detail}"
        ),
        Err(_) => println!(
            "criterion {number:2} [{label}]: FAIL in {elapsed:.2?} (budget {budget:?})"
        ),
    }
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    assert!(
        elapsed <= budget,
        "criterion {number} blew its runtime budget: {elapsed:?} > {budget:?}"
    );
}

fn exact_str(repr: &powmaj::scalar::ScalarRepr) -> &str {
    match repr {
        powmaj::scalar::ScalarRepr::Exact(s) => s,
        other => panic!("expected an exact representation, got {other:?}"),
    }
}

/// Evaluates a batch of registry cases in parallel and asserts every one is
/// Confirmed; returns the case count.
fn confirm_all(cases: Vec<(InequalityId, CaseParams)>) -> usize {
    let pol = policy();
    let total = cases.len();
    let results = exec::map(ExecMode::Parallel, cases, move |(id, params)| {
        let res = evaluate_case(id, &params, &pol)
            .unwrap_or_else(|e| panic!("{id} failed on {params:?}: {e}"));
        (id, params, res.claim_status)
    });
    for (id, params, status) in results {
        assert_eq!(
            status,
            ClaimStatus::Confirmed,
            "{id} not confirmed at {params:?}"
        );
    }
    total
}

#[test]
fn criterion_01_six_entry_counterexample() {
    run_criterion(1, "six-entry counterexample", Duration::from_secs(1), || {
        let pol = policy();
        let x = WeightTuple::new(
            [1, 1, 1, 8, 8, 8].iter().map(|k| Scalar::exact(rq(*k, 27))).collect(),
        )
        .unwrap();
        let y = WeightTuple::new(
            [1, 1, 8, 8, 27, 27].iter().map(|k| Scalar::exact(rq(*k, 72))).collect(),
        )
        .unwrap();

        // Majorization fails at the third sorted prefix with exact values.
        let verdict = majorizes(&x, &y, &pol).unwrap();
        match verdict.repr(64) {
            MajorizationVerdictRepr::FailsAtPrefix { prefix_index, lhs_prefix, rhs_prefix } => {
                assert_eq!(prefix_index, 3);
                assert_eq!(exact_str(&lhs_prefix), "8/9");
                assert_eq!(exact_str(&rhs_prefix), "31/36");
            }
            other => panic!("expected a prefix failure, got {other:?}"),
        }

        // The hinge witness at t = 1/9 separates 5/9 > 19/36, exactly.
        let witness = convex_witness(&x, &y, &verdict, &pol).unwrap().unwrap();
        assert_eq!(exact_str(&witness.threshold.repr(64)), "1/9");
        assert_eq!(exact_str(&witness.lhs_total.repr(64)), "5/9");
        assert_eq!(exact_str(&witness.rhs_total.repr(64)), "19/36");
        assert_eq!(witness.separation, ComparisonVerdict::CertainlyGreater);

        // Every power-sum direction on p in {-10, -9.75, ..., 10} holds.
        let grid: Vec<Rational> = (-40..=40).map(|k| rq(k, 4)).collect();
        let report = power_majorizes(&x, &y, &grid, &pol).unwrap();
        assert_eq!(report.verdicts.len(), 81);
        assert!(report.verdicts.iter().all(|v| v.satisfied));
        assert_eq!(report.overall, PowerMajorizationOverall::ConsistentWithPowerMajorization);

        "prefix 3 fails 8/9 > 31/36; hinge at 1/9 gives 5/9 > 19/36; 81/81 power directions hold"
            .to_string()
    });
}

#[test]
fn criterion_02_ratio_sequence_monotonicity() {
    run_criterion(2, "ratio-sequence monotonicity", Duration::from_secs(60), || {
        let pol = policy();
        // Adjacent decrease along r = -10.0, -9.9, ..., 1.0 for n = 1..50.
        let grid: Vec<Rational> = (-100..=10).map(|k| rq(k, 10)).collect();
        let ns: Vec<u32> = (1..=50).collect();
        let grid_ref = &grid;
        let scans = exec::map(ExecMode::Parallel, ns, move |n| {
            let scan =
                monotonicity_scan_with_mode(n, grid_ref, &pol, ExecMode::Sequential).unwrap();
            (n, scan)
        });
        let mut steps_total = 0usize;
        for (n, scan) in scans {
            assert!(
                scan.steps.iter().all(|s| *s == ComparisonVerdict::CertainlyGreater),
                "non-decreasing step in the scan at n = {n}"
            );
            assert_eq!(
                scan.runs,
                vec![MonotoneRun { direction: StepDirection::Decreasing, start: 0, steps: 110 }]
            );
            steps_total += scan.steps.len();
        }

        // 20 sampled cross pairs r <= 1 < r' <= 10 per n.
        let mut rng = ChaCha8Rng::seed_from_u64(0xC2);
        let mut pairs: Vec<(u32, Rational, Rational)> = Vec::new();
        for n in 1..=50u32 {
            for _ in 0..20 {
                let r = rq(rng.gen_range(-100..=10), 10);
                let r_hi = rq(rng.gen_range(11..=100), 10);
                pairs.push((n, r, r_hi));
            }
        }
        let pair_count = pairs.len();
        let ok = exec::map(ExecMode::Parallel, pairs, move |(n, r, r_hi)| {
            let lo_side = p_n(n, &r).unwrap();
            let hi_side = p_n(n, &r_hi).unwrap();
            (n, r, r_hi, compare(&lo_side, &hi_side, &pol))
        });
        for (n, r, r_hi, verdict) in ok {
            assert!(
                verdict.is_ge(),
                "P_{n}({r}) < P_{n}({r_hi}) contradicts the cross-unit ordering"
            );
        }
        format!(
            "50 scans * 110 adjacent steps all certified decreasing ({steps_total} steps); \
             {pair_count} sampled cross pairs ordered"
        )
    });
}

#[test]
fn criterion_03_sandwich_and_negative_band() {
    run_criterion(3, "strict sandwich and negative band", Duration::from_secs(60), || {
        let pol = policy();
        let mut cases: Vec<(InequalityId, CaseParams)> = Vec::new();
        for n in 1..=100u32 {
            for r in [rq(1, 10), rq(1, 2), ri(1), ri(2), ri(5)] {
                cases.push((InequalityId::AlzerLow, CaseParams::nr(n, r.clone())));
                cases.push((InequalityId::MartinsUp, CaseParams::nr(n, r)));
            }
        }
        let strict = cases.clone();
        let strict_count = strict.len();
        let results = exec::map(ExecMode::Parallel, strict, move |(id, params)| {
            let res = evaluate_case(id, &params, &pol).unwrap();
            (id, params, res)
        });
        for (id, params, res) in results {
            assert_eq!(res.claim_status, ClaimStatus::Confirmed, "{id} at {params:?}");
            assert_eq!(
                res.verdict,
                Some(ComparisonVerdict::CertainlyLess),
                "{id} not strict at {params:?}"
            );
        }

        let mut band: Vec<(InequalityId, CaseParams)> = Vec::new();
        for n in 1..=100u32 {
            for r in [rq(-1, 2), ri(-1), ri(-5)] {
                band.push((InequalityId::AlzerNeg, CaseParams::nr(n, r)));
            }
        }
        let band_count = confirm_all(band);
        format!(
            "{strict_count} strict two-sided cases certified; {band_count} negative-exponent \
             band cases confirmed"
        )
    });
}

#[test]
fn criterion_04_partial_sum_bounds() {
    run_criterion(4, "partial-sum lower bounds", Duration::from_secs(30), || {
        let pol = policy();
        let mut cases: Vec<(InequalityId, CaseParams)> = Vec::new();
        for n in 1..=100u32 {
            for r in [ri(0), rq(1, 4), rq(1, 2), rq(3, 4), ri(1)] {
                cases.push((InequalityId::LsLow, CaseParams::nr(n, r)));
            }
            for r in [ri(1), ri(2), ri(3), ri(5)] {
                cases.push((InequalityId::LsHigh, CaseParams::nr(n, r)));
            }
            for r in [rq(-1, 2), rq(1, 4), rq(1, 2), rq(3, 4)] {
                cases.push((InequalityId::LsHigh, CaseParams::nr(n, r)));
            }
        }
        let count = confirm_all(cases);

        // At r = 0 the sharp bound degenerates to the logarithmic limit
        // 1/ln(1 + 1/n); the result must carry a note saying so and still
        // be confirmed.
        let limit_ns: Vec<u32> = (1..=100).collect();
        let limit_results = exec::map(ExecMode::Parallel, limit_ns, move |n| {
            evaluate_case(InequalityId::LsHigh, &CaseParams::nr(n, ri(0)), &pol).unwrap()
        });
        for res in &limit_results {
            assert_eq!(res.claim_status, ClaimStatus::Confirmed);
            assert!(res.note.as_deref().is_some_and(|s| s.contains("limit")));
        }
        format!("{} bound cases confirmed, zero contradictions", count + limit_results.len())
    });
}

#[test]
fn criterion_05_majorization_family_regions() {
    run_criterion(5, "weight-tuple majorization regions", Duration::from_secs(30), || {
        let pol = policy();
        let mut jobs: Vec<(u32, Rational, bool)> = Vec::new();
        for r in [rq(1, 4), rq(1, 2), rq(3, 4), ri(1)] {
            for n in 2..=12u32 {
                jobs.push((n, r.clone(), true));
            }
        }
        for r in [ri(2), ri(3), ri(5)] {
            for n in 2..=10u32 {
                jobs.push((n, r.clone(), false));
            }
        }
        for r in [rq(-1, 2), ri(-1), ri(-2)] {
            for n in 2..=12u32 {
                jobs.push((n, r.clone(), true));
            }
        }
        let total = jobs.len();
        let outcomes = exec::map(ExecMode::Parallel, jobs, move |(n, r, expect_holds)| {
            let (x, y) = build_theorem1_tuples(&SequenceSpec::Naturals, &r, n).unwrap();
            let verdict = majorizes(&x, &y, &pol).unwrap();
            let exact_entries = r.is_integer()
                || x.entries_repr(64)
                    .iter()
                    .all(|e| matches!(e, powmaj::scalar::ScalarRepr::Exact(_)));
            (n, r, expect_holds, verdict, exact_entries)
        });
        let mut holds = 0usize;
        let mut fails = 0usize;
        for (n, r, expect_holds, verdict, exact_entries) in outcomes {
            if expect_holds {
                assert!(
                    matches!(verdict, MajorizationVerdict::Holds),
                    "expected the order to hold at n = {n}, r = {r}"
                );
                holds += 1;
            } else {
                assert!(
                    matches!(verdict, MajorizationVerdict::FailsAtPrefix { .. }),
                    "expected a prefix failure at n = {n}, r = {r}"
                );
                fails += 1;
            }
            if r == ri(1) {
                assert!(exact_entries, "entries at the unit exponent must be exact rationals");
            }
        }
        format!(
            "{total} region checks: {holds} certified Holds (fractional, unit, negative), \
             {fails} certified prefix failures"
        )
    });
}

#[test]
fn criterion_06_triangular_step_family() {
    run_criterion(6, "triangular-power step family", Duration::from_secs(30), || {
        let pol = policy();
        let mut cases: Vec<(InequalityId, CaseParams)> = Vec::new();
        for n in 1..=100u32 {
            for a in [ri(2), rq(5, 2), ri(3), ri(5)] {
                cases.push((InequalityId::Thm2Step, CaseParams::n_alpha(n, a)));
            }
            for a in [rq(11, 10), rq(3, 2), rq(19, 10)] {
                cases.push((InequalityId::Thm2Step, CaseParams::n_alpha(n, a)));
            }
        }
        let count = confirm_all(cases);

        // At the boundary power the step ratio is identically 1, exactly.
        for n in [1u32, 2, 7, 50, 100] {
            let res =
                evaluate_case(InequalityId::Thm2Step, &CaseParams::n_alpha(n, ri(2)), &pol)
                    .unwrap();
            assert_eq!(res.verdict, Some(ComparisonVerdict::ExactlyEqual));
            assert_eq!(exact_str(res.lhs.as_ref().unwrap()), "1");
            assert_eq!(exact_str(res.rhs.as_ref().unwrap()), "1");
        }

        // g(a) = 1 + 2^(2a-1) - 3^a vanishes exactly at a = 1 and a = 2.
        for a in [ri(1), ri(2)] {
            let two_pow = pow_scalar(&Scalar::exact(ri(2)), &(&(&a * &ri(2)) - &ri(1))).unwrap();
            let three_pow = pow_scalar(&Scalar::exact(ri(3)), &a).unwrap();
            let g = &(&Scalar::one() + &two_pow) - &three_pow;
            assert_eq!(
                compare(&g, &Scalar::zero(), &pol),
                ComparisonVerdict::ExactlyEqual,
                "g({a}) must vanish exactly"
            );
        }

        // The cubic-base step family coincides with this family at doubled
        // power, representation for representation.
        let mut doubled = 0usize;
        for a in [rq(3, 2), ri(2), rq(5, 2)] {
            for n in 1..=20u32 {
                let cor =
                    evaluate_case(InequalityId::Cor4Step, &CaseParams::n_alpha(n, a.clone()), &pol)
                        .unwrap();
                let thm = evaluate_case(
                    InequalityId::Thm2Step,
                    &CaseParams::n_alpha(n, &a * &ri(2)),
                    &pol,
                )
                .unwrap();
                assert_eq!(cor.verdict, thm.verdict);
                assert_eq!(cor.claim_status, thm.claim_status);
                doubled += 1;
            }
        }
        format!(
            "{count} step cases confirmed in both regions; boundary power exactly flat; \
             both anchor values of g vanish exactly; {doubled} doubled-power coincidences"
        )
    });
}

#[test]
fn criterion_07_convexity_and_dominance_suite() {
    run_criterion(7, "convexity and dominance suite", Duration::from_secs(60), || {
        let mut cases: Vec<(InequalityId, CaseParams)> = Vec::new();
        for n in 1..=50u32 {
            for r in [ri(-2), ri(-1), rq(1, 4), rq(1, 2), rq(3, 4), ri(2), ri(3)] {
                cases.push((InequalityId::BenConvex, CaseParams::nr(n, r)));
            }
            for r in [ri(1), ri(2), ri(3), ri(5)] {
                cases.push((InequalityId::BenThm10, CaseParams::nr(n, r.clone())));
                cases.push((InequalityId::BenCor1, CaseParams::nr(n, r.clone())));
                cases.push((InequalityId::DomS4, CaseParams::nr(n, r)));
            }
            for r in [rq(-1, 2), rq(1, 4), rq(1, 2), rq(3, 4)] {
                cases.push((InequalityId::BenThm10, CaseParams::nr(n, r)));
            }
            for r in [rq(-1, 2), ri(0), rq(1, 4), rq(3, 4)] {
                cases.push((InequalityId::BenCor1, CaseParams::nr(n, r)));
            }
            for r in [rq(1, 4), rq(1, 2), rq(3, 4), ri(1)] {
                cases.push((InequalityId::DomSmallR, CaseParams::nr(n, r)));
            }
        }
        let count = confirm_all(cases);
        format!("{count} convexity/bound/dominance cases confirmed, zero contradictions")
    });
}

#[test]
fn criterion_08_hinge_oracle_equivalence() {
    run_criterion(8, "hinge-oracle equivalence", Duration::from_secs(30), || {
        let pol = policy();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0008);

        // Split a positive integer total into `k` positive parts, uniformly
        // over compositions.
        let split = |total: u64, k: usize, rng: &mut ChaCha8Rng| -> Vec<u64> {
            let mut cuts: Vec<u64> = (0..k - 1).map(|_| rng.gen_range(1..total)).collect();
            cuts.sort_unstable();
            cuts.dedup();
            while cuts.len() < k - 1 {
                let c = rng.gen_range(1..total);
                if !cuts.contains(&c) {
                    cuts.push(c);
                    cuts.sort_unstable();
                }
            }
            let mut parts = Vec::with_capacity(k);
            let mut prev = 0;
            for c in &cuts {
                parts.push(c - prev);
                prev = *c;
            }
            parts.push(total - prev);
            parts
        };

        let mut specs: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
        for case in 0..500usize {
            let k = rng.gen_range(2..=6usize);
            let denom = rng.gen_range(2..=12i64);
            let total = rng.gen_range(k as u64 + 2..=60);
            let y_parts = split(total, k, &mut rng);
            let x_parts = if case % 3 == 0 {
                // A pressure-equalizing transfer keeps the total and can
                // only move the tuple down the order, so these must Hold.
                let mut sorted = y_parts.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                let i = rng.gen_range(0..k - 1);
                let j = rng.gen_range(i + 1..k);
                let gap = sorted[i] - sorted[j];
                let delta = if gap == 0 { 0 } else { rng.gen_range(0..=gap / 2 + gap % 2) };
                sorted[i] -= delta;
                sorted[j] += delta;
                sorted
            } else {
                split(total, k, &mut rng)
            };
            let to_rat = |parts: &[u64]| -> Vec<Rational> {
                parts.iter().map(|p| rq(*p as i64, denom)).collect()
            };
            specs.push((to_rat(&x_parts), to_rat(&y_parts)));
        }

        let outcomes = exec::map(ExecMode::Parallel, specs, move |(xr, yr)| {
            let x = WeightTuple::new(xr.iter().cloned().map(Scalar::exact).collect()).unwrap();
            let y = WeightTuple::new(yr.iter().cloned().map(Scalar::exact).collect()).unwrap();
            let verdict = majorizes(&x, &y, &pol).unwrap();

            // Independent oracle: the hinge family over every kink. The
            // difference of the two hinge sums is piecewise linear in the
            // threshold with kinks only at entries, and both sides agree at
            // infinity, so checking the kinks decides every threshold.
            let hinge = |entries: &[Rational], t: &Rational| -> Rational {
                entries
                    .iter()
                    .filter(|e| *e > t)
                    .map(|e| e - t)
                    .fold(Rational::zero(), |acc, d| acc + d)
            };
            let mut kinks: Vec<Rational> = xr.iter().chain(yr.iter()).cloned().collect();
            kinks.sort();
            kinks.dedup();
            let oracle_holds = kinks.iter().all(|t| hinge(&xr, t) <= hinge(&yr, t));

            let witness_separates = match &verdict {
                MajorizationVerdict::FailsAtPrefix { .. } => {
                    let w = convex_witness(&x, &y, &verdict, &pol).unwrap().unwrap();
                    w.separation == ComparisonVerdict::CertainlyGreater
                }
                _ => true,
            };
            (verdict, oracle_holds, witness_separates)
        });

        let mut held = 0usize;
        let mut failed = 0usize;
        for (verdict, oracle_holds, witness_separates) in outcomes {
            match verdict {
                MajorizationVerdict::Holds => {
                    assert!(oracle_holds, "prefix test holds but a hinge refutes it");
                    held += 1;
                }
                MajorizationVerdict::FailsAtPrefix { .. } => {
                    assert!(!oracle_holds, "prefix test fails but every hinge is dominated");
                    assert!(witness_separates, "prefix failure without a certified hinge");
                    failed += 1;
                }
                MajorizationVerdict::TotalsDiffer { .. } => {
                    panic!("equal totals by construction")
                }
            }
        }
        assert!(held >= 50 && failed >= 50, "sampling lost its mix: {held} held, {failed} failed");
        format!(
            "500 random equal-total pairs: {held} hold and {failed} fail, prefix test and \
             hinge family agree on every one, all failures carry a certified hinge"
        )
    });
}

#[test]
fn criterion_09_power_point_bridge() {
    run_criterion(9, "power-point bridge", Duration::from_secs(60), || {
        let pol = policy();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut triples: Vec<(u32, Rational, Rational)> = Vec::new();
        while triples.len() < 100 {
            let n = rng.gen_range(1..=10u32);
            let r = rq(rng.gen_range(1..=20), 4);
            let p = rq(rng.gen_range(1..=16), 4);
            if p == ri(1) {
                continue; // totals are equal there by construction
            }
            triples.push((n, r, p));
        }
        let count = triples.len();
        let outcomes = exec::map(ExecMode::Parallel, triples, move |(n, r, p)| {
            let (x, y) = build_theorem1_tuples(&SequenceSpec::Naturals, &r, n).unwrap();
            let report =
                power_majorizes(&x, &y, std::slice::from_ref(&p), &pol).unwrap();
            let grid_cmp = report.verdicts[0].comparison.clone();
            let lhs = p_n(n, &(&r * &p)).unwrap();
            let rhs = p_n(n, &r).unwrap();
            let bridge_cmp = compare(&lhs, &rhs, &pol);
            (n, r, p, grid_cmp, bridge_cmp)
        });
        for (n, r, p, grid_cmp, bridge_cmp) in outcomes {
            assert_eq!(
                std::mem::discriminant(&grid_cmp),
                std::mem::discriminant(&bridge_cmp),
                "bridge mismatch at n = {n}, r = {r}, p = {p}: grid said {grid_cmp}, \
                 ratio comparison said {bridge_cmp}"
            );
        }
        format!(
            "{count} sampled (n, r, p) points: per-point power-sum verdict always matches \
             the certified ratio comparison at the product exponent"
        )
    });
}

#[test]
fn criterion_10_certificate_round_trip() {
    run_criterion(10, "certificate round trip", Duration::from_secs(10), || {
        let pol = policy();

        // Frozen failure table for the cubic family, n = 2..10.
        let frozen: HashMap<u32, (u32, &str, &str)> = [
            (2u32, (3u32, "8/9", "31/36")),
            (3, (4, "3/4", "73/100")),
            (4, (5, "16/25", "47/75")),
            (5, (6, "5/9", "241/441")),
            (6, (7, "24/49", "379/784")),
            (7, (8, "7/16", "187/432")),
            (8, (9, "32/81", "793/2025")),
            (9, (10, "9/25", "1081/3025")),
            (10, (11, "40/121", "159/484")),
        ]
        .into_iter()
        .collect();

        let search = find_counterexamples(2..=10, &[ri(3)], &[], &pol).unwrap();
        assert_eq!(search.certificates.len(), 9);
        assert!(search.skipped.is_empty());
        for cert in &search.certificates {
            let (prefix, lhs, rhs) = frozen[&cert.body.n];
            match &cert.body.majorization_failure {
                MajorizationVerdictRepr::FailsAtPrefix { prefix_index, lhs_prefix, rhs_prefix } => {
                    assert_eq!(*prefix_index, prefix, "n = {}", cert.body.n);
                    assert_eq!(exact_str(lhs_prefix), lhs);
                    assert_eq!(exact_str(rhs_prefix), rhs);
                }
                other => panic!("expected a prefix failure, got {other:?}"),
            }
        }

        // The n = 2 certificate is exactly the six-entry counterexample.
        let base = counterexample_certificate(2, &ri(3), &[], &pol).unwrap();
        assert_eq!(base, search.certificates[0]);

        // Every certificate replays cleanly.
        let reports = exec::map(ExecMode::Parallel, search.certificates.clone(), |cert| {
            (cert.body.n, verify_certificate(&cert).unwrap())
        });
        for (n, report) in reports {
            assert!(report.valid, "certificate n = {n} failed: {:?}", report.first_mismatch);
        }

        // Any single-field mutation breaks verification: perturb each
        // top-level JSON field in turn (the seal included) and demand the
        // mutant is rejected, either at parse time or by digest/replay.
        fn perturb(value: &mut serde_json::Value) {
            use serde_json::Value;
            match value {
                Value::Null => *value = Value::from(1),
                Value::Bool(b) => *b = !*b,
                Value::Number(x) => {
                    *value = Value::from(x.as_f64().unwrap_or(0.0) as i64 + 1)
                }
                Value::String(s) => s.push('~'),
                Value::Array(items) => {
                    if let Some(first) = items.first_mut() {
                        perturb(first);
                    } else {
                        items.push(Value::from(1));
                    }
                }
                Value::Object(map) => {
                    if let Some((_, v)) = map.iter_mut().next() {
                        perturb(v);
                    } else {
                        map.insert("x".into(), Value::from(1));
                    }
                }
            }
        }

        let doc = serde_json::to_value(&base).unwrap();
        let keys: Vec<String> = doc.as_object().unwrap().keys().cloned().collect();
        let mutation_count = keys.len();
        let doc_ref = &doc;
        let rejected = exec::map(ExecMode::Parallel, keys, move |key| {
            let mut mutant = doc_ref.clone();
            perturb(mutant.get_mut(&key).unwrap());
            let parsed: Result<powmaj::CounterexampleCertificate, _> =
                serde_json::from_value(mutant);
            let rejected = match parsed {
                Err(_) => true, // the mutation already breaks the schema
                Ok(cert) => !verify_certificate(&cert).unwrap().valid,
            };
            (key, rejected)
        });
        for (key, was_rejected) in rejected {
            assert!(was_rejected, "mutation of field '{key}' went undetected");
        }

        // Re-sealing a tampered body defeats the digest but not the replay.
        let mut resealed = base.clone();
        resealed.body.repr_bits += 1;
        resealed.digest = powmaj::body_digest(&resealed.body).unwrap();
        let report = verify_certificate(&resealed).unwrap();
        assert!(report.digest_ok && !report.replay_ok && !report.valid);

        format!(
            "9 certificates match the frozen failure table and replay cleanly; \
             {mutation_count} single-field mutations plus one re-sealed tamper all rejected"
        )
    });
}
