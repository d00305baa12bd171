//! Acceptance suite. Each criterion prints one PASS/FAIL line; any failure
//! makes the target fail. Every comparison is exact.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use mds_spectra::formulas::{FormId, Le1Form, W1Form};
use mds_spectra::identities::{self, SweepReport};
use mds_spectra::oracle::{self, CensusOptions};
use mds_spectra::{CodeParams, CosetCensus, Evaluator, Fault, MdsCode, RadiusGate};
use mds_spectra_cli::{run_verify, verify_with_census, RunReport, Status, VerifyArgs};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
}

impl Criterion {
    fn run(&self, body: impl FnOnce() -> Outcome) -> bool {
        let start = Instant::now();
        let outcome = body();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(_) if elapsed > self.limit => (
                false,
                format!("exceeded the {:.0} s limit", self.limit.as_secs_f64()),
            ),
            Ok(detail) => (true, detail),
            Err(detail) => (false, detail),
        };
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {} ({detail}; {:.2} s)",
            self.id,
            self.name,
            elapsed.as_secs_f64()
        );
        passed
    }
}

fn params(n: usize, k: usize, q: usize) -> CodeParams {
    CodeParams::new(n, k, q).expect("valid acceptance parameters")
}

fn take_census(p: CodeParams) -> CosetCensus {
    let code = MdsCode::new(p).expect("constructible code");
    oracle::census_with(&code, CensusOptions::default()).expect("within the enumeration budget")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(report: &RunReport) -> Result<(), String> {
    let i = &report.invocation;
    ensure(report.status == Status::Pass, || {
        let first = report
            .mismatches
            .first()
            .map(|m| {
                format!(
                    "W={} w={} {}: {} != {}",
                    m.coset_weight, m.w, m.check, m.formula_value, m.oracle_value
                )
            })
            .or_else(|| report.invariant_failures.first().cloned())
            .unwrap_or_default();
        format!("[{},{},{}]_{} failed: {first}", i.n, i.k, i.d, i.q)
    })
}

fn counts(census: &CosetCensus, coset_weight: usize) -> Vec<u64> {
    census
        .spectrum(coset_weight)
        .counts()
        .iter()
        .map(|c| u64::try_from(c).expect("small count"))
        .collect()
}

fn flagship() -> Outcome {
    let report = run_verify(&VerifyArgs::new(6, 2, 5, 3), None).map_err(|e| e.message)?;
    passed(&report)?;
    ensure(
        report.checks.iter().any(|c| c.starts_with("sigma_w3")),
        || "weight-3 forms were not compared".into(),
    )?;
    let census = take_census(params(6, 2, 5));
    let expected: [(usize, [u64; 7]); 3] = [
        (1, [0, 24, 0, 0, 120, 360, 96]),
        (2, [0, 0, 240, 240, 1440, 2640, 1440]),
        (3, [0, 0, 0, 1040, 2280, 3120, 2560]),
    ];
    for (coset_weight, spectrum) in expected {
        let got = counts(&census, coset_weight);
        ensure(got == spectrum, || {
            format!("W={coset_weight} census spectrum {got:?}")
        })?;
    }
    Ok(format!(
        "{} forms, {} comparisons",
        report.checks.len(),
        report.comparisons
    ))
}

fn d5_family() -> Outcome {
    let mut detail = Vec::new();
    for (n, k, q, limit) in [(8, 4, 7, 10.0), (9, 5, 8, 300.0)] {
        let mut args = VerifyArgs::new(n, k, q, 3);
        args.workers = CensusOptions::default().workers;
        let report = run_verify(&args, None).map_err(|e| e.message)?;
        passed(&report)?;
        ensure(report.covering_radius == 3, || {
            format!("[{n},{k}]_{q}: covering radius {}", report.covering_radius)
        })?;
        ensure(report.timing_seconds < limit, || {
            format!(
                "[{n},{k}]_{q} took {:.1} s, limit {limit} s",
                report.timing_seconds
            )
        })?;
        detail.push(format!("[{n},{k},5]_{q} in {:.2} s", report.timing_seconds));
    }
    Ok(detail.join(", "))
}

fn weight_one_cases() -> Outcome {
    let required = [
        FormId::SigmaW1(W1Form::PowerSum),
        FormId::SigmaLe1(Le1Form::Lemma),
        FormId::SigmaLe1(Le1Form::Corollary),
    ];
    let mut detail = Vec::new();
    for (n, k, q) in [(5, 3, 4), (6, 4, 5), (6, 3, 5)] {
        let report = run_verify(&VerifyArgs::new(n, k, q, 1), None).map_err(|e| e.message)?;
        passed(&report)?;
        for form in required {
            ensure(report.checks.contains(&form.to_string()), || {
                format!("[{n},{k}]_{q}: {form} not compared")
            })?;
        }
        ensure(report.timing_seconds < 1.0, || {
            format!("[{n},{k}]_{q} took {:.2} s", report.timing_seconds)
        })?;
        detail.push(format!("[{n},{k},{}]_{q}", n - k + 1));
    }
    Ok(detail.join(", "))
}

fn sweep_outcome(reports: &[SweepReport]) -> Outcome {
    for r in reports {
        ensure(r.cases > 0, || format!("{} ran no cases", r.name))?;
        ensure(r.passed(), || {
            format!(
                "{}: {} failures, first {}",
                r.name,
                r.failures.len(),
                r.failures[0]
            )
        })?;
    }
    let cases: u64 = reports.iter().map(|r| r.cases).sum();
    Ok(format!("{cases} cases"))
}

fn form_equivalence() -> Outcome {
    sweep_outcome(&[identities::form_equivalence(9)])
}

fn identity_suites() -> Outcome {
    sweep_outcome(&[
        identities::pascal(40),
        identities::subset_chain(40),
        identities::alternating(40),
        identities::riordan_lemma(40),
        identities::alternating_q_power(40, 9),
        identities::delta_star_relation(9),
    ])
}

/// Every code verified by the criteria above, plus every constructible code
/// with `q <= 7` and at most 10^6 vectors.
fn verified_codes() -> Vec<CodeParams> {
    let mut codes = vec![
        params(6, 2, 5),
        params(8, 4, 7),
        params(9, 5, 8),
        params(5, 3, 4),
        params(6, 4, 5),
        params(6, 3, 5),
    ];
    codes.extend(
        CodeParams::all_up_to(7)
            .filter(|p| (p.q() as f64).powi(p.n() as i32) <= 1e6)
            .filter(|p| !codes.contains(p))
            .collect::<Vec<_>>(),
    );
    codes
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn mass_balance(censuses: &[CosetCensus]) -> Outcome {
    let mut totality_codes = 0;
    for census in censuses {
        let p = census.params;
        let (q, n, k) = (p.q() as u64, p.n() as u32, p.k() as u32);
        let vectors: BigUint = census.per_weight.values().map(|c| c.spectrum.total()).sum();
        ensure(vectors == big(q).pow(n), || {
            format!("{p}: spectra hold {vectors} vectors")
        })?;
        let evaluator =
            Evaluator::new(p).with_covering_radius(RadiusGate::Known(census.covering_radius));
        for (&w, class) in &census.per_weight {
            let mass = big(class.coset_count) * big(q).pow(k);
            ensure(class.spectrum.total() == mass, || {
                format!("{p} W={w}: census mass")
            })?;
            if let Ok(spectrum) = evaluator.full_spectrum(w) {
                ensure(spectrum.total() == mass, || {
                    format!("{p} W={w}: formula mass {}", spectrum.total())
                })?;
            }
        }
        // Totality needs a closed form for every coset weight, i.e. d = 5.
        if census.covering_radius == 3 && p.d() == 5 {
            totality_codes += 1;
            let spectra = (0..=3)
                .map(|w| evaluator.full_spectrum(w))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("{p}: {e}"))?;
            for w in 0..=p.n() {
                let total: BigUint = spectra.iter().map(|s| s.get(w)).sum();
                let expected = (0..w as u64)
                    .fold(big(1), |acc, i| acc * big(p.n() as u64 - i) / big(i + 1))
                    * big(q - 1).pow(w as u32);
                ensure(total == expected, || {
                    format!("{p} w={w}: totality {total} != {expected}")
                })?;
            }
        }
    }
    Ok(format!(
        "{} codes, {totality_codes} with per-w totality",
        censuses.len()
    ))
}

fn unique_leaders(censuses: &[CosetCensus]) -> Outcome {
    let mut classes = 0;
    for census in censuses {
        let p = census.params;
        for (&w, class) in census.per_weight.range(..=p.t()) {
            classes += 1;
            ensure(class.leaders == (1, 1), || {
                format!("{p} W={w}: leaders per coset {:?}", class.leaders)
            })?;
        }
    }
    Ok(format!("{classes} coset weights <= t"))
}

fn verified_set(censuses: &[CosetCensus]) -> Result<(), String> {
    for census in censuses {
        passed(&verify_with_census(
            census,
            &VerifyArgs::new(census.params.n(), census.params.k(), census.params.q(), 3),
            None,
        ))?;
    }
    Ok(())
}

/// Every form applicable to a full-length d = 5 code, every binomial call
/// ordinal it makes at any weight.
fn fault_injection() -> Outcome {
    let p = params(8, 4, 7);
    let census = take_census(p);
    let args = VerifyArgs::new(8, 4, 7, 3);
    let evaluator = Evaluator::new(p).with_covering_radius(RadiusGate::Assumed);
    let forms = FormId::applicable(p);
    let every_form =
        1 + p.t() + FormId::LE1.len() + FormId::W1.len() + 1 + FormId::W2.len() + FormId::W3.len();
    ensure(forms.len() == every_form, || {
        format!("only {} forms applicable", forms.len())
    })?;
    let mut faults = 0;
    for form in forms {
        let (lo, hi) = form.weight_range(p);
        let mut calls = 0;
        for w in lo..=hi {
            calls = calls.max(
                evaluator
                    .binomial_calls(form, w)
                    .map_err(|e| format!("{form} w={w}: {e}"))?,
            );
        }
        ensure(calls > 0, || format!("{form} computes no binomials"))?;
        for call in 0..calls {
            faults += 1;
            let report = verify_with_census(&census, &args, Some(Fault { form, call }));
            ensure(!report.mismatches.is_empty(), || {
                format!("fault at {form} call {call} went unreported")
            })?;
        }
    }
    Ok(format!(
        "{faults} single-binomial faults on {p}, all reported"
    ))
}

fn main() -> ExitCode {
    let criteria = |id, name, secs| Criterion {
        id,
        name,
        limit: Duration::from_secs(secs),
    };
    let mut results = vec![
        criteria(1, "flagship [6,2,5]_5 matches the census", 1).run(flagship),
        criteria(2, "d = 5 family [8,4,5]_7 and [9,5,5]_8", 310).run(d5_family),
        criteria(3, "weight-1 forms on [5,3,3]_4, [6,4,3]_5, [6,3,4]_5", 3).run(weight_one_cases),
        criteria(4, "form equivalence for q <= 9", 30).run(form_equivalence),
        criteria(5, "identity suites for w <= 40, q <= 9", 10).run(identity_suites),
    ];

    let censuses: Vec<CosetCensus> = verified_codes().into_iter().map(take_census).collect();
    let all_verified = verified_set(&censuses);
    results.push(criteria(6, "mass balance and totality", 600).run(|| {
        all_verified.clone()?;
        mass_balance(&censuses)
    }));
    results.push(
        criteria(7, "unique leaders for coset weights <= t", 600).run(|| unique_leaders(&censuses)),
    );
    results.push(criteria(8, "fault injection is always reported", 600).run(fault_injection));

    let failed = results.iter().filter(|&&ok| !ok).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
