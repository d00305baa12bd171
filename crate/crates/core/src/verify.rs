//! Formula-versus-census comparison.

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::combinatorics::binom;
use crate::formulas::{Evaluator, Fault, FormId, RadiusGate};
use crate::oracle::CosetCensus;

/// Highest coset weight with closed forms.
pub const MAX_FORMULA_COSET_WEIGHT: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub coset_weight: usize,
    pub w: usize,
    /// Form label, or `full_spectrum/W<k>` for the stitched spectrum.
    pub check: String,
    /// The formula value, or the error it raised.
    pub formula: Result<BigInt, String>,
    pub oracle: BigUint,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let formula = match &self.formula {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        write!(
            f,
            "W={} w={} {}: formula {} != oracle {}",
            self.coset_weight, self.w, self.check, formula, self.oracle
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    /// Number of (check, w) comparisons made.
    pub comparisons: usize,
    /// Distinct form labels compared.
    pub checks: Vec<String>,
    pub mismatches: Vec<Mismatch>,
    pub invariant_failures: Vec<String>,
    /// Checks that were not applicable, with the reason.
    pub skipped: Vec<String>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.invariant_failures.is_empty()
    }

    fn record(
        &mut self,
        check: String,
        coset_weight: usize,
        w: usize,
        formula: Result<BigInt, String>,
        oracle: &BigUint,
    ) {
        self.comparisons += 1;
        if !matches!(&formula, Ok(v) if *v == BigInt::from(oracle.clone())) {
            self.mismatches.push(Mismatch {
                coset_weight,
                w,
                check,
                formula,
                oracle: oracle.clone(),
            });
        }
    }
}

/// Compares every applicable form for coset weights `0..=max_coset_weight`,
/// at every weight of its range, against the census. Weight-3 forms run only
/// when the census finds covering radius 3.
pub fn verify_census(
    census: &CosetCensus,
    max_coset_weight: usize,
    fault: Option<Fault>,
) -> Verification {
    let params = census.params;
    let mut eval =
        Evaluator::new(params).with_covering_radius(RadiusGate::Known(census.covering_radius));
    if let Some(fault) = fault {
        eval = eval.with_fault(fault);
    }
    let mut report = Verification {
        invariant_failures: census.violations(),
        ..Verification::default()
    };

    for form in FormId::applicable(params) {
        let (coset_weight, cumulative) = form.coset_weight();
        if coset_weight > max_coset_weight {
            continue;
        }
        if let FormId::SigmaW3(_) = form {
            if census.covering_radius != 3 {
                report.skipped.push(format!(
                    "{form}: covering radius is {}, not 3",
                    census.covering_radius
                ));
                continue;
            }
        }
        let oracle = if cumulative {
            census.cumulative(coset_weight)
        } else {
            census.spectrum(coset_weight)
        };
        let (lo, hi) = form.weight_range(params);
        for w in lo..=hi {
            let value = eval.evaluate(form, w).map_err(|e| e.to_string());
            report.record(form.to_string(), coset_weight, w, value, oracle.get(w));
        }
        report.checks.push(form.to_string());
    }

    let mut formula_spectra = Vec::new();
    for coset_weight in 0..=max_coset_weight.min(MAX_FORMULA_COSET_WEIGHT) {
        let label = format!("full_spectrum/W{coset_weight}");
        let spectrum = match eval.full_spectrum(coset_weight) {
            Ok(s) => s,
            Err(e) if is_inadmissible(&e) => {
                report.skipped.push(format!("{label}: {e}"));
                continue;
            }
            Err(e) => {
                let oracle = census.spectrum(coset_weight);
                for w in 0..=params.n() {
                    report.record(
                        label.clone(),
                        coset_weight,
                        w,
                        Err(e.to_string()),
                        oracle.get(w),
                    );
                }
                report.checks.push(label);
                continue;
            }
        };
        let oracle = census.spectrum(coset_weight);
        for w in 0..=params.n() {
            report.record(
                label.clone(),
                coset_weight,
                w,
                Ok(BigInt::from(spectrum.get(w).clone())),
                oracle.get(w),
            );
        }
        report.checks.push(label);
        formula_spectra.push((coset_weight, spectrum));
    }
    // With every coset weight covered, the formula spectra partition the space.
    let radius = census.covering_radius;
    formula_spectra.retain(|(coset_weight, _)| *coset_weight <= radius);
    if formula_spectra
        .iter()
        .map(|(coset_weight, _)| *coset_weight)
        .eq(0..=radius)
    {
        let q = BigUint::from(params.q() - 1);
        for w in 0..=params.n() {
            let total: BigUint = formula_spectra.iter().map(|(_, s)| s.get(w)).sum();
            let expected = binom(params.n() as i64, w as i64)
                .expect("n >= 0")
                .magnitude()
                * q.pow(w as u32);
            if total != expected {
                report.invariant_failures.push(format!(
                    "w = {w}: formula spectra sum to {total}, expected binom(n,w)(q-1)^w = {expected}"
                ));
            }
        }
        report.checks.push("totality".into());
    }
    if max_coset_weight > MAX_FORMULA_COSET_WEIGHT {
        report.skipped.push(format!(
            "coset weights above {MAX_FORMULA_COSET_WEIGHT} have no closed forms"
        ));
    }
    report
}

fn is_inadmissible(e: &crate::Error) -> bool {
    matches!(e, crate::Error::Inadmissible { .. })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{CodeParams, MdsCode};
    use crate::formulas::W2Form;
    use crate::oracle::{census_with, CensusOptions};

    fn census(n: usize, k: usize, q: usize) -> CosetCensus {
        let code = MdsCode::new(CodeParams::new(n, k, q).unwrap()).unwrap();
        census_with(&code, CensusOptions { workers: 1 }).unwrap()
    }

    #[test]
    fn flagship_code_passes() {
        let report = verify_census(&census(6, 2, 5), 3, None);
        assert!(report.passed(), "{:?}", report.mismatches);
        assert!(report.skipped.is_empty());
        assert!(report.checks.iter().any(|c| c.starts_with("sigma_w3")));
        assert!(report.checks.iter().any(|c| c == "totality"));
    }

    #[test]
    fn weight_three_is_skipped_without_radius_three() {
        // [7,3,5]_7 has covering radius 4.
        let c = census(7, 3, 7);
        assert_eq!(c.covering_radius, 4);
        let report = verify_census(&c, 3, None);
        assert!(report.passed(), "{:?}", report.mismatches);
        assert!(report
            .skipped
            .iter()
            .any(|s| s.contains("covering radius is 4")));
    }

    #[test]
    fn a_perturbed_binomial_is_reported() {
        let fault = Fault {
            form: FormId::SigmaW2(W2Form::WeightExplicit),
            call: 0,
        };
        let report = verify_census(&census(6, 2, 5), 2, Some(fault));
        assert!(!report.passed());
        assert!(report
            .mismatches
            .iter()
            .all(|m| m.check == "sigma_w2/weight_explicit" && m.coset_weight == 2));
    }
}
