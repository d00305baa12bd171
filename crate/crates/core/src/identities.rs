//! Exhaustive sweeps of the binomial identities and formula equivalences the
//! spectrum theorems rest on. Each sweep counts its cases and collects every
//! failure; an error inside a sweep is reported as a failure, not raised.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::code::CodeParams;
use crate::combinatorics::{alt_binom_sum, binom, pow, sign};
use crate::error::{Error, Result};
use crate::formulas::{helper_terms, Evaluator, FormId, Le1Form, RadiusGate, W1Form, W2Form};

/// Largest accepted sweep bound.
pub const MAX_SWEEP_BOUND: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SweepReport {
    fn new(name: &'static str) -> Self {
        SweepReport {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, outcome: Result<bool>, case: impl FnOnce() -> String) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(case()),
            Err(e) => self.failures.push(format!("{}: {e}", case())),
        }
    }
}

fn b(n: i64, k: i64) -> Result<BigInt> {
    binom(n, k)
}

/// `binom(n,k) = binom(n-1,k) + binom(n-1,k-1)` for `1 <= k <= n <= max_n`.
pub fn pascal(max_n: usize) -> SweepReport {
    let mut r = SweepReport::new("pascal");
    let max_n = max_n as i64;
    for n in 1..=max_n {
        for k in 1..=n {
            r.check(
                (|| Ok(b(n, k)? == b(n - 1, k)? + b(n - 1, k - 1)?))(),
                || format!("n={n} k={k}"),
            );
        }
    }
    r
}

/// `binom(n,m)binom(m,p) = binom(n,p)binom(n-p,m-p) = binom(n,m-p)binom(n-m+p,p)`
/// for `0 <= p <= m <= n <= max_n`.
pub fn subset_chain(max_n: usize) -> SweepReport {
    let mut r = SweepReport::new("subset_chain");
    let max_n = max_n as i64;
    for n in 0..=max_n {
        for m in 0..=n {
            for p in 0..=m {
                r.check(
                    (|| {
                        let first = b(n, m)? * b(m, p)?;
                        let second = b(n, p)? * b(n - p, m - p)?;
                        let third = b(n, m - p)? * b(n - m + p, p)?;
                        Ok(first == second && second == third)
                    })(),
                    || format!("n={n} m={m} p={p}"),
                );
            }
        }
    }
    r
}

/// `sum_{k=0}^{m} (-1)^k binom(n,k) = (-1)^m binom(n-1,m)` for `0 <= m <= n <= max_n`.
pub fn alternating(max_n: usize) -> SweepReport {
    let mut r = SweepReport::new("alternating");
    let max_n = max_n as i64;
    for n in 1..=max_n {
        for m in 0..=n {
            r.check(
                (|| Ok(alt_binom_sum(n, m)? == sign(m) * b(n - 1, m)?))(),
                || format!("n={n} m={m}"),
            );
        }
    }
    r
}

/// `sum_{j=0}^{m} (-1)^j binom(w,j) binom(w-j,v) = (-1)^m binom(w,v) binom(w-v-1,m)`
/// for `v + m <= w <= max_w`.
pub fn riordan_lemma(max_w: usize) -> SweepReport {
    let mut r = SweepReport::new("riordan_lemma");
    let max_w = max_w as i64;
    for w in 0..=max_w {
        for v in 0..=w {
            for m in 0..=w - v {
                r.check(
                    (|| {
                        let mut lhs = BigInt::zero();
                        for j in 0..=m {
                            lhs += sign(j) * b(w, j)? * b(w - j, v)?;
                        }
                        // binom(w-v-1, m) with w = v needs the upper argument -1;
                        // then m = 0 and the value is 1.
                        let tail = if w == v {
                            BigInt::from(1)
                        } else {
                            b(w - v - 1, m)?
                        };
                        Ok(lhs == sign(m) * b(w, v)? * tail)
                    })(),
                    || format!("w={w} v={v} m={m}"),
                );
            }
        }
    }
    r
}

/// The alternating q-power lemma, for `3 <= d`, `d - 1 <= w <= max_w`,
/// `2 <= q <= max_q`:
/// `sum_{j=0}^{w+1-d} (-1)^j binom(w,j) q^{w+1-d-j}
///  = sum_{j=0}^{w-d} (-1)^j binom(w,j) (q^{w+1-d-j} - 1) - (-1)^{w-d} binom(w-1,d-2)`.
pub fn alternating_q_power(max_w: usize, max_q: usize) -> SweepReport {
    let mut r = SweepReport::new("alternating_q_power");
    let (max_w, max_q) = (max_w as i64, max_q as i64);
    for q in 2..=max_q {
        for d in 3..=max_w + 1 {
            for w in d - 1..=max_w {
                r.check(
                    (|| {
                        let mut lhs = BigInt::zero();
                        for j in 0..=w + 1 - d {
                            lhs += sign(j) * b(w, j)? * pow(q, w + 1 - d - j);
                        }
                        let mut rhs = BigInt::zero();
                        for j in 0..=w - d {
                            rhs += sign(j) * b(w, j)? * (pow(q, w + 1 - d - j) - 1);
                        }
                        rhs -= sign(w - d) * b(w - 1, d - 2)?;
                        Ok(lhs == rhs)
                    })(),
                    || format!("q={q} d={d} w={w}"),
                );
            }
        }
    }
    r
}

/// `Delta_w = binom(n,2)(q-1)^2 Delta*_w` for every constructible code with
/// `n >= 2`, `q <= max_q`, and every `0 <= w <= n`.
pub fn delta_star_relation(max_q: usize) -> SweepReport {
    let mut r = SweepReport::new("delta_star");
    for p in CodeParams::all_up_to(max_q).filter(|p| p.n() >= 2) {
        for w in 0..=p.n() {
            r.check(
                (|| {
                    let h = helper_terms(p, w)?;
                    let scale = b(p.n() as i64, 2)? * pow(p.q() as i64 - 1, 2);
                    Ok(BigRational::from(h.delta()?.clone())
                        == BigRational::from(scale) * h.delta_star()?)
                })(),
                || format!("{p} w={w}"),
            );
        }
    }
    r
}

fn all_equal(values: &[BigInt]) -> bool {
    values.windows(2).all(|p| p[0] == p[1])
}

/// For every constructible code with `q <= max_q`: all forms of each theorem
/// agree at every weight of their range, Cheung's cumulative counts agree with
/// the `<= 1` and `<= 2` forms, cumulative totals decompose into the
/// exact-weight ones, and the stitched spectra of coset weights 0..=2 carry
/// mass `#cosets * q^k`. Weight-3 forms are compared with the covering radius
/// assumed to be 3.
pub fn form_equivalence(max_q: usize) -> SweepReport {
    let mut r = SweepReport::new("form_equivalence");
    for p in CodeParams::all_up_to(max_q) {
        let eval = Evaluator::new(p).with_covering_radius(RadiusGate::Assumed);
        let forms = FormId::applicable(p);
        let (n, d) = (p.n(), p.d());

        let groups: [Vec<FormId>; 5] = [
            forms
                .iter()
                .copied()
                .filter(|f| matches!(f, FormId::SigmaLe1(_) | FormId::Cheung { t_cap: 1 }))
                .collect(),
            forms
                .iter()
                .copied()
                .filter(|f| matches!(f, FormId::SigmaW1(_)))
                .collect(),
            forms
                .iter()
                .copied()
                .filter(|f| matches!(f, FormId::SigmaLe2 | FormId::Cheung { t_cap: 2 }))
                .collect(),
            forms
                .iter()
                .copied()
                .filter(|f| matches!(f, FormId::SigmaW2(_)))
                .collect(),
            forms
                .iter()
                .copied()
                .filter(|f| matches!(f, FormId::SigmaW3(_)))
                .collect(),
        ];
        for group in groups.iter().filter(|g| !g.is_empty()) {
            // Common range: Cheung's D_u starts lower than the lemma forms.
            let lo = group.iter().map(|f| f.weight_range(p).0).max().unwrap();
            for w in lo..=n {
                r.check(
                    group
                        .iter()
                        .map(|&f| eval.evaluate(f, w))
                        .collect::<Result<Vec<_>>>()
                        .map(|v| all_equal(&v)),
                    || format!("{p} w={w} {group:?}"),
                );
            }
        }

        if d >= 3 {
            for w in d - 1..=n {
                r.check(
                    (|| {
                        Ok(eval.evaluate(FormId::SigmaLe1(Le1Form::Lemma), w)?
                            == eval.evaluate(FormId::CodeWeight, w)?
                                + eval.evaluate(FormId::SigmaW1(W1Form::PowerSum), w)?)
                    })(),
                    || format!("{p} w={w}: <=1 = A + W1"),
                );
            }
        }
        if d >= 5 {
            for w in d - 1..=n {
                r.check(
                    (|| {
                        Ok(eval.evaluate(FormId::SigmaLe2, w)?
                            == eval.evaluate(FormId::SigmaLe1(Le1Form::Lemma), w)?
                                + eval.evaluate(FormId::SigmaW2(W2Form::PowerSum), w)?)
                    })(),
                    || format!("{p} w={w}: <=2 = <=1 + W2"),
                );
            }
        }

        let code_size = pow(p.q() as i64, p.k() as i64);
        for coset_weight in 0..=2usize {
            let cosets = b(n as i64, coset_weight as i64).unwrap_or_default()
                * pow(p.q() as i64 - 1, coset_weight as i64);
            match eval.full_spectrum(coset_weight) {
                Err(Error::Inadmissible { .. }) => {}
                outcome => r.check(
                    outcome.map(|s| BigInt::from(s.total()) == cosets * &code_size),
                    || format!("{p} W={coset_weight}: spectrum mass"),
                ),
            }
        }
    }
    r
}

/// Runs every sweep: identities up to `max_w`, field-order dependent ones up
/// to `max_q`.
pub fn run_all(max_w: usize, max_q: usize) -> Result<Vec<SweepReport>> {
    if max_w > MAX_SWEEP_BOUND {
        return Err(Error::InvalidParams(format!(
            "max_w = {max_w} exceeds the sweep bound {MAX_SWEEP_BOUND}"
        )));
    }
    Ok(vec![
        pascal(max_w),
        subset_chain(max_w),
        alternating(max_w),
        riordan_lemma(max_w),
        alternating_q_power(max_w, max_q),
        delta_star_relation(max_q),
        form_equivalence(max_q),
    ])
}
