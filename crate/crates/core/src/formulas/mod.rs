//! Closed-form integral weight spectra of MDS code cosets.
//!
//! For a coset weight `W`, the integral weight spectrum is the family of
//! totals `S_w(W)`: the number of weight-w vectors summed over all cosets of
//! weight `W`. The cumulative totals `S_w(<= W)` sum over all cosets of weight
//! at most `W`.
//!
//! Each theorem is stated as a chain of equal expressions. Every link of each
//! chain is its own code path in [`theorems`](self), written out in full
//! with no shared simplification, so that agreement between the
//! links is a check rather than an assumption. [`FormId`] names a single link.
//!
//! All evaluation goes through an [`Evaluator`]. Besides holding the code
//! parameters and the covering-radius gate for weight-3 cosets, it can carry a
//! [`Fault`]: a perturbation of one binomial coefficient inside one form,
//! used to show that verification against the census is not vacuous.

mod theorems;

use std::cell::Cell;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::code::{CodeParams, Spectrum};
use crate::combinatorics::{binom, BinomialSource, ExactBinomials};
use crate::error::{Error, Result};

/// Forms of the cumulative spectrum over cosets of weight `<= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Le1Form {
    /// Cheung's relations specialized to `t = 1`.
    Lemma,
    /// `A_w V_n(1)` corrected by the two `Omega` terms.
    Corollary,
}

/// Forms of the weight-1 coset spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum W1Form {
    /// `binom(n,w)(q-1)[n * power sum + (-1)^{w-d} w binom(w-2,d-3)]`.
    PowerSum,
    /// `n(q-1)[binom(n,w) * power sum + Omega^(1)]`.
    PowerSumOmega,
    /// `n(q-1)[binom(n,w) * shifted sum - Omega^(0) + Omega^(1)]`.
    ShiftedSumOmega,
    /// `n(q-1)[A_w - Omega^(0) + Omega^(1)]`.
    WeightOmega,
    /// The previous form with the `Omega` terms written out.
    WeightExplicit,
    /// Specialization to `n = q + 1`.
    FullLength,
    /// Specialization to `n = q + 1`, `d = 5`, through `Phi^(1)`.
    FullLengthD5,
}

/// Forms of the weight-2 coset spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum W2Form {
    PowerSum,
    PowerSumOmega,
    ShiftedSumOmega,
    /// `binom(n,2)(q-1)^2 [A_w - Omega^(0) + Omega^(2) + Delta*]`.
    WeightDeltaStar,
    WeightExplicit,
    /// Specialization to `n = q + 1`, `d = 5`, through `Phi^(2)`.
    FullLengthD5,
}

/// Forms of the weight-3 coset spectrum for `[n, n-4, 5]_q` codes of
/// covering radius 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum W3Form {
    /// All weight-w vectors minus the cumulative `<= 2` total.
    Complement,
    /// All weight-w vectors minus `A_w`, the weight-1 and the weight-2 totals.
    Decomposed,
    /// The complement with the `<= 2` total written out for `d = 5`.
    ComplementExpanded,
    /// The expanded complement at `n = q + 1`.
    FullLength,
    /// The `n = q + 1` form through `Phi^(1)`, `Phi^(2)` and `Delta`.
    FullLengthCompact,
}

/// One closed form of one spectrum quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormId {
    /// Codeword weight distribution `A_w`.
    CodeWeight,
    /// Cheung's `D_u`: cumulative spectrum over cosets of weight `<= t_cap`.
    Cheung {
        t_cap: usize,
    },
    SigmaLe1(Le1Form),
    SigmaW1(W1Form),
    SigmaLe2,
    SigmaW2(W2Form),
    SigmaW3(W3Form),
}

impl FormId {
    pub const LE1: [Le1Form; 2] = [Le1Form::Lemma, Le1Form::Corollary];
    pub const W1: [W1Form; 7] = [
        W1Form::PowerSum,
        W1Form::PowerSumOmega,
        W1Form::ShiftedSumOmega,
        W1Form::WeightOmega,
        W1Form::WeightExplicit,
        W1Form::FullLength,
        W1Form::FullLengthD5,
    ];
    pub const W2: [W2Form; 6] = [
        W2Form::PowerSum,
        W2Form::PowerSumOmega,
        W2Form::ShiftedSumOmega,
        W2Form::WeightDeltaStar,
        W2Form::WeightExplicit,
        W2Form::FullLengthD5,
    ];
    pub const W3: [W3Form; 5] = [
        W3Form::Complement,
        W3Form::Decomposed,
        W3Form::ComplementExpanded,
        W3Form::FullLength,
        W3Form::FullLengthCompact,
    ];

    /// Every form whose hypotheses on `(n, k, d, q)` hold. Weight-3 forms are
    /// listed when `d = 5`; their covering-radius hypothesis is checked at
    /// evaluation time.
    pub fn applicable(params: CodeParams) -> Vec<FormId> {
        let mut forms = vec![FormId::CodeWeight];
        forms.extend((1..=params.t()).map(|t_cap| FormId::Cheung { t_cap }));
        forms.extend(Self::LE1.map(FormId::SigmaLe1));
        forms.extend(Self::W1.map(FormId::SigmaW1));
        forms.push(FormId::SigmaLe2);
        forms.extend(Self::W2.map(FormId::SigmaW2));
        forms.extend(Self::W3.map(FormId::SigmaW3));
        forms.retain(|f| f.check_params(params).is_ok());
        forms
    }

    /// The coset weight whose spectrum this form gives, and whether it is the
    /// cumulative (`<= W`) total rather than the exact-weight one.
    pub fn coset_weight(&self) -> (usize, bool) {
        match *self {
            FormId::CodeWeight => (0, false),
            FormId::Cheung { t_cap } => (t_cap, true),
            FormId::SigmaLe1(_) => (1, true),
            FormId::SigmaW1(_) => (1, false),
            FormId::SigmaLe2 => (2, true),
            FormId::SigmaW2(_) => (2, false),
            FormId::SigmaW3(_) => (3, false),
        }
    }

    /// Inclusive weight range on which the form is stated.
    pub fn weight_range(&self, params: CodeParams) -> (usize, usize) {
        let (n, d) = (params.n(), params.d());
        let lo = match *self {
            FormId::CodeWeight => 0,
            FormId::Cheung { t_cap } => d.saturating_sub(t_cap),
            FormId::SigmaLe1(_) | FormId::SigmaW1(_) => d - 1,
            FormId::SigmaLe2 | FormId::SigmaW2(_) => d.saturating_sub(2),
            FormId::SigmaW3(_) => 3,
        };
        (lo, n)
    }

    fn check_params(&self, params: CodeParams) -> Result<()> {
        let (d, k, n) = (params.d(), params.k(), params.n());
        let fail = |reason: String| {
            Err(Error::Inadmissible {
                what: self.to_string(),
                reason,
            })
        };
        let full_length = params.is_full_length();
        match *self {
            FormId::CodeWeight => Ok(()),
            FormId::Cheung { t_cap } if t_cap < 1 || t_cap > params.t() => fail(format!(
                "needs 1 <= t_cap <= t = {} (got {t_cap})",
                params.t()
            )),
            FormId::Cheung { .. } => Ok(()),
            FormId::SigmaLe1(_) | FormId::SigmaW1(_) if d < 3 => {
                fail(format!("needs d >= 3, d = {d}"))
            }
            FormId::SigmaW1(W1Form::FullLength) if !full_length => fail("needs n = q + 1".into()),
            FormId::SigmaW1(W1Form::FullLengthD5) if !full_length || d != 5 => {
                fail("needs n = q + 1 and d = 5".into())
            }
            FormId::SigmaLe1(_) | FormId::SigmaW1(_) => Ok(()),
            FormId::SigmaLe2 | FormId::SigmaW2(_) if d < 5 => {
                fail(format!("needs d >= 5, d = {d}"))
            }
            FormId::SigmaW2(W2Form::FullLengthD5) if !full_length || d != 5 => {
                fail("needs n = q + 1 and d = 5".into())
            }
            FormId::SigmaLe2 | FormId::SigmaW2(_) => Ok(()),
            FormId::SigmaW3(_) if d != 5 || k + 4 != n => {
                fail(format!("needs d = 5 and k = n - 4, got d = {d}, k = {k}"))
            }
            FormId::SigmaW3(W3Form::FullLength | W3Form::FullLengthCompact) if !full_length => {
                fail("needs n = q + 1".into())
            }
            FormId::SigmaW3(_) => Ok(()),
        }
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::CodeWeight => write!(f, "code_weight"),
            FormId::Cheung { t_cap } => write!(f, "cheung_cumulative/t{t_cap}"),
            FormId::SigmaLe1(v) => write!(f, "sigma_le1/{}", snake(&format!("{v:?}"))),
            FormId::SigmaW1(v) => write!(f, "sigma_w1/{}", snake(&format!("{v:?}"))),
            FormId::SigmaLe2 => write!(f, "sigma_le2"),
            FormId::SigmaW2(v) => write!(f, "sigma_w2/{}", snake(&format!("{v:?}"))),
            FormId::SigmaW3(v) => write!(f, "sigma_w3/{}", snake(&format!("{v:?}"))),
        }
    }
}

fn snake(camel: &str) -> String {
    let mut out = String::new();
    for (i, c) in camel.chars().enumerate() {
        if c.is_ascii_uppercase() {
            if i > 0 {
                out.push('_');
            }
            out.push(c.to_ascii_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

/// What is known about the covering radius `R` of the code.
///
/// The weight-3 spectrum assumes `R = 3`, which the closed forms cannot
/// establish on their own.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RadiusGate {
    #[default]
    Unknown,
    /// Measured, e.g. by a coset census.
    Known(usize),
    /// Caller override: take `R = 3` on trust.
    Assumed,
}

/// Adds one to the `call`-th binomial coefficient (0-based, in evaluation
/// order) computed while evaluating `form`, at every weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub form: FormId,
    pub call: usize,
}

/// Evaluates spectrum formulas for one parameter set.
#[derive(Debug)]
pub struct Evaluator {
    params: CodeParams,
    radius: RadiusGate,
    fault: Option<Fault>,
    active: Cell<Option<FormId>>,
    calls: Cell<usize>,
}

impl BinomialSource for Evaluator {
    fn binom(&self, n: i64, k: i64) -> Result<BigInt> {
        let mut value = binom(n, k)?;
        let call = self.calls.get();
        self.calls.set(call + 1);
        if let (Some(fault), Some(active)) = (self.fault, self.active.get()) {
            if fault.form == active && fault.call == call {
                value += 1;
            }
        }
        Ok(value)
    }
}

struct ActiveForm<'a>(&'a Evaluator);

impl Drop for ActiveForm<'_> {
    fn drop(&mut self) {
        self.0.active.set(None);
    }
}

impl Evaluator {
    pub fn new(params: CodeParams) -> Evaluator {
        Evaluator {
            params,
            radius: RadiusGate::Unknown,
            fault: None,
            active: Cell::new(None),
            calls: Cell::new(0),
        }
    }

    pub fn with_covering_radius(mut self, radius: RadiusGate) -> Evaluator {
        self.radius = radius;
        self
    }

    pub fn with_fault(mut self, fault: Fault) -> Evaluator {
        self.fault = Some(fault);
        self
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    /// Evaluates `form` at weight `w`, checking the form's hypotheses and
    /// weight range first.
    pub fn evaluate(&self, form: FormId, w: usize) -> Result<BigInt> {
        form.check_params(self.params)?;
        let (lo, hi) = form.weight_range(self.params);
        if w < lo || w > hi {
            return Err(Error::WeightOutOfRange {
                what: "formula",
                w: w as i64,
                lo: lo as i64,
                hi: hi as i64,
            });
        }
        if let FormId::SigmaW3(_) = form {
            match self.radius {
                RadiusGate::Assumed | RadiusGate::Known(3) => {}
                RadiusGate::Known(r) => {
                    return Err(Error::Inadmissible {
                        what: form.to_string(),
                        reason: format!("needs covering radius 3, the code has R = {r}"),
                    })
                }
                RadiusGate::Unknown => {
                    return Err(Error::Inadmissible {
                        what: form.to_string(),
                        reason: "covering radius 3 not established (run a census or assume it)"
                            .into(),
                    })
                }
            }
        }
        self.active.set(Some(form));
        self.calls.set(0);
        let _guard = ActiveForm(self);
        let w = w as i64;
        match form {
            FormId::CodeWeight => self.code_weight(w),
            FormId::Cheung { t_cap } => self.cheung(t_cap as i64, w),
            FormId::SigmaLe1(v) => self.sigma_le1(v, w),
            FormId::SigmaW1(v) => self.sigma_w1(v, w),
            FormId::SigmaLe2 => self.sigma_le2(w),
            FormId::SigmaW2(v) => self.sigma_w2(v, w),
            FormId::SigmaW3(v) => self.sigma_w3(v, w),
        }
    }

    /// Number of binomial coefficients computed by one evaluation of `form`
    /// at `w`; the range of meaningful [`Fault::call`] values.
    pub fn binomial_calls(&self, form: FormId, w: usize) -> Result<usize> {
        self.evaluate(form, w)?;
        Ok(self.calls.get())
    }

    /// The spectrum of cosets of weight `coset_weight` over every `w = 0..=n`.
    ///
    /// On its stated range each theorem supplies the values (first listed
    /// form); below it the counts are forced: a weight-W coset holds no vector
    /// lighter than W, and for `W <= t` exactly one of weight W.
    pub fn full_spectrum(&self, coset_weight: usize) -> Result<Spectrum> {
        let form = match coset_weight {
            0 => FormId::CodeWeight,
            1 => FormId::SigmaW1(W1Form::PowerSum),
            2 => FormId::SigmaW2(W2Form::PowerSum),
            3 => FormId::SigmaW3(W3Form::Complement),
            _ => {
                return Err(Error::Inadmissible {
                    what: format!("spectrum of weight-{coset_weight} cosets"),
                    reason: "only coset weights 0..=3 have closed forms".into(),
                })
            }
        };
        form.check_params(self.params)?;
        let (lo, _) = form.weight_range(self.params);
        let counts = (0..=self.params.n())
            .map(|w| {
                if w >= lo {
                    self.evaluate(form, w)
                } else if w == coset_weight {
                    self.leader_count(coset_weight)
                } else {
                    Ok(BigInt::from(0))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Spectrum::from_signed("full spectrum", counts)
    }

    /// Number of cosets of weight `W` for `W <= 2` (each has a unique
    /// leader): `binom(n, W)(q - 1)^W`.
    fn leader_count(&self, coset_weight: usize) -> Result<BigInt> {
        let (n, q) = (self.params.n() as i64, self.params.q() as i64);
        let w = coset_weight as i64;
        Ok(self.binom(n, w)? * crate::combinatorics::pow(q - 1, w))
    }
}

/// Cumulative spectrum over cosets of weight `<= t_cap` (Cheung's `D_u`).
pub fn cheung_cumulative(params: CodeParams, t_cap: usize, u: usize) -> Result<BigInt> {
    Evaluator::new(params).evaluate(FormId::Cheung { t_cap }, u)
}

/// Cumulative spectrum over cosets of weight `<= 1`, `d - 1 <= w <= n`.
pub fn sigma_le1(params: CodeParams, w: usize, form: Le1Form) -> Result<BigInt> {
    Evaluator::new(params).evaluate(FormId::SigmaLe1(form), w)
}

/// Spectrum of the weight-1 cosets, `d - 1 <= w <= n`.
pub fn sigma_w1(params: CodeParams, w: usize, form: W1Form) -> Result<BigInt> {
    Evaluator::new(params).evaluate(FormId::SigmaW1(form), w)
}

/// Cumulative spectrum over cosets of weight `<= 2`, `d - 2 <= w <= n`.
pub fn sigma_le2(params: CodeParams, w: usize) -> Result<BigInt> {
    Evaluator::new(params).evaluate(FormId::SigmaLe2, w)
}

/// Spectrum of the weight-2 cosets, `d - 2 <= w <= n`.
pub fn sigma_w2(params: CodeParams, w: usize, form: W2Form) -> Result<BigInt> {
    Evaluator::new(params).evaluate(FormId::SigmaW2(form), w)
}

/// Spectrum of the weight-3 cosets of an `[n, n-4, 5]_q` code with covering
/// radius 3, `3 <= w <= n`.
pub fn sigma_w3(params: CodeParams, w: usize, form: W3Form, radius: RadiusGate) -> Result<BigInt> {
    Evaluator::new(params)
        .with_covering_radius(radius)
        .evaluate(FormId::SigmaW3(form), w)
}

/// See [`Evaluator::full_spectrum`].
pub fn full_spectrum(
    params: CodeParams,
    coset_weight: usize,
    radius: RadiusGate,
) -> Result<Spectrum> {
    Evaluator::new(params)
        .with_covering_radius(radius)
        .full_spectrum(coset_weight)
}

/// The auxiliary quantities `Omega^(j)`, `Phi^(j)`, `Delta` and `Delta*` at one
/// weight. A term is absent where one of its binomials would need a negative
/// upper argument, or (for `Phi`) outside `n = q + 1`, `d = 5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelperTerms {
    w: usize,
    omega: [Option<BigInt>; 3],
    phi: [Option<BigInt>; 2],
    delta: Option<BigInt>,
    delta_star: Option<BigRational>,
}

impl HelperTerms {
    /// `Omega_w^(j)` for `j` in `0..=2`.
    pub fn omega(&self, j: usize) -> Result<&BigInt> {
        self.omega
            .get(j)
            .and_then(Option::as_ref)
            .ok_or_else(|| self.undefined(format!("Omega^({j})")))
    }

    /// `Phi_w^(j)` for `j` in `1..=2`; only for `n = q + 1`, `d = 5`.
    pub fn phi(&self, j: usize) -> Result<&BigInt> {
        j.checked_sub(1)
            .and_then(|i| self.phi.get(i))
            .and_then(Option::as_ref)
            .ok_or_else(|| self.undefined(format!("Phi^({j})")))
    }

    pub fn delta(&self) -> Result<&BigInt> {
        self.delta
            .as_ref()
            .ok_or_else(|| self.undefined("Delta".into()))
    }

    pub fn delta_star(&self) -> Result<&BigRational> {
        self.delta_star
            .as_ref()
            .ok_or_else(|| self.undefined("Delta*".into()))
    }

    fn undefined(&self, name: String) -> Error {
        Error::HelperUndefined {
            name,
            w: self.w as i64,
        }
    }
}

/// Evaluates every helper term at `w`, `0 <= w <= n`.
pub fn helper_terms(params: CodeParams, w: usize) -> Result<HelperTerms> {
    if w > params.n() {
        return Err(Error::WeightOutOfRange {
            what: "helper terms",
            w: w as i64,
            lo: 0,
            hi: params.n() as i64,
        });
    }
    let b = ExactBinomials;
    let wi = w as i64;
    let defined = |r: Result<BigInt>| r.ok();
    let omega = [0, 1, 2].map(|j| defined(theorems::omega(&b, params, wi, j)));
    let phi = if params.is_full_length() && params.d() == 5 {
        [1, 2].map(|j| defined(theorems::phi(&b, params.q() as i64, wi, j)))
    } else {
        [None, None]
    };
    Ok(HelperTerms {
        w,
        omega,
        phi,
        delta: defined(theorems::delta(&b, params, wi)),
        delta_star: theorems::delta_star(&b, params, wi).ok(),
    })
}
