//! Formula bodies. Weights and parameters are `i64` so that exponents and
//! binomial arguments such as `w - d` can go negative where a sum is empty.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Evaluator, Le1Form, W1Form, W2Form, W3Form};
use crate::code::{sphere_volume_with, weight_distribution_with, CodeParams};
use crate::combinatorics::{pow, sign, BinomialSource};
use crate::error::{Error, Result};

/// `Omega_w^(j) = (-1)^{w-d} binom(n-j, w-j) binom(w-j-1, d-j-2)`.
pub(super) fn omega<B: BinomialSource>(
    b: &B,
    params: CodeParams,
    w: i64,
    j: i64,
) -> Result<BigInt> {
    let (n, d) = (params.n() as i64, params.d() as i64);
    Ok(sign(w - d) * b.binom(n - j, w - j)? * b.binom(w - j - 1, d - j - 2)?)
}

/// `Phi_w^(j) = (-1)^{w-5}[binom(q+1,w)binom(w-1,3) - binom(q+1-j,w-j)binom(w-1-j,3-j)]`.
pub(super) fn phi<B: BinomialSource>(b: &B, q: i64, w: i64, j: i64) -> Result<BigInt> {
    Ok(sign(w - 5)
        * (b.binom(q + 1, w)? * b.binom(w - 1, 3)?
            - b.binom(q + 1 - j, w - j)? * b.binom(w - 1 - j, 3 - j)?))
}

/// `Delta_w = (-1)^{w-d} binom(n,w) binom(w,d-2) binom(n-d+2,2) (q-1)`.
pub(super) fn delta<B: BinomialSource>(b: &B, params: CodeParams, w: i64) -> Result<BigInt> {
    let (n, q, d) = (params.n() as i64, params.q() as i64, params.d() as i64);
    Ok(sign(w - d) * b.binom(n, w)? * b.binom(w, d - 2)? * b.binom(n - d + 2, 2)? * (q - 1))
}

/// `Delta*_w = (-1)^{w-d} binom(n-d+2, n-w) binom(n-2, d-2) / (q-1)`, exactly.
pub(super) fn delta_star<B: BinomialSource>(
    b: &B,
    params: CodeParams,
    w: i64,
) -> Result<BigRational> {
    let (n, q, d) = (params.n() as i64, params.q() as i64, params.d() as i64);
    let numer = sign(w - d) * b.binom(n - d + 2, n - w)? * b.binom(n - 2, d - 2)?;
    Ok(BigRational::new(numer, BigInt::from(q - 1)))
}

fn halve(what: &'static str, x: BigInt) -> Result<BigInt> {
    let (half, rem) = x.div_rem(&BigInt::from(2));
    if rem.is_zero() {
        Ok(half)
    } else {
        Err(Error::NonIntegral {
            what,
            value: format!("{x}/2"),
        })
    }
}

fn integral(what: &'static str, r: BigRational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral {
            what,
            value: r.to_string(),
        })
    }
}

impl Evaluator {
    fn nqd(&self) -> (i64, i64, i64) {
        let p = self.params;
        (p.n() as i64, p.q() as i64, p.d() as i64)
    }

    pub(super) fn code_weight(&self, w: i64) -> Result<BigInt> {
        weight_distribution_with(self, self.params, w)
    }

    fn volume(&self, len: i64, t: i64) -> Result<BigInt> {
        sphere_volume_with(self, len, self.params.q() as i64, t)
    }

    /// `sum_{j=0}^{w+1-d} (-1)^j binom(w,j) q^{w+1-d-j}`.
    fn power_sum(&self, w: i64) -> Result<BigInt> {
        let (_, q, d) = self.nqd();
        let mut s = BigInt::zero();
        for j in 0..=w + 1 - d {
            s += sign(j) * self.binom(w, j)? * pow(q, w + 1 - d - j);
        }
        Ok(s)
    }

    /// `sum_{j=0}^{w-d} (-1)^j binom(w,j) (q^{w+1-d-j} - 1)`.
    fn shifted_sum(&self, w: i64) -> Result<BigInt> {
        let (_, q, d) = self.nqd();
        let mut s = BigInt::zero();
        for j in 0..=w - d {
            s += sign(j) * self.binom(w, j)? * (pow(q, w + 1 - d - j) - 1);
        }
        Ok(s)
    }

    pub(super) fn cheung(&self, t: i64, u: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        let mut total = BigInt::zero();
        for j in 0..=u - d + t {
            let n_j = if j <= u - d {
                let mut ball = BigInt::zero();
                for i in 0..=t {
                    ball += self.binom(u - j, i)? * pow(q - 1, i);
                }
                self.binom(u, j)? * (pow(q, u - d + 1 - j) * self.volume(n, t)? - ball)
            } else {
                let mut outer = BigInt::zero();
                for w in d - u + j..=t {
                    let mut weights = BigInt::zero();
                    for i in 0..=w - d + u - j {
                        weights +=
                            sign(i) * self.binom(w, i)? * (pow(q, w - d + u - j - i + 1) - 1);
                    }
                    let mut spread = BigInt::zero();
                    for s in w..=t {
                        spread += self.binom(u - j, s - w)? * pow(q - 1, s - w);
                    }
                    outer += self.binom(n - u + j, w)? * weights * spread;
                }
                self.binom(u, j)? * outer
            };
            total += sign(j) * n_j;
        }
        Ok(self.binom(n, u)? * total)
    }

    pub(super) fn sigma_le1(&self, form: Le1Form, w: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        match form {
            Le1Form::Lemma => {
                let mut s = BigInt::zero();
                for j in 0..=w - d {
                    let bracket = pow(q, w - d + 1 - j) * (1 + n * (q - 1)) - 1 - (w - j) * (q - 1);
                    s += sign(j) * self.binom(w, j)? * bracket;
                }
                let tail = sign(w - d) * self.binom(w, d - 1)? * ((n - d + 1) * (q - 1));
                Ok(self.binom(n, w)? * (s - tail))
            }
            Le1Form::Corollary => {
                let mut s = BigInt::zero();
                for j in 0..=1 {
                    s += sign(j) * self.binom(n - j, w - j)? * self.binom(w - j - 1, d - j - 2)?;
                }
                Ok(self.code_weight(w)? * self.volume(n, 1)? - sign(w - d) * (n * (q - 1)) * s)
            }
        }
    }

    pub(super) fn sigma_w1(&self, form: W1Form, w: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        let nq = BigInt::from(n * (q - 1));
        match form {
            W1Form::PowerSum => Ok(self.binom(n, w)?
                * (q - 1)
                * (n * self.power_sum(w)? + sign(w - d) * w * self.binom(w - 2, d - 3)?)),
            W1Form::PowerSumOmega => {
                Ok(nq * (self.binom(n, w)? * self.power_sum(w)? + omega(self, self.params, w, 1)?))
            }
            W1Form::ShiftedSumOmega => Ok(nq
                * (self.binom(n, w)? * self.shifted_sum(w)? - omega(self, self.params, w, 0)?
                    + omega(self, self.params, w, 1)?)),
            W1Form::WeightOmega => Ok(nq
                * (self.code_weight(w)? - omega(self, self.params, w, 0)?
                    + omega(self, self.params, w, 1)?)),
            W1Form::WeightExplicit => {
                let inner = self.binom(n, w)? * self.binom(w - 1, d - 2)?
                    - self.binom(n - 1, w - 1)? * self.binom(w - 2, d - 3)?;
                Ok(nq * (self.code_weight(w)? - sign(w - d) * inner))
            }
            W1Form::FullLength => {
                let mut s = BigInt::zero();
                for i in 0..=w - d {
                    s += sign(i)
                        * (self.binom(w, i + 1)? - self.binom(w, i)?)
                        * pow(q, w + 1 - d - i);
                }
                let tail = sign(w - d) * (self.binom(w, d - 1)? - w * self.binom(w - 2, d - 3)?);
                Ok(self.binom(q + 1, w)? * (q - 1) * (pow(q, w + 2 - d) - s - tail))
            }
            W1Form::FullLengthD5 => Ok((q * q - 1) * (self.code_weight(w)? - phi(self, q, w, 1)?)),
        }
    }

    pub(super) fn sigma_le2(&self, w: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        let mut s = BigInt::zero();
        for j in 0..=w - d {
            s += sign(j)
                * self.binom(w, j)?
                * (pow(q, w - d + 1 - j) * self.volume(n, 2)? - self.volume(w - j, 2)?);
        }
        let tail = halve(
            "cumulative <= 2 spectrum",
            (n - d + 1)
                * (q - 1)
                * (self.binom(w, d - 1)? * (2 + (q - 1) * (n + d - 2))
                    - self.binom(w, d - 2)? * (n - d + 2)),
        )?;
        Ok(self.binom(n, w)? * (s - sign(w - d) * tail))
    }

    pub(super) fn sigma_w2(&self, form: W2Form, w: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        let p = self.params;
        let pairs = || -> Result<BigInt> { Ok(self.binom(n, 2)? * pow(q - 1, 2)) };
        match form {
            W2Form::PowerSum => Ok(self.binom(n, w)?
                * pow(q - 1, 2)
                * (self.binom(n, 2)? * self.power_sum(w)?
                    + sign(w - d) * self.binom(w, 2)? * self.binom(w - 3, d - 4)?)
                + delta(self, p, w)?),
            W2Form::PowerSumOmega => Ok(pairs()?
                * (self.binom(n, w)? * self.power_sum(w)? + omega(self, p, w, 2)?)
                + delta(self, p, w)?),
            W2Form::ShiftedSumOmega => Ok(pairs()?
                * (self.binom(n, w)? * self.shifted_sum(w)? - omega(self, p, w, 0)?
                    + omega(self, p, w, 2)?)
                + delta(self, p, w)?),
            W2Form::WeightDeltaStar => {
                let main = pairs()?
                    * (self.code_weight(w)? - omega(self, p, w, 0)? + omega(self, p, w, 2)?);
                let star = BigRational::from(pairs()?) * delta_star(self, p, w)?;
                Ok(main + integral("binom(n,2)(q-1)^2 Delta*", star)?)
            }
            W2Form::WeightExplicit => {
                let inner = self.binom(n, w)? * self.binom(w - 1, d - 2)?
                    - self.binom(n - 2, w - 2)? * self.binom(w - 3, d - 4)?;
                Ok(pairs()? * (self.code_weight(w)? - sign(w - d) * inner)
                    + sign(w - d)
                        * self.binom(n, 2)?
                        * (q - 1)
                        * self.binom(n - d + 2, n - w)?
                        * self.binom(n - 2, d - 2)?)
            }
            W2Form::FullLengthD5 => {
                let third = BigRational::new(
                    sign(w - 5) * self.binom(q - 2, w - 3)? * self.binom(q - 2, 2)?,
                    BigInt::from(3),
                );
                let bracket = BigRational::from(self.code_weight(w)? - phi(self, q, w, 2)?) + third;
                let scale = self.binom(q + 1, 2)? * pow(q - 1, 2);
                integral(
                    "weight-2 spectrum at n = q + 1",
                    BigRational::from(scale) * bracket,
                )
            }
        }
    }

    /// Weight-1 total at any weight: the theorem on its range, the leader
    /// count at `w = 1`, zero elsewhere.
    fn w1_total(&self, w: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        if w >= d - 1 {
            self.sigma_w1(W1Form::PowerSum, w)
        } else if w == 1 {
            Ok(BigInt::from(n * (q - 1)))
        } else {
            Ok(BigInt::zero())
        }
    }

    fn w2_total(&self, w: i64) -> Result<BigInt> {
        let (n, q, d) = self.nqd();
        if w >= d - 2 {
            self.sigma_w2(W2Form::PowerSum, w)
        } else if w == 2 {
            Ok(self.binom(n, 2)? * pow(q - 1, 2))
        } else {
            Ok(BigInt::zero())
        }
    }

    pub(super) fn sigma_w3(&self, form: W3Form, w: i64) -> Result<BigInt> {
        let (n, q, _) = self.nqd();
        let everything = self.binom(n, w)? * pow(q - 1, w);
        match form {
            W3Form::Complement => Ok(everything - self.sigma_le2(w)?),
            W3Form::Decomposed => {
                Ok(everything - (self.code_weight(w)? + self.w1_total(w)? + self.w2_total(w)?))
            }
            W3Form::ComplementExpanded => {
                let mut s = BigInt::zero();
                for j in 0..=w - 5 {
                    s += sign(j)
                        * self.binom(w, j)?
                        * (pow(q, w - 4 - j) * self.volume(n, 2)? - self.volume(w - j, 2)?);
                }
                let tail = halve(
                    "weight-3 spectrum",
                    (n - 4)
                        * (q - 1)
                        * (self.binom(w, 4)? * (2 + (q - 1) * (n + 3))
                            - self.binom(w, 3)? * (n - 3)),
                )?;
                Ok(everything - self.binom(n, w)? * (s - sign(w - 5) * tail))
            }
            W3Form::FullLength => {
                let mut s = BigInt::zero();
                for j in 0..=w - 5 {
                    s += sign(j)
                        * self.binom(w, j)?
                        * (pow(q, w - 4 - j) * self.volume(q + 1, 2)? - self.volume(w - j, 2)?);
                }
                let tail = halve(
                    "weight-3 spectrum at n = q + 1",
                    (q - 3)
                        * (q - 1)
                        * (self.binom(w, 4)? * (q * q + 3 * q - 2) - self.binom(w, 3)? * (q - 2)),
                )?;
                Ok(everything - self.binom(q + 1, w)? * (s - sign(w - 5) * tail))
            }
            W3Form::FullLengthCompact => {
                let p = self.params;
                let covered = self.volume(q + 1, 2)? * self.code_weight(w)?
                    - (q * q - 1) * phi(self, q, w, 1)?
                    - self.binom(q + 1, 2)? * pow(q - 1, 2) * phi(self, q, w, 2)?
                    + delta(self, p, w)?;
                Ok(everything - covered)
            }
        }
    }
}
