//! Exact integer combinatorics.
//!
//! Every count in the crate is a [`BigInt`]. Binomial coefficients follow the
//! usual combinatorial convention: `binom(n, k) = 0` whenever `k < 0` or
//! `k > n`, which lets the spectrum formulas sum over ranges without guarding
//! vanishing terms. A negative upper argument is a domain error.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `n! / (k! (n - k)!)`, or zero when `k` lies outside `0..=n`.
pub fn binom(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeBinomialTop { n });
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    // Multiplicative form; each partial product is itself a binomial, so the
    // division is always exact.
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(BigInt::from(acc))
}

/// Where the spectrum formulas draw their binomial coefficients from.
///
/// [`ExactBinomials`] is the plain source; the formula evaluator implements it
/// too so that a single binomial term can be perturbed in tests.
pub trait BinomialSource {
    fn binom(&self, n: i64, k: i64) -> Result<BigInt>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExactBinomials;

impl BinomialSource for ExactBinomials {
    fn binom(&self, n: i64, k: i64) -> Result<BigInt> {
        binom(n, k)
    }
}

/// `(-1)^e` as a [`BigInt`], for any integer exponent.
pub fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `base^e` for a nonnegative exponent.
///
/// Panics on a negative exponent: every power in the formulas has an exponent
/// that is nonnegative on the formula's stated range.
pub fn pow(base: i64, e: i64) -> BigInt {
    assert!(e >= 0, "negative exponent {e} in an integer power");
    num_traits::pow(BigInt::from(base), e as usize)
}

/// `sum_{k=0}^{m} (-1)^k binom(n, k)`, summed term by term.
pub fn alt_binom_sum(n: i64, m: i64) -> Result<BigInt> {
    if n < 1 || m < 0 {
        return Err(Error::AlternatingSumDomain { n, m });
    }
    let mut sum = BigInt::zero();
    for k in 0..=m {
        sum += sign(k) * binom(n, k)?;
    }
    Ok(sum)
}
