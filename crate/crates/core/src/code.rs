//! MDS code parameters, concrete (extended) Reed–Solomon codes, and the
//! closed-form weight distribution and sphere volume.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::combinatorics::{pow, sign, BinomialSource, ExactBinomials};
use crate::error::{Error, Result};
use crate::field::{prime_power, Field, FieldElement};

/// Parameters of an `[n, k, d = n - k + 1]_q` MDS code with `1 <= k <= n <= q + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeParams {
    n: usize,
    k: usize,
    q: usize,
}

impl CodeParams {
    pub fn new(n: usize, k: usize, q: usize) -> Result<CodeParams> {
        if prime_power(q as u64).is_none() {
            return Err(Error::InvalidParams(format!(
                "q = {q} is not a prime power"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidParams(format!("k = {k} violates 1 <= k")));
        }
        if k > n {
            return Err(Error::InvalidParams(format!(
                "k = {k} > n = {n} violates k <= n"
            )));
        }
        if n > q + 1 {
            return Err(Error::InvalidParams(format!(
                "n = {n} > q + 1 = {} violates n <= q + 1",
                q + 1
            )));
        }
        Ok(CodeParams { n, k, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Minimum distance `n - k + 1`.
    pub fn d(&self) -> usize {
        self.n - self.k + 1
    }

    /// Number of correctable errors `floor((d - 1) / 2)`.
    pub fn t(&self) -> usize {
        (self.d() - 1) / 2
    }

    /// `n = q + 1`, the longest length realized by an extended RS code.
    pub fn is_full_length(&self) -> bool {
        self.n == self.q + 1
    }

    /// Every prime power `q` in `2..=max_q` and every `1 <= k <= n <= q + 1`.
    pub fn all_up_to(max_q: usize) -> impl Iterator<Item = CodeParams> {
        (2..=max_q)
            .filter(|&q| prime_power(q as u64).is_some())
            .flat_map(|q| (1..=q + 1).flat_map(move |n| (1..=n).map(move |k| (n, k, q))))
            .map(|(n, k, q)| CodeParams { n, k, q })
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]_{}", self.n, self.k, self.d(), self.q)
    }
}

/// Counts indexed by Hamming weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Spectrum(Vec<BigUint>);

impl Spectrum {
    pub fn zeros(n: usize) -> Spectrum {
        Spectrum(vec![BigUint::zero(); n + 1])
    }

    /// Fails on any negative entry.
    pub fn from_signed(what: &'static str, counts: Vec<BigInt>) -> Result<Spectrum> {
        counts
            .into_iter()
            .enumerate()
            .map(|(w, c)| match c.sign() {
                Sign::Minus => Err(Error::NegativeCount {
                    what,
                    w,
                    value: c.to_string(),
                }),
                _ => Ok(c.magnitude().clone()),
            })
            .collect::<Result<Vec<_>>>()
            .map(Spectrum)
    }

    pub fn max_weight(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, w: usize) -> &BigUint {
        &self.0[w]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.0
    }

    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }

    pub(crate) fn add_counts(&mut self, counts: &[u64]) {
        for (acc, &c) in self.0.iter_mut().zip(counts) {
            *acc += c;
        }
    }
}

impl From<Vec<BigUint>> for Spectrum {
    fn from(v: Vec<BigUint>) -> Spectrum {
        Spectrum(v)
    }
}

/// A concrete MDS code: Reed–Solomon for `n <= q`, singly-extended
/// Reed–Solomon for `n = q + 1`.
#[derive(Clone, Debug)]
pub struct MdsCode {
    params: CodeParams,
    field: Field,
    generator: Vec<Vec<FieldElement>>,
    parity_check: Vec<Vec<FieldElement>>,
}

impl MdsCode {
    /// Evaluation points are the first `n` field elements in index order
    /// (or all `q` of them); row `i` of the generator evaluates `x^i`. At
    /// `n = q + 1` the last coordinate carries the coefficient of `x^(k-1)`.
    pub fn new(params: CodeParams) -> Result<MdsCode> {
        let field = Field::new(params.q() as u64)?;
        let (n, k) = (params.n(), params.k());
        let points: Vec<FieldElement> = field.elements().take(n.min(params.q())).collect();
        let generator: Vec<Vec<FieldElement>> = (0..k)
            .map(|i| {
                let mut row: Vec<FieldElement> = points.iter().map(|&a| field.pow(a, i)).collect();
                if params.is_full_length() {
                    row.push(if i == k - 1 {
                        FieldElement::ONE
                    } else {
                        FieldElement::ZERO
                    });
                }
                row
            })
            .collect();
        let parity_check = null_space(&field, &generator, n);
        Ok(MdsCode {
            params,
            field,
            generator,
            parity_check,
        })
    }

    pub fn params(&self) -> CodeParams {
        self.params
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `k x n` generator matrix, row-major.
    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    /// `(n - k) x n` parity-check matrix, row-major.
    pub fn parity_check(&self) -> &[Vec<FieldElement>] {
        &self.parity_check
    }

    /// `H x^T` for a length-n vector.
    pub fn syndrome(&self, x: &[FieldElement]) -> Vec<FieldElement> {
        self.parity_check
            .iter()
            .map(|row| dot(&self.field, row, x))
            .collect()
    }

    pub fn encode(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len(), self.params.k());
        (0..self.params.n())
            .map(|j| {
                message
                    .iter()
                    .zip(&self.generator)
                    .fold(FieldElement::ZERO, |acc, (&m, row)| {
                        self.field.add(acc, self.field.mul(m, row[j]))
                    })
            })
            .collect()
    }

    /// Histogram of codeword weights, by enumerating all `q^k` messages.
    pub fn codeword_weights(&self) -> Vec<u64> {
        let (n, k, q) = (self.params.n(), self.params.k(), self.params.q());
        let f = &self.field;
        let mut hist = vec![0u64; n + 1];
        let mut message = vec![0usize; k];
        let mut word = vec![FieldElement::ZERO; n];
        loop {
            hist[word.iter().filter(|x| !x.is_zero()).count()] += 1;
            // Odometer step; adjust the codeword by the changed row only.
            let mut i = 0;
            loop {
                if i == k {
                    return hist;
                }
                let old = f.element(message[i]).unwrap();
                let next = (message[i] + 1) % q;
                let delta = f.sub(f.element(next).unwrap(), old);
                for (x, &g) in word.iter_mut().zip(&self.generator[i]) {
                    *x = f.add(*x, f.mul(delta, g));
                }
                message[i] = next;
                if next != 0 {
                    break;
                }
                i += 1;
            }
        }
    }

    /// Exhaustive MDS check: every set of `k` generator columns has full rank.
    pub fn is_mds(&self) -> bool {
        let (n, k) = (self.params.n(), self.params.k());
        let mut cols: Vec<usize> = (0..k).collect();
        loop {
            let minor: Vec<Vec<FieldElement>> = self
                .generator
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect();
            if rank(&self.field, minor) < k {
                return false;
            }
            // Next k-subset in lexicographic order.
            let Some(i) = (0..k).rev().find(|&i| cols[i] < n - k + i) else {
                return true;
            };
            cols[i] += 1;
            for j in i + 1..k {
                cols[j] = cols[j - 1] + 1;
            }
        }
    }
}

fn dot(f: &Field, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(FieldElement::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Reduced row echelon form in place; returns the pivot columns.
fn row_reduce(f: &Field, m: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let factor = row[c];
            if i != r && !factor.is_zero() {
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

fn rank(f: &Field, mut m: Vec<Vec<FieldElement>>) -> usize {
    row_reduce(f, &mut m).len()
}

/// Basis of `{ h : G h^T = 0 }`, one row per non-pivot column of RREF(G).
fn null_space(f: &Field, g: &[Vec<FieldElement>], n: usize) -> Vec<Vec<FieldElement>> {
    let mut r = g.to_vec();
    let pivots = row_reduce(f, &mut r);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut h = vec![FieldElement::ZERO; n];
            h[free] = FieldElement::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                h[pc] = f.neg(r[row][free]);
            }
            h
        })
        .collect()
}

pub(crate) fn weight_distribution_with<B: BinomialSource>(
    b: &B,
    params: CodeParams,
    w: i64,
) -> Result<BigInt> {
    let (n, q, d) = (params.n() as i64, params.q() as i64, params.d() as i64);
    if !(0..=n).contains(&w) {
        return Err(Error::WeightOutOfRange {
            what: "A_w",
            w,
            lo: 0,
            hi: n,
        });
    }
    if w == 0 {
        return Ok(BigInt::one());
    }
    if w < d {
        return Ok(BigInt::zero());
    }
    let mut sum = BigInt::zero();
    for j in 0..=w - d {
        sum += sign(j) * b.binom(w, j)? * (pow(q, w - d + 1 - j) - 1);
    }
    Ok(b.binom(n, w)? * sum)
}

pub(crate) fn sphere_volume_with<B: BinomialSource>(
    b: &B,
    n: i64,
    q: i64,
    t: i64,
) -> Result<BigInt> {
    let mut v = BigInt::zero();
    for i in 0..=t {
        v += pow(q - 1, i) * b.binom(n, i)?;
    }
    Ok(v)
}

/// Number `A_w` of weight-w codewords of an MDS code with these parameters.
///
/// The alternating sum holds for `w >= d`; below it the values are forced:
/// one zero word and nothing else of weight `< d`.
pub fn mds_weight(params: CodeParams, w: usize) -> Result<BigInt> {
    weight_distribution_with(&ExactBinomials, params, w as i64)
}

/// The full weight distribution `A_0..A_n`.
pub fn mds_weight_spectrum(params: CodeParams) -> Result<Spectrum> {
    let counts = (0..=params.n())
        .map(|w| mds_weight(params, w))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::from_signed("A_w", counts)
}

/// `V_n(t) = sum_{i=0}^{t} (q - 1)^i binom(n, i)`.
pub fn sphere_volume(n: usize, q: usize, t: usize) -> Result<BigInt> {
    if t > n {
        return Err(Error::WeightOutOfRange {
            what: "sphere radius",
            w: t as i64,
            lo: 0,
            hi: n as i64,
        });
    }
    sphere_volume_with(&ExactBinomials, n as i64, q as i64, t as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom;
    use num_traits::ToPrimitive;

    fn params(n: usize, k: usize, q: usize) -> CodeParams {
        CodeParams::new(n, k, q).unwrap()
    }

    #[test]
    fn derived_parameters() {
        let p = params(6, 2, 5);
        assert_eq!((p.d(), p.t()), (5, 2));
        let p = params(5, 3, 4);
        assert_eq!((p.d(), p.t()), (3, 1));
    }

    #[test]
    fn invalid_parameters_name_the_constraint() {
        let msg = CodeParams::new(10, 2, 5).unwrap_err().to_string();
        assert!(msg.contains("n <= q + 1"), "{msg}");
        let msg = CodeParams::new(4, 5, 5).unwrap_err().to_string();
        assert!(msg.contains("k <= n"), "{msg}");
        let msg = CodeParams::new(4, 0, 5).unwrap_err().to_string();
        assert!(msg.contains("1 <= k"), "{msg}");
        let msg = CodeParams::new(4, 2, 6).unwrap_err().to_string();
        assert!(msg.contains("prime power"), "{msg}");
    }

    #[test]
    fn repetition_code_over_gf2() {
        let code = MdsCode::new(params(3, 1, 2)).unwrap();
        let one = FieldElement::ONE;
        assert_eq!(code.generator(), &[vec![one, one, one]]);
        assert_eq!(code.codeword_weights(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn extended_rs_625_over_gf5() {
        let code = MdsCode::new(params(6, 2, 5)).unwrap();
        let hist = code.codeword_weights();
        assert_eq!(hist.iter().sum::<u64>(), 25);
        assert_eq!(hist, vec![1, 0, 0, 0, 0, 24, 0]);
        assert!(code.is_mds());
    }

    #[test]
    fn generator_is_orthogonal_to_parity_check() {
        for p in CodeParams::all_up_to(9).filter(|p| p.k() < p.n()) {
            let code = MdsCode::new(p).unwrap();
            assert_eq!(code.parity_check().len(), p.n() - p.k());
            for row in code.generator() {
                assert!(code.syndrome(row).iter().all(|s| s.is_zero()), "{p}");
            }
        }
    }

    #[test]
    fn constructed_codes_are_mds() {
        for p in CodeParams::all_up_to(9).filter(|p| p.n() <= 8) {
            assert!(MdsCode::new(p).unwrap().is_mds(), "{p}");
        }
    }

    #[test]
    fn weight_examples() {
        let p = params(6, 2, 5);
        assert_eq!(mds_weight(p, 5).unwrap(), BigInt::from(24));
        assert_eq!(mds_weight(p, 6).unwrap(), BigInt::from(0));
        assert_eq!(mds_weight(p, 3).unwrap(), BigInt::from(0));
        assert_eq!(mds_weight(p, 0).unwrap(), BigInt::from(1));
        assert!(mds_weight(p, 7).is_err());
    }

    #[test]
    fn sphere_volume_examples() {
        assert_eq!(sphere_volume(6, 5, 0).unwrap(), BigInt::from(1));
        assert_eq!(sphere_volume(6, 5, 1).unwrap(), BigInt::from(25));
        // Brute-force count of vectors of weight <= 2 in GF(5)^6.
        let weight = |mut x: u32| {
            let mut wt = 0;
            for _ in 0..6 {
                wt += u32::from(!x.is_multiple_of(5));
                x /= 5;
            }
            wt
        };
        let brute = (0..5u32.pow(6)).filter(|&x| weight(x) <= 2).count();
        assert_eq!(brute, 265);
        assert_eq!(sphere_volume(6, 5, 2).unwrap(), BigInt::from(brute));
        assert!(sphere_volume(3, 5, 4).is_err());
    }

    #[test]
    fn weight_distribution_mass_balance() {
        for p in CodeParams::all_up_to(9) {
            let total: BigInt = (0..=p.n()).map(|w| mds_weight(p, w).unwrap()).sum();
            assert_eq!(total, pow(p.q() as i64, p.k() as i64), "{p}");
        }
    }

    #[test]
    fn minimum_distance_term() {
        for p in CodeParams::all_up_to(9) {
            let d = p.d() as i64;
            let expected = binom(p.n() as i64, d).unwrap() * (p.q() as i64 - 1);
            assert_eq!(mds_weight(p, p.d()).unwrap(), expected, "{p}");
        }
    }

    #[test]
    fn enumeration_matches_weight_distribution() {
        for p in CodeParams::all_up_to(9) {
            if (p.q() as f64).powi(p.k() as i32) > 1e6 {
                continue;
            }
            let hist = MdsCode::new(p).unwrap().codeword_weights();
            let formula: Vec<u64> = (0..=p.n())
                .map(|w| mds_weight(p, w).unwrap().to_u64().unwrap())
                .collect();
            assert_eq!(hist, formula, "{p}");
        }
    }
}
