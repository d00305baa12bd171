//! Table-backed arithmetic in GF(q) for prime powers q <= 32.
//!
//! An element is a dense index in `0..q`. Index `i` stands for the polynomial
//! whose coefficients over GF(p) are the base-`p` digits of `i`, least
//! significant digit first, reduced modulo the field's defining polynomial.
//! So index 0 is zero, index 1 is one, and for `m > 1` index `p` is the class
//! of `x`.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 32;

/// An element of a [`Field`], addressed by its dense index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(q), q = p^m.
#[derive(Clone)]
pub struct Field {
    q: usize,
    p: usize,
    m: usize,
    /// Monic defining polynomial, coefficients low to high (length m + 1).
    modulus: Vec<u8>,
    add: Vec<u8>,
    neg: Vec<u8>,
    /// exp[i] = g^i for i in 0..2(q-1), so products need no reduction.
    exp: Vec<u8>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u8>,
    primitive: FieldElement,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds GF(q). The defining polynomial is the smallest monic irreducible
    /// polynomial of degree m over GF(p), ordering candidates by the integer
    /// whose base-p digits are their lower coefficients.
    pub fn new(q: u64) -> Result<Field> {
        if !(2..=MAX_FIELD_ORDER).contains(&q) {
            return Err(Error::UnsupportedFieldOrder { q });
        }
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower { q })?;
        let (q, p, m) = (q as usize, p as usize, m as usize);

        let modulus = (0..q)
            .map(|low| {
                let mut poly = digits(low, p, m);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial exists for every degree");

        let mut add = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u8> = digits(a, p, m)
                    .iter()
                    .zip(digits(b, p, m))
                    .map(|(&x, y)| ((x as usize + y as usize) % p) as u8)
                    .collect();
                add[a * q + b] = undigits(&sum, p) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();

        let poly_mul = |a: usize, b: usize| -> usize {
            undigits(&mul_mod(&digits(a, p, m), &digits(b, p, m), &modulus, p), p)
        };

        let primitive = (2..q)
            .chain(std::iter::once(1))
            .find(|&g| {
                let mut x = g;
                let mut order = 1;
                while x != 1 {
                    x = poly_mul(x, g);
                    order += 1;
                }
                order == q - 1
            })
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u8; 2 * (q - 1)];
        let mut log = vec![0u8; q];
        let mut x = 1usize;
        for i in 0..q - 1 {
            exp[i] = x as u8;
            exp[i + q - 1] = x as u8;
            log[x] = i as u8;
            x = poly_mul(x, primitive);
        }
        debug_assert_eq!(x, 1);

        Ok(Field {
            q,
            p,
            m,
            modulus,
            add,
            neg,
            exp,
            log,
            primitive: FieldElement(primitive as u8),
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    /// Defining polynomial, coefficients from the constant term up.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Generator of the multiplicative group used for the exp/log tables.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn element(&self, index: usize) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index as u8))
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[self.log[a.index()] as usize + self.log[b.index()] as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let l = self.log[a.index()] as usize;
        Ok(FieldElement(self.exp[(self.q - 1 - l) % (self.q - 1)]))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: usize) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log[a.index()] as usize * e % (self.q - 1);
        FieldElement(self.exp[l])
    }
}

/// `(p, m)` with `q = p^m` and `p` prime, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((x % p) as u8);
        x /= p;
    }
    out
}

fn undigits(d: &[u8], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u8], m: &[u8], p: usize) -> Vec<u8> {
    let mut r: Vec<usize> = a.iter().map(|&c| c as usize).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + p * p - lead * c as usize) % p;
            }
        }
    }
    r.into_iter().map(|c| c as u8).collect()
}

fn mul_mod(a: &[u8], b: &[u8], m: &[u8], p: usize) -> Vec<u8> {
    let mut prod = vec![0usize; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as usize * y as usize) % p;
        }
    }
    let prod: Vec<u8> = prod.into_iter().map(|c| c as u8).collect();
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u8], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const ORDERS: [u64; 11] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32];

    fn el(f: &Field, i: usize) -> FieldElement {
        f.element(i).unwrap()
    }

    #[test]
    fn prime_field() {
        let f = Field::new(5).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (5, 1));
        assert_eq!(f.modulus().len(), 2);
        assert_eq!(f.add(el(&f, 2), el(&f, 4)), el(&f, 1));
        let g7 = Field::new(7).unwrap();
        assert_eq!(g7.inv(el(&g7, 3)).unwrap(), el(&g7, 5));
    }

    #[test]
    fn gf4() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let alpha = el(&f, 2);
        // alpha^2 = alpha + 1
        assert_eq!(f.mul(alpha, alpha), el(&f, 3));
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(32).unwrap().modulus(), &[1, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_orders() {
        assert_eq!(Field::new(6).unwrap_err(), Error::NotPrimePower { q: 6 });
        assert_eq!(Field::new(12).unwrap_err(), Error::NotPrimePower { q: 12 });
        assert!(matches!(
            Field::new(1),
            Err(Error::UnsupportedFieldOrder { .. })
        ));
        assert!(matches!(
            Field::new(49),
            Err(Error::UnsupportedFieldOrder { .. })
        ));
        let f = Field::new(5).unwrap();
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::InverseOfZero));
        assert!(f.element(5).is_none());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(18), None);
    }

    #[test]
    fn inverses_exhaustive() {
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE, "q = {q}");
            }
        }
    }

    fn check_axioms(f: &Field, a: FieldElement, b: FieldElement, c: FieldElement) {
        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    }

    #[test]
    fn axioms_small_fields_exhaustive() {
        for q in ORDERS.into_iter().filter(|&q| q <= 9) {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                for b in f.elements() {
                    for c in f.elements() {
                        check_axioms(&f, a, b, c);
                    }
                }
            }
        }
    }

    #[test]
    fn axioms_large_fields_sampled() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x6f);
        for q in ORDERS.into_iter().filter(|&q| q > 9) {
            let f = Field::new(q).unwrap();
            for _ in 0..100_000 {
                let mut pick = || el(&f, rng.gen_range(0..f.order()));
                let (a, b, c) = (pick(), pick(), pick());
                check_axioms(&f, a, b, c);
            }
        }
    }

    #[test]
    fn exp_log_are_inverse() {
        for q in ORDERS {
            let f = Field::new(q).unwrap();
            let g = f.primitive_element();
            let powers: std::collections::BTreeSet<_> =
                (0..f.order() - 1).map(|e| f.pow(g, e)).collect();
            assert_eq!(powers.len(), f.order() - 1);
            assert!(!powers.contains(&FieldElement::ZERO));
        }
    }
}
