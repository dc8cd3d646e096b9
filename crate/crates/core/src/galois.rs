//! Exact arithmetic in GF(q) for prime powers q ≤ 16.
//!
//! Elements are encoded as integers in `[0, q)`: the residue polynomial
//! `c0 + c1·x + … + c_{k-1}·x^{k-1}` over GF(p) is stored as
//! `c0 + c1·p + … + c_{k-1}·p^{k-1}`. For prime q this is the usual residue.
//!
//! Every order uses a fixed modulus, the least monic irreducible polynomial
//! of degree k when coefficient vectors are read as base-p integers with the
//! constant term as the least significant digit:
//!
//! | q  | modulus        |
//! |----|----------------|
//! | 4  | x² + x + 1     |
//! | 8  | x³ + x + 1     |
//! | 9  | x² + 1         |
//! | 16 | x⁴ + x + 1     |
//!
//! Field specs are built once per order and live for the whole process, so
//! elements carry a `&'static FieldSpec` and are `Copy`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power in [2, {MAX_ORDER}]")]
    NotPrimePower(u32),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("operands belong to different fields GF({0}) and GF({1})")]
    MixedFields(u32, u32),
}

/// A finite field GF(q) together with its full operation tables.
pub struct FieldSpec {
    q: u8,
    p: u8,
    k: u8,
    modulus: Option<Vec<u8>>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        // one table set per order
        self.q == other.q
    }
}

impl Eq for FieldSpec {}

/// Splits `q` into `(p, k)` with `q = p^k`, or `None` when `q` is not a
/// prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Returns the field of order `q`.
pub fn field_make(q: u32) -> Result<&'static FieldSpec, FieldError> {
    static FIELDS: OnceLock<Vec<Option<FieldSpec>>> = OnceLock::new();
    if !(2..=MAX_ORDER).contains(&q) {
        return Err(FieldError::NotPrimePower(q));
    }
    let table = FIELDS.get_or_init(|| {
        (0..=MAX_ORDER)
            .map(|order| prime_power(order).map(|(p, k)| FieldSpec::build(p, k)))
            .collect()
    });
    table[q as usize]
        .as_ref()
        .ok_or(FieldError::NotPrimePower(q))
}

// Polynomials over GF(p) as little-endian coefficient vectors.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let m = poly_trim(m.to_vec());
    let lead = *m.last().expect("nonzero divisor");
    // lead^(p-2) is the inverse of lead in GF(p)
    let lead_inv = (0..p - 2).fold(1, |acc, _| acc * lead % p);
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let factor = r[r.len() - 1] * lead_inv % p;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * c % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn decode(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = decode(low, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `k` over GF(p).
pub(crate) fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    (0..p.pow(k))
        .map(|low| {
            let mut poly = decode(low, p, k as usize);
            poly.push(1);
            poly
        })
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldSpec {
    fn build(p: u32, k: u32) -> FieldSpec {
        let q = p.pow(k);
        let modulus = (k > 1).then(|| least_irreducible(p, k));
        let encode = |c: &[u32]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let ca = decode(a, p, k as usize);
            for b in 0..q {
                let cb = decode(b, p, k as usize);
                let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u8;
                let prod = match &modulus {
                    None => a * b % p,
                    Some(m) => {
                        let mut full = vec![0u32; 2 * k as usize];
                        for (i, x) in ca.iter().enumerate() {
                            for (j, y) in cb.iter().enumerate() {
                                full[i + j] = (full[i + j] + x * y) % p;
                            }
                        }
                        encode(&poly_rem(&full, m, p))
                    }
                };
                mul[(a * q + b) as usize] = prod as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                (1..q)
                    .find(|&b| mul[(a * q + b) as usize] == 1)
                    .unwrap_or(0) as u8
            })
            .collect();
        FieldSpec {
            q: q as u8,
            p: p as u8,
            k: k as u8,
            modulus: modulus.map(|m| m.into_iter().map(|c| c as u8).collect()),
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn order(&self) -> u32 {
        self.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p as u32
    }

    pub fn degree(&self) -> u32 {
        self.k as u32
    }

    /// Little-endian coefficients of the reduction polynomial, present iff
    /// the field is not prime.
    pub fn modulus(&self) -> Option<&[u8]> {
        self.modulus.as_deref()
    }

    // Raw table arithmetic on encoded values. Callers guarantee `a, b < q`.

    #[inline]
    pub fn add_raw(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul_raw(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg_raw(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u8, b: u8) -> u8 {
        self.add_raw(a, self.neg_raw(b))
    }

    /// Inverse of a nonzero encoded value; `0` maps to `0`.
    #[inline]
    pub fn inv_raw(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn element(&'static self, value: u32) -> FieldElement {
        assert!(
            value < self.order(),
            "{value} is not an element of GF({})",
            self.q
        );
        FieldElement {
            field: self,
            value: value as u8,
        }
    }

    pub fn zero(&'static self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&'static self) -> FieldElement {
        self.element(1)
    }

    /// All elements in encoding order.
    pub fn elements(&'static self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(move |v| self.element(v))
    }
}

/// An element of some GF(q).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: &'static FieldSpec,
    value: u8,
}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.q.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈GF({})", self.value, self.field.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn field(&self) -> &'static FieldSpec {
        self.field
    }

    pub fn value(&self) -> u32 {
        self.value as u32
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field.q == other.field.q {
            Ok(())
        } else {
            Err(FieldError::MixedFields(
                self.field.order(),
                other.field.order(),
            ))
        }
    }

    fn with(&self, value: u8) -> FieldElement {
        FieldElement {
            field: self.field,
            value,
        }
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(&other)?;
        Ok(self.with(self.field.add_raw(self.value, other.value)))
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(&other)?;
        Ok(self.with(self.field.sub_raw(self.value, other.value)))
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(&other)?;
        Ok(self.with(self.field.mul_raw(self.value, other.value)))
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero(self.field.order()));
        }
        Ok(self.with(self.field.inv_raw(self.value)))
    }

    pub fn pow(self, mut exp: u64) -> FieldElement {
        let mut base = self;
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

// Operator forms panic on mixed fields; use the `try_*` methods when the
// operands may come from different fields.

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.field.neg_raw(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

    #[test]
    fn prime_powers_in_range() {
        let found: Vec<u32> = (0..=40).filter(|&q| field_make(q).is_ok()).collect();
        assert_eq!(found, ORDERS);
        assert_eq!(field_make(6).unwrap_err(), FieldError::NotPrimePower(6));
        assert_eq!(field_make(32).unwrap_err(), FieldError::NotPrimePower(32));
        assert!(field_make(0).is_err() && field_make(1).is_err());
    }

    #[test]
    fn prime_field_has_no_modulus() {
        let f = field_make(2).unwrap();
        assert_eq!((f.order(), f.characteristic(), f.degree()), (2, 2, 1));
        assert!(f.modulus().is_none());
    }

    #[test]
    fn modulus_table() {
        assert_eq!(field_make(4).unwrap().modulus(), Some(&[1, 1, 1][..]));
        assert_eq!(field_make(8).unwrap().modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(field_make(9).unwrap().modulus(), Some(&[1, 0, 1][..]));
        assert_eq!(
            field_make(16).unwrap().modulus(),
            Some(&[1, 1, 0, 0, 1][..])
        );
    }

    #[test]
    fn gf4_quadratic_is_the_only_irreducible() {
        // brute force: a monic quadratic over GF(2) is irreducible iff it has no root
        let irreducible: Vec<[u32; 3]> = (0..4)
            .map(|v| [v % 2, v / 2, 1])
            .filter(|c| (0..2).all(|x| (c[0] + c[1] * x + x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
    }

    #[test]
    fn spot_values() {
        let f3 = field_make(3).unwrap();
        assert_eq!(f3.element(2).inv().unwrap(), f3.element(2));
        let f4 = field_make(4).unwrap();
        let x = f4.element(2);
        assert_eq!(x * x, f4.element(3));
        let f5 = field_make(5).unwrap();
        assert_eq!(f5.element(3) + f5.element(4), f5.element(2));
    }

    #[test]
    fn errors() {
        let f3 = field_make(3).unwrap();
        let f5 = field_make(5).unwrap();
        assert_eq!(f3.zero().inv(), Err(FieldError::DivisionByZero(3)));
        assert_eq!(
            f3.one().try_add(f5.one()),
            Err(FieldError::MixedFields(3, 5))
        );
        assert_eq!(
            f3.one().try_mul(f5.one()),
            Err(FieldError::MixedFields(3, 5))
        );
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in ORDERS {
            let f = field_make(q).unwrap();
            let (zero, one) = (f.zero(), f.one());
            for a in f.elements() {
                assert_eq!(a + zero, a);
                assert_eq!(a * one, a);
                assert_eq!(a + (-a), zero);
                assert_eq!(a - a, zero);
                if !a.is_zero() {
                    assert_eq!(a * a.inv().unwrap(), one);
                }
                assert_eq!(a.pow(q as u64), a, "Frobenius fixes GF({q})");
                for b in f.elements() {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    for c in f.elements() {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn no_zero_divisors() {
        for q in ORDERS {
            let f = field_make(q).unwrap();
            for a in f.elements().filter(|a| !a.is_zero()) {
                for b in f.elements().filter(|b| !b.is_zero()) {
                    assert!(!(a * b).is_zero());
                }
            }
        }
    }
}
