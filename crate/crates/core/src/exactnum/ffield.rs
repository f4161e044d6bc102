//! Finite fields `F_{l^m}` with a canonical, process-wide modulus.
//!
//! Polynomials over `F_l` are ordered by the integer `sum c_i l^i` of their
//! coefficient digits. The modulus for `(l, m)` is the first monic irreducible
//! polynomial of degree `m` in that order, and the distinguished generator of
//! the multiplicative group is the first element of full order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use super::numtheory::{factorize, is_prime};
use crate::error::{Error, Result};

/// Largest field size handled; keeps every product inside `u64`.
pub const MAX_FIELD_SIZE: u64 = 1 << 40;

#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    pub l: u32,
    pub m: u32,
    pub size: u64,
    /// Monic modulus, constant term first, length `m + 1`.
    pub modulus: Vec<u32>,
    generator: Vec<u32>,
}

static FIELDS: Lazy<Mutex<HashMap<(u32, u32), Arc<FiniteField>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn finite_field(l: u32, m: u32) -> Result<Arc<FiniteField>> {
    if !is_prime(l as u64) {
        return Err(Error::InvalidParameters(format!("characteristic {l} is not prime")));
    }
    if m == 0 {
        return Err(Error::InvalidParameters("field degree must be positive".into()));
    }
    let size = (l as u64)
        .checked_pow(m)
        .filter(|&s| s <= MAX_FIELD_SIZE)
        .ok_or_else(|| Error::bound(format!("F_{{{l}^{m}}}"), u128::MAX, MAX_FIELD_SIZE as u128))?;
    if let Some(f) = FIELDS.lock().unwrap().get(&(l, m)) {
        return Ok(f.clone());
    }
    let modulus = smallest_irreducible(l, m);
    let mut field = FiniteField {
        l,
        m,
        size,
        modulus,
        generator: Vec::new(),
    };
    field.generator = field.find_generator();
    let field = Arc::new(field);
    FIELDS.lock().unwrap().insert((l, m), field.clone());
    Ok(field)
}

fn digits(mut v: u64, l: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut() {
        *d = (v % l as u64) as u32;
        v /= l as u64;
    }
    out
}

fn poly_rem(num: &[u32], den: &[u32], l: u32) -> Vec<u32> {
    // den monic
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dn = den.len() - 1;
    let l = l as u64;
    if r.len() > dn {
        for i in (dn..r.len()).rev() {
            let c = r[i] % l;
            if c != 0 {
                for (j, &d) in den.iter().enumerate() {
                    let idx = i - dn + j;
                    r[idx] = (r[idx] + (l - c) * d as u64) % l;
                }
            }
        }
    }
    r.truncate(dn);
    r.into_iter().map(|c| (c % l) as u32).collect()
}

fn smallest_irreducible(l: u32, m: u32) -> Vec<u32> {
    let lower = (l as u64).pow(m);
    for code in 0..lower {
        let mut poly = digits(code, l, m as usize);
        poly.push(1);
        if is_irreducible(&poly, l) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn is_irreducible(poly: &[u32], l: u32) -> bool {
    let m = poly.len() - 1;
    for deg in 1..=m / 2 {
        for code in 0..(l as u64).pow(deg as u32) {
            let mut d = digits(code, l, deg);
            d.push(1);
            if poly_rem(poly, &d, l).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn zero(self: &Arc<Self>) -> FfElem {
        FfElem {
            field: self.clone(),
            coeffs: vec![0; self.m as usize],
        }
    }

    pub fn one(self: &Arc<Self>) -> FfElem {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> FfElem {
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(self.l as i64) as u32;
        e
    }

    /// Element whose coefficient digits encode `code` in base `l`.
    pub fn from_code(self: &Arc<Self>, code: u64) -> FfElem {
        FfElem {
            field: self.clone(),
            coeffs: digits(code, self.l, self.m as usize),
        }
    }

    pub fn generator(self: &Arc<Self>) -> FfElem {
        FfElem {
            field: self.clone(),
            coeffs: self.generator.clone(),
        }
    }

    fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let l = self.l as u64;
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % l;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        poly_rem(&prod, &self.modulus, self.l)
    }

    fn pow_raw(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = vec![0u32; self.m as usize];
        acc[0] = 1;
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &b);
            }
            b = self.mul_raw(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> Vec<u32> {
        let q1 = self.size - 1;
        let primes: Vec<u64> = factorize(q1).into_iter().map(|(r, _)| r).collect();
        let mut one = vec![0u32; self.m as usize];
        one[0] = 1;
        for code in 1..self.size {
            let g = digits(code, self.l, self.m as usize);
            if primes.iter().all(|&r| self.pow_raw(&g, q1 / r) != one) {
                return g;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }
}

#[derive(Clone)]
pub struct FfElem {
    field: Arc<FiniteField>,
    coeffs: Vec<u32>,
}

impl PartialEq for FfElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.l == other.field.l && self.field.m == other.field.m && self.coeffs == other.coeffs
    }
}

impl Eq for FfElem {}

impl fmt::Debug for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}^{}{:?}", self.field.l, self.field.m, self.coeffs)
    }
}

impl fmt::Display for FfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "a".to_string(),
                (1, _) => format!("{c}a"),
                (_, 1) => format!("a^{i}"),
                _ => format!("{c}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl FfElem {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Inverse of [`FiniteField::from_code`].
    pub fn code(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.field.l as u64 + c as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) {
        assert!(
            self.field.l == other.field.l && self.field.m == other.field.m,
            "mixed finite fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let l = self.field.l;
        FfElem {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + b) % l)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        let l = self.field.l;
        FfElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| (l - a) % l).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        FfElem {
            field: self.field.clone(),
            coeffs: self.field.mul_raw(&self.coeffs, &other.coeffs),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        FfElem {
            field: self.field.clone(),
            coeffs: self.field.pow_raw(&self.coeffs, e),
        }
    }

    pub fn pow_signed(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.size - 2))
    }

    /// `x -> x^(l^k)`.
    pub fn frobenius(&self, k: u64) -> Self {
        let steps = k % self.field.m as u64;
        let mut out = self.clone();
        for _ in 0..steps {
            out = out.pow(self.field.l as u64);
        }
        out
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let q1 = self.field.size - 1;
        let one = self.field.one();
        let mut ord = q1;
        for (r, _) in factorize(q1) {
            while ord % r == 0 && self.pow(ord / r) == one {
                ord /= r;
            }
        }
        Some(ord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(finite_field(2, 2).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(finite_field(2, 3).unwrap().modulus, vec![1, 1, 0, 1]);
        assert_eq!(finite_field(3, 2).unwrap().modulus, vec![1, 0, 1]);
        assert_eq!(finite_field(5, 1).unwrap().modulus, vec![0, 1]);
    }

    #[test]
    fn generator_is_first_full_order_element() {
        let f4 = finite_field(2, 2).unwrap();
        assert_eq!(f4.generator().code(), 2);
        let f9 = finite_field(3, 2).unwrap();
        let g = f9.generator();
        assert_eq!(g.order(), Some(8));
        for code in 1..g.code() {
            assert_ne!(f9.from_code(code).order(), Some(8));
        }
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (l, m) in [(2, 3), (3, 2), (5, 2), (2, 4)] {
            let f = finite_field(l, m).unwrap();
            for code in 1..f.size {
                let x = f.from_code(code);
                assert_eq!(x.mul(&x.inv().unwrap()), f.one());
                assert_eq!(f.from_code(x.code()), x);
            }
        }
    }

    #[test]
    fn frobenius_is_additive_multiplicative_and_periodic() {
        let f = finite_field(3, 4).unwrap();
        for (a, b) in [(5u64, 17u64), (40, 77), (80, 1)] {
            let (x, y) = (f.from_code(a), f.from_code(b));
            assert_eq!(x.add(&y).frobenius(1), x.frobenius(1).add(&y.frobenius(1)));
            assert_eq!(x.mul(&y).frobenius(2), x.frobenius(2).mul(&y.frobenius(2)));
            assert_eq!(x.frobenius(4), x);
        }
        assert_eq!(f.from_int(2).frobenius(1), f.from_int(2));
    }
}
