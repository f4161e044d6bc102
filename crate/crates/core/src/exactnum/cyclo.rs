//! Exact arithmetic in the cyclotomic fields `Q(zeta_N)`.
//!
//! An element of order `N` is stored in the power basis `1, z, ..., z^(phi(N)-1)`
//! of `Q(zeta_N)`, i.e. as a polynomial reduced modulo the `N`-th cyclotomic
//! polynomial, with a single positive common denominator. Numerators and the
//! denominator are kept coprime, so for a fixed `N` two values are equal exactly
//! when their representations are. Values of different orders are compared by
//! lifting both to the lcm of the orders.
//!
//! The power basis is an integral basis of `Z[zeta_N]`, so algebraic integers
//! (character values, central character values) always have denominator 1.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduction data for one cyclotomic field.
#[derive(Debug)]
pub struct CycloField {
    pub order: u32,
    pub degree: usize,
    /// `powers[j]` holds the power-basis coordinates of `zeta^j`, `0 <= j < order`.
    powers: Vec<Vec<i64>>,
}

static FIELDS: Lazy<Mutex<HashMap<u32, Arc<CycloField>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static CYCLOTOMIC_POLYS: Lazy<Mutex<HashMap<u32, Vec<i64>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let divisor = cyclotomic_polynomial(d);
            num = exact_monic_division(&num, &divisor);
        }
    }
    CYCLOTOMIC_POLYS.lock().unwrap().insert(n, num.clone());
    num
}

fn exact_monic_division(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "cyclotomic division not exact");
    quot
}

/// Shared reduction table for `Q(zeta_order)`.
pub fn cyclo_field(order: u32) -> Arc<CycloField> {
    assert!(order >= 1, "cyclotomic order must be positive");
    if let Some(f) = FIELDS.lock().unwrap().get(&order) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(order);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by x and reduce the overflow term with the monic modulus
        let top = cur[degree - 1];
        for i in (1..degree).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= top * phi[i];
            }
        }
    }
    let field = Arc::new(CycloField {
        order,
        degree,
        powers,
    });
    FIELDS.lock().unwrap().insert(order, field.clone());
    field
}

impl CycloField {
    pub fn zeta_power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.order as u64) as usize]
    }
}

#[derive(Clone, Debug)]
pub struct Cyclo {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    pub fn zero(order: u32) -> Self {
        let deg = cyclo_field(order).degree;
        Cyclo {
            order,
            num: vec![BigInt::zero(); deg],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(v);
        z
    }

    pub fn from_rational(order: u32, v: &BigRational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = v.numer().clone();
        z.den = v.denom().clone();
        z.normalize();
        z
    }

    /// `zeta_order^k`.
    pub fn zeta(order: u32, k: i64) -> Self {
        let f = cyclo_field(order);
        let e = k.rem_euclid(order as i64) as u64;
        Cyclo {
            order,
            num: f.zeta_power(e).iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// `sum_j counts[j] * zeta^j` with `counts.len() == order`.
    pub fn from_root_counts(order: u32, counts: &[i64]) -> Self {
        assert_eq!(counts.len(), order as usize);
        let f = cyclo_field(order);
        let mut acc = vec![0i128; f.degree];
        for (j, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (a, &b) in acc.iter_mut().zip(&f.powers[j]) {
                    *a += c as i128 * b as i128;
                }
            }
        }
        Cyclo {
            order,
            num: acc.into_iter().map(BigInt::from).collect(),
            den: BigInt::one(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Sparse view: exponent `i` of `zeta^i` (power basis) to its rational coefficient.
    pub fn coefficients(&self) -> BTreeMap<u32, BigRational> {
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, BigRational::new(c.clone(), self.den.clone())))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Power-basis coordinates as machine integers, when integral and small.
    pub fn to_int_coords(&self) -> Option<Vec<i64>> {
        if !self.den.is_one() {
            return None;
        }
        self.num.iter().map(|c| c.to_i64()).collect()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    /// Re-express in `Q(zeta_target)`; `target` must be a multiple of the order.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(
            target % self.order == 0,
            "cannot lift order {} to {}",
            self.order,
            target
        );
        let step = (target / self.order) as u64;
        let f = cyclo_field(target);
        let mut num = vec![BigInt::zero(); f.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &b) in num.iter_mut().zip(f.zeta_power(i as u64 * step)) {
                if b != 0 {
                    *acc += c * b;
                }
            }
        }
        Cyclo {
            order: target,
            num,
            den: self.den.clone(),
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let m = a.order.lcm(&b.order);
        (a.lift(m), b.lift(m))
    }

    /// Galois automorphism `zeta -> zeta^k` with `gcd(k, order) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        debug_assert!(n == 1 || k.rem_euclid(n).gcd(&n) == 1);
        let f = cyclo_field(self.order);
        let mut num = vec![BigInt::zero(); f.degree];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * k).rem_euclid(n) as u64;
            for (acc, &b) in num.iter_mut().zip(f.zeta_power(e)) {
                if b != 0 {
                    *acc += c * b;
                }
            }
        }
        Cyclo {
            order: self.order,
            num,
            den: self.den.clone(),
        }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.order as i64;
        // a^{-1} = prod_{sigma != 1} sigma(a) / N(a)
        let mut others = Cyclo::one(self.order);
        for k in 2..n.max(2) {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("field norm is rational");
        let mut out = others;
        out.num.iter_mut().for_each(|c| *c *= norm.denom());
        out.den *= norm.numer();
        out.normalize();
        Ok(out)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclo::one(self.order);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let mut out = self.clone();
        out.num.iter_mut().for_each(|c| *c *= r.numer());
        out.den *= r.denom();
        out.normalize();
        out
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    fn mul_same_order(&self, other: &Self) -> Self {
        let f = cyclo_field(self.order);
        let n = self.order as usize;
        let small = |v: &[BigInt]| -> Option<Vec<i64>> {
            v.iter()
                .map(|c| c.to_i64().filter(|x| x.unsigned_abs() < (1 << 40)))
                .collect()
        };
        let num = match (small(&self.num), small(&other.num)) {
            (Some(a), Some(b)) => {
                let mut acc = vec![0i128; n];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        if y != 0 {
                            acc[(i + j) % n] += x as i128 * y as i128;
                        }
                    }
                }
                let mut red = vec![0i128; f.degree];
                for (j, &c) in acc.iter().enumerate() {
                    if c != 0 {
                        for (r, &p) in red.iter_mut().zip(&f.powers[j]) {
                            *r += c * p as i128;
                        }
                    }
                }
                red.into_iter().map(BigInt::from).collect()
            }
            _ => {
                let mut acc = vec![BigInt::zero(); n];
                for (i, x) in self.num.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in other.num.iter().enumerate() {
                        if !y.is_zero() {
                            acc[(i + j) % n] += x * y;
                        }
                    }
                }
                let mut red = vec![BigInt::zero(); f.degree];
                for (j, c) in acc.iter().enumerate() {
                    if !c.is_zero() {
                        for (r, &p) in red.iter_mut().zip(&f.powers[j]) {
                            if p != 0 {
                                *r += c * p;
                            }
                        }
                    }
                }
                red
            }
        };
        let mut out = Cyclo {
            order: self.order,
            num,
            den: &self.den * &other.den,
        };
        out.normalize();
        out
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Cyclo::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        if self.order != rhs.order {
            let (a, b) = Cyclo::common(self, rhs);
            return &a + &b;
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(x, y)| x * &rhs.den + y * &self.den)
            .collect();
        let mut out = Cyclo {
            order: self.order,
            num,
            den: &self.den * &rhs.den,
        };
        out.normalize();
        out
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.order != rhs.order {
            let (a, b) = Cyclo::common(self, rhs);
            return a.mul_same_order(&b);
        }
        self.mul_same_order(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z{}", self.order),
                _ => format!("{c}*z{}^{i}", self.order),
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u32,
    coeffs: Vec<(u32, String)>,
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.order,
            coeffs: self
                .coefficients()
                .into_iter()
                .map(|(i, r)| (i, r.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CycloRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let mut out = Cyclo::zero(repr.order);
        for (i, s) in repr.coeffs {
            if i as usize >= out.num.len() {
                return Err(D::Error::custom(format!("exponent {i} outside the power basis")));
            }
            let r: BigRational = s.parse().map_err(D::Error::custom)?;
            let mut term = Cyclo::zero(repr.order);
            term.num[i as usize] = r.numer().clone();
            term.den = r.denom().clone();
            term.normalize();
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Unreduced accumulator of integer multiples of roots of unity.
///
/// Inner products of character values are sums of many products of algebraic
/// integers; accumulating them over `Z[C_N]` and reducing once is much cheaper
/// than reducing every partial sum.
#[derive(Clone, Debug)]
pub struct RootSum {
    order: u32,
    counts: Vec<i128>,
}

impl RootSum {
    pub fn new(order: u32) -> Self {
        RootSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    /// Adds `w * a * conj(b)` for power-basis coordinates `a`, `b` of this order.
    pub fn add_product_conj(&mut self, a: &[i64], b: &[i64], w: i64) {
        let n = self.order as usize;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let xw = x as i128 * w as i128;
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    self.counts[(i + n - j) % n] += xw * y as i128;
                }
            }
        }
    }

    /// Adds `w * a * b`.
    pub fn add_product(&mut self, a: &[i64], b: &[i64], w: i64) {
        let n = self.order as usize;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let xw = x as i128 * w as i128;
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    self.counts[(i + j) % n] += xw * y as i128;
                }
            }
        }
    }

    pub fn into_cyclo(self) -> Cyclo {
        let f = cyclo_field(self.order);
        let mut red = vec![BigInt::zero(); f.degree];
        for (j, &c) in self.counts.iter().enumerate() {
            if c != 0 {
                for (r, &p) in red.iter_mut().zip(&f.powers[j]) {
                    if p != 0 {
                        *r += BigInt::from(c) * p;
                    }
                }
            }
        }
        let mut out = Cyclo {
            order: self.order,
            num: red,
            den: BigInt::one(),
        };
        out.normalize();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2.
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn basic_identities() {
        let z4 = Cyclo::zeta(4, 1);
        assert_eq!(&z4 * &z4, Cyclo::from_int(4, -1));
        assert_eq!(&Cyclo::one(7) + &Cyclo::zero(7), Cyclo::one(7));
        assert_eq!(Cyclo::zeta(3, 1).inv().unwrap(), Cyclo::zeta(3, 2));
        assert_eq!(Cyclo::zero(5).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sums_of_roots_vanish() {
        for n in 2..40u32 {
            let s = (0..n).fold(Cyclo::zero(n), |acc, k| &acc + &Cyclo::zeta(n, k as i64));
            assert!(s.is_zero(), "sum of {n}-th roots");
        }
        assert!(!Cyclo::zeta(1, 0).is_zero());
    }

    #[test]
    fn cross_order_equality() {
        // zeta_3 = zeta_6^2 = zeta_12^4
        assert_eq!(Cyclo::zeta(3, 1), Cyclo::zeta(6, 2));
        assert_eq!(Cyclo::zeta(3, 1), Cyclo::zeta(12, 4));
        assert_ne!(Cyclo::zeta(3, 1), Cyclo::zeta(12, 1));
        assert_eq!(Cyclo::from_int(1, 5), Cyclo::from_int(9, 5));
        // -1 = zeta_2
        assert_eq!(Cyclo::zeta(2, 1), Cyclo::from_int(10, -1));
    }

    #[test]
    fn conj_and_real_part() {
        let z = Cyclo::zeta(8, 1);
        let r = &z + &z.conj();
        // 2 cos(pi/4) = sqrt(2), whose square is 2
        assert_eq!(&r * &r, Cyclo::from_int(8, 2));
    }

    #[test]
    fn root_sum_matches_direct_products() {
        let a = &Cyclo::zeta(21, 4) + &Cyclo::from_int(21, 3);
        let b = &Cyclo::zeta(21, 9) - &Cyclo::zeta(21, 1);
        let mut acc = RootSum::new(21);
        acc.add_product_conj(&a.to_int_coords().unwrap(), &b.to_int_coords().unwrap(), 5);
        let direct = (&a * &b.conj()).scale(&BigRational::from_integer(5.into()));
        assert_eq!(acc.into_cyclo(), direct);
    }

    #[test]
    fn serde_round_trip() {
        let x = (&Cyclo::zeta(12, 5) + &Cyclo::from_int(12, 2))
            .scale(&BigRational::new(3.into(), 7.into()));
        let s = serde_json::to_string(&x).unwrap();
        let back: Cyclo = serde_json::from_str(&s).unwrap();
        assert_eq!(x, back);
    }

    fn arb_cyclo(order: u32) -> impl Strategy<Value = Cyclo> {
        prop::collection::vec((-5i64..=5, 1i64..=4), 1..6).prop_map(move |terms| {
            terms.iter().enumerate().fold(Cyclo::zero(order), |acc, (k, &(c, d))| {
                let t = Cyclo::zeta(order, (k as i64) * 7 + c)
                    .scale(&BigRational::new(c.into(), d.into()));
                &acc + &t
            })
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(15), b in arb_cyclo(15), c in arb_cyclo(15)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Cyclo::one(15));
            }
        }

        #[test]
        fn lifting_is_a_homomorphism(a in arb_cyclo(6), b in arb_cyclo(6)) {
            prop_assert_eq!((&a * &b).lift(30), &a.lift(30) * &b.lift(30));
            prop_assert_eq!((&a + &b).lift(30), &a.lift(30) + &b.lift(30));
        }
    }
}
