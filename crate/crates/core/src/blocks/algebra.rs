use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::exactnum::{Cyclo, FfElem, ReductionMap};
use crate::groups::Group;

/// Coefficient ring of a group algebra.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Scalar for Cyclo {
    fn zero_like(&self) -> Self {
        Cyclo::zero(self.order())
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Scalar for FfElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn is_zero(&self) -> bool {
        FfElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FfElem::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FfElem::mul(self, other)
    }
}

/// Sparse element `sum_g a_g g` of a group algebra; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<E: Ord + Clone, S: Scalar> {
    pub support: BTreeMap<E, S>,
}

impl<E: Ord + Clone + Debug, S: Scalar> AlgebraElement<E, S> {
    pub fn zero() -> Self {
        AlgebraElement {
            support: BTreeMap::new(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (E, S)>) -> Self {
        let mut out = Self::zero();
        for (g, a) in terms {
            out.add_term(g, a);
        }
        out
    }

    pub fn add_term(&mut self, g: E, a: S) {
        if a.is_zero() {
            return;
        }
        match self.support.remove(&g) {
            Some(b) => {
                let s = b.add(&a);
                if !s.is_zero() {
                    self.support.insert(g, s);
                }
            }
            None => {
                self.support.insert(g, a);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, a) in &other.support {
            out.add_term(g.clone(), a.clone());
        }
        out
    }

    /// Convolution product.
    pub fn mul<G: Group<Elem = E>>(&self, other: &Self, group: &G) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.support {
            for (h, b) in &other.support {
                out.add_term(group.mul(g, h), a.mul(b));
            }
        }
        out
    }

    pub fn map_support(&self, f: impl Fn(&E) -> E) -> Self {
        Self::from_terms(self.support.iter().map(|(g, a)| (f(g), a.clone())))
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<AlgebraElement<E, T>> {
        let mut out = AlgebraElement::zero();
        for (g, a) in &self.support {
            out.add_term(g.clone(), f(a)?);
        }
        Ok(out)
    }
}

impl<E: Ord + Clone + Debug> AlgebraElement<E, Cyclo> {
    pub fn one_at(identity: E, order: u32) -> Self {
        Self::from_terms([(identity, Cyclo::one(order))])
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::from_terms(self.support.iter().map(|(g, a)| (g.clone(), a.scale(r))))
    }

    pub fn from_ints(terms: impl IntoIterator<Item = (E, i64)>) -> Self {
        Self::from_terms(terms.into_iter().map(|(g, c)| (g, Cyclo::from_int(1, c))))
    }

    pub fn denominators(&self) -> Vec<BigInt> {
        self.support.values().map(|a| a.denominator().clone()).collect()
    }
}

/// Coefficient-wise reduction; fails if some denominator is divisible by `l`.
pub fn reduce_element<E: Ord + Clone + Debug>(
    x: &AlgebraElement<E, Cyclo>,
    rmap: &ReductionMap,
) -> Result<AlgebraElement<E, FfElem>> {
    x.map_coeffs(|a| rmap.reduce(a))
}

/// `sum a_g g -> sum a_g^(l^m) g`.
pub fn frobenius_twist<E: Ord + Clone + Debug>(x: &AlgebraElement<E, FfElem>, m: u64) -> AlgebraElement<E, FfElem> {
    x.map_coeffs(|a| Ok(a.frobenius(m))).expect("frobenius is total")
}
