use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::cyclo::Cyclo;
use super::ffield::{finite_field, FfElem, FiniteField};
use super::numtheory::multiplicative_order;
use crate::error::{Error, Result};

/// The quotient map from `Z[zeta_N]` localised away from `l` onto `F_{l^m}`,
/// sending `zeta_N` to a fixed element of multiplicative order `N`.
#[derive(Clone, Debug)]
pub struct ReductionMap {
    pub n: u32,
    pub l: u32,
    pub m: u32,
    pub field: Arc<FiniteField>,
    pub zeta_image: FfElem,
    zeta_powers: Vec<FfElem>,
}

pub fn build_reduction(n: u32, l: u32) -> Result<ReductionMap> {
    if n == 0 {
        return Err(Error::InvalidParameters("root of unity order must be positive".into()));
    }
    if n % l == 0 {
        return Err(Error::NotReducible {
            l: l as u64,
            reason: format!("{l} divides the root order {n}"),
        });
    }
    let m = multiplicative_order(l as u64, n as u64)? as u32;
    let field = finite_field(l, m)?;
    let zeta_image = field.generator().pow((field.size - 1) / n as u64);
    let mut zeta_powers = Vec::with_capacity(n as usize);
    let mut cur = field.one();
    for _ in 0..n {
        zeta_powers.push(cur.clone());
        cur = cur.mul(&zeta_image);
    }
    Ok(ReductionMap {
        n,
        l,
        m,
        field,
        zeta_image,
        zeta_powers,
    })
}

impl ReductionMap {
    pub fn reduce_integer(&self, v: &BigInt) -> FfElem {
        let r = v.mod_floor(&BigInt::from(self.l)).to_i64().unwrap();
        self.field.from_int(r)
    }

    pub fn reduce_rational(&self, v: &BigRational) -> Result<FfElem> {
        let den = self.reduce_integer(v.denom());
        if den.is_zero() {
            return Err(Error::NotReducible {
                l: self.l as u64,
                reason: format!("denominator of {v} is divisible by {}", self.l),
            });
        }
        Ok(self.reduce_integer(v.numer()).mul(&den.inv()?))
    }

    /// Image of `zeta_N^k`.
    pub fn zeta_power(&self, k: i64) -> &FfElem {
        &self.zeta_powers[k.rem_euclid(self.n as i64) as usize]
    }

    pub fn reduce(&self, x: &Cyclo) -> Result<FfElem> {
        if self.n % x.order() != 0 {
            return Err(Error::NotReducible {
                l: self.l as u64,
                reason: format!("order {} does not divide {}", x.order(), self.n),
            });
        }
        let x = x.lift(self.n);
        let mut acc = self.field.zero();
        for (i, c) in x.coefficients() {
            acc = acc.add(&self.reduce_rational(&c)?.mul(self.zeta_power(i as i64)));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f4_cube_root() {
        let r = build_reduction(3, 2).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.zeta_image.order(), Some(3));
        // enumerate F_4^*: the canonical generator is a, and a^((4-1)/3) = a
        assert_eq!(r.zeta_image, r.field.generator());
        let s = &Cyclo::zeta(3, 1) + &Cyclo::zeta(3, 2);
        assert_eq!(r.reduce(&s).unwrap(), r.field.from_int(-1));
    }

    #[test]
    fn trivial_root_order() {
        let r = build_reduction(1, 5).unwrap();
        assert_eq!(r.m, 1);
        assert_eq!(r.zeta_image, r.field.one());
    }

    #[test]
    fn rejects_l_dividing_n() {
        assert!(matches!(build_reduction(6, 2), Err(Error::NotReducible { .. })));
        let r = build_reduction(3, 2).unwrap();
        let half = Cyclo::from_rational(3, &BigRational::new(1.into(), 2.into()));
        assert!(r.reduce(&half).is_err());
    }

    #[test]
    fn zeta_image_has_exact_order() {
        for (n, l) in [(7u32, 2u32), (15, 2), (16, 3), (72, 5), (21, 2)] {
            let r = build_reduction(n, l).unwrap();
            assert_eq!(r.zeta_image.order(), Some(n as u64));
        }
    }

    fn arb_element() -> impl Strategy<Value = Cyclo> {
        prop::collection::vec((-6i64..6, prop::sample::select(vec![1i64, 3, 5, 7, 9])), 1..5)
            .prop_map(|terms| {
                terms.iter().enumerate().fold(Cyclo::zero(15), |acc, (k, &(c, d))| {
                    &acc + &Cyclo::zeta(15, c + 2 * k as i64).scale(&BigRational::new(c.into(), d.into()))
                })
            })
    }

    proptest! {
        #[test]
        fn reduction_is_a_ring_homomorphism(a in arb_element(), b in arb_element()) {
            let r = build_reduction(15, 2).unwrap();
            let (ra, rb) = (r.reduce(&a).unwrap(), r.reduce(&b).unwrap());
            prop_assert_eq!(r.reduce(&(&a * &b)).unwrap(), ra.mul(&rb));
            prop_assert_eq!(r.reduce(&(&a + &b)).unwrap(), ra.add(&rb));
        }
    }
}
