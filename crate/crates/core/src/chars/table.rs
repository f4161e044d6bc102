use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Cyclo, RootSum};
use crate::groups::{conjugacy_classes, ConjugacyClasses, EnumeratedGroup, Group};

/// An enumerated group together with its conjugacy classes.
#[derive(Clone, Debug)]
pub struct ClassData<G: Group> {
    pub group: EnumeratedGroup<G>,
    pub classes: ConjugacyClasses,
    pub rep_orders: Vec<u64>,
    pub exponent: u64,
}

impl<G: Group> ClassData<G> {
    pub fn new(group: EnumeratedGroup<G>) -> Self {
        let classes = conjugacy_classes(&group);
        let rep_orders: Vec<u64> = classes
            .reps
            .iter()
            .map(|&i| group.group.element_order(&group.elements[i]))
            .collect();
        let exponent = rep_orders.iter().fold(1u64, |a, &o| num_integer::lcm(a, o));
        ClassData {
            group,
            classes,
            rep_orders,
            exponent,
        }
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.sizes()
    }

    pub fn class_of(&self, x: &G::Elem) -> Option<usize> {
        self.group.idx(x).map(|i| self.classes.class_of[i])
    }

    pub fn rep(&self, class: usize) -> &G::Elem {
        &self.group.elements[self.classes.reps[class]]
    }

    /// Classes of `g^0, g^1, ..., g^(o-1)` for the representative `g` of `class`.
    pub fn power_sequence(&self, class: usize) -> Vec<usize> {
        let g = self.rep(class);
        let grp = &self.group.group;
        let mut cur = grp.identity();
        (0..self.rep_orders[class])
            .map(|_| {
                let c = self.classes.class_of[self.group.index[&cur]];
                cur = grp.mul(&cur, g);
                c
            })
            .collect()
    }

    pub fn inverse_classes(&self) -> Vec<usize> {
        (0..self.num_classes())
            .map(|c| self.classes.inverse_class(&self.group, c))
            .collect()
    }
}

/// Values on classes, all in `Q(zeta_order)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassFunction {
    pub order: u32,
    pub values: Vec<Cyclo>,
}

// equality of values, whatever field they are written in
impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn new(order: u32, values: Vec<Cyclo>) -> Self {
        let values = values
            .into_iter()
            .map(|v| if v.order() == order { v } else { v.lift(order) })
            .collect();
        ClassFunction { order, values }
    }

    pub fn trivial(order: u32, classes: usize) -> Self {
        ClassFunction {
            order,
            values: vec![Cyclo::one(order); classes],
        }
    }

    pub fn degree(&self) -> Option<BigInt> {
        self.values[0].to_integer()
    }

    pub fn degree_u64(&self) -> u64 {
        self.degree()
            .and_then(|d| u64::try_from(d).ok())
            .expect("character degree is a small positive integer")
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = num_integer::lcm(self.order, other.order);
        ClassFunction::new(order, self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = num_integer::lcm(self.order, other.order);
        ClassFunction::new(order, self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn conj(&self) -> Self {
        ClassFunction {
            order: self.order,
            values: self.values.iter().map(Cyclo::conj).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let r = BigRational::from_integer(k.into());
        ClassFunction {
            order: self.order,
            values: self.values.iter().map(|v| v.scale(&r)).collect(),
        }
    }

    /// Canonical comparison key: integral power-basis coordinates per class.
    pub fn sort_key(&self) -> Vec<Vec<(u32, BigRational)>> {
        self.values
            .iter()
            .map(|v| v.coefficients().into_iter().collect())
            .collect()
    }
}

/// `<a, b> = |G|^-1 sum_K |K| a(K) conj(b(K))`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction, class_sizes: &[usize], group_order: usize) -> Cyclo {
    let order = num_integer::lcm(a.order, b.order);
    let la = |v: &Cyclo| if v.order() == order { v.clone() } else { v.lift(order) };
    let fast = a
        .values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| Some((la(x).to_int_coords()?, la(y).to_int_coords()?)))
        .collect::<Option<Vec<_>>>();
    let total = match fast {
        Some(coords) => {
            let mut acc = RootSum::new(order);
            for ((x, y), &s) in coords.iter().zip(class_sizes) {
                acc.add_product_conj(x, y, s as i64);
            }
            acc.into_cyclo()
        }
        None => a
            .values
            .iter()
            .zip(&b.values)
            .zip(class_sizes)
            .fold(Cyclo::zero(order), |acc, ((x, y), &s)| {
                &acc + &(x * &y.conj()).scale(&BigRational::from_integer(s.into()))
            }),
    };
    total.scale(&BigRational::new(BigInt::one(), BigInt::from(group_order)))
}

/// Inner product expected to be a (small) integer.
pub fn inner_product_int(a: &ClassFunction, b: &ClassFunction, class_sizes: &[usize], group_order: usize) -> Result<i64> {
    let v = inner_product(a, b, class_sizes, group_order);
    v.to_integer()
        .and_then(|z| i64::try_from(z).ok())
        .ok_or_else(|| Error::Assertion(format!("inner product {v} is not an integer")))
}

#[derive(Clone, Debug)]
pub struct CharacterTable<G: Group> {
    pub data: Arc<ClassData<G>>,
    pub order: u32,
    pub chars: Vec<ClassFunction>,
}

impl<G: Group> CharacterTable<G> {
    pub fn group_order(&self) -> usize {
        self.data.order()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.chars.iter().map(ClassFunction::degree_u64).collect()
    }

    pub fn inner(&self, a: &ClassFunction, b: &ClassFunction) -> Cyclo {
        inner_product(a, b, &self.data.class_sizes(), self.group_order())
    }

    pub fn inner_int(&self, a: &ClassFunction, b: &ClassFunction) -> Result<i64> {
        inner_product_int(a, b, &self.data.class_sizes(), self.group_order())
    }

    /// Multiplicities of the irreducibles in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<i64>> {
        self.chars.iter().map(|chi| self.inner_int(f, chi)).collect()
    }

    pub fn check_first_orthogonality(&self) -> Result<()> {
        let sizes = self.data.class_sizes();
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate().skip(i) {
                let v = inner_product(a, b, &sizes, self.group_order());
                let expect = if i == j { Cyclo::one(1) } else { Cyclo::zero(1) };
                if v != expect {
                    return Err(Error::Assertion(format!("<chi_{i}, chi_{j}> = {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn check_second_orthogonality(&self) -> Result<()> {
        let r = self.data.num_classes();
        let sizes = self.data.class_sizes();
        let n = self.group_order();
        let coords: Option<Vec<Vec<Vec<i64>>>> = self
            .chars
            .iter()
            .map(|c| c.values.iter().map(|v| v.lift(self.order).to_int_coords()).collect())
            .collect();
        let coords = coords.ok_or_else(|| Error::Assertion("character values are not integral".into()))?;
        for k in 0..r {
            for l in k..r {
                let mut acc = RootSum::new(self.order);
                for c in &coords {
                    acc.add_product_conj(&c[k], &c[l], 1);
                }
                let v = acc.into_cyclo();
                let expect = if k == l { (n / sizes[k]) as i64 } else { 0 };
                if v != Cyclo::from_int(1, expect) {
                    return Err(Error::Assertion(format!("column orthogonality fails at classes {k}, {l}: {v}")));
                }
            }
        }
        Ok(())
    }

    pub fn check_degree_sum(&self) -> Result<()> {
        let s: u128 = self.degrees().iter().map(|&d| d as u128 * d as u128).sum();
        if s != self.group_order() as u128 || self.chars.len() != self.data.num_classes() {
            return Err(Error::Assertion(format!(
                "sum of squared degrees {s} vs |G| = {}, {} characters vs {} classes",
                self.group_order(),
                self.chars.len(),
                self.data.num_classes()
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.check_degree_sum()?;
        self.check_first_orthogonality()?;
        self.check_second_orthogonality()
    }

    /// Central character value `chi(z) / chi(1)` for a central element.
    pub fn central_value(&self, chi: &ClassFunction, z: &G::Elem) -> Result<Cyclo> {
        let c = self
            .data
            .class_of(z)
            .ok_or_else(|| Error::NotASubgroup(format!("{z:?} is not in the group")))?;
        if self.data.classes.classes[c].len() != 1 {
            return Err(Error::InvalidParameters(format!("{z:?} is not central")));
        }
        let d = BigRational::from_integer(chi.degree().expect("integral degree"));
        Ok(chi.values[c].scale(&d.recip()))
    }
}

/// Trivial character first, then by degree, then by values.
pub fn canonical_order(chars: &mut [ClassFunction]) {
    chars.sort_by(|a, b| {
        let ta = a.values.iter().all(|v| *v == Cyclo::one(1));
        let tb = b.values.iter().all(|v| *v == Cyclo::one(1));
        tb.cmp(&ta)
            .then_with(|| a.degree().cmp(&b.degree()))
            .then_with(|| compare_keys(&a.sort_key(), &b.sort_key()))
    });
}

fn compare_keys(a: &[Vec<(u32, BigRational)>], b: &[Vec<(u32, BigRational)>]) -> Ordering {
    a.cmp(b)
}

/// For each class of `sub`, the class of `sup` containing its image.
pub fn fusion_map<H: Group, G: Group>(
    sub: &ClassData<H>,
    sup: &ClassData<G>,
    embed: impl Fn(&H::Elem) -> G::Elem,
) -> Result<Vec<usize>> {
    (0..sub.num_classes())
        .map(|c| {
            let img = embed(sub.rep(c));
            sup.class_of(&img)
                .ok_or_else(|| Error::NotASubgroup(format!("{img:?} is not in the supergroup")))
        })
        .collect()
}

pub fn restrict(chi: &ClassFunction, fusion: &[usize]) -> ClassFunction {
    ClassFunction {
        order: chi.order,
        values: fusion.iter().map(|&c| chi.values[c].clone()).collect(),
    }
}

/// `psi^G(K) = [G:H] / |K| * sum_{c subset K} |c| psi(c)`.
pub fn induce(
    psi: &ClassFunction,
    fusion: &[usize],
    sub_sizes: &[usize],
    sub_order: usize,
    sup_sizes: &[usize],
    sup_order: usize,
) -> Result<ClassFunction> {
    if sup_order % sub_order != 0 {
        return Err(Error::NotASubgroup(format!("{sub_order} does not divide {sup_order}")));
    }
    let index = (sup_order / sub_order) as i64;
    let mut acc = vec![Cyclo::zero(psi.order); sup_sizes.len()];
    for (c, &k) in fusion.iter().enumerate() {
        let w = BigRational::from_integer(BigInt::from(sub_sizes[c]));
        acc[k] = &acc[k] + &psi.values[c].scale(&w);
    }
    let values = acc
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            if v.is_zero() {
                v
            } else {
                v.scale(&BigRational::new(BigInt::from(index), BigInt::from(sup_sizes[k])))
            }
        })
        .collect();
    Ok(ClassFunction {
        order: psi.order,
        values,
    })
}

pub fn is_zero_function(f: &ClassFunction) -> bool {
    f.values.iter().all(Cyclo::is_zero)
}
