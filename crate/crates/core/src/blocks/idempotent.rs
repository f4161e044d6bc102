use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::algebra::{frobenius_twist, reduce_element, AlgebraElement};
use crate::chars::{AbelianKind, LinearCharacter};
use crate::error::{Error, Result};
use crate::exactnum::linalg::{mat_mul_mod, rank_mod};
use crate::exactnum::{build_reduction, Cyclo, FfElem, ReductionMap};
use crate::groups::{ConstructionParams, DElem, EElem, GElem, GGroup, Group};

/// Largest `|D x Z_{l'}|` for which the centre-algebra primitivity test runs.
pub const DEFAULT_CENTRE_BOUND: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct BlockDescriptor {
    pub params: ConstructionParams,
    pub phi: LinearCharacter,
    /// `e_phi`, supported on `Z_{l'}` embedded in `G_{l'}`.
    pub idempotent: AlgebraElement<GElem, Cyclo>,
}

impl BlockDescriptor {
    /// `k` with `phi = phi_k`.
    pub fn index(&self) -> u32 {
        self.phi.dual[0]
    }

    /// Exponents `r` of the support elements `lambda^r` with their coefficients.
    pub fn idempotent_terms(&self) -> Vec<(u32, Cyclo)> {
        self.idempotent
            .support
            .iter()
            .map(|(g, c)| (g.e.r, c.clone()))
            .collect()
    }
}

impl Serialize for BlockDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BlockDescriptor", 3)?;
        st.serialize_field("params", &self.params.echo())?;
        st.serialize_field("phi", &self.index())?;
        st.serialize_field("idempotent", &self.idempotent_terms())?;
        st.end()
    }
}

fn z_element(g: &GGroup, j: u32) -> GElem {
    let p = &g.params;
    g.embed_e(EElem::central(j * p.lprime_step() % p.unit_order()))
}

/// `e_phi = |Z_{l'}|^-1 sum_z phi(z^-1) z`.
pub fn build_idempotent(phi: &LinearCharacter, params: &ConstructionParams) -> Result<BlockDescriptor> {
    let n = params.z_lprime_order();
    if phi.kind != AbelianKind::ZLprime || phi.moduli != [n] {
        return Err(Error::ParamMismatch(format!(
            "block idempotents are indexed by characters of Z_l' of order {n}, got {:?}",
            phi.kind
        )));
    }
    let g = GGroup::new(params);
    let k = phi.dual[0] as i64;
    let inv_n = BigRational::new(BigInt::from(1), BigInt::from(n));
    let idempotent = AlgebraElement::from_terms(
        (0..n).map(|j| (z_element(&g, j), Cyclo::zeta(n, -k * j as i64).scale(&inv_n))),
    );
    Ok(BlockDescriptor {
        params: params.clone(),
        phi: phi.clone(),
        idempotent,
    })
}

pub fn all_blocks(params: &ConstructionParams) -> Result<Vec<BlockDescriptor>> {
    (0..params.z_lprime_order())
        .map(|k| build_idempotent(&LinearCharacter::z_lprime(params, k), params))
        .collect()
}

/// Smallest field `F_{l^m}` containing the `|Z_{l'}|`-th roots of unity.
pub fn block_reduction(params: &ConstructionParams) -> Result<ReductionMap> {
    build_reduction(params.z_lprime_order(), params.l)
}

/// `twist(reduce(e_phi), m) = reduce(e_{phi^(l^m)})`.
pub fn twist_identity_holds(block: &BlockDescriptor, rmap: &ReductionMap, m: u64) -> Result<bool> {
    let params = &block.params;
    let lhs = frobenius_twist(&reduce_element(&block.idempotent, rmap)?, m);
    let lm = crate::exactnum::numtheory::mod_pow(params.l as u64, m, params.z_lprime_order() as u64);
    let image = build_idempotent(&block.phi.pow(lm as i64), params)?;
    Ok(lhs == reduce_element(&image.idempotent, rmap)?)
}

fn is_central(g: &GGroup, x: &AlgebraElement<GElem, Cyclo>) -> bool {
    g.lprime_generators().iter().all(|s| {
        let si = g.inv(s);
        x.map_support(|h| g.mul(&g.mul(s, h), &si)) == *x
    })
}

/// The span of `G_{l'}`-class sums of classes inside `D x Z_{l'}`, over `F_l`.
#[derive(Clone, Debug)]
pub struct CentreAlgebra {
    pub l: u32,
    pub class_sizes: Vec<usize>,
    /// `structure[i][j][k]`: coefficient of `b_k` in `b_i b_j`, mod `l`.
    pub structure: Vec<Vec<Vec<u64>>>,
}

type CentreKey = (DElem, u32);

impl CentreAlgebra {
    pub fn build(params: &ConstructionParams, bound: u64) -> Result<Self> {
        let g = GGroup::new(params);
        let n = params.z_lprime_order();
        let size = params.order_d() * n;
        if size > bound.into() {
            return Err(Error::bound(
                "D x Z_l'",
                u128::try_from(size).unwrap_or(u128::MAX),
                bound as u128,
            ));
        }
        let ds = g.d_elements(bound)?;
        let elems: Vec<CentreKey> = (0..n).flat_map(|j| ds.iter().map(move |d| (d.clone(), j))).collect();
        let index: HashMap<CentreKey, usize> = elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        // Z_{l'} is central and D is abelian, so only conjugation by E_{l'} moves elements.
        let egens = g.e.lprime_generators();
        let mut class_of = vec![usize::MAX; elems.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..elems.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut orbit = vec![start];
            let mut head = 0;
            while head < orbit.len() {
                let (d, j) = &elems[orbit[head]];
                head += 1;
                for e in &egens {
                    let y = index[&(g.act_on_d(e, d), *j)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        orbit.push(y);
                    }
                }
            }
            classes.push(orbit);
        }
        let r = classes.len();
        let l = params.l as u64;
        let mut structure = vec![vec![vec![0u64; r]; r]; r];
        for k in 0..r {
            let (dz, jz) = &elems[classes[k][0]];
            for (i, class) in classes.iter().enumerate() {
                for &x in class {
                    let (dx, jx) = &elems[x];
                    let y = (g.d_add(&g.d_neg(dx), dz), (jz + n - jx) % n);
                    let jcls = class_of[index[&y]];
                    structure[i][jcls][k] += 1;
                }
            }
        }
        for row in structure.iter_mut().flatten() {
            for v in row.iter_mut() {
                *v %= l;
            }
        }
        Ok(CentreAlgebra {
            l: params.l,
            class_sizes: classes.iter().map(Vec::len).collect(),
            structure,
        })
    }

    pub fn dim(&self) -> usize {
        self.class_sizes.len()
    }

    fn mul_vec(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let r = self.dim();
        let l = self.l as u64;
        let mut out = vec![0u64; r];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = a * b % l;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (*o + ab * self.structure[i][j][k]) % l;
                }
            }
        }
        out
    }

    /// `dim A/J(A)`, the number of primitive idempotents of `A` over an algebraic closure.
    ///
    /// The Frobenius `x -> x^l` is `F_l`-linear on `A`, kills `J(A)` after `s`
    /// iterations once `l^s >= dim A`, and is injective on `A/J(A)`.
    pub fn semisimple_rank(&self) -> usize {
        let r = self.dim();
        let l = self.l as u64;
        let mut frob = vec![vec![0u64; r]; r];
        for i in 0..r {
            let mut b = vec![0u64; r];
            b[i] = 1;
            let mut pw = b.clone();
            for _ in 1..l {
                pw = self.mul_vec(&pw, &b);
            }
            for k in 0..r {
                frob[k][i] = pw[k];
            }
        }
        let mut s = 1u32;
        while (l as u128).pow(s) < r as u128 {
            s += 1;
        }
        let mut acc = frob.clone();
        for _ in 1..s {
            acc = mat_mul_mod(&acc, &frob, l);
        }
        rank_mod(&acc, l)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub blocks: usize,
    pub sum_is_one: bool,
    pub orthogonal: bool,
    pub idempotent: bool,
    pub central: bool,
    pub supported_on_z: bool,
    pub reduced_idempotent: bool,
    pub twist_permutes: bool,
    pub centre_dim: Option<usize>,
    pub centre_semisimple_rank: Option<usize>,
    /// `None` when `D x Z_{l'}` exceeds the bound.
    pub primitive: Option<bool>,
    pub failures: Vec<String>,
}

impl PartitionReport {
    pub fn passed(&self) -> bool {
        self.sum_is_one
            && self.orthogonal
            && self.idempotent
            && self.central
            && self.supported_on_z
            && self.reduced_idempotent
            && self.twist_permutes
            && self.primitive != Some(false)
    }
}

pub fn block_partition_check(params: &ConstructionParams, centre_bound: u64) -> Result<PartitionReport> {
    let g = GGroup::new(params);
    let blocks = all_blocks(params)?;
    let rmap = block_reduction(params)?;
    let n = params.z_lprime_order();
    let mut rep = PartitionReport {
        blocks: blocks.len(),
        ..Default::default()
    };

    let one = AlgebraElement::one_at(g.identity(), n);
    let sum = blocks
        .iter()
        .fold(AlgebraElement::zero(), |acc, b| acc.add(&b.idempotent));
    rep.sum_is_one = sum == one;
    if !rep.sum_is_one {
        rep.failures.push("sum of block idempotents is not 1".into());
    }

    rep.orthogonal = true;
    rep.idempotent = true;
    for (i, a) in blocks.iter().enumerate() {
        for (j, b) in blocks.iter().enumerate().skip(i) {
            let prod = a.idempotent.mul(&b.idempotent, &g);
            if i == j && prod != a.idempotent {
                rep.idempotent = false;
                rep.failures.push(format!("e_{} is not idempotent", a.index()));
            }
            if i != j && !prod.is_zero() {
                rep.orthogonal = false;
                rep.failures.push(format!("e_{} e_{} != 0", a.index(), b.index()));
            }
        }
    }

    rep.central = blocks.iter().all(|b| is_central(&g, &b.idempotent));
    if !rep.central {
        rep.failures.push("some idempotent is not central".into());
    }
    rep.supported_on_z = blocks.iter().all(|b| {
        b.idempotent
            .support
            .keys()
            .all(|x| x.d == g.d_identity() && g.e.in_z_lprime(&x.e))
    });
    if !rep.supported_on_z {
        rep.failures.push("support leaves Z_l'".into());
    }

    rep.reduced_idempotent = true;
    rep.twist_permutes = true;
    for b in &blocks {
        let red = reduce_element(&b.idempotent, &rmap)?;
        if red.mul(&red, &g) != red || red.is_zero() {
            rep.reduced_idempotent = false;
            rep.failures.push(format!("reduction of e_{} is not a nonzero idempotent", b.index()));
        }
        for m in 1..=rmap.m as u64 {
            if !twist_identity_holds(b, &rmap, m)? {
                rep.twist_permutes = false;
                rep.failures.push(format!("twist of e_{} by {m} is not the expected idempotent", b.index()));
            }
        }
    }

    match CentreAlgebra::build(params, centre_bound) {
        Ok(a) => {
            let rank = a.semisimple_rank();
            rep.centre_dim = Some(a.dim());
            rep.centre_semisimple_rank = Some(rank);
            // n orthogonal nonzero idempotents summing to 1 and exactly n primitive ones
            rep.primitive = Some(rank == n as usize);
            if rank != n as usize {
                rep.failures.push(format!("centre algebra has {rank} primitive idempotents, expected {n}"));
            }
        }
        Err(Error::BoundExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// Reduced idempotent over `F_{l^m}`, keyed by the exponent `r` of `lambda^r`.
pub fn reduced_terms(block: &BlockDescriptor, rmap: &ReductionMap) -> Result<Vec<(u32, FfElem)>> {
    Ok(reduce_element(&block.idempotent, rmap)?
        .support
        .into_iter()
        .map(|(g, c)| (g.e.r, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_idempotent_at_p7() {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let b = build_idempotent(&LinearCharacter::z_lprime(&c, 0), &c).unwrap();
        let third = Cyclo::from_rational(3, &BigRational::new(1.into(), 3.into()));
        let terms = b.idempotent_terms();
        assert_eq!(terms.iter().map(|t| t.0).collect::<Vec<_>>(), vec![0, 2, 4]);
        assert!(terms.iter().all(|t| t.1 == third));
    }

    #[test]
    fn wrong_character_kind_is_rejected() {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let phi = LinearCharacter::trivial(&c, AbelianKind::Z);
        assert!(build_idempotent(&phi, &c).is_err());
    }
}
