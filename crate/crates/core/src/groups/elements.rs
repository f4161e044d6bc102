//! Tuple models of `F`, `E`, `Omega_t`, `D` and `G = D x| E`.
//!
//! Units of `F_p` are stored as exponents of the fixed generator `lambda`, so
//! membership in the `l'`-parts is a congruence on exponents.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::params::ConstructionParams;
use crate::error::{Error, Result};

pub trait Group: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// `g x g^-1`.
    fn conj(&self, g: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    fn commutator(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(&self.mul(&gi, &hi), &self.mul(g, h))
    }

    fn pow(&self, g: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut acc = self.identity();
        let mut b = g.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        acc
    }

    fn element_order(&self, g: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut cur = g.clone();
        let mut k = 1;
        while cur != id {
            cur = self.mul(&cur, g);
            k += 1;
        }
        k
    }
}

/// `(x, lambda^m)` in `F = F_p x| F_p^*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FElem {
    pub x: u32,
    pub m: u32,
}

/// `(x, y, lambda^m, lambda^n, lambda^r)` in `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EElem {
    pub x: u32,
    pub y: u32,
    pub m: u32,
    pub n: u32,
    pub r: u32,
}

impl EElem {
    pub const IDENTITY: EElem = EElem {
        x: 0,
        y: 0,
        m: 0,
        n: 0,
        r: 0,
    };

    pub fn new(x: u32, y: u32, m: u32, n: u32, r: u32) -> Self {
        EElem { x, y, m, n, r }
    }

    /// The central element `lambda^r` of `Z`.
    pub fn central(r: u32) -> Self {
        EElem { r, ..Self::IDENTITY }
    }
}

/// Exponent vector of `Omega_t`, indexed by `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaElem(pub Vec<u32>);

/// Element of `D = D_{t1} x D_{t2}`, each factor a zero-sum exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DElem {
    pub first: Vec<u32>,
    pub second: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GElem {
    pub d: DElem,
    pub e: EElem,
}

#[derive(Clone, Debug)]
pub struct FGroup {
    pub params: ConstructionParams,
}

impl FGroup {
    pub fn new(params: &ConstructionParams) -> Self {
        FGroup {
            params: params.clone(),
        }
    }

    /// Element `(x, alpha)` given by the unit itself rather than its exponent.
    pub fn from_alpha(&self, x: u32, alpha: u32) -> FElem {
        FElem {
            x: x % self.params.p,
            m: self.params.lambda_log(alpha),
        }
    }

    pub fn alpha(&self, f: &FElem) -> u32 {
        self.params.lambda_pow(f.m)
    }

    /// `(x, alpha).y = x + alpha y`.
    pub fn act_on_fp(&self, f: &FElem, y: u32) -> u32 {
        let p = self.params.p as u64;
        ((f.x as u64 + self.params.lambda_pow(f.m) as u64 * (y as u64 % p)) % p) as u32
    }

    /// Whether `f` lies in `F_{l'} = O_{l'}(F)`.
    pub fn in_lprime(&self, f: &FElem) -> bool {
        f.m % self.params.lprime_step() == 0
    }

    pub fn lprime_elements(&self) -> Vec<FElem> {
        let step = self.params.lprime_step();
        let mut out = Vec::new();
        for x in 0..self.params.p {
            for m in (0..self.params.p - 1).step_by(step as usize) {
                out.push(FElem { x, m });
            }
        }
        out
    }
}

impl Group for FGroup {
    type Elem = FElem;

    fn identity(&self) -> FElem {
        FElem { x: 0, m: 0 }
    }

    fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        let p = self.params.p as u64;
        FElem {
            x: ((a.x as u64 + self.params.lambda_pow(a.m) as u64 * b.x as u64) % p) as u32,
            m: (a.m + b.m) % (self.params.p - 1),
        }
    }

    fn inv(&self, a: &FElem) -> FElem {
        let p = self.params.p as u64;
        let ainv = self.params.lambda_pow_signed(-(a.m as i64)) as u64;
        FElem {
            x: ((p - a.x as u64 % p) * ainv % p) as u32,
            m: (self.params.p - 1 - a.m) % (self.params.p - 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EGroup {
    pub params: ConstructionParams,
}

impl EGroup {
    pub fn new(params: &ConstructionParams) -> Self {
        EGroup {
            params: params.clone(),
        }
    }

    /// The surjection `E -> F_1 x F_2` with kernel `Z`.
    pub fn to_f_pair(&self, e: &EElem) -> (FElem, FElem) {
        (FElem { x: e.x, m: e.m }, FElem { x: e.y, m: e.n })
    }

    pub fn in_lprime(&self, e: &EElem) -> bool {
        let s = self.params.lprime_step();
        e.m % s == 0 && e.n % s == 0 && e.r % s == 0
    }

    pub fn in_z(e: &EElem) -> bool {
        e.x == 0 && e.y == 0 && e.m == 0 && e.n == 0
    }

    pub fn in_z_lprime(&self, e: &EElem) -> bool {
        Self::in_z(e) && e.r % self.params.lprime_step() == 0
    }

    pub fn in_p1(e: &EElem) -> bool {
        e.y == 0 && e.m == 0 && e.n == 0 && e.r == 0
    }

    pub fn in_p2(e: &EElem) -> bool {
        e.x == 0 && e.m == 0 && e.n == 0 && e.r == 0
    }

    pub fn in_p(e: &EElem) -> bool {
        e.m == 0 && e.n == 0 && e.r == 0
    }

    /// The generator `lambda^(l^a)` of `Z_{l'}`.
    pub fn z_lprime_generator(&self) -> EElem {
        EElem::central(self.params.lprime_step() % (self.params.p - 1))
    }

    pub fn z_lprime_elements(&self) -> Vec<EElem> {
        let s = self.params.lprime_step();
        (0..self.params.z_lprime_order())
            .map(|j| EElem::central(j * s))
            .collect()
    }

    pub fn lprime_elements(&self) -> Vec<EElem> {
        let p = self.params.p;
        let s = self.params.lprime_step() as usize;
        let mut out = Vec::with_capacity(self.params.order_e_lprime() as usize);
        for x in 0..p {
            for y in 0..p {
                for m in (0..p - 1).step_by(s) {
                    for n in (0..p - 1).step_by(s) {
                        for r in (0..p - 1).step_by(s) {
                            out.push(EElem { x, y, m, n, r });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn lprime_generators(&self) -> Vec<EElem> {
        let s = self.params.lprime_step() % (self.params.p - 1);
        vec![
            EElem::new(1, 0, 0, 0, 0),
            EElem::new(0, 1, 0, 0, 0),
            EElem::new(0, 0, s, 0, 0),
            EElem::new(0, 0, 0, s, 0),
            EElem::new(0, 0, 0, 0, s),
        ]
    }

    /// Lifts of generators of `F_1 x F_2`, generating `E` together with `Z`.
    pub fn generators(&self) -> Vec<EElem> {
        vec![
            EElem::new(1, 0, 0, 0, 0),
            EElem::new(0, 1, 0, 0, 0),
            EElem::new(0, 0, 1, 0, 0),
            EElem::new(0, 0, 0, 1, 0),
            EElem::new(0, 0, 0, 0, 1),
        ]
    }

    pub fn p_elements(&self) -> Vec<EElem> {
        let p = self.params.p;
        (0..p)
            .flat_map(|x| (0..p).map(move |y| EElem::new(x, y, 0, 0, 0)))
            .collect()
    }

    pub fn validate(&self, e: &EElem) -> Result<()> {
        let p = self.params.p;
        if e.x >= p || e.y >= p || e.m >= p - 1 || e.n >= p - 1 || e.r >= p - 1 {
            return Err(Error::ParamMismatch(format!("{e:?} is not an element of E for p = {p}")));
        }
        Ok(())
    }

    pub fn try_mul(&self, a: &EElem, b: &EElem) -> Result<EElem> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }
}

impl Group for EGroup {
    type Elem = EElem;

    fn identity(&self) -> EElem {
        EElem::IDENTITY
    }

    fn mul(&self, a: &EElem, b: &EElem) -> EElem {
        let p = self.params.p as u64;
        let u = (self.params.p - 1) as u64;
        EElem {
            x: ((a.x as u64 + self.params.lambda_pow(a.m) as u64 * b.x as u64) % p) as u32,
            y: ((a.y as u64 + self.params.lambda_pow(a.n) as u64 * b.y as u64) % p) as u32,
            m: ((a.m as u64 + b.m as u64) % u) as u32,
            n: ((a.n as u64 + b.n as u64) % u) as u32,
            r: ((a.r as u64 + b.r as u64 + a.n as u64 * b.m as u64) % u) as u32,
        }
    }

    fn inv(&self, a: &EElem) -> EElem {
        let p = self.params.p as u64;
        let u = (self.params.p - 1) as u64;
        let am = self.params.lambda_pow_signed(-(a.m as i64)) as u64;
        let an = self.params.lambda_pow_signed(-(a.n as i64)) as u64;
        EElem {
            x: ((p - a.x as u64) % p * am % p) as u32,
            y: ((p - a.y as u64) % p * an % p) as u32,
            m: ((u - a.m as u64) % u) as u32,
            n: ((u - a.n as u64) % u) as u32,
            r: ((a.n as u64 * a.m as u64 % u + u - a.r as u64) % u) as u32,
        }
    }
}

/// `Omega_t = (Z/l^t)^p` with `F` permuting coordinates.
#[derive(Clone, Debug)]
pub struct OmegaGroup {
    pub l: u32,
    pub t: u32,
    pub p: u32,
}

impl OmegaGroup {
    pub fn modulus(&self) -> u32 {
        self.l.pow(self.t)
    }

    pub fn is_diagonal(g: &OmegaElem) -> bool {
        g.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn in_d(&self, g: &OmegaElem) -> bool {
        g.0.iter().map(|&c| c as u64).sum::<u64>() % self.modulus() as u64 == 0
    }

    /// `(f.g)_z = g_{f^-1 z}`.
    pub fn act(&self, fg: &FGroup, f: &FElem, g: &OmegaElem) -> OmegaElem {
        OmegaElem(permute_by(fg, f, &g.0))
    }
}

impl Group for OmegaGroup {
    type Elem = OmegaElem;

    fn identity(&self) -> OmegaElem {
        OmegaElem(vec![0; self.p as usize])
    }

    fn mul(&self, a: &OmegaElem, b: &OmegaElem) -> OmegaElem {
        let q = self.modulus();
        OmegaElem(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % q).collect())
    }

    fn inv(&self, a: &OmegaElem) -> OmegaElem {
        let q = self.modulus();
        OmegaElem(a.0.iter().map(|&x| (q - x) % q).collect())
    }
}

/// Coordinate permutation `v'_z = v_{f^-1 z}` for the affine action of `F` on `F_p`.
pub fn permute_by(fg: &FGroup, f: &FElem, v: &[u32]) -> Vec<u32> {
    let finv = fg.inv(f);
    (0..v.len() as u32)
        .map(|z| v[fg.act_on_fp(&finv, z) as usize])
        .collect()
}

/// `G = D x| E`, with `E` acting on `D` through `E -> F_1 x F_2`.
#[derive(Clone, Debug)]
pub struct GGroup {
    pub params: ConstructionParams,
    pub e: EGroup,
    pub f: FGroup,
}

impl GGroup {
    pub fn new(params: &ConstructionParams) -> Self {
        GGroup {
            params: params.clone(),
            e: EGroup::new(params),
            f: FGroup::new(params),
        }
    }

    pub fn d_identity(&self) -> DElem {
        let p = self.params.p as usize;
        DElem {
            first: vec![0; p],
            second: vec![0; p],
        }
    }

    pub fn d_add(&self, a: &DElem, b: &DElem) -> DElem {
        let (q1, q2) = (self.params.level_modulus(0), self.params.level_modulus(1));
        DElem {
            first: a.first.iter().zip(&b.first).map(|(&x, &y)| (x + y) % q1).collect(),
            second: a.second.iter().zip(&b.second).map(|(&x, &y)| (x + y) % q2).collect(),
        }
    }

    pub fn d_neg(&self, a: &DElem) -> DElem {
        let (q1, q2) = (self.params.level_modulus(0), self.params.level_modulus(1));
        DElem {
            first: a.first.iter().map(|&x| (q1 - x) % q1).collect(),
            second: a.second.iter().map(|&x| (q2 - x) % q2).collect(),
        }
    }

    pub fn is_valid_d(&self, d: &DElem) -> bool {
        let p = self.params.p as usize;
        let (q1, q2) = (self.params.level_modulus(0), self.params.level_modulus(1));
        d.first.len() == p
            && d.second.len() == p
            && d.first.iter().all(|&c| c < q1)
            && d.second.iter().all(|&c| c < q2)
            && d.first.iter().map(|&c| c as u64).sum::<u64>() % q1 as u64 == 0
            && d.second.iter().map(|&c| c as u64).sum::<u64>() % q2 as u64 == 0
    }

    /// Action of `E` on `D` by index permutation through `phi`.
    pub fn act_on_d(&self, e: &EElem, d: &DElem) -> DElem {
        let (f1, f2) = self.e.to_f_pair(e);
        DElem {
            first: permute_by(&self.f, &f1, &d.first),
            second: permute_by(&self.f, &f2, &d.second),
        }
    }

    /// `e_x - e_{p-1}` in each factor; these generate `D`.
    pub fn d_generators(&self) -> Vec<DElem> {
        let p = self.params.p as usize;
        let mut out = Vec::new();
        for factor in 0..2 {
            let q = self.params.level_modulus(factor);
            for x in 0..p - 1 {
                let mut v = vec![0u32; p];
                v[x] = 1;
                v[p - 1] = q - 1;
                let mut d = self.d_identity();
                if factor == 0 {
                    d.first = v;
                } else {
                    d.second = v;
                }
                out.push(d);
            }
        }
        out
    }

    pub fn embed_d(&self, d: DElem) -> GElem {
        GElem {
            d,
            e: EElem::IDENTITY,
        }
    }

    pub fn embed_e(&self, e: EElem) -> GElem {
        GElem {
            d: self.d_identity(),
            e,
        }
    }

    /// Generators of `G_{l'}`.
    pub fn lprime_generators(&self) -> Vec<GElem> {
        let mut out: Vec<GElem> = self.d_generators().into_iter().map(|d| self.embed_d(d)).collect();
        out.extend(self.e.lprime_generators().into_iter().map(|e| self.embed_e(e)));
        out
    }

    pub fn in_lprime(&self, g: &GElem) -> bool {
        self.e.in_lprime(&g.e)
    }

    /// All elements of one factor `D_t`, zero-sum vectors enumerated with the last coordinate forced.
    pub fn d_factor_elements(&self, factor: usize, bound: u64) -> Result<Vec<Vec<u32>>> {
        let p = self.params.p as usize;
        let q = self.params.level_modulus(factor) as u64;
        let size = (q as u128).pow(p as u32 - 1);
        if size > bound as u128 {
            return Err(Error::bound(format!("D_t{}", factor + 1), size, bound as u128));
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut v = vec![0u64; p - 1];
        loop {
            let s: u64 = v.iter().sum();
            let mut full: Vec<u32> = v.iter().map(|&c| c as u32).collect();
            full.push(((q - s % q) % q) as u32);
            out.push(full);
            let mut i = 0;
            loop {
                if i == p - 1 {
                    return Ok(out);
                }
                v[i] += 1;
                if v[i] < q {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
        }
    }

    pub fn d_elements(&self, bound: u64) -> Result<Vec<DElem>> {
        let size = self.params.order_d();
        if size > bound.into() {
            return Err(Error::bound("D", u128::try_from(size).unwrap_or(u128::MAX), bound as u128));
        }
        let a = self.d_factor_elements(0, bound)?;
        let b = self.d_factor_elements(1, bound)?;
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                out.push(DElem {
                    first: x.clone(),
                    second: y.clone(),
                });
            }
        }
        Ok(out)
    }

    pub fn lprime_elements(&self, bound: u64) -> Result<Vec<GElem>> {
        let size = self.params.order_g_lprime();
        if size > bound.into() {
            return Err(Error::bound(
                "G_l'",
                u128::try_from(size).unwrap_or(u128::MAX),
                bound as u128,
            ));
        }
        let ds = self.d_elements(bound)?;
        let es = self.e.lprime_elements();
        let mut out = Vec::with_capacity(ds.len() * es.len());
        for d in &ds {
            for e in &es {
                out.push(GElem { d: d.clone(), e: *e });
            }
        }
        Ok(out)
    }
}

impl Group for GGroup {
    type Elem = GElem;

    fn identity(&self) -> GElem {
        self.embed_e(EElem::IDENTITY)
    }

    fn mul(&self, a: &GElem, b: &GElem) -> GElem {
        GElem {
            d: self.d_add(&a.d, &self.act_on_d(&a.e, &b.d)),
            e: self.e.mul(&a.e, &b.e),
        }
    }

    fn inv(&self, a: &GElem) -> GElem {
        let ei = self.e.inv(&a.e);
        GElem {
            d: self.d_neg(&self.act_on_d(&ei, &a.d)),
            e: ei,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupTag {
    ELprime,
    ZLprime,
    Z,
    P1,
    P2,
    P,
    D,
    Lambda,
}

#[derive(Clone, Debug)]
pub enum Element {
    E(EElem),
    G(GElem),
    Omega(OmegaElem),
}

/// Membership tests for the named subgroups.
pub fn subgroup_membership(params: &ConstructionParams, tag: SubgroupTag, x: &Element) -> Result<bool> {
    let eg = EGroup::new(params);
    let e_test = |e: &EElem| match tag {
        SubgroupTag::ELprime => Some(eg.in_lprime(e)),
        SubgroupTag::ZLprime => Some(eg.in_z_lprime(e)),
        SubgroupTag::Z => Some(EGroup::in_z(e)),
        SubgroupTag::P1 => Some(EGroup::in_p1(e)),
        SubgroupTag::P2 => Some(EGroup::in_p2(e)),
        SubgroupTag::P => Some(EGroup::in_p(e)),
        SubgroupTag::D | SubgroupTag::Lambda => None,
    };
    match x {
        Element::E(e) => e_test(e).ok_or_else(|| Error::ParamMismatch(format!("{tag:?} is not a subgroup of E"))),
        Element::G(g) => {
            let gg = GGroup::new(params);
            if tag == SubgroupTag::D {
                return Ok(g.e == EElem::IDENTITY && gg.is_valid_d(&g.d));
            }
            let trivial_d = g.d == gg.d_identity();
            e_test(&g.e)
                .map(|b| b && trivial_d)
                .ok_or_else(|| Error::ParamMismatch(format!("{tag:?} is not a subgroup of G")))
        }
        Element::Omega(o) => match tag {
            SubgroupTag::Lambda => Ok(OmegaGroup::is_diagonal(o)),
            _ => Err(Error::ParamMismatch(format!("{tag:?} is not a subgroup of Omega"))),
        },
    }
}
