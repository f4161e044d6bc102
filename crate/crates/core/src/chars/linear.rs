//! Linear characters of the abelian constructions, as dual exponent vectors.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::groups::elements::permute_by;
use crate::groups::{ConstructionParams, DElem, EElem, EGroup, FElem, FGroup, SubgroupTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AbelianKind {
    /// `D = D_{t1} x D_{t2}`; coordinates are the `2p` entries, duals have last entry 0 per factor.
    D,
    /// `Z`, coordinate `r` of `lambda^r`.
    Z,
    /// `Z_{l'}`, coordinate `j` of `lambda^(l^a j)`.
    ZLprime,
    Omega(u32),
    Lambda(u32),
    /// `P = P_1 x P_2`, coordinates `(x, y)`.
    P,
}

impl TryFrom<SubgroupTag> for AbelianKind {
    type Error = Error;

    fn try_from(tag: SubgroupTag) -> Result<Self> {
        match tag {
            SubgroupTag::D => Ok(AbelianKind::D),
            SubgroupTag::Z => Ok(AbelianKind::Z),
            SubgroupTag::ZLprime => Ok(AbelianKind::ZLprime),
            SubgroupTag::P => Ok(AbelianKind::P),
            other => Err(Error::InvalidParameters(format!(
                "{other:?} is not an abelian construction with a fixed coordinate system"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearCharacter {
    pub kind: AbelianKind,
    pub dual: Vec<u32>,
    pub moduli: Vec<u32>,
}

pub fn coordinate_moduli(params: &ConstructionParams, kind: AbelianKind) -> Vec<u32> {
    let p = params.p as usize;
    match kind {
        AbelianKind::D => {
            let mut v = vec![params.level_modulus(0); p];
            v.extend(vec![params.level_modulus(1); p]);
            v
        }
        AbelianKind::Z => vec![params.p - 1],
        AbelianKind::ZLprime => vec![params.z_lprime_order()],
        AbelianKind::Omega(t) => vec![params.l.pow(t); p],
        AbelianKind::Lambda(t) => vec![params.l.pow(t)],
        AbelianKind::P => vec![params.p; 2],
    }
}

impl LinearCharacter {
    pub fn trivial(params: &ConstructionParams, kind: AbelianKind) -> Self {
        let moduli = coordinate_moduli(params, kind);
        LinearCharacter {
            kind,
            dual: vec![0; moduli.len()],
            moduli,
        }
    }

    pub fn new(params: &ConstructionParams, kind: AbelianKind, dual: Vec<u32>) -> Result<Self> {
        let moduli = coordinate_moduli(params, kind);
        if dual.len() != moduli.len() {
            return Err(Error::ParamMismatch(format!(
                "dual vector of length {} for {kind:?} with {} coordinates",
                dual.len(),
                moduli.len()
            )));
        }
        let dual = dual.iter().zip(&moduli).map(|(&c, &m)| c % m).collect();
        let mut out = LinearCharacter { kind, dual, moduli };
        out.canonicalize();
        Ok(out)
    }

    /// Characters of `Z_{l'}`: `phi_k(lambda^(l^a j)) = zeta_N^(kj)`.
    pub fn z_lprime(params: &ConstructionParams, k: u32) -> Self {
        let n = params.z_lprime_order();
        LinearCharacter {
            kind: AbelianKind::ZLprime,
            dual: vec![k % n],
            moduli: vec![n],
        }
    }

    /// The `D` character pairing with the two dual vectors.
    pub fn d_char(params: &ConstructionParams, first: &[u32], second: &[u32]) -> Result<Self> {
        let mut dual = first.to_vec();
        dual.extend_from_slice(second);
        Self::new(params, AbelianKind::D, dual)
    }

    fn canonicalize(&mut self) {
        if self.kind != AbelianKind::D {
            return;
        }
        let p = self.dual.len() / 2;
        for block in 0..2 {
            let q = self.moduli[block * p];
            let last = self.dual[block * p + p - 1];
            for c in &mut self.dual[block * p..(block + 1) * p] {
                *c = (*c + q - last) % q;
            }
        }
    }

    pub fn d_factors(&self) -> (&[u32], &[u32]) {
        let p = self.dual.len() / 2;
        (&self.dual[..p], &self.dual[p..])
    }

    /// `L = lcm` of the coordinate moduli; values lie in `mu_L`.
    pub fn value_order(&self) -> u32 {
        self.moduli.iter().fold(1u32, |a, &m| a.lcm(&m))
    }

    pub fn is_trivial(&self) -> bool {
        self.dual.iter().all(|&c| c == 0)
    }

    /// Exponent `k` with `chi(x) = zeta_L^k`.
    pub fn value_exponent(&self, coords: &[u32]) -> u32 {
        let l = self.value_order() as u64;
        let s = self
            .dual
            .iter()
            .zip(coords)
            .zip(&self.moduli)
            .map(|((&c, &x), &m)| c as u64 * x as u64 % m as u64 * (l / m as u64))
            .sum::<u64>();
        (s % l) as u32
    }

    pub fn value(&self, coords: &[u32]) -> Cyclo {
        Cyclo::zeta(self.value_order(), self.value_exponent(coords) as i64)
    }

    /// Order of the character as a group element of the dual group.
    pub fn order(&self) -> u32 {
        self.dual
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| m / c.gcd(&m))
            .fold(1u32, |a, o| a.lcm(&o))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind || self.moduli != other.moduli {
            return Err(Error::ParamMismatch("characters of different groups".into()));
        }
        let dual = self
            .dual
            .iter()
            .zip(&other.dual)
            .zip(&self.moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        let mut out = LinearCharacter {
            kind: self.kind,
            dual,
            moduli: self.moduli.clone(),
        };
        out.canonicalize();
        Ok(out)
    }

    pub fn pow(&self, k: i64) -> Self {
        let dual = self
            .dual
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| ((c as i64 * k.rem_euclid(m as i64)) % m as i64) as u32)
            .collect();
        let mut out = LinearCharacter {
            kind: self.kind,
            dual,
            moduli: self.moduli.clone(),
        };
        out.canonicalize();
        out
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }
}

pub fn d_coords(d: &DElem) -> Vec<u32> {
    let mut v = d.first.clone();
    v.extend_from_slice(&d.second);
    v
}

/// Coordinates of a central element `lambda^r` of `Z_{l'}`.
pub fn z_lprime_coords(params: &ConstructionParams, e: &EElem) -> Result<Vec<u32>> {
    if !EGroup::new(params).in_z_lprime(e) {
        return Err(Error::NotASubgroup(format!("{e:?} is not in Z_l'")));
    }
    Ok(vec![e.r / params.lprime_step()])
}

pub const DEFAULT_IRR_BOUND: u64 = 1 << 22;

/// All linear characters, in lexicographic order of dual vectors.
pub fn irr_abelian(params: &ConstructionParams, kind: AbelianKind, bound: u64) -> Result<Vec<LinearCharacter>> {
    let moduli = coordinate_moduli(params, kind);
    // the free coordinates; for D the last entry of each factor is pinned to 0
    let free: Vec<usize> = match kind {
        AbelianKind::D => {
            let p = params.p as usize;
            (0..2 * p).filter(|&i| i != p - 1 && i != 2 * p - 1).collect()
        }
        _ => (0..moduli.len()).collect(),
    };
    let size = free
        .iter()
        .try_fold(1u128, |acc, &i| acc.checked_mul(moduli[i] as u128))
        .unwrap_or(u128::MAX);
    if size > bound as u128 {
        return Err(Error::bound(format!("Irr({kind:?})"), size, bound as u128));
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut dual = vec![0u32; moduli.len()];
    loop {
        out.push(LinearCharacter {
            kind,
            dual: dual.clone(),
            moduli: moduli.clone(),
        });
        let mut k = free.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            let i = free[k];
            dual[i] += 1;
            if dual[i] < moduli[i] {
                break;
            }
            dual[i] = 0;
        }
    }
}

#[derive(Clone, Debug)]
pub enum Actor {
    F(FElem),
    E(EElem),
}

/// `(f.chi)(x) = chi(f^-1 . x)` for the permutation actions on `Omega_t`, `D`,
/// conjugation on `P`, and the trivial action on `Z`, `Z_{l'}`, `Lambda_t`.
pub fn character_action(params: &ConstructionParams, actor: &Actor, chi: &LinearCharacter) -> Result<LinearCharacter> {
    let fg = FGroup::new(params);
    let mut out = chi.clone();
    match (chi.kind, actor) {
        (AbelianKind::Z | AbelianKind::ZLprime | AbelianKind::Lambda(_), _) => {}
        (AbelianKind::Omega(_), Actor::F(f)) => out.dual = permute_by(&fg, f, &chi.dual),
        (AbelianKind::D, actor) => {
            let (f1, f2) = match actor {
                Actor::E(e) => EGroup::new(params).to_f_pair(e),
                Actor::F(_) => {
                    return Err(Error::ParamMismatch("D is acted on by E, not F".into()));
                }
            };
            let (a, b) = chi.d_factors();
            let mut dual = permute_by(&fg, &f1, a);
            dual.extend(permute_by(&fg, &f2, b));
            out.dual = dual;
            out.canonicalize();
        }
        (AbelianKind::P, Actor::E(e)) => {
            // e (x,y) e^-1 = (lambda^m x, lambda^n y), so (e.chi)(x,y) = chi(lambda^-m x, lambda^-n y)
            let p = params.p as u64;
            let a = params.lambda_pow_signed(-(e.m as i64)) as u64;
            let b = params.lambda_pow_signed(-(e.n as i64)) as u64;
            out.dual = vec![(chi.dual[0] as u64 * a % p) as u32, (chi.dual[1] as u64 * b % p) as u32];
        }
        (kind, _) => {
            return Err(Error::ParamMismatch(format!("no action of this kind on {kind:?}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpStableReport {
    pub p: u32,
    pub l: u32,
    pub t: u32,
    pub total: u64,
    pub stable: Vec<LinearCharacter>,
    /// The stable set equals `{theta : D_t <= ker theta}`.
    pub kernel_route_agrees: bool,
    /// Number of translation-stable characters of `D_t` itself.
    pub d_t_stable: u64,
}

impl FpStableReport {
    pub fn passed(&self) -> bool {
        self.kernel_route_agrees && self.d_t_stable == 1 && self.stable.len() as u64 == (self.l as u64).pow(self.t)
    }
}

/// `F_p`-stable characters of `Omega_t`, cross-checked against the characters
/// killing `D_t`, plus the count of stable characters of `D_t`.
pub fn fp_stable_characters(params: &ConstructionParams, t: u32, bound: u64) -> Result<FpStableReport> {
    let kind = AbelianKind::Omega(t);
    let all = irr_abelian(params, kind, bound)?;
    let fg = FGroup::new(params);
    // F_p is generated by the translation y -> y + 1
    let shift = fg.from_alpha(1, 1);
    let q = params.l.pow(t);
    let p = params.p as usize;
    let d_gens: Vec<Vec<u32>> = (0..p - 1)
        .map(|x| {
            let mut v = vec![0u32; p];
            v[x] = 1;
            v[p - 1] = q - 1;
            v
        })
        .collect();
    let mut stable = Vec::new();
    let mut agree = true;
    for chi in &all {
        let moved = character_action(params, &Actor::F(shift), chi)?;
        let is_stable = moved == *chi;
        let kills_d = d_gens.iter().all(|d| chi.value_exponent(d) == 0);
        agree &= is_stable == kills_d;
        if is_stable {
            stable.push(chi.clone());
        }
    }
    // D_t characters: dual vectors modulo the diagonal
    let mut d_t_stable = 0;
    let mut v = vec![0u32; p];
    loop {
        let moved = permute_by(&fg, &shift, &v);
        let last = moved[p - 1];
        if moved.iter().map(|&c| (c + q - last) % q).eq(v.iter().copied()) {
            d_t_stable += 1;
        }
        let mut i = 0;
        loop {
            if i == p - 1 {
                return Ok(FpStableReport {
                    p: params.p,
                    l: params.l,
                    t,
                    total: all.len() as u64,
                    stable,
                    kernel_route_agrees: agree,
                    d_t_stable,
                });
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

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerTag {
    Trivial,
    P1,
    P2,
    P,
    /// Any other subgroup, by order; never expected.
    Other(u32),
}

/// Stabilizer of a `D` character in `P`, by testing every element of `P`.
pub fn stabilizer_in_p(params: &ConstructionParams, theta: &LinearCharacter) -> Result<StabilizerTag> {
    if theta.kind != AbelianKind::D {
        return Err(Error::ParamMismatch("stabilizer_in_p expects a character of D".into()));
    }
    let mut fixers = Vec::new();
    for x in 0..params.p {
        for y in 0..params.p {
            let e = EElem::new(x, y, 0, 0, 0);
            if character_action(params, &Actor::E(e), theta)? == *theta {
                fixers.push((x, y));
            }
        }
    }
    let p = params.p;
    Ok(match fixers.len() as u32 {
        1 => StabilizerTag::Trivial,
        n if n == p && fixers.iter().all(|&(_, y)| y == 0) => StabilizerTag::P1,
        n if n == p && fixers.iter().all(|&(x, _)| x == 0) => StabilizerTag::P2,
        n if n == p * p => StabilizerTag::P,
        n => StabilizerTag::Other(n),
    })
}

/// Spot check that `chi` is multiplicative on the given coordinate pairs.
pub fn is_multiplicative_on(chi: &LinearCharacter, pairs: &[(Vec<u32>, Vec<u32>)]) -> bool {
    pairs.iter().all(|(a, b)| {
        let sum: Vec<u32> = a.iter().zip(b).zip(&chi.moduli).map(|((&x, &y), &m)| (x + y) % m).collect();
        let l = chi.value_order();
        chi.value_exponent(&sum) == (chi.value_exponent(a) + chi.value_exponent(b)) % l
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        assert_eq!(irr_abelian(&c, AbelianKind::ZLprime, 100).unwrap().len(), 3);
        let m = ConstructionParams::machinery(2, 3, 1, 1).unwrap();
        let d = irr_abelian(&m, AbelianKind::D, 100).unwrap();
        assert_eq!(d.len(), 16);
        assert!(d[0].is_trivial());
        assert!(irr_abelian(&c, AbelianKind::D, 100).is_err());
        assert!(AbelianKind::try_from(SubgroupTag::ELprime).is_err());
    }

    #[test]
    fn orders() {
        let c = ConstructionParams::theorem(2, 7, 1, 2).unwrap();
        assert_eq!(LinearCharacter::z_lprime(&c, 1).order(), 3);
        assert_eq!(LinearCharacter::z_lprime(&c, 0).order(), 1);
        let th = LinearCharacter::d_char(&c, &[1, 0, 0, 0, 0, 0, 0], &[2, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(th.order(), 2);
    }
}
