use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::elements::{DElem, EElem, EGroup, GElem, GGroup, Group};
use super::params::ConstructionParams;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AutomorphismSpec {
    /// Conjugation by an element of `E`, i.e. by a lift of an element of `F_1 x F_2`.
    Conjugation(EElem),
    /// `(x,y,m,n,r) -> (y,x,n,m,mn-r)` on `E`, swapping the two factors of `D`.
    Swap,
}

#[derive(Clone, Debug)]
pub struct Automorphism {
    spec: AutomorphismSpec,
    g: GGroup,
    conj_inv: Option<EElem>,
}

impl Automorphism {
    pub fn new(params: &ConstructionParams, spec: AutomorphismSpec) -> Result<Self> {
        let g = GGroup::new(params);
        let conj_inv = match &spec {
            AutomorphismSpec::Swap => {
                if params.t1 != params.t2 {
                    return Err(Error::SwapNeedsEqualLevels {
                        t1: params.t1,
                        t2: params.t2,
                    });
                }
                None
            }
            AutomorphismSpec::Conjugation(c) => {
                g.e.validate(c)?;
                Some(g.e.inv(c))
            }
        };
        Ok(Automorphism { spec, g, conj_inv })
    }

    pub fn spec(&self) -> &AutomorphismSpec {
        &self.spec
    }

    pub fn apply_e(&self, e: &EElem) -> EElem {
        match &self.spec {
            AutomorphismSpec::Conjugation(c) => self.g.e.mul(&self.g.e.mul(c, e), self.conj_inv.as_ref().unwrap()),
            AutomorphismSpec::Swap => {
                let u = self.g.params.unit_order() as u64;
                let mn = e.m as u64 * e.n as u64 % u;
                EElem::new(e.y, e.x, e.n, e.m, ((mn + u - e.r as u64) % u) as u32)
            }
        }
    }

    pub fn apply_d(&self, d: &DElem) -> DElem {
        match &self.spec {
            AutomorphismSpec::Conjugation(c) => self.g.act_on_d(c, d),
            AutomorphismSpec::Swap => DElem {
                first: d.second.clone(),
                second: d.first.clone(),
            },
        }
    }

    pub fn apply(&self, x: &GElem) -> GElem {
        GElem {
            d: self.apply_d(&x.d),
            e: self.apply_e(&x.e),
        }
    }
}

pub fn apply_automorphism(params: &ConstructionParams, spec: AutomorphismSpec, x: &GElem) -> Result<GElem> {
    Ok(Automorphism::new(params, spec)?.apply(x))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismReport {
    pub e_pairs_checked: u64,
    pub d_pairs_checked: u64,
    pub g_pairs_checked: u64,
    pub bijective: bool,
    pub involution: Option<bool>,
    /// `+1` when the map fixes `Z_{l'}` pointwise, `-1` when it inverts it, `0` otherwise.
    pub z_lprime_sign: i32,
    pub counterexamples: Vec<String>,
}

impl AutomorphismReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.counterexamples.is_empty() && self.involution != Some(false)
    }
}

const MAX_COUNTEREXAMPLES: usize = 10;

/// Checks the map is a bijective homomorphism of `G_{l'}`: exhaustively on
/// `E_{l'} x E_{l'}`, on the action against `D` generators, and on random pairs of `G_{l'}`.
pub fn verify_automorphism(
    params: &ConstructionParams,
    spec: AutomorphismSpec,
    random_pairs: usize,
    seed: u64,
) -> Result<AutomorphismReport> {
    let auto = Automorphism::new(params, spec.clone())?;
    let g = &auto.g;
    let eg = &g.e;
    let elems = eg.lprime_elements();
    let mut rep = AutomorphismReport::default();
    let bad = |msg: String, rep: &mut AutomorphismReport| {
        if rep.counterexamples.len() < MAX_COUNTEREXAMPLES {
            rep.counterexamples.push(msg);
        }
    };

    let images: Vec<EElem> = elems.iter().map(|e| auto.apply_e(e)).collect();
    let index: std::collections::HashMap<EElem, usize> = elems.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut seen = vec![false; elems.len()];
    rep.bijective = true;
    for (e, im) in elems.iter().zip(&images) {
        match index.get(im) {
            Some(&j) if !seen[j] => seen[j] = true,
            _ => {
                rep.bijective = false;
                bad(format!("image of {e:?} is {im:?}, not a fresh element of E_l'"), &mut rep);
            }
        }
    }
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let lhs = auto.apply_e(&eg.mul(a, b));
            let rhs = eg.mul(&images[i], &images[j]);
            if lhs != rhs {
                bad(format!("E: f({a:?} * {b:?}) = {lhs:?} != {rhs:?}"), &mut rep);
            }
        }
    }
    rep.e_pairs_checked = (elems.len() * elems.len()) as u64;

    let dgens = g.d_generators();
    for e in &elems {
        for d in &dgens {
            let lhs = auto.apply_d(&g.act_on_d(e, d));
            let rhs = g.act_on_d(&auto.apply_e(e), &auto.apply_d(d));
            if lhs != rhs {
                bad(format!("D: f({e:?} . {d:?}) mismatch"), &mut rep);
            }
        }
    }
    for a in &dgens {
        for b in &dgens {
            if auto.apply_d(&g.d_add(a, b)) != g.d_add(&auto.apply_d(a), &auto.apply_d(b)) {
                bad(format!("D: not additive on {a:?}, {b:?}"), &mut rep);
            }
        }
        if !g.is_valid_d(&auto.apply_d(a)) {
            bad(format!("D: image of {a:?} leaves D"), &mut rep);
        }
    }
    rep.d_pairs_checked = (elems.len() * dgens.len() + dgens.len() * dgens.len()) as u64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_g = |rng: &mut ChaCha8Rng| {
        let mut d = g.d_identity();
        for gen in &dgens {
            for _ in 0..rng.gen_range(0..2) {
                d = g.d_add(&d, gen);
            }
        }
        GElem {
            d,
            e: elems[rng.gen_range(0..elems.len())],
        }
    };
    for _ in 0..random_pairs {
        let a = random_g(&mut rng);
        let b = random_g(&mut rng);
        if auto.apply(&g.mul(&a, &b)) != g.mul(&auto.apply(&a), &auto.apply(&b)) {
            bad(format!("G: f(ab) != f(a)f(b) for {a:?}, {b:?}"), &mut rep);
        }
    }
    rep.g_pairs_checked = random_pairs as u64;

    let zs = eg.z_lprime_elements();
    let fixes = zs.iter().all(|z| auto.apply_e(z) == *z);
    let inverts = zs.iter().all(|z| auto.apply_e(z) == eg.inv(z));
    rep.z_lprime_sign = if fixes { 1 } else if inverts { -1 } else { 0 };
    if rep.z_lprime_sign == 0 {
        bad("restriction to Z_l' is neither identity nor inversion".into(), &mut rep);
    }

    if spec == AutomorphismSpec::Swap {
        let on_e = elems.iter().all(|e| auto.apply_e(&auto.apply_e(e)) == *e);
        let on_d = dgens.iter().all(|d| auto.apply_d(&auto.apply_d(d)) == *d);
        rep.involution = Some(on_e && on_d);
    }
    Ok(rep)
}

/// Conjugations by lifts of the generators `(1,1), (0,lambda)` of `F_1` and `F_2`;
/// the torus lifts are not inner for `G_{l'}` unless `a = 0`.
pub fn standard_conjugations(params: &ConstructionParams) -> Vec<AutomorphismSpec> {
    EGroup::new(params)
        .generators()
        .into_iter()
        .filter(|e| !EGroup::in_z(e))
        .map(AutomorphismSpec::Conjugation)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_formula() {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let a = Automorphism::new(&c, AutomorphismSpec::Swap).unwrap();
        assert_eq!(a.apply_e(&EElem::new(1, 2, 3, 4, 5)), EElem::new(2, 1, 4, 3, 1));
        assert!(Automorphism::new(&c.with_levels(1, 2).unwrap(), AutomorphismSpec::Swap).is_err());
    }

    #[test]
    fn conjugation_by_identity_is_identity() {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let a = Automorphism::new(&c, AutomorphismSpec::Conjugation(EElem::IDENTITY)).unwrap();
        let g = GGroup::new(&c);
        for x in g.lprime_generators() {
            assert_eq!(a.apply(&x), x);
        }
    }

    #[test]
    fn swap_and_conjugation_verify_small() {
        let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
        let r = verify_automorphism(&c, AutomorphismSpec::Swap, 200, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.involution, Some(true));
        for spec in standard_conjugations(&c) {
            let r = verify_automorphism(&c, spec, 200, 2).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.z_lprime_sign, 1);
        }
    }

    #[test]
    fn a_broken_map_is_caught() {
        // swap without the r correction is not a homomorphism
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let eg = EGroup::new(&c);
        let naive = |e: &EElem| EElem::new(e.y, e.x, e.n, e.m, e.r);
        let elems = eg.lprime_elements();
        let broken = elems
            .iter()
            .flat_map(|a| elems.iter().map(move |b| (a, b)))
            .any(|(a, b)| naive(&eg.mul(a, b)) != eg.mul(&naive(a), &naive(b)));
        assert!(broken);
    }
}
