use serde::{Deserialize, Serialize};

use super::elements::{EElem, EGroup, FGroup, GGroup, Group, OmegaElem, OmegaGroup};
use super::params::ConstructionParams;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checked: u64,
    pub counterexamples: Vec<String>,
}

impl CheckReport {
    fn new() -> Self {
        CheckReport {
            passed: true,
            checked: 0,
            counterexamples: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        if self.counterexamples.len() < 20 {
            self.counterexamples.push(msg);
        }
    }
}

pub const DEFAULT_COMM_BOUND: u64 = 10_000_000;

/// `[(x,0,m,0,r), (0,y,0,n,s)] = lambda^{-mn}` for every `x, y, m, n` and every lift `r, s`.
pub fn verify_comm_relation(params: &ConstructionParams, bound: u64) -> Result<CheckReport> {
    let p = params.p as u64;
    let u = p - 1;
    let work = p * p * u.pow(4);
    if work > bound {
        return Err(Error::bound("commutator sweep", work as u128, bound as u128));
    }
    let eg = EGroup::new(params);
    let mut rep = CheckReport::new();
    for x in 0..params.p {
        for y in 0..params.p {
            for m in 0..params.p - 1 {
                for n in 0..params.p - 1 {
                    let expect = EElem::central(((u - (m as u64 * n as u64) % u) % u) as u32);
                    for r in 0..params.p - 1 {
                        for s in 0..params.p - 1 {
                            let a = EElem::new(x, 0, m, 0, r);
                            let b = EElem::new(0, y, 0, n, s);
                            let c = eg.commutator(&a, &b);
                            rep.checked += 1;
                            if c != expect {
                                rep.fail(format!("[{a:?}, {b:?}] = {c:?}, expected {expect:?}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// No element of `E_{l'}` outside `Z_{l'}` acts trivially on `D`; one representative per coset.
pub fn verify_faithful_action(params: &ConstructionParams) -> CheckReport {
    let g = GGroup::new(params);
    let dgens = g.d_generators();
    let mut rep = CheckReport::new();
    for e in g.e.lprime_elements().into_iter().filter(|e| e.r == 0) {
        rep.checked += 1;
        let trivial = dgens.iter().all(|d| g.act_on_d(&e, d) == *d);
        if trivial != (e == EElem::IDENTITY) {
            rep.fail(format!("coset of {e:?} acts {}", if trivial { "trivially" } else { "nontrivially" }));
        }
    }
    rep
}

/// `C_{Omega_t}(F_p)` is the diagonal and meets `D_t` trivially, by exhausting `Omega_t`.
pub fn verify_translation_centralizer(params: &ConstructionParams, t: u32, bound: u64) -> Result<CheckReport> {
    let omega = OmegaGroup {
        l: params.l,
        t,
        p: params.p,
    };
    let q = omega.modulus() as u64;
    let size = (q as u128).pow(params.p);
    if size > bound as u128 {
        return Err(Error::bound("Omega_t", size, bound as u128));
    }
    let fg = FGroup::new(params);
    let shift = fg.from_alpha(1, 1);
    let mut rep = CheckReport::new();
    let mut v = vec![0u32; params.p as usize];
    loop {
        let x = OmegaElem(v.clone());
        let fixed = omega.act(&fg, &shift, &x) == x;
        rep.checked += 1;
        if fixed != OmegaGroup::is_diagonal(&x) {
            rep.fail(format!("{x:?}: fixed = {fixed}"));
        }
        if fixed && omega.in_d(&x) && x != omega.identity() {
            rep.fail(format!("{x:?} is a nontrivial F_p-fixed point of D_t"));
        }
        let mut i = 0;
        loop {
            if i == v.len() {
                return Ok(rep);
            }
            v[i] += 1;
            if (v[i] as u64) < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comm_relation_holds() {
        for p in [5, 7] {
            let c = ConstructionParams::machinery(2, p, 1, 1).unwrap();
            let r = verify_comm_relation(&c, DEFAULT_COMM_BOUND).unwrap();
            assert!(r.passed, "{:?}", r.counterexamples);
            assert_eq!(r.checked, (p * p * (p - 1).pow(4)) as u64);
        }
    }

    #[test]
    fn faithful_at_p7() {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let r = verify_faithful_action(&c);
        assert!(r.passed);
        assert_eq!(r.checked, 441);
    }

    #[test]
    fn translation_centralizer() {
        for p in [3, 5, 7] {
            for t in [1, 2] {
                let c = ConstructionParams::machinery(2, p, 1, 1).unwrap();
                let r = verify_translation_centralizer(&c, t, 1 << 20).unwrap();
                assert!(r.passed, "{:?}", r.counterexamples);
            }
        }
    }
}
