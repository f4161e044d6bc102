use serde::Serialize;

use crate::chars::{AbelianKind, LinearCharacter};
use crate::error::{Error, Result};
use crate::exactnum::numtheory::{find_prime_bounded, multiplicative_order};
use crate::exactnum::DEFAULT_PRIME_SEARCH_BOUND;
use crate::groups::{ConstructionParams, ParamsEcho};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MfnClause {
    /// `theta^(l^m) = theta`.
    Fixed,
    /// `t1 = t2` and `theta^(l^m) = theta^-1`.
    InverseSwap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MfnResult {
    pub params: ParamsEcho,
    /// `k` with `theta = phi_k`.
    pub theta: u32,
    pub theta_order: u32,
    pub mfn: u32,
    pub clause: MfnClause,
    /// Indices of `theta^(l^m)` for `m = 0, .., mfn - 1`.
    pub orbit: Vec<u32>,
}

impl MfnResult {
    /// The orbit list is closed under the `l`-power map up to the inverse when `t1 = t2`.
    pub fn orbit_closed(&self, l: u32, n: u32) -> bool {
        let next = (*self.orbit.last().unwrap() as u64 * l as u64 % n as u64) as u32;
        let first = self.orbit[0];
        match self.clause {
            MfnClause::Fixed => next == first,
            MfnClause::InverseSwap => next == (n - first) % n,
        }
    }
}

/// `mf_O(B_theta)`: least `m >= 1` with `theta^(l^m) = theta`, or `theta^(l^m) = theta^-1` when `t1 = t2`.
pub fn morita_frobenius_number(theta: &LinearCharacter, params: &ConstructionParams) -> Result<MfnResult> {
    let n = params.z_lprime_order();
    if theta.kind != AbelianKind::ZLprime || theta.moduli != [n] {
        return Err(Error::ParamMismatch("expected a character of Z_l'".into()));
    }
    let k = theta.dual[0] % n;
    let l = params.l as u64;
    let mut orbit = vec![k];
    let mut cur = k as u64;
    let mut m = 0u32;
    let clause = loop {
        cur = cur * l % n as u64;
        m += 1;
        if cur == k as u64 {
            break MfnClause::Fixed;
        }
        if params.t1 == params.t2 && cur == (n as u64 - k as u64) % n as u64 {
            break MfnClause::InverseSwap;
        }
        orbit.push(cur as u32);
    };
    Ok(MfnResult {
        params: params.echo(),
        theta: k,
        theta_order: theta.order(),
        mfn: m,
        clause,
        orbit,
    })
}

/// `phi_1`, with `phi_1(lambda^(l^a)) = zeta_N`.
pub fn canonical_faithful(params: &ConstructionParams) -> LinearCharacter {
    LinearCharacter::z_lprime(params, 1)
}

/// `phi^((p-1)/(l^a (l^n - 1)))` for the canonical faithful `phi`.
pub fn theta_of_order(params: &ConstructionParams, order: u32) -> Result<LinearCharacter> {
    let n = params.z_lprime_order();
    if order == 0 || n % order != 0 {
        return Err(Error::InvalidParameters(format!(
            "no character of order {order} in Z_l' of order {n}"
        )));
    }
    Ok(canonical_faithful(params).pow((n / order) as i64))
}

#[derive(Clone, Debug)]
pub struct TheoremInstance {
    pub params: ConstructionParams,
    pub theta: LinearCharacter,
    pub result: MfnResult,
}

pub fn construct_theorem_instance(l: u32, n: u32) -> Result<TheoremInstance> {
    construct_theorem_instance_bounded(l, n, DEFAULT_PRIME_SEARCH_BOUND)
}

pub fn construct_theorem_instance_bounded(l: u32, n: u32, prime_bound: u64) -> Result<TheoremInstance> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let p = find_prime_bounded(l as u64, n, prime_bound)?;
    let p = u32::try_from(p).map_err(|_| Error::bound("prime", p as u128, u32::MAX as u128))?;
    let params = ConstructionParams::theorem(l, p, 1, 2)?.with_target(n);
    let order = (l as u64).pow(n) - 1;
    let theta = theta_of_order(&params, order as u32)?;
    if theta.order() as u64 != order {
        return Err(Error::Assertion(format!("theta has order {} instead of {order}", theta.order())));
    }
    let result = morita_frobenius_number(&theta, &params)?;
    // t1 != t2, so only the fixed-point clause applies
    let expected = multiplicative_order(l as u64, order)?;
    if result.mfn as u64 != expected || result.mfn != n {
        return Err(Error::Assertion(format!(
            "mf_O = {} for (l, n) = ({l}, {n}); expected {n}",
            result.mfn
        )));
    }
    Ok(TheoremInstance { params, theta, result })
}
