use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::numtheory::{
    is_power_of, is_prime, l_adic_valuation, mod_pow, multiplicative_order, primitive_root,
};

/// The integer data `(l, p, t1, t2, a, lambda, n)` fixing one member of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionParams {
    pub l: u32,
    pub p: u32,
    pub t1: u32,
    pub t2: u32,
    /// `v_l(p - 1)`.
    pub a: u32,
    /// Fixed generator of `F_p^*`.
    pub lambda: u32,
    pub n: Option<u32>,
    /// Set when `p - 1` is a power of `l`; only generic machinery accepts such parameters.
    pub relaxed: bool,
    pow: Arc<Vec<u32>>,
    log: Arc<Vec<u32>>,
}

/// Plain serializable echo of [`ConstructionParams`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub l: u32,
    pub p: u32,
    pub t1: u32,
    pub t2: u32,
    pub a: u32,
    pub lambda: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub machinery_mode: bool,
}

/// Largest `p` accepted; exponent tables are materialised.
pub const MAX_P: u32 = 1 << 20;

impl ConstructionParams {
    /// Parameters satisfying the standing hypothesis: `p != l` and `p - 1` not a power of `l`.
    pub fn theorem(l: u32, p: u32, t1: u32, t2: u32) -> Result<Self> {
        let out = Self::build(l, p, t1, t2)?;
        out.require_theorem_level()?;
        Ok(out)
    }

    /// Like [`Self::theorem`] but accepts `p - 1` a power of `l`, for oracle-scale runs.
    pub fn machinery(l: u32, p: u32, t1: u32, t2: u32) -> Result<Self> {
        Self::build(l, p, t1, t2)
    }

    fn build(l: u32, p: u32, t1: u32, t2: u32) -> Result<Self> {
        if !is_prime(l as u64) {
            return Err(Error::InvalidParameters(format!("l = {l} is not prime")));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameters(format!("p = {p} is not prime")));
        }
        if p == l {
            return Err(Error::InvalidParameters(format!("p must differ from l = {l}")));
        }
        if p > MAX_P {
            return Err(Error::bound("p", p as u128, MAX_P as u128));
        }
        if t1 == 0 || t2 == 0 {
            return Err(Error::InvalidParameters("t1 and t2 must be positive".into()));
        }
        for t in [t1, t2] {
            if (l as u64).checked_pow(t).map_or(true, |v| v > u32::MAX as u64 / 4) {
                return Err(Error::InvalidParameters(format!("l^{t} is too large")));
            }
        }
        let lambda = primitive_root(p as u64)? as u32;
        let mut out = ConstructionParams {
            l,
            p,
            t1,
            t2,
            a: l_adic_valuation(l as u64, p as u64 - 1),
            lambda,
            n: None,
            relaxed: is_power_of(l as u64, p as u64 - 1),
            pow: Arc::new(Vec::new()),
            log: Arc::new(Vec::new()),
        };
        out.fill_tables();
        Ok(out)
    }

    fn fill_tables(&mut self) {
        let p = self.p as u64;
        let mut pow = Vec::with_capacity(self.p as usize - 1);
        let mut log = vec![0u32; self.p as usize];
        let mut cur = 1u64;
        for m in 0..self.p - 1 {
            pow.push(cur as u32);
            log[cur as usize] = m;
            cur = cur * self.lambda as u64 % p;
        }
        self.pow = Arc::new(pow);
        self.log = Arc::new(log);
    }

    pub fn with_lambda(mut self, lambda: u32) -> Result<Self> {
        if lambda == 0 || lambda >= self.p {
            return Err(Error::InvalidParameters(format!("lambda = {lambda} outside [1, p)")));
        }
        if multiplicative_order(lambda as u64, self.p as u64)? != self.p as u64 - 1 {
            return Err(Error::InvalidParameters(format!(
                "lambda = {lambda} does not generate F_{}^*",
                self.p
            )));
        }
        self.lambda = lambda;
        self.fill_tables();
        Ok(self)
    }

    pub fn with_target(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_levels(&self, t1: u32, t2: u32) -> Result<Self> {
        let mut out = Self::build(self.l, self.p, t1, t2)?.with_lambda(self.lambda)?;
        out.n = self.n;
        Ok(out)
    }

    pub fn require_theorem_level(&self) -> Result<()> {
        if self.relaxed {
            return Err(Error::Hypothesis(format!(
                "p - 1 = {} is a power of l = {}",
                self.p - 1,
                self.l
            )));
        }
        Ok(())
    }

    pub fn echo(&self) -> ParamsEcho {
        ParamsEcho {
            l: self.l,
            p: self.p,
            t1: self.t1,
            t2: self.t2,
            a: self.a,
            lambda: self.lambda,
            n: self.n,
            machinery_mode: self.relaxed,
        }
    }

    /// `p - 1`, the modulus for the exponents `m, n, r`.
    pub fn unit_order(&self) -> u32 {
        self.p - 1
    }

    /// `l^a`; `E_{l'}` exponents are multiples of it.
    pub fn lprime_step(&self) -> u32 {
        self.l.pow(self.a)
    }

    /// `|Z_{l'}| = (p - 1) / l^a`.
    pub fn z_lprime_order(&self) -> u32 {
        (self.p - 1) / self.lprime_step()
    }

    pub fn level_modulus(&self, factor: usize) -> u32 {
        match factor {
            0 => self.l.pow(self.t1),
            _ => self.l.pow(self.t2),
        }
    }

    pub fn lambda_pow(&self, m: u32) -> u32 {
        self.pow[(m % (self.p - 1)) as usize]
    }

    pub fn lambda_pow_signed(&self, m: i64) -> u32 {
        self.pow[m.rem_euclid(self.p as i64 - 1) as usize]
    }

    /// Discrete log base `lambda` of a nonzero residue.
    pub fn lambda_log(&self, v: u32) -> u32 {
        assert!(v % self.p != 0, "zero has no discrete logarithm");
        self.log[(v % self.p) as usize]
    }

    pub fn order_d(&self) -> BigUint {
        BigUint::from(self.l).pow((self.t1 + self.t2) * (self.p - 1))
    }

    pub fn order_e(&self) -> u64 {
        let p = self.p as u64;
        p * p * (p - 1).pow(3)
    }

    pub fn order_e_lprime(&self) -> u64 {
        let p = self.p as u64;
        p * p * (self.z_lprime_order() as u64).pow(3)
    }

    pub fn order_g_lprime(&self) -> BigUint {
        self.order_d() * BigUint::from(self.order_e_lprime())
    }

    /// `[G_{l'} : Z_{l'}]`, the rank of every `B_phi`.
    pub fn block_rank_closed_form(&self) -> BigUint {
        self.order_g_lprime() / BigUint::from(self.z_lprime_order())
    }

    pub fn mod_pow_p(&self, b: u64, e: u64) -> u64 {
        mod_pow(b, e, self.p as u64)
    }
}
