//! Integer utilities: primality by trial division, valuations, orders, prime search.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Default upper limit for [`find_prime`].
pub const DEFAULT_PRIME_SEARCH_BOUND: u64 = 10_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `x` is `l^k` for some `k >= 0` (so 1 counts).
pub fn is_power_of(l: u64, mut x: u64) -> bool {
    if x == 0 || l < 2 {
        return false;
    }
    while x % l == 0 {
        x /= l;
    }
    x == 1
}

/// Largest `e` with `l^e | x`.
pub fn l_adic_valuation(l: u64, mut x: u64) -> u32 {
    assert!(l >= 2 && x >= 1, "valuation needs l >= 2 and x >= 1");
    let mut e = 0;
    while x % l == 0 {
        x /= l;
        e += 1;
    }
    e
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_inv(a: u64, modulus: u64) -> Result<u64> {
    let g = (a as i128).extended_gcd(&(modulus as i128));
    if g.gcd != 1 {
        return Err(Error::NotCoprime { a, modulus });
    }
    Ok(g.x.rem_euclid(modulus as i128) as u64)
}

/// Smallest `m >= 1` with `a^m = 1 mod n`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidParameters("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime { a, modulus: n });
    }
    // The order divides the group exponent; test divisors of phi(n).
    let phi = euler_phi(n);
    let mut order = phi;
    for (q, _) in factorize(phi) {
        while order % q == 0 && mod_pow(a, order / q, n) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Smallest generator of `(Z/p)^*` for prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = factorize(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&(q, _)| mod_pow(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::Assertion(format!("no primitive root mod {p}")))
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::InvalidParameters(format!("{base}^{exp} overflows u64")))
}

/// Smallest prime `p` with `p = 1 mod (l^n - 1)`, `p != l` and `p - 1` not a power of `l`.
pub fn find_prime(l: u64, n: u32) -> Result<u64> {
    find_prime_bounded(l, n, DEFAULT_PRIME_SEARCH_BOUND)
}

pub fn find_prime_bounded(l: u64, n: u32, bound: u64) -> Result<u64> {
    if !is_prime(l) {
        return Err(Error::InvalidParameters(format!("l = {l} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let modulus = checked_pow(l, n)? - 1;
    let mut p = modulus + 1;
    while p <= bound {
        if p != l && is_prime(p) && !is_power_of(l, p - 1) {
            return Ok(p);
        }
        p += modulus;
    }
    Err(Error::SearchExhausted { l, n, bound })
}
