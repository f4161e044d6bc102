//! Character tables by simultaneous diagonalisation of class-sum matrices modulo
//! a prime `q = 1 mod exp(G)`, lifted to exact cyclotomic values.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactnum::linalg::{nullspace_mod, prime_in_progression, rref_mod, root_of_unity_mod};
use crate::exactnum::numtheory::{mod_inv, mod_pow};
use crate::exactnum::Cyclo;
use crate::groups::Group;

use super::table::{canonical_order, CharacterTable, ClassData, ClassFunction};

pub const DEFAULT_TABLE_BOUND: usize = 10_000;

/// `c[i][j][k] = #{x in K_i : x^-1 z_k in K_j}`, the class multiplication coefficients.
fn class_coefficients<G: Group>(data: &ClassData<G>) -> Vec<Vec<Vec<u32>>> {
    let r = data.num_classes();
    let grp = &data.group;
    let inv: Vec<usize> = (0..grp.order()).map(|i| grp.inv_idx(i)).collect();
    let mut c = vec![vec![vec![0u32; r]; r]; r];
    for k in 0..r {
        let zk = data.rep(k);
        for (x, &xi) in inv.iter().enumerate() {
            let y = grp.group.mul(&grp.elements[xi], zk);
            let j = data.classes.class_of[grp.index[&y]];
            let i = data.classes.class_of[x];
            c[i][j][k] += 1;
        }
    }
    c
}

/// Characteristic polynomial (low degree first) via reduction to Hessenberg form.
fn charpoly_mod(mat: &[Vec<u64>], q: u64) -> Vec<u64> {
    let n = mat.len();
    let mut a = mat.to_vec();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| a[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            a.swap(piv, k + 1);
            for row in a.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = mod_inv(a[k + 1][k], q).unwrap();
        for j in k + 2..n {
            if a[j][k] == 0 {
                continue;
            }
            let f = a[j][k] * inv % q;
            for c in 0..n {
                a[j][c] = (a[j][c] + q - f * a[k + 1][c] % q) % q;
            }
            for row in a.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[j]) % q;
            }
        }
    }
    // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im (prod_{j=i+1}^m h_{j,j-1}) p_i
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let mut next = vec![0u64; m + 2];
        for (d, &c) in polys[m].iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % q;
            next[d] = (next[d] + q - a[m][m] * c % q) % q;
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * a[i + 1][i] % q;
            let f = a[i][m] * prod % q;
            if f != 0 {
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = (next[d] + q - f * c % q) % q;
                }
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn eval_poly(p: &[u64], x: u64, q: u64) -> u64 {
    p.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % q)
}

/// Rows of `basis` span a space with pivots normalised to the identity.
struct Space {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Space {
    fn from_rows(mut rows: Vec<Vec<u64>>, q: u64) -> Space {
        let pivots = rref_mod(&mut rows, q);
        rows.truncate(pivots.len());
        Space { basis: rows, pivots }
    }
}

fn split(space: &Space, m: &[Vec<u64>], q: u64) -> Result<Vec<Space>> {
    let d = space.basis.len();
    let r = m.len();
    // R[j][c] = (M w_c)[pivot_j]
    let images: Vec<Vec<u64>> = space
        .basis
        .iter()
        .map(|w| {
            (0..r)
                .map(|row| m[row].iter().zip(w).fold(0u64, |acc, (&a, &b)| (acc + a * b) % q))
                .collect()
        })
        .collect();
    let rmat: Vec<Vec<u64>> = (0..d)
        .map(|j| (0..d).map(|c| images[c][space.pivots[j]]).collect())
        .collect();
    let cp = charpoly_mod(&rmat, q);
    let mut out = Vec::new();
    let mut found = 0;
    for lam in 0..q {
        if eval_poly(&cp, lam, q) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = rmat
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &v)| if i == j { (v + q - lam) % q } else { v })
                    .collect()
            })
            .collect();
        let ns = nullspace_mod(&shifted, d, q);
        found += ns.len();
        let rows: Vec<Vec<u64>> = ns
            .iter()
            .map(|u| {
                (0..r)
                    .map(|k| u.iter().zip(&space.basis).fold(0u64, |acc, (&a, w)| (acc + a * w[k]) % q))
                    .collect()
            })
            .collect();
        out.push(Space::from_rows(rows, q));
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::Assertion(format!(
            "class matrix is not diagonalisable modulo {q} ({found} of {d} eigenvectors)"
        )));
    }
    Ok(out)
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// The modulus and root of unity used for a group of this order and exponent.
pub fn dixon_prime(order: u64, exponent: u64) -> (u64, u64) {
    let q = prime_in_progression(exponent, 2 * isqrt(order) + 1);
    (q, root_of_unity_mod(exponent, q))
}

pub fn character_table<G: Group>(data: Arc<ClassData<G>>, bound: usize) -> Result<CharacterTable<G>> {
    let n = data.order();
    if n > bound {
        return Err(Error::bound("character table group", n as u128, bound as u128));
    }
    let r = data.num_classes();
    let e = data.exponent;
    let (q, z) = dixon_prime(n as u64, e);
    let coeffs = class_coefficients(&data);
    let sizes = data.class_sizes();

    let identity_rows: Vec<Vec<u64>> = (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![Space::from_rows(identity_rows, q)];
    for i in 1..r {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = (0..r)
            .map(|j| (0..r).map(|k| coeffs[i][j][k] as u64 % q).collect())
            .collect();
        let mut next = Vec::new();
        for s in spaces {
            if s.basis.len() == 1 {
                next.push(s);
            } else {
                next.extend(split(&s, &m, q)?);
            }
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::Assertion(format!("found {} characters for {r} classes", spaces.len())));
    }

    let inv_class = data.inverse_classes();
    let powers: Vec<Vec<usize>> = (0..r).map(|k| data.power_sequence(k)).collect();
    let nq = n as u64 % q;
    let mut chars = Vec::with_capacity(r);
    for s in &spaces {
        let v = &s.basis[0];
        if v[0] == 0 {
            return Err(Error::Assertion("eigenvector vanishes at the identity class".into()));
        }
        let scale = mod_inv(v[0], q)?;
        let omega: Vec<u64> = v.iter().map(|&x| x * scale % q).collect();
        let mut denom = 0u64;
        for k in 0..r {
            let t = omega[k] * omega[inv_class[k]] % q * mod_inv(sizes[k] as u64 % q, q)? % q;
            denom = (denom + t) % q;
        }
        let deg_sq = nq * mod_inv(denom, q)? % q;
        let degree = (1..=isqrt(n as u64))
            .find(|&d| d * d % q == deg_sq && n as u64 % d == 0)
            .ok_or_else(|| Error::Assertion("no admissible character degree".into()))?;
        let modq: Vec<u64> = (0..r)
            .map(|k| omega[k] * degree % q * mod_inv(sizes[k] as u64 % q, q).unwrap() % q)
            .collect();
        let mut values = Vec::with_capacity(r);
        for k in 0..r {
            let o = data.rep_orders[k];
            let step = e / o;
            let oinv = mod_inv(o % q, q)?;
            let mut counts = vec![0i64; e as usize];
            let mut total = 0u64;
            for s_ in 0..o {
                let mut mu = 0u64;
                for (j, &c) in powers[k].iter().enumerate() {
                    let exp = (e - (step * s_ * j as u64) % e) % e;
                    mu = (mu + modq[c] * mod_pow(z, exp, q)) % q;
                }
                mu = mu * oinv % q;
                if mu > degree {
                    return Err(Error::Assertion(format!("eigenvalue multiplicity {mu} exceeds degree {degree}")));
                }
                counts[(step * s_) as usize] = mu as i64;
                total += mu;
            }
            if total != degree {
                return Err(Error::Assertion("eigenvalue multiplicities do not sum to the degree".into()));
            }
            values.push(Cyclo::from_root_counts(e as u32, &counts));
        }
        chars.push(ClassFunction {
            order: e as u32,
            values,
        });
    }
    canonical_order(&mut chars);
    Ok(CharacterTable {
        data,
        order: e as u32,
        chars,
    })
}
