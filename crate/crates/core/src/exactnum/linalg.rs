//! Dense linear algebra over prime fields and over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::numtheory::{mod_inv, mod_pow};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_mod(rows: &mut [Vec<u64>], q: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = mod_inv(rows[r][c], q).expect("nonzero element of a prime field");
        for x in rows[r].iter_mut() {
            *x = *x * inv % q;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (q - f) * p % q) % q;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_mod(mat: &[Vec<u64>], q: u64) -> usize {
    let mut m = mat.to_vec();
    rref_mod(&mut m, q).len()
}

/// Basis of the right null space `{v : mat v = 0}`.
pub fn nullspace_mod(mat: &[Vec<u64>], ncols: usize, q: u64) -> Vec<Vec<u64>> {
    let mut m = mat.to_vec();
    let pivots = rref_mod(&mut m, q);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (q - m[row][f]) % q;
            }
            v
        })
        .collect()
}

pub fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], q: u64) -> Vec<Vec<u64>> {
    let inner = b.len();
    let ncols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..ncols)
                .map(|j| (0..inner).fold(0u64, |acc, k| (acc + row[k] * b[k][j]) % q))
                .collect()
        })
        .collect()
}

/// Smallest prime `q = 1 mod e` with `q > lower`.
pub fn prime_in_progression(e: u64, lower: u64) -> u64 {
    let mut q = (lower / e + 1) * e + 1;
    while !super::numtheory::is_prime(q) {
        q += e;
    }
    q
}

/// Element of exact multiplicative order `e` modulo the prime `q` (requires `e | q-1`).
pub fn root_of_unity_mod(e: u64, q: u64) -> u64 {
    let g = super::numtheory::primitive_root(q).expect("q is prime");
    mod_pow(g, (q - 1) / e, q)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_bareiss(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = mat.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Sylvester's criterion on a symmetric integer matrix.
pub fn is_positive_definite(mat: &[Vec<BigInt>]) -> bool {
    (1..=mat.len()).all(|k| {
        let minor: Vec<Vec<BigInt>> = mat[..k].iter().map(|r| r[..k].to_vec()).collect();
        det_bareiss(&minor).is_positive()
    })
}
