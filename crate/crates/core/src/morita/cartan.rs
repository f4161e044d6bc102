//! Equality of square matrices up to a simultaneous row/column permutation.

use std::collections::{BTreeMap, BTreeSet};

/// Colour classes from iterated refinement on `(diagonal, sorted row)` signatures.
fn refine(m: &[Vec<i64>]) -> Vec<usize> {
    refine_pair(m, m).0
}

/// Refines both matrices with a shared palette so colours are comparable across them.
fn refine_pair(a: &[Vec<i64>], b: &[Vec<i64>]) -> (Vec<usize>, Vec<usize>) {
    let n = a.len();
    let mut ca = vec![0usize; n];
    let mut cb = vec![0usize; n];
    let sig = |m: &[Vec<i64>], c: &[usize], i: usize| {
        let mut row: Vec<(usize, i64)> = (0..n).filter(|&j| j != i).map(|j| (c[j], m[i][j])).collect();
        row.sort_unstable();
        (c[i], m[i][i], row)
    };
    let mut classes = 0;
    loop {
        let sa: Vec<_> = (0..n).map(|i| sig(a, &ca, i)).collect();
        let sb: Vec<_> = (0..n).map(|i| sig(b, &cb, i)).collect();
        let palette: BTreeSet<_> = sa.iter().chain(&sb).cloned().collect();
        let rank: BTreeMap<_, usize> = palette.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        ca = sa.iter().map(|s| rank[s]).collect();
        cb = sb.iter().map(|s| rank[s]).collect();
        if rank.len() == classes {
            return (ca, cb);
        }
        classes = rank.len();
    }
}

fn extend(a: &[Vec<i64>], b: &[Vec<i64>], ca: &[usize], cb: &[usize], order: &[usize], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let k = perm.len();
    if k == order.len() {
        return true;
    }
    let i = order[k];
    for j in 0..b.len() {
        if used[j] || cb[j] != ca[i] || a[i][i] != b[j][j] {
            continue;
        }
        let consistent = (0..k).all(|s| {
            let (ii, jj) = (order[s], perm[s]);
            a[i][ii] == b[j][jj] && a[ii][i] == b[jj][j]
        });
        if !consistent {
            continue;
        }
        used[j] = true;
        perm.push(j);
        if extend(a, b, ca, cb, order, perm, used) {
            return true;
        }
        perm.pop();
        used[j] = false;
    }
    false
}

/// A permutation `pi` with `b[pi(i)][pi(j)] = a[i][j]`, if one exists.
pub fn find_simultaneous_permutation(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n || a.iter().chain(b).any(|r| r.len() != n) {
        return None;
    }
    let (ca, cb) = refine_pair(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return None;
    }
    // smallest colour classes first keeps the search narrow
    let mut size = BTreeMap::new();
    for &c in &ca {
        *size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (size[&ca[i]], ca[i], i));
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if !extend(a, b, &ca, &cb, &order, &mut perm, &mut used) {
        return None;
    }
    let mut out = vec![0; n];
    for (s, &i) in order.iter().enumerate() {
        out[i] = perm[s];
    }
    Some(out)
}

pub fn cartan_equivalent(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    find_simultaneous_permutation(a, b).is_some()
}

/// Canonical colouring of a single matrix, exposed for reports.
pub fn refinement_classes(m: &[Vec<i64>]) -> usize {
    let mut c = refine(m);
    c.sort_unstable();
    c.dedup();
    c.len()
}
