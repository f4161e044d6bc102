use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::idempotent::BlockDescriptor;
use crate::chars::clifford::central_character_index;
use crate::chars::{fusion_map, restrict, CharacterTable, CliffordDecomposition};
use crate::error::{Error, Result};
use crate::exactnum::linalg::{det_bareiss, is_positive_definite};
use crate::groups::{EGroup, GGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    #[serde(with = "big_string")]
    pub closed_form: BigUint,
    #[serde(with = "opt_big_string")]
    pub computed: Option<BigUint>,
}

impl RankReport {
    pub fn agrees(&self) -> bool {
        self.computed.as_ref().map_or(true, |c| *c == self.closed_form)
    }
}

mod big_string {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

mod opt_big_string {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}

/// `rk_O(B_phi)`: the index `[G_{l'} : Z_{l'}]`, and `sum chi(1)^2` over the block when
/// Clifford data is supplied.
pub fn block_rank(block: &BlockDescriptor, dec: Option<&CliffordDecomposition>) -> RankReport {
    let computed = dec.map(|d| {
        d.chars
            .iter()
            .filter(|c| c.block == block.index())
            .map(|c| BigUint::from(c.degree) * c.degree)
            .sum()
    });
    RankReport {
        closed_form: block.params.block_rank_closed_form(),
        computed,
    }
}

/// Decomposition matrix of a block with rows `Irr(B)` and columns the `xi in Irr(E_{l'})`
/// lying over `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionData {
    pub block: u32,
    pub ordinary_index: Vec<String>,
    pub brauer_index: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
}

impl DecompositionData {
    pub fn new(block: u32, ordinary_index: Vec<String>, brauer_index: Vec<usize>, matrix: Vec<Vec<i64>>) -> Self {
        let cols = brauer_index.len();
        let cartan = (0..cols)
            .map(|i| (0..cols).map(|j| matrix.iter().map(|row| row[i] * row[j]).sum()).collect())
            .collect();
        DecompositionData {
            block,
            ordinary_index,
            brauer_index,
            matrix,
            cartan,
        }
    }

    /// `k(B)`.
    pub fn num_ordinary(&self) -> usize {
        self.matrix.len()
    }

    /// `l(B)`.
    pub fn num_brauer(&self) -> usize {
        self.brauer_index.len()
    }
}

fn brauer_columns(e_table: &CharacterTable<EGroup>, block: &BlockDescriptor) -> Result<Vec<usize>> {
    let eg = EGroup::new(&block.params);
    let z = eg.z_lprime_generator();
    let n = block.params.z_lprime_order();
    let mut cols = Vec::new();
    for (i, xi) in e_table.chars.iter().enumerate() {
        if central_character_index(e_table, xi, &z, n)? == block.index() {
            cols.push(i);
        }
    }
    Ok(cols)
}

/// Rows from the Clifford parameterisation: `d(chi, xi) = <psi, xi|_H>`.
pub fn decomposition_from_clifford(block: &BlockDescriptor, dec: &CliffordDecomposition) -> Result<DecompositionData> {
    if dec.params != block.params {
        return Err(Error::ParamMismatch("Clifford data built for other parameters".into()));
    }
    let cols = brauer_columns(&dec.e_table, block)?;
    let mut labels = Vec::new();
    let mut matrix = Vec::new();
    for c in dec.chars.iter().filter(|c| c.block == block.index()) {
        let row = dec.decomposition_row(c);
        labels.push(format!("orbit{}.{}/psi{}", c.orbit.0, c.orbit.1, c.psi));
        matrix.push(cols.iter().map(|&j| row[j]).collect());
    }
    Ok(DecompositionData::new(block.index(), labels, cols, matrix))
}

/// Rows from a full character table of `G_{l'}`: `d(chi, xi) = <chi|_{E_{l'}}, xi>`.
pub fn decomposition_from_tables(
    block: &BlockDescriptor,
    g_table: &CharacterTable<GGroup>,
    e_table: &CharacterTable<EGroup>,
) -> Result<DecompositionData> {
    let gg = GGroup::new(&block.params);
    let n = block.params.z_lprime_order();
    let zg = gg.embed_e(gg.e.z_lprime_generator());
    let fusion = fusion_map(&e_table.data, &g_table.data, |e| gg.embed_e(*e))?;
    let cols = brauer_columns(e_table, block)?;
    let mut labels = Vec::new();
    let mut matrix = Vec::new();
    for (i, chi) in g_table.chars.iter().enumerate() {
        if central_character_index(g_table, chi, &zg, n)? != block.index() {
            continue;
        }
        let res = restrict(chi, &fusion);
        let all = e_table.decompose(&res)?;
        labels.push(format!("chi{i}"));
        matrix.push(cols.iter().map(|&j| all[j]).collect());
    }
    Ok(DecompositionData::new(block.index(), labels, cols, matrix))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanReport {
    pub rows_nonzero: bool,
    pub product_matches: bool,
    pub symmetric: bool,
    pub positive_definite: bool,
    #[serde(serialize_with = "bigint_string")]
    pub determinant: BigInt,
    pub determinant_is_l_power: bool,
}

fn bigint_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CartanReport {
    pub fn passed(&self) -> bool {
        self.rows_nonzero
            && self.product_matches
            && self.symmetric
            && self.positive_definite
            && self.determinant_is_l_power
    }
}

fn transpose(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn is_power_of_l(v: &BigInt, l: u32) -> bool {
    if !v.is_positive() {
        return false;
    }
    let mut x = v.clone();
    let lb = BigInt::from(l);
    while (&x % &lb).is_zero() {
        x /= &lb;
    }
    x.is_one()
}

pub fn check_cartan(data: &DecompositionData, l: u32) -> CartanReport {
    let cols = data.num_brauer();
    let d: Vec<Vec<BigInt>> = data
        .matrix
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let c: Vec<Vec<BigInt>> = data
        .cartan
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let product = matmul(&transpose(&d, cols), &d);
    let determinant = det_bareiss(&c);
    CartanReport {
        rows_nonzero: data.matrix.iter().all(|r| r.iter().any(|&x| x != 0)),
        product_matches: product == c,
        symmetric: (0..cols).all(|i| (0..cols).all(|j| data.cartan[i][j] == data.cartan[j][i])),
        positive_definite: is_positive_definite(&c),
        determinant_is_l_power: is_power_of_l(&determinant, l),
        determinant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_powers() {
        assert!(is_power_of_l(&BigInt::from(1), 2));
        assert!(is_power_of_l(&BigInt::from(32), 2));
        assert!(!is_power_of_l(&BigInt::from(12), 2));
        assert!(!is_power_of_l(&BigInt::from(-8), 2));
        assert!(!is_power_of_l(&BigInt::from(0), 3));
    }

    #[test]
    fn cartan_of_a_toy_decomposition() {
        let d = DecompositionData::new(0, vec!["a".into(), "b".into()], vec![0], vec![vec![1], vec![1]]);
        assert_eq!(d.cartan, vec![vec![2]]);
        let r = check_cartan(&d, 2);
        assert!(r.passed());
        let bad = DecompositionData::new(0, vec!["a".into()], vec![0, 1], vec![vec![1, 1]]);
        assert!(!check_cartan(&bad, 2).positive_definite);
    }
}
