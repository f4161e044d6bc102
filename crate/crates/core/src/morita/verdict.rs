use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cartan::cartan_equivalent;
use crate::blocks::{block_rank, decomposition_from_clifford, BlockDescriptor};
use crate::chars::CliffordDecomposition;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum VerdictReason {
    SamePhi,
    InverseSwap,
    ClassifiedDistinct,
}

/// `k(B)`, `l(B)`, rank and Cartan matrix of one block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockInvariants {
    pub k: usize,
    pub l: usize,
    #[serde(serialize_with = "biguint_string")]
    pub rank: BigUint,
    pub cartan: Vec<Vec<i64>>,
    pub degrees: Vec<u64>,
}

fn biguint_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl BlockInvariants {
    pub fn from_clifford(block: &BlockDescriptor, dec: &CliffordDecomposition) -> Result<Self> {
        let d = decomposition_from_clifford(block, dec)?;
        let rank = block_rank(block, Some(dec));
        let mut degrees: Vec<u64> = dec
            .chars
            .iter()
            .filter(|c| c.block == block.index())
            .map(|c| c.degree)
            .collect();
        degrees.sort_unstable();
        Ok(BlockInvariants {
            k: d.num_ordinary(),
            l: d.num_brauer(),
            rank: rank.computed.unwrap_or(rank.closed_form),
            cartan: d.cartan,
            degrees,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantComparison {
    pub k_equal: bool,
    pub l_equal: bool,
    pub rank_equal: bool,
    pub cartan_equivalent: bool,
}

impl InvariantComparison {
    pub fn all_agree(&self) -> bool {
        self.k_equal && self.l_equal && self.rank_equal && self.cartan_equivalent
    }
}

pub fn compare_invariants(a: &BlockInvariants, b: &BlockInvariants) -> InvariantComparison {
    InvariantComparison {
        k_equal: a.k == b.k,
        l_equal: a.l == b.l,
        rank_equal: a.rank == b.rank,
        cartan_equivalent: cartan_equivalent(&a.cartan, &b.cartan),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MoritaVerdict {
    pub block_a: u32,
    pub block_b: u32,
    pub equivalent: bool,
    pub reason: VerdictReason,
    pub invariant_report: Option<InvariantComparison>,
    pub status: String,
}

/// Applies the classification `B_phi ~ B_theta` iff `phi = theta`, or `t1 = t2` and
/// `phi = theta^-1`, and checks it against the computed invariants when Clifford data is given.
pub fn morita_equivalent(
    a: &BlockDescriptor,
    b: &BlockDescriptor,
    dec: Option<&CliffordDecomposition>,
) -> Result<MoritaVerdict> {
    if a.params != b.params {
        return Err(Error::ParamMismatch("blocks belong to different parameters".into()));
    }
    let n = a.params.z_lprime_order();
    let (i, j) = (a.index(), b.index());
    let reason = if i == j {
        VerdictReason::SamePhi
    } else if a.params.t1 == a.params.t2 && (i + j) % n == 0 {
        VerdictReason::InverseSwap
    } else {
        VerdictReason::ClassifiedDistinct
    };
    let equivalent = reason != VerdictReason::ClassifiedDistinct;
    let invariant_report = match dec {
        Some(d) => Some(compare_invariants(
            &BlockInvariants::from_clifford(a, d)?,
            &BlockInvariants::from_clifford(b, d)?,
        )),
        None => None,
    };
    if equivalent {
        if let Some(r) = &invariant_report {
            if !r.all_agree() {
                return Err(Error::Assertion(format!(
                    "blocks {i} and {j} are classified equivalent but their invariants differ: {r:?}"
                )));
            }
        }
    }
    let status = match (equivalent, &invariant_report) {
        (true, Some(_)) => "equivalent, invariants agree",
        (true, None) => "equivalent by classification",
        (false, Some(r)) if r.all_agree() => "classified inequivalent, invariants consistent (not separated)",
        (false, Some(_)) => "classified inequivalent, invariants consistent (separated)",
        (false, None) => "classified inequivalent",
    };
    Ok(MoritaVerdict {
        block_a: i,
        block_b: j,
        equivalent,
        reason,
        invariant_report,
        status: status.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RankBoundReport {
    pub rank: String,
    pub bijections: usize,
    pub identity_sum: String,
    pub sorted_sum: String,
    /// Whether the sorted pairing attains the rank, i.e. the degree multisets coincide.
    pub sorted_attains_rank: bool,
    pub violations: Vec<Vec<usize>>,
}

impl RankBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `sum chi(1) sigma(chi)(1) <= rk` for the identity pairing, the sorted pairing and
/// `samples` seeded random bijections `sigma`.
pub fn rank_bound_check(degrees_a: &[u64], degrees_b: &[u64], samples: usize, seed: u64) -> Result<RankBoundReport> {
    let sq = |ds: &[u64]| ds.iter().map(|&d| d as u128 * d as u128).sum::<u128>();
    let (ra, rb) = (sq(degrees_a), sq(degrees_b));
    if ra != rb {
        return Err(Error::Hypothesis(format!("block ranks differ: {ra} and {rb}")));
    }
    if degrees_a.len() != degrees_b.len() {
        return Err(Error::Hypothesis(format!(
            "no bijection between {} and {} characters",
            degrees_a.len(),
            degrees_b.len()
        )));
    }
    let pair = |perm: &[usize]| -> u128 {
        degrees_a
            .iter()
            .zip(perm)
            .map(|(&a, &j)| a as u128 * degrees_b[j] as u128)
            .sum()
    };
    let n = degrees_a.len();
    let ident: Vec<usize> = (0..n).collect();
    let mut violations = Vec::new();
    let identity_sum = pair(&ident);
    if identity_sum > ra {
        violations.push(ident.clone());
    }
    let mut ia: Vec<usize> = (0..n).collect();
    ia.sort_by_key(|&i| degrees_a[i]);
    let mut ib: Vec<usize> = (0..n).collect();
    ib.sort_by_key(|&i| degrees_b[i]);
    let mut sorted = vec![0; n];
    for (x, y) in ia.iter().zip(&ib) {
        sorted[*x] = *y;
    }
    let sorted_sum = pair(&sorted);
    if sorted_sum > ra {
        violations.push(sorted.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = ident;
    for _ in 0..samples {
        perm.shuffle(&mut rng);
        if pair(&perm) > ra {
            violations.push(perm.clone());
        }
    }
    Ok(RankBoundReport {
        rank: ra.to_string(),
        bijections: samples + 2,
        identity_sum: identity_sum.to_string(),
        sorted_sum: sorted_sum.to_string(),
        sorted_attains_rank: sorted_sum == ra,
        violations,
    })
}
