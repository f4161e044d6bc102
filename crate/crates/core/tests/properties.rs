use proptest::prelude::*;

use mfrob_core::blocks::{all_blocks, block_reduction, build_idempotent, twist_identity_holds};
use mfrob_core::chars::clifford::DEFAULT_ORBIT_BOUND;
use mfrob_core::chars::{g_lprime_classes, CliffordDecomposition, LinearCharacter, DEFAULT_TABLE_BOUND};
use mfrob_core::exactnum::multiplicative_order;
use mfrob_core::exactnum::numtheory::mod_pow;
use mfrob_core::groups::ConstructionParams;
use mfrob_core::morita::{
    canonical_faithful, cartan_equivalent, morita_equivalent, morita_frobenius_number, MfnClause, VerdictReason,
};

fn theorem_params() -> impl Strategy<Value = ConstructionParams> {
    let cases = vec![(2u32, 7u32), (2, 11), (2, 13), (2, 29), (3, 7), (3, 13), (3, 19), (5, 11), (5, 31)];
    (prop::sample::select(cases), 1u32..3, 1u32..3)
        .prop_filter_map("hypothesis", |((l, p), t1, t2)| ConstructionParams::theorem(l, p, t1, t2).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mfn_orbit_shape(c in theorem_params(), k in 0u32..1000) {
        let n = c.z_lprime_order();
        let phi = LinearCharacter::z_lprime(&c, k % n);
        let r = morita_frobenius_number(&phi, &c).unwrap();
        let k = k % n;
        prop_assert_eq!(r.orbit.len() as u32, r.mfn);
        prop_assert_eq!(r.orbit[0], k);
        for (i, &x) in r.orbit.iter().enumerate() {
            prop_assert_eq!(x as u64, k as u64 * mod_pow(c.l as u64, i as u64, n as u64) % n as u64);
        }
        let last = k as u64 * mod_pow(c.l as u64, r.mfn as u64, n as u64) % n as u64;
        let ord = if r.theta_order == 1 { 1 } else { multiplicative_order(c.l as u64, r.theta_order as u64).unwrap() };
        match r.clause {
            MfnClause::Fixed => {
                prop_assert_eq!(last, k as u64);
                prop_assert_eq!(r.mfn as u64, ord);
            }
            MfnClause::InverseSwap => {
                prop_assert_eq!(c.t1, c.t2);
                prop_assert_eq!((last + k as u64) % n as u64, 0);
                prop_assert_eq!(2 * r.mfn as u64, ord);
            }
        }
        if c.t1 != c.t2 {
            prop_assert_eq!(r.clause, MfnClause::Fixed);
        }
    }

    #[test]
    fn mfn_does_not_depend_on_faithful_choice(c in theorem_params(), u in 1u32..1000) {
        let n = c.z_lprime_order();
        let u = u % n;
        prop_assume!(num_integer::gcd(u, n) == 1);
        let base = morita_frobenius_number(&canonical_faithful(&c), &c).unwrap();
        let other = morita_frobenius_number(&LinearCharacter::z_lprime(&c, u), &c).unwrap();
        prop_assert_eq!(base.mfn, other.mfn);
        prop_assert_eq!(base.clause, other.clause);
    }

    #[test]
    fn morita_relation_is_symmetric(c in theorem_params(), i in 0u32..1000, j in 0u32..1000) {
        let n = c.z_lprime_order();
        let a = build_idempotent(&LinearCharacter::z_lprime(&c, i % n), &c).unwrap();
        let b = build_idempotent(&LinearCharacter::z_lprime(&c, j % n), &c).unwrap();
        let ab = morita_equivalent(&a, &b, None).unwrap();
        let ba = morita_equivalent(&b, &a, None).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        prop_assert_eq!(ab.reason, ba.reason);
        prop_assert!(morita_equivalent(&a, &a, None).unwrap().equivalent);
        if ab.reason == VerdictReason::InverseSwap {
            let ai = build_idempotent(&a.phi.inverse(), &c).unwrap();
            prop_assert_eq!(ai.index(), b.index());
        }
    }

    #[test]
    fn cartan_equivalence_under_random_permutation(
        entries in prop::collection::vec(0i64..4, 36),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let n = 6;
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = entries[i.min(j) * n + i.max(j)];
            }
        }
        let b: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| a[perm[i]][perm[j]]).collect()).collect();
        prop_assert!(cartan_equivalent(&a, &b));
        prop_assert!(cartan_equivalent(&b, &a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twist_permutes_idempotents(k in 0u32..7, m in 1u64..7, t2 in 1u32..3) {
        let c = ConstructionParams::theorem(2, 29, 1, t2).unwrap();
        let rmap = block_reduction(&c).unwrap();
        let b = build_idempotent(&LinearCharacter::z_lprime(&c, k), &c).unwrap();
        prop_assert!(twist_identity_holds(&b, &rmap, m).unwrap());
    }
}

#[test]
fn ordinary_characters_summed_over_blocks_give_class_count() {
    let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
    let data = g_lprime_classes(&c, DEFAULT_TABLE_BOUND as u64).unwrap();
    let dec = CliffordDecomposition::build(&c, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).unwrap();
    let total: usize = all_blocks(&c)
        .unwrap()
        .iter()
        .map(|b| dec.chars.iter().filter(|x| x.block == b.index()).count())
        .sum();
    assert_eq!(total, data.num_classes());

    let c7 = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
    let dec7 = CliffordDecomposition::build(&c7, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).unwrap();
    let per_block: Vec<usize> = all_blocks(&c7)
        .unwrap()
        .iter()
        .map(|b| dec7.chars.iter().filter(|x| x.block == b.index()).count())
        .collect();
    assert_eq!(per_block.iter().sum::<usize>(), dec7.chars.len());
    assert_eq!(per_block, vec![256, 128, 128]);
}

#[test]
fn every_equivalent_pair_at_p7_has_matching_invariants() {
    let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
    let dec = CliffordDecomposition::build(&c, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).unwrap();
    let bs = all_blocks(&c).unwrap();
    let mut equivalent = 0;
    for a in &bs {
        for b in &bs {
            let v = morita_equivalent(a, b, Some(&dec)).unwrap();
            if v.equivalent {
                equivalent += 1;
                assert!(v.invariant_report.unwrap().all_agree());
            }
        }
    }
    // three reflexive pairs plus (phi, phi^-1) both ways
    assert_eq!(equivalent, 5);
}
