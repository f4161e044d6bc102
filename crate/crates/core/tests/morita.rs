use std::time::Instant;

use mfrob_core::blocks::all_blocks;
use mfrob_core::chars::{clifford, CliffordDecomposition, DEFAULT_TABLE_BOUND};
use mfrob_core::groups::ConstructionParams;
use mfrob_core::morita::*;

fn clifford_data(c: &ConstructionParams) -> CliffordDecomposition {
    CliffordDecomposition::build(c, clifford::DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).unwrap()
}

#[test]
fn full_suite_at_p7() {
    let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
    let t0 = Instant::now();
    let out = verify_lemma_suite(&Lemma::ALL, &c, &SuiteOptions::default());
    for o in &out {
        eprintln!("{} {} checked={} {:?}", o.lemma, o.passed, o.checked, o.notes);
        assert!(o.passed, "{o:?}");
    }
    eprintln!("suite at p=7 in {:?}", t0.elapsed());
    let dk = out.iter().find(|o| o.lemma == Lemma::DKernel).unwrap();
    assert_eq!(dk.checked, 4095 + 2 * 59);
}

#[test]
fn dkernel_full_table_at_machinery_scale() {
    let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
    let o = verify_lemma(Lemma::DKernel, &c, &SuiteOptions::default()).unwrap();
    assert!(o.passed, "{o:?}");
    assert_eq!(o.checked, 64);
}

#[test]
fn dkernel_ingredients_need_the_hypothesis() {
    let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
    let opts = SuiteOptions {
        table_bound: 1000,
        ..Default::default()
    };
    assert!(verify_lemma(Lemma::DKernel, &c, &opts).is_err());
}

#[test]
fn equivalent_pairs_have_matching_invariants_at_p7() {
    let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
    let dec = clifford_data(&c);
    let bs = all_blocks(&c).unwrap();
    for a in &bs {
        for b in &bs {
            let v = morita_equivalent(a, b, Some(&dec)).unwrap();
            let r = v.invariant_report.as_ref().unwrap();
            if v.equivalent {
                assert!(r.all_agree());
            }
            let back = morita_equivalent(b, a, None).unwrap();
            assert_eq!(back.equivalent, v.equivalent);
        }
    }
    let inv: Vec<BlockInvariants> = bs.iter().map(|b| BlockInvariants::from_clifford(b, &dec).unwrap()).collect();
    assert!(cartan_equivalent(&inv[1].cartan, &inv[2].cartan));
    // the principal block is told apart by its Brauer character count
    assert_ne!(inv[0].l, inv[1].l);
    let r = rank_bound_check(&inv[1].degrees, &inv[2].degrees, 1000, 7).unwrap();
    assert!(r.passed() && r.sorted_attains_rank);
}

#[test]
fn twist_image_has_the_same_cartan_matrix() {
    // at t = (1, 2) the twist by l maps B_1 to B_2 although they are not Morita equivalent
    let c = ConstructionParams::theorem(2, 7, 1, 2).unwrap();
    let dec = clifford_data(&c);
    let bs = all_blocks(&c).unwrap();
    let a = BlockInvariants::from_clifford(&bs[1], &dec).unwrap();
    let b = BlockInvariants::from_clifford(&bs[2], &dec).unwrap();
    assert!(cartan_equivalent(&a.cartan, &b.cartan));
    let v = morita_equivalent(&bs[1], &bs[2], Some(&dec)).unwrap();
    assert_eq!(v.reason, VerdictReason::ClassifiedDistinct);
}

#[test]
fn rank_bound_at_machinery_scale() {
    let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
    let dec = clifford_data(&c);
    let b = &all_blocks(&c).unwrap()[0];
    let inv = BlockInvariants::from_clifford(b, &dec).unwrap();
    assert_eq!(inv.rank, 6400u32.into());
    let r = rank_bound_check(&inv.degrees, &inv.degrees, 1000, 42).unwrap();
    assert!(r.passed());
    assert_eq!(r.bijections, 1002);
    assert_eq!(r.identity_sum, "6400");
}

#[test]
fn headline_instances() {
    let expected_p = [(2, 1, 7), (2, 2, 7), (2, 3, 29), (2, 4, 31), (3, 1, 5), (3, 2, 17), (5, 2, 73)];
    for (l, n, p) in expected_p {
        let t0 = Instant::now();
        let inst = construct_theorem_instance(l, n).unwrap();
        assert_eq!(inst.params.p, p);
        assert_eq!(inst.result.mfn, n);
        assert_eq!(inst.result.orbit.len(), n as usize);
        assert!(inst.result.orbit_closed(l, inst.params.z_lprime_order()));
        assert!(t0.elapsed().as_secs_f64() < 1.0);
    }
}
