use proptest::prelude::*;

use mfrob_core::exactnum::{find_prime_bounded, is_power_of, is_prime, multiplicative_order};
use mfrob_core::groups::{
    apply_automorphism, AutomorphismSpec, ConstructionParams, DElem, EElem, EGroup, FGroup, GElem, GGroup, Group,
};

fn p7() -> ConstructionParams {
    ConstructionParams::theorem(2, 7, 1, 2).unwrap()
}

fn zero_sum(head: Vec<u32>, q: u32) -> Vec<u32> {
    let s: u32 = head.iter().sum::<u32>() % q;
    let mut v = head;
    v.push((q - s) % q);
    v
}

// p = 7, t = (1, 2): D coordinates mod 2 and mod 4, exponents mod 6
fn e_elem() -> impl Strategy<Value = EElem> {
    (0u32..7, 0u32..7, 0u32..6, 0u32..6, 0u32..6).prop_map(|(x, y, m, n, r)| EElem::new(x, y, m, n, r))
}

fn d_elem() -> impl Strategy<Value = DElem> {
    (prop::collection::vec(0u32..2, 6), prop::collection::vec(0u32..4, 6)).prop_map(|(a, b)| DElem {
        first: zero_sum(a, 2),
        second: zero_sum(b, 4),
    })
}

fn g_elem() -> impl Strategy<Value = GElem> {
    (d_elem(), e_elem()).prop_map(|(d, e)| GElem { d, e })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn g_is_a_group(a in g_elem(), b in g_elem(), c in g_elem()) {
        let g = GGroup::new(&p7());
        prop_assert!(g.is_valid_d(&g.mul(&a, &b).d));
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
        prop_assert_eq!(g.mul(&g.identity(), &a), a.clone());
    }

    #[test]
    fn e_acts_on_d(e1 in e_elem(), e2 in e_elem(), d1 in d_elem(), d2 in d_elem()) {
        let g = GGroup::new(&p7());
        let eg = EGroup::new(&p7());
        prop_assert_eq!(g.act_on_d(&eg.mul(&e1, &e2), &d1), g.act_on_d(&e1, &g.act_on_d(&e2, &d1)));
        // by group automorphisms of D
        prop_assert_eq!(
            g.act_on_d(&e1, &g.d_add(&d1, &d2)),
            g.d_add(&g.act_on_d(&e1, &d1), &g.act_on_d(&e1, &d2))
        );
        // Z acts trivially
        prop_assert_eq!(g.act_on_d(&EElem::central(e1.r), &d1), d1.clone());
    }

    #[test]
    fn e_to_f_pair_is_a_homomorphism(a in e_elem(), b in e_elem()) {
        let eg = EGroup::new(&p7());
        let f = FGroup::new(&p7());
        let (a1, a2) = eg.to_f_pair(&a);
        let (b1, b2) = eg.to_f_pair(&b);
        let (c1, c2) = eg.to_f_pair(&eg.mul(&a, &b));
        prop_assert_eq!(c1, f.mul(&a1, &b1));
        prop_assert_eq!(c2, f.mul(&a2, &b2));
        let central = EElem::central(a.r);
        prop_assert_eq!(eg.to_f_pair(&central), (f.identity(), f.identity()));
    }

    #[test]
    fn commutator_of_torus_lifts(x in 0u32..7, y in 0u32..7, m in 0u32..6, n in 0u32..6, r in 0u32..6, s in 0u32..6) {
        let eg = EGroup::new(&p7());
        let a = EElem::new(x, 0, m, 0, r);
        let b = EElem::new(0, y, 0, n, s);
        let want = EElem::central((6 - (m * n) % 6) % 6);
        prop_assert_eq!(eg.commutator(&a, &b), want);
    }

    #[test]
    fn swap_is_an_involutive_automorphism(a in g_elem(), b in g_elem()) {
        let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
        let g = GGroup::new(&c);
        let trim = |x: GElem| GElem {
            d: DElem { first: x.d.first, second: x.d.second.into_iter().map(|v| v % 2).collect() },
            e: x.e,
        };
        let (a, b) = (trim(a), trim(b));
        prop_assume!(g.is_valid_d(&a.d) && g.is_valid_d(&b.d));
        let delta = |x: &GElem| apply_automorphism(&c, AutomorphismSpec::Swap, x).unwrap();
        prop_assert_eq!(delta(&g.mul(&a, &b)), g.mul(&delta(&a), &delta(&b)));
        prop_assert_eq!(delta(&delta(&a)), a.clone());
    }

    #[test]
    fn find_prime_conditions(l in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..5) {
        let p = find_prime_bounded(l, n, 10_000_000).unwrap();
        let q = l.pow(n) - 1;
        prop_assert!(is_prime(p));
        prop_assert_eq!((p - 1) % q, 0);
        prop_assert!(!is_power_of(l, p - 1));
        prop_assert!(p != l);
    }

    #[test]
    fn order_of_l_mod_l_power_minus_one(l in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]), n in 1u32..9) {
        let q = l.pow(n) - 1;
        prop_assume!(q > 1);
        prop_assert_eq!(multiplicative_order(l, q).unwrap(), n as u64);
    }
}

#[test]
fn group_laws_exhaustive_on_e_lprime_p5() {
    let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
    let eg = EGroup::new(&c);
    let all = eg.lprime_elements();
    assert_eq!(all.len() as u64, c.order_e_lprime());
    for a in &all {
        assert_eq!(eg.mul(a, &eg.inv(a)), EElem::IDENTITY);
        for b in &all {
            let ab = eg.mul(a, b);
            assert!(eg.in_lprime(&ab));
            for x in &all {
                assert_eq!(eg.mul(&ab, x), eg.mul(a, &eg.mul(b, x)));
            }
        }
    }
}

#[test]
fn orders_against_closed_forms() {
    for (l, p, t1, t2) in [(2u32, 3u32, 1u32, 1u32), (2, 5, 1, 2), (3, 7, 1, 1), (2, 7, 1, 1)] {
        let c = ConstructionParams::machinery(l, p, t1, t2).unwrap();
        let eg = EGroup::new(&c);
        let zl = (p - 1) / l.pow(c.a);
        assert_eq!(eg.z_lprime_elements().len() as u32, zl);
        assert_eq!(eg.lprime_elements().len() as u64, (p as u64).pow(2) * (zl as u64).pow(3));
        let g = GGroup::new(&c);
        let d = g.d_elements(1 << 20).unwrap().len() as u64;
        assert_eq!(d, (l as u64).pow((t1 + t2) * (p - 1)));
    }
}

#[test]
fn e_lprime_mod_z_acts_faithfully_on_d() {
    let c = ConstructionParams::theorem(2, 7, 1, 1).unwrap();
    let g = GGroup::new(&c);
    let eg = EGroup::new(&c);
    let f = FGroup::new(&c);
    let gens = g.d_generators();
    let mut fixers = 0;
    for e in eg.lprime_elements().into_iter().filter(|e| e.r == 0) {
        if gens.iter().all(|d| g.act_on_d(&e, d) == *d) {
            fixers += 1;
            assert_eq!(eg.to_f_pair(&e), (f.identity(), f.identity()));
        }
    }
    assert_eq!(fixers, 1);
}

#[test]
fn hypothesis_gate_and_machinery_mode() {
    assert!(ConstructionParams::theorem(2, 5, 1, 1).is_err());
    assert!(ConstructionParams::machinery(2, 5, 1, 1).unwrap().relaxed);
    assert!(ConstructionParams::theorem(2, 2, 1, 1).is_err());
    assert!(ConstructionParams::theorem(2, 9, 1, 1).is_err());
    assert!(ConstructionParams::theorem(2, 7, 0, 1).is_err());
    let c = ConstructionParams::theorem(2, 29, 1, 2).unwrap();
    assert_eq!((c.a, c.z_lprime_order()), (2, 7));
}
