use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use mfrob_core::blocks::{
    all_blocks, block_partition_check, block_rank, block_reduction, check_cartan, decomposition_from_clifford,
    decomposition_from_tables, twist_identity_holds, DEFAULT_CENTRE_BOUND,
};
use mfrob_core::chars::clifford::DEFAULT_ORBIT_BOUND;
use mfrob_core::chars::{
    character_table, e_lprime_classes, e_lprime_table, fp_stable_characters, g_lprime_classes, realize_all,
    CliffordDecomposition, DEFAULT_TABLE_BOUND,
};
use mfrob_core::exactnum::{is_prime, multiplicative_order};
use mfrob_core::groups::autos::standard_conjugations;
use mfrob_core::groups::checks::DEFAULT_COMM_BOUND;
use mfrob_core::groups::{verify_automorphism, verify_comm_relation, AutomorphismSpec, ConstructionParams};
use mfrob_core::morita::{
    cartan_equivalent, construct_theorem_instance, morita_equivalent, morita_frobenius_number, rank_bound_check,
    theta_of_order, verify_lemma, BlockInvariants, Lemma, MfnClause, SuiteOptions,
};

type Outcome = Result<String, String>;

// |Irr(Omega_2)| = 9^7 at p = 7, l = 3
const FP_STABLE_BOUND: u64 = 1 << 23;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:?}, limit {limit:?}"))
}

fn theorem_instances() -> Outcome {
    let cases = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 2)];
    let mut primes = Vec::new();
    for (l, n) in cases {
        let start = Instant::now();
        let inst = construct_theorem_instance(l, n).map_err(e)?;
        within(start, Duration::from_secs(1), &format!("(l,n)=({l},{n})"))?;
        let p = inst.params.p as u64;
        let modulus = (l as u64).pow(n) - 1;
        ensure(is_prime(p), || format!("p={p} not prime"))?;
        ensure((p - 1) % modulus == 0, || format!("{modulus} does not divide p-1={}", p - 1))?;
        ensure(inst.params.require_theorem_level().is_ok(), || format!("p={p} violates the hypothesis"))?;
        ensure(inst.result.mfn == n, || format!("(l,n)=({l},{n}): mfn={}", inst.result.mfn))?;
        if modulus > 1 {
            let ord = multiplicative_order(l as u64, modulus).map_err(e)?;
            ensure(ord == n as u64, || format!("ord_{modulus}({l}) = {ord}"))?;
        }
        primes.push(format!("({l},{n})->p={p}"));
    }
    Ok(primes.join(" "))
}

fn negative_control() -> Outcome {
    let c = ConstructionParams::theorem(2, 7, 1, 1).map_err(e)?;
    let theta = theta_of_order(&c, 3).map_err(e)?;
    let r = morita_frobenius_number(&theta, &c).map_err(e)?;
    ensure(r.mfn == 1 && r.clause == MfnClause::InverseSwap, || format!("{r:?}"))?;
    let c12 = c.with_levels(1, 2).map_err(e)?;
    let r12 = morita_frobenius_number(&theta_of_order(&c12, 3).map_err(e)?, &c12).map_err(e)?;
    ensure(r12.mfn == 2, || format!("t=(1,2) gives mfn {}", r12.mfn))?;
    Ok("t1=t2: mfn=1 via inverse clause; t=(1,2): mfn=2".into())
}

fn fp_stable() -> Outcome {
    let start = Instant::now();
    let mut runs = 0;
    for p in [3u32, 5, 7] {
        for l in [2u32, 3] {
            if l == p {
                continue;
            }
            for t in [1u32, 2] {
                let c = ConstructionParams::machinery(l, p, t, t).map_err(e)?;
                let r = fp_stable_characters(&c, t, FP_STABLE_BOUND).map_err(e)?;
                let want = (l as usize).pow(t);
                ensure(r.stable.len() == want, || {
                    format!("p={p} l={l} t={t}: {} stable, want {want}", r.stable.len())
                })?;
                ensure(r.passed(), || format!("p={p} l={l} t={t}: {r:?}"))?;
                runs += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), "fpstable sweep")?;
    Ok(format!("{runs} parameter sets (l = p skipped), stable count l^t in each"))
}

fn comm_relation() -> Outcome {
    let mut total = 0;
    for p in [5, 7] {
        let c = ConstructionParams::machinery(2, p, 1, 1).map_err(e)?;
        let r = verify_comm_relation(&c, DEFAULT_COMM_BOUND).map_err(e)?;
        ensure(r.passed && r.counterexamples.is_empty(), || format!("p={p}: {:?}", r.counterexamples))?;
        total += r.checked;
    }
    Ok(format!("{total} cases, zero counterexamples"))
}

fn autos() -> Outcome {
    let start = Instant::now();
    let c = ConstructionParams::theorem(2, 7, 1, 1).map_err(e)?;
    let e_order = e_lprime_classes(&c).map_err(e)?.order() as u64;
    let mut specs = standard_conjugations(&c);
    specs.push(AutomorphismSpec::Swap);
    for (i, spec) in specs.iter().enumerate() {
        let r = verify_automorphism(&c, spec.clone(), 1000, i as u64).map_err(e)?;
        ensure(r.passed(), || format!("{spec:?}: {:?}", r.counterexamples))?;
        ensure(r.e_pairs_checked == e_order * e_order, || {
            format!("{spec:?}: {} E pairs, want {}", r.e_pairs_checked, e_order * e_order)
        })?;
        ensure(r.d_pairs_checked > 0, || format!("{spec:?}: no D generators checked"))?;
        if *spec == AutomorphismSpec::Swap {
            ensure(r.involution == Some(true), || "swap is not an involution".into())?;
        }
    }
    // idempotent images, including delta(e_phi) = e_(phi^-1)
    let o = verify_lemma(Lemma::Autos, &c, &SuiteOptions::default()).map_err(e)?;
    ensure(o.passed, || format!("{:?}", o.counterexamples))?;
    within(start, Duration::from_secs(300), "autos")?;
    Ok(format!(
        "{} automorphisms on all {} ordered pairs of E_l', swap an involution mapping e_phi to e_(phi^-1)",
        specs.len(),
        e_order * e_order
    ))
}

fn dkernel() -> Outcome {
    let start = Instant::now();
    let opts = SuiteOptions::default();
    let m = ConstructionParams::machinery(2, 5, 1, 1).map_err(e)?;
    ensure(m.order_g_lprime() == 6400u32.into(), || "machinery |G_l'| is not 6400".into())?;
    let full = verify_lemma(Lemma::DKernel, &m, &opts).map_err(e)?;
    ensure(full.passed, || format!("machinery: {:?}", full.counterexamples))?;
    let c = ConstructionParams::theorem(2, 7, 1, 1).map_err(e)?;
    let ing = verify_lemma(Lemma::DKernel, &c, &opts).map_err(e)?;
    ensure(ing.passed, || format!("p=7: {:?}", ing.counterexamples))?;
    let nontrivial = c.order_d() - 1u32;
    ensure(ing.notes.iter().any(|n| n.contains(&format!("over {nontrivial} nontrivial"))), || {
        format!("p=7 notes: {:?}", ing.notes)
    })?;
    within(start, Duration::from_secs(600), "dkernel")?;
    Ok(format!(
        "full table at |G_l'|=6400 ({} characters); p=7 ingredients over {nontrivial} nontrivial theta",
        full.checked
    ))
}

fn idempotents_and_twists() -> Outcome {
    let mut summary = Vec::new();
    for (p, t1, t2) in [(7, 1, 1), (7, 1, 2), (29, 1, 1), (29, 1, 2)] {
        let c = ConstructionParams::theorem(2, p, t1, t2).map_err(e)?;
        let r = block_partition_check(&c, DEFAULT_CENTRE_BOUND).map_err(e)?;
        ensure(r.passed(), || format!("p={p} t=({t1},{t2}): {:?}", r.failures))?;
        ensure(r.sum_is_one && r.orthogonal && r.idempotent && r.central && r.supported_on_z, || {
            format!("p={p}: {r:?}")
        })?;
        let rmap = block_reduction(&c).map_err(e)?;
        let mut twists = 0;
        for b in all_blocks(&c).map_err(e)? {
            let orbit = morita_frobenius_number(&b.phi, &c).map_err(e)?.orbit.len() as u64;
            for m in 1..=orbit.max(rmap.m as u64) {
                ensure(twist_identity_holds(&b, &rmap, m).map_err(e)?, || {
                    format!("p={p}: twist of e_{} by l^{m}", b.index())
                })?;
                twists += 1;
            }
        }
        summary.push(format!("p={p} t=({t1},{t2}): {} blocks, {twists} twists", r.blocks));
    }
    Ok(summary.join("; "))
}

fn character_self_validation() -> Outcome {
    let m = ConstructionParams::machinery(2, 5, 1, 1).map_err(e)?;
    let data = Arc::new(g_lprime_classes(&m, DEFAULT_TABLE_BOUND as u64).map_err(e)?);
    let generic = character_table(data.clone(), DEFAULT_TABLE_BOUND).map_err(e)?;
    generic.validate().map_err(e)?;
    let dec = CliffordDecomposition::build(&m, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).map_err(e)?;
    ensure(dec.sum_of_squares() == 6400, || format!("sum of squares {}", dec.sum_of_squares()))?;
    let realized = realize_all(&dec, &data).map_err(e)?;
    ensure(realized == generic.chars, || "Clifford and generic tables differ".into())?;
    let mut tables = 1;
    for c in [m, ConstructionParams::theorem(2, 7, 1, 1).map_err(e)?] {
        e_lprime_table(&c, DEFAULT_TABLE_BOUND).map_err(e)?.validate().map_err(e)?;
        let dec = CliffordDecomposition::build(&c, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).map_err(e)?;
        for s in &dec.stabilizers {
            s.table.validate().map_err(e)?;
        }
        let order: u128 = c.order_g_lprime().try_into().map_err(e)?;
        ensure(dec.sum_of_squares() == order, || format!("p={}: sum of squares", c.p))?;
        tables += 1 + dec.stabilizers.len();
    }
    Ok(format!(
        "{tables} tables orthogonal; {} Clifford characters equal the generic table at |G_l'|=6400",
        realized.len()
    ))
}

fn rank_identities() -> Outcome {
    let mut lines = Vec::new();
    for c in [
        ConstructionParams::machinery(2, 5, 1, 1).map_err(e)?,
        ConstructionParams::theorem(2, 7, 1, 1).map_err(e)?,
    ] {
        let dec = CliffordDecomposition::build(&c, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).map_err(e)?;
        let blocks = all_blocks(&c).map_err(e)?;
        let inv: Vec<BlockInvariants> = blocks
            .iter()
            .map(|b| BlockInvariants::from_clifford(b, &dec))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        for b in &blocks {
            let r = block_rank(b, Some(&dec));
            ensure(r.agrees(), || format!("p={} block {}: {r:?}", c.p, b.index()))?;
        }
        let mut bijections = 0;
        for (i, a) in inv.iter().enumerate() {
            for b in &inv[i..] {
                if a.degrees.len() != b.degrees.len() {
                    continue;
                }
                let r = rank_bound_check(&a.degrees, &b.degrees, 1000, 7).map_err(e)?;
                ensure(r.passed(), || format!("p={}: {} violations", c.p, r.violations.len()))?;
                bijections += r.bijections;
            }
        }
        lines.push(format!("p={}: {} block ranks agree, {bijections} bijections", c.p, blocks.len()));
    }
    Ok(lines.join("; "))
}

fn cartan_properties() -> Outcome {
    let m = ConstructionParams::machinery(2, 5, 1, 1).map_err(e)?;
    let data = Arc::new(g_lprime_classes(&m, DEFAULT_TABLE_BOUND as u64).map_err(e)?);
    let g_table = character_table(data, DEFAULT_TABLE_BOUND).map_err(e)?;
    let e_table = e_lprime_table(&m, DEFAULT_TABLE_BOUND).map_err(e)?;
    let dec = CliffordDecomposition::build(&m, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).map_err(e)?;
    let mut det = String::new();
    for b in all_blocks(&m).map_err(e)? {
        let from_tables = decomposition_from_tables(&b, &g_table, &e_table).map_err(e)?;
        let from_clifford = decomposition_from_clifford(&b, &dec).map_err(e)?;
        for d in [&from_tables, &from_clifford] {
            let r = check_cartan(d, m.l);
            ensure(r.passed(), || format!("block {}: {r:?}", b.index()))?;
            det = r.determinant.to_string();
        }
        ensure(cartan_equivalent(&from_tables.cartan, &from_clifford.cartan), || {
            "table and Clifford Cartan matrices differ".into()
        })?;
    }
    let c = ConstructionParams::theorem(2, 7, 1, 1).map_err(e)?;
    let dec7 = CliffordDecomposition::build(&c, DEFAULT_ORBIT_BOUND, DEFAULT_TABLE_BOUND).map_err(e)?;
    let bs = all_blocks(&c).map_err(e)?;
    let (b1, b2) = (&bs[1], &bs[2]);
    ensure((b1.index() + b2.index()) % c.z_lprime_order() == 0, || "blocks 1 and 2 are not inverse".into())?;
    let (d1, d2) = (
        decomposition_from_clifford(b1, &dec7).map_err(e)?,
        decomposition_from_clifford(b2, &dec7).map_err(e)?,
    );
    for d in [&d1, &d2] {
        let r = check_cartan(d, c.l);
        ensure(r.passed(), || format!("p=7 block {}: {r:?}", d.block))?;
    }
    ensure(cartan_equivalent(&d1.cartan, &d2.cartan), || "C(B_phi) and C(B_phi^-1) not equivalent".into())?;
    let v = morita_equivalent(b1, b2, Some(&dec7)).map_err(e)?;
    ensure(v.equivalent && v.invariant_report.as_ref().is_some_and(|r| r.all_agree()), || format!("{v:?}"))?;
    Ok(format!(
        "machinery Cartan {0}x{0} with det {det}; p=7 Cartans of B_phi, B_phi^-1 ({1}x{1}) agree up to permutation",
        from_len(&dec, &m)?,
        d1.cartan.len()
    ))
}

fn from_len(dec: &CliffordDecomposition, m: &ConstructionParams) -> Result<usize, String> {
    let b = &all_blocks(m).map_err(e)?[0];
    Ok(decomposition_from_clifford(b, dec).map_err(e)?.num_brauer())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("theorem instances", theorem_instances),
        ("negative control", negative_control),
        ("fp-stable characters", fp_stable),
        ("commutator relation", comm_relation),
        ("automorphisms", autos),
        ("D-kernel", dkernel),
        ("idempotents and twists", idempotents_and_twists),
        ("character self-validation", character_self_validation),
        ("rank identities", rank_identities),
        ("Cartan properties", cartan_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name} [{:.2?}]: {detail}", i + 1, start.elapsed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
