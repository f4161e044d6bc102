use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::blocks::{
    all_blocks, block_partition_check, block_reduction, build_idempotent, twist_identity_holds, AlgebraElement,
    DEFAULT_CENTRE_BOUND,
};
use crate::chars::clifford::DEFAULT_ORBIT_BOUND;
use crate::chars::linear::DEFAULT_IRR_BOUND;
use crate::chars::{
    character_table, e_lprime_table, fp_stable_characters, fusion_map, g_lprime_classes, irr_abelian, restrict,
    stabilizer_in_p, AbelianKind, CharacterTable, StabilizerTag, DEFAULT_TABLE_BOUND,
};
use crate::error::{Error, Result};
use crate::exactnum::Cyclo;
use crate::groups::autos::standard_conjugations;
use crate::groups::checks::DEFAULT_COMM_BOUND;
use crate::groups::{
    verify_automorphism, verify_comm_relation, verify_faithful_action, Automorphism, AutomorphismSpec,
    ConstructionParams, EGroup, EElem, GElem, GGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    FpStable,
    Comm,
    Faithful,
    Autos,
    DKernel,
    TwistPerm,
    Partition,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Lemma::FpStable,
        Lemma::Comm,
        Lemma::Faithful,
        Lemma::Autos,
        Lemma::DKernel,
        Lemma::TwistPerm,
        Lemma::Partition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::FpStable => "fpstable",
            Lemma::Comm => "comm",
            Lemma::Faithful => "faithful",
            Lemma::Autos => "autos",
            Lemma::DKernel => "dkernel",
            Lemma::TwistPerm => "twistperm",
            Lemma::Partition => "partition",
        }
    }

    /// Whether the statement relies on `p - 1` not being a power of `l`.
    pub fn needs_hypothesis(self) -> bool {
        self == Lemma::DKernel
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidParameters(format!("unknown check '{s}'")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub random_pairs: usize,
    pub seed: u64,
    pub comm_bound: u64,
    pub irr_bound: u64,
    pub orbit_bound: u64,
    pub table_bound: usize,
    pub centre_bound: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            random_pairs: 1000,
            seed: 0,
            comm_bound: DEFAULT_COMM_BOUND,
            irr_bound: DEFAULT_IRR_BOUND,
            orbit_bound: DEFAULT_ORBIT_BOUND,
            table_bound: DEFAULT_TABLE_BOUND,
            centre_bound: DEFAULT_CENTRE_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaOutcome {
    pub lemma: Lemma,
    pub passed: bool,
    pub checked: u64,
    pub counterexamples: Vec<String>,
    pub notes: Vec<String>,
    /// Set when the check could not run, e.g. a bound was exceeded.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub bound_exceeded: bool,
}

impl LemmaOutcome {
    fn new(lemma: Lemma) -> Self {
        LemmaOutcome {
            lemma,
            passed: true,
            checked: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            error: None,
            bound_exceeded: false,
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.passed = false;
        if self.counterexamples.len() < 20 {
            self.counterexamples.push(msg.into());
        }
    }

    fn absorb(&mut self, passed: bool, checked: u64, counterexamples: &[String]) {
        self.checked += checked;
        if !passed {
            self.passed = false;
        }
        for c in counterexamples {
            self.fail(c.clone());
        }
    }
}

pub fn verify_lemma(lemma: Lemma, params: &ConstructionParams, opts: &SuiteOptions) -> Result<LemmaOutcome> {
    if lemma.needs_hypothesis() && params.relaxed {
        // the full table route below does not use the hypothesis, the ingredient route does
        let small = params.order_g_lprime() <= opts.table_bound.into();
        if !small {
            params.require_theorem_level()?;
        }
    }
    let mut out = LemmaOutcome::new(lemma);
    match lemma {
        Lemma::FpStable => {
            let mut levels = vec![params.t1, params.t2];
            levels.dedup();
            for t in levels {
                let r = fp_stable_characters(params, t, opts.irr_bound)?;
                out.checked += r.total;
                out.notes.push(format!(
                    "t={t}: {} of {} characters of Omega_t stable, D_t has {} stable",
                    r.stable.len(),
                    r.total,
                    r.d_t_stable
                ));
                if !r.passed() {
                    out.fail(format!("t={t}: stable set is not 1_D x Irr(Lambda_t)"));
                }
            }
        }
        Lemma::Comm => {
            let r = verify_comm_relation(params, opts.comm_bound)?;
            out.absorb(r.passed, r.checked, &r.counterexamples);
        }
        Lemma::Faithful => {
            let r = verify_faithful_action(params);
            out.absorb(r.passed, r.checked, &r.counterexamples);
        }
        Lemma::Autos => check_autos(params, opts, &mut out)?,
        Lemma::DKernel => check_dkernel(params, opts, &mut out)?,
        Lemma::TwistPerm => {
            let rmap = block_reduction(params)?;
            for b in all_blocks(params)? {
                for m in 1..=rmap.m as u64 {
                    out.checked += 1;
                    if !twist_identity_holds(&b, &rmap, m)? {
                        out.fail(format!("twist of e_{} by l^{m} is not e_(phi^(l^{m}))", b.index()));
                    }
                }
            }
            out.notes.push(format!("reduction field F_{}^{}", params.l, rmap.m));
        }
        Lemma::Partition => {
            let r = block_partition_check(params, opts.centre_bound)?;
            out.checked = r.blocks as u64;
            match r.primitive {
                Some(_) => out.notes.push(format!(
                    "centre algebra of dimension {} has {} primitive idempotents",
                    r.centre_dim.unwrap_or(0),
                    r.centre_semisimple_rank.unwrap_or(0)
                )),
                None => out.notes.push("primitivity not checked: D x Z_l' above the bound".into()),
            }
            out.absorb(r.passed(), 0, &r.failures);
        }
    }
    Ok(out)
}

/// Runs the selected checks in parallel; outcomes keep the order of `which`.
pub fn verify_lemma_suite(which: &[Lemma], params: &ConstructionParams, opts: &SuiteOptions) -> Vec<LemmaOutcome> {
    which
        .par_iter()
        .map(|&lemma| match verify_lemma(lemma, params, opts) {
            Ok(o) => o,
            Err(e) => {
                let mut o = LemmaOutcome::new(lemma);
                o.passed = false;
                o.bound_exceeded = matches!(e, Error::BoundExceeded { .. } | Error::Hypothesis(_));
                o.error = Some(e.to_string());
                o
            }
        })
        .collect()
}

fn check_autos(params: &ConstructionParams, opts: &SuiteOptions, out: &mut LemmaOutcome) -> Result<()> {
    let mut specs = standard_conjugations(params);
    if params.t1 == params.t2 {
        specs.push(AutomorphismSpec::Swap);
    }
    let blocks = all_blocks(params)?;
    for (i, spec) in specs.into_iter().enumerate() {
        let r = verify_automorphism(params, spec.clone(), opts.random_pairs, opts.seed.wrapping_add(i as u64))?;
        out.absorb(r.passed(), r.e_pairs_checked + r.d_pairs_checked + r.g_pairs_checked, &r.counterexamples);
        if r.involution == Some(false) {
            out.fail("swap is not an involution");
        }
        let auto = Automorphism::new(params, spec.clone())?;
        for b in &blocks {
            let image: AlgebraElement<GElem, Cyclo> = b.idempotent.map_support(|g| auto.apply(g));
            let target = match spec {
                AutomorphismSpec::Swap => build_idempotent(&b.phi.inverse(), params)?,
                AutomorphismSpec::Conjugation(_) => b.clone(),
            };
            out.checked += 1;
            if image != target.idempotent {
                out.fail(format!("{spec:?} maps e_{} to something other than e_{}", b.index(), target.index()));
            }
        }
    }
    if params.t1 != params.t2 {
        out.notes.push("swap skipped: t1 != t2".into());
    }
    Ok(())
}

fn check_dkernel(params: &ConstructionParams, opts: &SuiteOptions, out: &mut LemmaOutcome) -> Result<()> {
    if params.order_g_lprime() <= opts.table_bound.into() {
        return dkernel_full(params, opts, out);
    }
    // ingredient 1: nontrivial D characters have stabilizer 1, P_1 or P_2 in P
    let thetas = irr_abelian(params, AbelianKind::D, opts.irr_bound)?;
    let tags: Vec<(usize, StabilizerTag)> = thetas
        .par_iter()
        .enumerate()
        .filter(|(_, th)| !th.is_trivial())
        .map(|(i, th)| stabilizer_in_p(params, th).map(|t| (i, t)))
        .collect::<Result<_>>()?;
    for (i, tag) in &tags {
        out.checked += 1;
        if !matches!(tag, StabilizerTag::Trivial | StabilizerTag::P1 | StabilizerTag::P2) {
            out.fail(format!("nontrivial D character {:?} has stabilizer {tag:?}", thetas[*i].dual));
        }
    }
    out.notes.push(format!("stabilizer trichotomy over {} nontrivial characters of D", tags.len()));
    // ingredient 2: no xi in Irr(E_l') restricts to P_i with both trivial and nontrivial constituents
    let table = e_lprime_table(params, opts.table_bound)?;
    for (k, xi) in table.chars.iter().enumerate() {
        for factor in 0..2 {
            out.checked += 1;
            let triv = trivial_multiplicity_on_p_factor(&table, xi, factor)?;
            if triv != 0 && triv != xi.degree_u64() as i64 {
                out.fail(format!("xi_{k} restricted to P_{} is mixed", factor + 1));
            }
        }
    }
    out.notes.push(format!("restriction dichotomy over {} characters of E_l'", table.chars.len()));
    Ok(())
}

fn trivial_multiplicity_on_p_factor(
    table: &CharacterTable<EGroup>,
    xi: &crate::chars::ClassFunction,
    factor: usize,
) -> Result<i64> {
    let p = table.data.group.group.params.p;
    let mut total = Cyclo::zero(1);
    for x in 0..p {
        let e = if factor == 0 { EElem::new(x, 0, 0, 0, 0) } else { EElem::new(0, x, 0, 0, 0) };
        let c = table
            .data
            .class_of(&e)
            .ok_or_else(|| Error::NotASubgroup(format!("{e:?} not in E_l'")))?;
        total = &total + &xi.values[c];
    }
    let v = total
        .to_integer()
        .ok_or_else(|| Error::Assertion("sum over P_i is not rational".into()))?;
    i64::try_from(v / p)
        .map_err(|_| Error::Assertion("trivial multiplicity out of range".into()))
}

/// `chi|_{E_{l'}}` irreducible iff `D <= ker chi`, for every `chi` in a full table of `G_{l'}`.
fn dkernel_full(params: &ConstructionParams, opts: &SuiteOptions, out: &mut LemmaOutcome) -> Result<()> {
    let gg = GGroup::new(params);
    let data = Arc::new(g_lprime_classes(params, opts.table_bound as u64)?);
    let g_table = character_table(data, opts.table_bound)?;
    let e_table = e_lprime_table(params, opts.table_bound)?;
    let fusion = fusion_map(&e_table.data, &g_table.data, |e| gg.embed_e(*e))?;
    let d_classes: Vec<usize> = (0..g_table.data.num_classes())
        .filter(|&c| g_table.data.rep(c).e == EElem::IDENTITY)
        .collect();
    let mut in_kernel = 0;
    for (i, chi) in g_table.chars.iter().enumerate() {
        out.checked += 1;
        let deg = &chi.values[0];
        let kills_d = d_classes.iter().all(|&c| chi.values[c] == *deg);
        let res = restrict(chi, &fusion);
        let irreducible = e_table.inner_int(&res, &res)? == 1;
        if kills_d {
            in_kernel += 1;
        }
        if kills_d != irreducible {
            out.fail(format!("chi_{i}: D in kernel = {kills_d}, restriction irreducible = {irreducible}"));
        }
    }
    out.notes.push(format!(
        "full table of G_l' ({} characters, {in_kernel} with D in the kernel)",
        g_table.chars.len()
    ));
    if in_kernel != e_table.chars.len() {
        out.fail(format!("{in_kernel} characters over 1_D but |Irr(E_l')| = {}", e_table.chars.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
        assert!("nope".parse::<Lemma>().is_err());
    }

    #[test]
    fn cheap_lemmas_at_p5_machinery() {
        let c = ConstructionParams::machinery(2, 5, 1, 1).unwrap();
        let which = [Lemma::FpStable, Lemma::Comm, Lemma::Faithful, Lemma::TwistPerm, Lemma::Partition];
        for o in verify_lemma_suite(&which, &c, &SuiteOptions::default()) {
            assert!(o.passed, "{o:?}");
        }
    }
}
