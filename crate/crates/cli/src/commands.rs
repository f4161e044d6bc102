use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use thiserror::Error;

use mfrob_core::blocks::{
    all_blocks, block_partition_check, block_reduction, check_cartan, decomposition_from_clifford,
    twist_identity_holds,
};
use mfrob_core::chars::CliffordDecomposition;
use mfrob_core::exactnum::find_prime_bounded;
use mfrob_core::groups::ConstructionParams;
use mfrob_core::morita::{morita_frobenius_number, theta_of_order, verify_lemma_suite, Lemma, SuiteOptions};

use crate::cache::Cache;
use crate::report::{BlockEntry, BlocksSection, CachedBlockData, MfnSection, Quantity, ReportDocument, Timing};
use crate::{BlocksArgs, Command, Common, Levels, MfnArgs, VerifyArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A check failed or a computed value disagreed with its target.
    Failed,
    /// Nothing failed but some checks could not run within their bounds.
    Incomplete,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> ExitCode {
        match s {
            Status::Ok => ExitCode::SUCCESS,
            Status::Failed => ExitCode::from(1),
            Status::Incomplete => ExitCode::from(2),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] mfrob_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_status(&self) -> Status {
        match self {
            CliError::Core(e) if e.is_mathematical() => Status::Failed,
            _ => Status::Incomplete,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cmd: &Command) -> Result<Status> {
    let start = Instant::now();
    let (mut doc, common, incomplete, cache_note) = match cmd {
        Command::Mfn(a) => (mfn(a)?, &a.common, false, None),
        Command::Verify(a) => {
            let (d, inc) = verify(a)?;
            (d, &a.common, inc, None)
        }
        Command::Blocks(a) => {
            let (d, note) = blocks(a)?;
            (d, &a.common, false, note)
        }
    };
    if common.timing {
        doc.timing = Some(Timing {
            total_ms: start.elapsed().as_millis(),
            cache: cache_note,
        });
    }
    emit(&doc, common)?;
    Ok(if !doc.passed {
        Status::Failed
    } else if incomplete {
        Status::Incomplete
    } else {
        Status::Ok
    })
}

fn emit(doc: &ReportDocument, common: &Common) -> Result<()> {
    let text = doc.render(common.format)?;
    match &common.out {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn build_params(l: u32, p: u32, t1: u32, t2: u32, machinery: bool) -> Result<ConstructionParams> {
    Ok(if machinery {
        ConstructionParams::machinery(l, p, t1, t2)?
    } else {
        ConstructionParams::theorem(l, p, t1, t2)?
    })
}

fn levels(lv: &Levels) -> (u32, u32) {
    match lv.t {
        Some(t) => (t, t),
        None => (lv.t1.unwrap_or(1), lv.t2.unwrap_or(1)),
    }
}

fn mfn(a: &MfnArgs) -> Result<ReportDocument> {
    let (t1, t2) = (a.t1.unwrap_or(1), a.t2.unwrap_or(2));
    let p = match (a.p, a.n) {
        (Some(p), _) => p,
        (None, Some(n)) => {
            let p = find_prime_bounded(a.l as u64, n, a.common.bounds.prime_bound)?;
            u32::try_from(p).map_err(|_| CliError::Usage(format!("prime {p} is too large")))?
        }
        (None, None) => return Err(CliError::Usage("give --n or --p".into())),
    };
    let mut params = build_params(a.l, p, t1, t2, a.common.machinery_mode)?;
    if let Some(n) = a.n {
        params = params.with_target(n);
    }
    let order = match (a.theta_order, a.n) {
        (Some(o), _) => o,
        (None, Some(n)) => a
            .l
            .checked_pow(n)
            .map(|x| x - 1)
            .ok_or_else(|| CliError::Usage("l^n overflows".into()))?,
        (None, None) => params.z_lprime_order(),
    };
    let theta = theta_of_order(&params, order)?;
    let result = morita_frobenius_number(&theta, &params)?;

    let rmap = block_reduction(&params)?;
    let block = mfrob_core::blocks::build_idempotent(&theta, &params)?;
    let twist_identity = (1..=result.mfn as u64)
        .map(|m| twist_identity_holds(&block, &rmap, m))
        .collect::<mfrob_core::Result<Vec<bool>>>()?;

    let target_asserted = a.n.is_some() && t1 != t2 && a.theta_order.is_none();
    let mut doc = ReportDocument::new("mfn", params.echo());
    doc.passed = twist_identity.iter().all(|&b| b) && (!target_asserted || a.n == Some(result.mfn));
    doc.mfn = Some(MfnSection {
        mfn: Quantity::computed(result.mfn),
        target: a.n.map(Quantity::closed_form),
        target_asserted,
        result,
        twist_identity,
    });
    Ok(doc)
}

fn parse_lemmas(a: &VerifyArgs) -> Result<Vec<Lemma>> {
    if a.all {
        return Ok(Lemma::ALL.to_vec());
    }
    let mut out = Vec::new();
    for w in &a.which {
        let l: Lemma = w.trim().parse().map_err(|_| CliError::Usage(format!("unknown check {w:?}")))?;
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

fn suite_options(c: &Common, random_pairs: usize) -> SuiteOptions {
    SuiteOptions {
        random_pairs,
        seed: c.seed,
        comm_bound: c.bounds.comm_bound,
        irr_bound: c.bounds.irr_bound,
        orbit_bound: c.bounds.orbit_bound,
        table_bound: c.bounds.table_bound,
        centre_bound: c.bounds.centre_bound,
    }
}

fn verify(a: &VerifyArgs) -> Result<(ReportDocument, bool)> {
    let lemmas = parse_lemmas(a)?;
    let (t1, t2) = levels(&a.levels);
    // checks that do not rely on the prime hypothesis also run at machinery scale
    let machinery = a.common.machinery_mode
        || (!lemmas.iter().any(|l| l.needs_hypothesis()) && ConstructionParams::theorem(a.l, a.p, t1, t2).is_err());
    let params = build_params(a.l, a.p, t1, t2, machinery)?;
    let outcomes = verify_lemma_suite(&lemmas, &params, &suite_options(&a.common, a.random_pairs));
    let mut doc = ReportDocument::new("verify", params.echo());
    doc.passed = outcomes.iter().all(|o| o.passed || o.bound_exceeded);
    let incomplete = outcomes.iter().any(|o| o.bound_exceeded || o.error.is_some());
    doc.lemmas = Some(outcomes);
    Ok((doc, incomplete))
}

const CHARACTER_DATA: &str = "block-character-data";

fn blocks(a: &BlocksArgs) -> Result<(ReportDocument, Option<String>)> {
    let (t1, t2) = levels(&a.levels);
    let params = build_params(a.l, a.p, t1, t2, a.common.machinery_mode)?;
    let bounds = &a.common.bounds;
    let partition = block_partition_check(&params, bounds.centre_bound)?;
    let descriptors = all_blocks(&params)?;

    let compute = || -> mfrob_core::Result<Vec<CachedBlockData>> {
        let dec = CliffordDecomposition::build(&params, bounds.orbit_bound, bounds.table_bound)?;
        descriptors
            .iter()
            .map(|b| {
                let mut degrees: Vec<u64> =
                    dec.chars.iter().filter(|c| c.block == b.index()).map(|c| c.degree).collect();
                degrees.sort_unstable();
                Ok(CachedBlockData {
                    block: b.index(),
                    degrees,
                    decomposition: decomposition_from_clifford(b, &dec)?,
                })
            })
            .collect()
    };

    let mut note = None;
    let mut cache_note = None;
    let data = if a.no_characters {
        None
    } else {
        let outcome = match &a.common.cache_dir {
            Some(dir) => {
                let cache = Cache::new(dir);
                let key = Cache::key(CHARACTER_DATA, &params.echo());
                cache.get_or_compute(CHARACTER_DATA, &key, compute).map(|(v, hit)| {
                    cache_note = Some(if hit { "hit" } else { "miss" }.to_string());
                    v
                })
            }
            None => compute(),
        };
        match outcome {
            Ok(v) => Some(v),
            Err(e @ mfrob_core::Error::BoundExceeded { .. }) => {
                note = Some(format!("character data unavailable: {e}"));
                None
            }
            Err(e) => return Err(e.into()),
        }
    };

    let closed = params.block_rank_closed_form();
    let mut passed = partition.passed();
    let mut entries = Vec::new();
    for (i, b) in descriptors.iter().enumerate() {
        let mut e = BlockEntry {
            phi: b.index(),
            phi_order: b.phi.order(),
            idempotent: b.idempotent_terms(),
            rank: Quantity::closed_form(&closed),
            rank_computed: None,
            k: None,
            l: None,
            decomposition: None,
            cartan_check: None,
        };
        if let Some(d) = data.as_ref().map(|v| &v[i]) {
            let rank: u128 = d.degrees.iter().map(|&x| x as u128 * x as u128).sum();
            passed &= closed.to_string() == rank.to_string();
            let check = check_cartan(&d.decomposition, params.l);
            passed &= check.passed();
            e.rank_computed = Some(Quantity::computed(rank));
            e.k = Some(Quantity::computed(d.decomposition.num_ordinary()));
            e.l = Some(Quantity::computed(d.decomposition.num_brauer()));
            e.decomposition = Some(d.decomposition.clone());
            e.cartan_check = Some(check);
        }
        entries.push(e);
    }

    let mut doc = ReportDocument::new("blocks", params.echo());
    doc.passed = passed;
    doc.blocks = Some(BlocksSection {
        count: entries.len(),
        partition,
        blocks: entries,
        character_data_note: note,
    });
    Ok((doc, cache_note))
}
