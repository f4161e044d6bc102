use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use mfrob_core::blocks::{CartanReport, DecompositionData, PartitionReport};
use mfrob_core::exactnum::Cyclo;
use mfrob_core::groups::ParamsEcho;
use mfrob_core::morita::{LemmaOutcome, MfnResult};

use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperClosedForm,
    Computed,
}

/// An exact number tagged with where it came from; values are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quantity {
    pub value: String,
    pub provenance: Provenance,
}

impl Quantity {
    pub fn computed(v: impl ToString) -> Self {
        Quantity {
            value: v.to_string(),
            provenance: Provenance::Computed,
        }
    }

    pub fn closed_form(v: impl ToString) -> Self {
        Quantity {
            value: v.to_string(),
            provenance: Provenance::PaperClosedForm,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MfnSection {
    pub mfn: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<Quantity>,
    pub target_asserted: bool,
    pub result: MfnResult,
    /// `twist(reduce(e_theta), m) = reduce(e_(theta^(l^m)))` for `m = 1..=mfn`.
    pub twist_identity: Vec<bool>,
}

/// Per-block character data as cached between runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedBlockData {
    pub block: u32,
    pub degrees: Vec<u64>,
    pub decomposition: DecompositionData,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockEntry {
    pub phi: u32,
    pub phi_order: u32,
    /// `(r, c)` for the term `c lambda^r` of `e_phi`.
    pub idempotent: Vec<(u32, Cyclo)>,
    pub rank: Quantity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_computed: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Quantity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionData>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cartan_check: Option<CartanReport>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BlocksSection {
    pub count: usize,
    pub partition: PartitionReport,
    pub blocks: Vec<BlockEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character_data_note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timing {
    pub total_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub params: ParamsEcho,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mfn: Option<MfnSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<BlocksSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemmas: Option<Vec<LemmaOutcome>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl ReportDocument {
    pub fn new(command: &str, params: ParamsEcho) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            params,
            passed: true,
            mfn: None,
            blocks: None,
            lemmas: None,
            timing: None,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, std::io::Error> {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self)?;
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.render_text()),
            Format::Csv => self.render_csv(),
        }
    }

    fn params_line(&self) -> String {
        let p = &self.params;
        format!("l={} p={} t1={} t2={} a={} lambda={}", p.l, p.p, p.t1, p.t2, p.a, p.lambda)
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.command, self.params_line());
        if let Some(m) = &self.mfn {
            let r = &m.result;
            let _ = writeln!(s, "theta = phi_{} of order {}", r.theta, r.theta_order);
            let _ = writeln!(s, "mf_O = {} ({:?})", m.mfn.value, r.clause);
            let _ = writeln!(s, "orbit = {:?}", r.orbit);
            if let Some(t) = &m.target {
                let _ = writeln!(s, "target n = {} (asserted: {})", t.value, m.target_asserted);
            }
        }
        if let Some(b) = &self.blocks {
            let _ = writeln!(s, "{} blocks, partition check {}", b.count, pass(b.partition.passed()));
            for e in &b.blocks {
                let _ = write!(s, "  phi_{} (order {}): rank {}", e.phi, e.phi_order, e.rank.value);
                if let (Some(k), Some(l)) = (&e.k, &e.l) {
                    let _ = write!(s, ", k(B) = {}, l(B) = {}", k.value, l.value);
                }
                s.push('\n');
            }
            if let Some(n) = &b.character_data_note {
                let _ = writeln!(s, "  note: {n}");
            }
        }
        if let Some(ls) = &self.lemmas {
            for o in ls {
                let _ = writeln!(s, "{:<10} {} ({} checked)", o.lemma.name(), pass(o.passed), o.checked);
                if let Some(e) = &o.error {
                    let _ = writeln!(s, "  error: {e}");
                }
                for c in &o.counterexamples {
                    let _ = writeln!(s, "  counterexample: {c}");
                }
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(s, "time {} ms", t.total_ms);
        }
        let _ = writeln!(s, "{}", pass(self.passed));
        s
    }

    /// Matrices row-major with integer cells; each is preceded by a `matrix` header record.
    fn render_csv(&self) -> Result<String, std::io::Error> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let p = &self.params;
        let io = |e: csv::Error| std::io::Error::other(e);
        if let Some(m) = &self.mfn {
            let r = &m.result;
            w.write_record(["l", "p", "t1", "t2", "theta", "theta_order", "mfn", "clause", "orbit"])
                .map_err(io)?;
            let orbit = r.orbit.iter().map(u32::to_string).collect::<Vec<_>>().join(";");
            w.write_record([
                p.l.to_string(),
                p.p.to_string(),
                p.t1.to_string(),
                p.t2.to_string(),
                r.theta.to_string(),
                r.theta_order.to_string(),
                r.mfn.to_string(),
                format!("{:?}", r.clause),
                orbit,
            ])
            .map_err(io)?;
        }
        if let Some(b) = &self.blocks {
            w.write_record(["phi", "phi_order", "rank", "rank_computed", "k", "l"]).map_err(io)?;
            let opt = |q: &Option<Quantity>| q.as_ref().map_or(String::new(), |q| q.value.clone());
            for e in &b.blocks {
                w.write_record([
                    e.phi.to_string(),
                    e.phi_order.to_string(),
                    e.rank.value.clone(),
                    opt(&e.rank_computed),
                    opt(&e.k),
                    opt(&e.l),
                ])
                .map_err(io)?;
            }
            for e in &b.blocks {
                if let Some(d) = &e.decomposition {
                    for (name, m) in [("decomposition", &d.matrix), ("cartan", &d.cartan)] {
                        let cols = m.first().map_or(0, Vec::len);
                        w.write_record(["matrix".into(), name.into(), e.phi.to_string(), m.len().to_string(), cols.to_string()])
                            .map_err(io)?;
                        for row in m {
                            w.write_record(row.iter().map(i64::to_string)).map_err(io)?;
                        }
                    }
                }
            }
        }
        if let Some(ls) = &self.lemmas {
            w.write_record(["lemma", "passed", "checked", "error", "counterexamples"]).map_err(io)?;
            for o in ls {
                w.write_record([
                    o.lemma.name().to_string(),
                    o.passed.to_string(),
                    o.checked.to_string(),
                    o.error.clone().unwrap_or_default(),
                    o.counterexamples.join(" | "),
                ])
                .map_err(io)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}
