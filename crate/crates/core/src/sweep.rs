//! Exhaustive sweeps of the line theorem over generated bisplit graphs.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::DEFAULT_CANON_BOUND;
use crate::enumerate::gen_bisplit_graphs;
use crate::error::{Error, Result};
use crate::families::Status;
use crate::graph::Graph;
use crate::lines::{has_dbe_property, DbeVerdict};
use crate::proof::{verify_proof_on_graph, ClosedFormTally, ProofReport};

pub const DEFAULT_SWEEP_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    TheoremOnly,
    FullProof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: usize,
    pub mode: SweepMode,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    /// Where to write the JSON report, if anywhere.
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: DEFAULT_SWEEP_MAX_N,
            mode: SweepMode::TheoremOnly,
            workers: 0,
            output: None,
        }
    }
}

/// Pass / vacuous / fail counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusTally {
    pub pass: usize,
    pub vacuous: usize,
    pub fail: usize,
}

impl StatusTally {
    pub fn record(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Fail => self.fail += 1,
        }
    }

    fn add(&mut self, o: &StatusTally) {
        self.pass += o.pass;
        self.vacuous += o.vacuous;
        self.fail += o.fail;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeStats {
    pub n: usize,
    pub graphs: usize,
    pub universal: usize,
    pub enough_lines: usize,
    pub fails: usize,
    /// Graphs on which the replay flagged at least one failed claim.
    pub mismatched: usize,
    pub routes: BTreeMap<String, usize>,
    pub cases: BTreeMap<String, usize>,
    /// Per-claim outcomes keyed by check id, `fact<k>` or `table<k>`.
    pub claims: BTreeMap<String, StatusTally>,
    pub closed_forms: ClosedFormTally,
}

impl SizeStats {
    fn absorb(&mut self, oracle: DbeVerdict, proof: Option<&ProofReport>) {
        self.graphs += 1;
        match oracle {
            DbeVerdict::Universal { .. } => self.universal += 1,
            DbeVerdict::EnoughLines { .. } => self.enough_lines += 1,
            DbeVerdict::Fails { .. } => self.fails += 1,
        }
        let Some(p) = proof else { return };
        if p.is_mismatch() {
            self.mismatched += 1;
        }
        *self.routes.entry(p.route.to_string()).or_default() += 1;
        if let Some(case) = p.case {
            *self.cases.entry(case.to_string()).or_default() += 1;
        }
        for c in &p.checks {
            self.claims.entry(c.id.clone()).or_default().record(c.status);
        }
        for f in &p.facts {
            self.claims.entry(format!("fact{}", f.id)).or_default().record(f.status);
        }
        for t in &p.table_reports {
            self.claims.entry(format!("table{}", t.table)).or_default().record(t.status);
        }
        self.closed_forms.add(&p.closed_forms);
    }

    /// Claim tallies summed over every claim id.
    pub fn claim_totals(&self) -> StatusTally {
        let mut t = StatusTally::default();
        for v in self.claims.values() {
            t.add(v);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub graph: String,
    pub messages: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_n: usize,
    pub mode: SweepMode,
    pub sizes: Vec<SizeStats>,
    /// graph6 strings of graphs with neither a universal line nor n lines.
    pub counterexamples: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn total_graphs(&self) -> usize {
        self.sizes.iter().map(|s| s.graphs).sum()
    }

    pub fn ok(&self) -> bool {
        self.counterexamples.is_empty() && self.mismatches.is_empty()
    }

    /// Per-claim tallies over all sizes.
    pub fn claims(&self) -> BTreeMap<String, StatusTally> {
        let mut out: BTreeMap<String, StatusTally> = BTreeMap::new();
        for s in &self.sizes {
            for (k, v) in &s.claims {
                out.entry(k.clone()).or_default().add(v);
            }
        }
        out
    }

    pub fn closed_forms(&self) -> ClosedFormTally {
        let mut t = ClosedFormTally::default();
        for s in &self.sizes {
            t.add(&s.closed_forms);
        }
        t
    }
}

struct Outcome {
    oracle: DbeVerdict,
    proof: Option<ProofReport>,
}

fn check_one(g: &Graph, mode: SweepMode) -> Result<Outcome> {
    Ok(match mode {
        SweepMode::TheoremOnly => Outcome {
            oracle: has_dbe_property(g)?,
            proof: None,
        },
        SweepMode::FullProof => {
            let p = verify_proof_on_graph(g)?;
            Outcome {
                oracle: p.oracle_verdict,
                proof: Some(p),
            }
        }
    })
}

/// Runs the theorem (and optionally the full replay) on every connected
/// bisplit graph with `2..=max_n` vertices. Results are gathered in
/// generation order, so the report does not depend on `workers`.
pub fn verify_theorem(cfg: &SweepConfig) -> Result<SweepReport> {
    if !(2..=DEFAULT_CANON_BOUND).contains(&cfg.max_n) {
        return Err(Error::TooLarge {
            n: cfg.max_n,
            max: DEFAULT_CANON_BOUND,
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::InvalidGraph(format!("worker pool: {e}")))?;
    let mut report = SweepReport {
        max_n: cfg.max_n,
        mode: cfg.mode,
        sizes: Vec::new(),
        counterexamples: Vec::new(),
        mismatches: Vec::new(),
    };
    for n in 2..=cfg.max_n {
        let graphs = gen_bisplit_graphs(n)?;
        let outcomes: Vec<Result<Outcome>> =
            pool.install(|| graphs.par_iter().map(|g| check_one(g, cfg.mode)).collect());
        let mut stats = SizeStats {
            n,
            ..SizeStats::default()
        };
        for (g, outcome) in graphs.iter().zip(outcomes) {
            let outcome = outcome?;
            stats.absorb(outcome.oracle, outcome.proof.as_ref());
            if !outcome.oracle.holds() {
                report.counterexamples.push(g.to_graph6());
            }
            if let Some(p) = outcome.proof.filter(ProofReport::is_mismatch) {
                report.mismatches.push(Mismatch {
                    graph: p.graph,
                    messages: p.mismatches,
                });
            }
        }
        report.sizes.push(stats);
    }
    if let Some(path) = &cfg.output {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        std::fs::write(path, json)
            .map_err(|e| Error::InvalidGraph(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(report)
}

/// graph6 lines of every generated bisplit graph on `n` vertices.
pub fn graph6_dump(n: usize) -> Result<String> {
    let mut out = String::new();
    for g in gen_bisplit_graphs(n)? {
        out.push_str(&g.to_graph6());
        out.push('\n');
    }
    Ok(out)
}
