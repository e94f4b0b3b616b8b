//! Verification campaigns: run the constructor and/or the oracle over a
//! full enumeration or a seeded sample and stream one NDJSON record per
//! instance, followed by a summary record.
//!
//! Instances are solved in parallel batches and written in index order, so
//! the stream is identical between runs apart from `elapsed_us`.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::{find_adhp, Outcome};
use crate::exceptions::is_exceptional;
use crate::hypertournament::Hypertournament;
use crate::oracle::{
    find_adhp_exhaustive, instance, instance_count, random_hypertournament, EnumerationCap, EnumerationReport,
    OracleError, SearchBudget, SearchOutcome, Visit,
};
use crate::rng::SplitMix64;

const BATCH: u64 = 4096;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Enumerate,
    /// Instance `i` is generated from output `i` of the stream seeded by
    /// `seed`.
    Sample {
        seed: u64,
        count: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Construct,
    Oracle,
    Both,
}

impl Method {
    fn construct(self) -> bool {
        self != Method::Oracle
    }

    fn oracle(self) -> bool {
        self != Method::Construct
    }
}

#[derive(Copy, Clone, Debug)]
pub struct CampaignConfig {
    pub mode: Mode,
    pub n: usize,
    pub k: usize,
    pub method: Method,
    pub cap: EnumerationCap,
    pub budget: SearchBudget,
}

impl CampaignConfig {
    pub fn enumerate(n: usize, k: usize, method: Method) -> Self {
        Self { mode: Mode::Enumerate, n, k, method, cap: EnumerationCap::FromEnv, budget: SearchBudget::default_for(n) }
    }

    pub fn sample(n: usize, k: usize, seed: u64, count: u64, method: Method) -> Self {
        Self { mode: Mode::Sample { seed, count }, ..Self::enumerate(n, k, method) }
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One instance's outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub index: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub exceptional: Option<String>,
    /// `found`, `none` or `budget`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<&'static str>,
    /// `path`, `exceptional`, `gap`, `invalid` or `unsupported`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constructor: Option<&'static str>,
    /// Every verdict present agrees with the exceptional-structure test.
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selection_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<String>,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub summary: bool,
    pub total: u64,
    pub exceptional: u64,
    pub with_path: u64,
    pub disagreements: u64,
    pub gaps: u64,
    pub undecided: u64,
    pub unsupported: u64,
    #[serde(skip)]
    pub report: EnumerationReport,
}

impl Summary {
    /// The verdict used for the exit status.
    pub fn ok(&self) -> bool {
        self.disagreements == 0 && self.gaps == 0
    }

    fn add(&mut self, r: &Record) {
        self.total += 1;
        self.exceptional += u64::from(r.exceptional.is_some());
        let has_path = r.constructor == Some("path") || r.oracle == Some("found");
        self.with_path += u64::from(has_path);
        self.disagreements += u64::from(!r.agree);
        self.gaps += u64::from(r.constructor == Some("gap"));
        self.undecided += u64::from(r.oracle == Some("budget"));
        self.unsupported += u64::from(r.constructor == Some("unsupported"));
        self.report.record(r.index, Visit { has_adhp: has_path, agreement: r.agree });
    }
}

/// Solve one instance with the configured methods.
pub fn evaluate(h: &Hypertournament, method: Method, budget: SearchBudget, index: u64, seed: Option<u64>) -> Record {
    let started = Instant::now();
    let exceptional = is_exceptional(h).map(|w| w.kind.to_string());
    let expect_path = exceptional.is_none();
    let mut agree = true;
    let mut record = Record {
        index,
        seed,
        exceptional,
        oracle: None,
        constructor: None,
        agree: true,
        oracle_nodes: None,
        selection_nodes: None,
        gap: None,
        elapsed_us: 0,
    };
    if method.oracle() {
        let r = find_adhp_exhaustive(h, budget);
        record.oracle_nodes = Some(r.nodes);
        record.oracle = Some(match r.outcome {
            SearchOutcome::Found(p) => {
                agree &= expect_path && p.is_hamiltonian(h);
                "found"
            }
            SearchOutcome::NoPathExists => {
                agree &= !expect_path;
                "none"
            }
            SearchOutcome::BudgetExhausted => "budget",
        });
    }
    if method.construct() {
        record.constructor = Some(match find_adhp(h) {
            Ok(Outcome::Path { path, trace }) => {
                record.selection_nodes = Some(trace.selection_nodes);
                if path.is_hamiltonian(h) {
                    agree &= expect_path;
                    "path"
                } else {
                    agree = false;
                    "invalid"
                }
            }
            Ok(Outcome::Exceptional(_)) => {
                agree &= !expect_path;
                "exceptional"
            }
            Ok(Outcome::ProofGap(d)) => {
                record.gap = Some(d.branch);
                "gap"
            }
            Err(_) => "unsupported",
        });
    }
    record.agree = agree;
    record.elapsed_us = started.elapsed().as_micros() as u64;
    record
}

/// Run a campaign, writing NDJSON to `out`.
pub fn run_campaign(cfg: &CampaignConfig, out: &mut impl Write) -> Result<Summary, CampaignError> {
    let total = match cfg.mode {
        Mode::Enumerate => {
            let cap = cfg.cap.resolve();
            let count = instance_count(cfg.n, cfg.k).unwrap_or(u128::MAX);
            if count > cap {
                return Err(OracleError::CapExceeded { what: "full enumeration", required: count, cap }.into());
            }
            count as u64
        }
        Mode::Sample { count, .. } => count,
    };
    // surface arity errors before any output
    match cfg.mode {
        Mode::Enumerate => instance(cfg.n, cfg.k, 0).map(drop)?,
        Mode::Sample { .. } => random_hypertournament(cfg.n, cfg.k, 0).map(drop)?,
    }
    let mut summary = Summary { summary: true, ..Summary::default() };
    let mut start = 0;
    while start < total {
        let end = (start + BATCH).min(total);
        let records: Vec<Record> = (start..end)
            .into_par_iter()
            .map(|i| {
                let (h, seed) = match cfg.mode {
                    Mode::Enumerate => (instance(cfg.n, cfg.k, i as u128).expect("checked arity"), None),
                    Mode::Sample { seed, .. } => {
                        let s = SplitMix64::output_at(seed, i);
                        (random_hypertournament(cfg.n, cfg.k, s).expect("checked arity"), Some(s))
                    }
                };
                evaluate(&h, cfg.method, cfg.budget, i, seed)
            })
            .collect();
        for r in &records {
            serde_json::to_writer(&mut *out, r).map_err(io::Error::from)?;
            out.write_all(b"\n")?;
            summary.add(r);
        }
        start = end;
    }
    serde_json::to_writer(&mut *out, &summary).map_err(io::Error::from)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_vertex_tournaments() {
        let mut buf = Vec::new();
        let s = run_campaign(&CampaignConfig::enumerate(3, 2, Method::Both), &mut buf).unwrap();
        assert_eq!((s.total, s.exceptional, s.with_path), (8, 2, 6));
        assert!(s.ok());
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 9);
        assert!(text.lines().last().unwrap().contains("\"summary\":true"));
    }

    #[test]
    fn cap_is_enforced() {
        let mut cfg = CampaignConfig::enumerate(5, 4, Method::Construct);
        cfg.cap = EnumerationCap::Limit(10);
        assert!(matches!(
            run_campaign(&cfg, &mut Vec::new()),
            Err(CampaignError::Oracle(OracleError::CapExceeded { .. }))
        ));
    }
}
