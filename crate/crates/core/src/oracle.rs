//! Ground truth by brute force.
//!
//! [`find_adhp_exhaustive`] searches every vertex/arc sequence that could
//! form an antidirected hamiltonian path. [`enumerate_all`] walks every
//! labeled k-hypertournament on `1..=n`, and [`random_hypertournament`] draws
//! one reproducibly from a seed.
//!
//! Enumeration order: subsets are taken in lexicographic order and each
//! subset's `k!` arrangements are ranked lexicographically (rank 0 is the
//! ascending tuple). Instance `i` uses arrangement `(i / (k!)^j) mod k!` for
//! subset `j`, so subset 0 is the least significant digit.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{binomial, factorial, subsets, unrank_permutation};
use crate::hypertournament::{ArcId, Hypertournament, Vertex, MAX_ARCS};
use crate::path::{validate_adp, AntidirectedPath, Step};
use crate::rng::SplitMix64;

/// Default number of instances a full enumeration may visit.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 21;

/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_VAR: &str = "ADHP_ENUM_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} needs {required} but the cap is {cap}")]
    CapExceeded { what: &'static str, required: u128, cap: u128 },
    #[error("arity k={k} is not allowed on n={n} vertices")]
    InvalidArity { n: usize, k: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EnumerationCap {
    /// [`DEFAULT_ENUM_CAP`], or the value of `ADHP_ENUM_CAP` when set.
    FromEnv,
    Limit(u128),
    Unlimited,
}

impl EnumerationCap {
    pub fn resolve(self) -> u128 {
        match self {
            Self::FromEnv => {
                std::env::var(ENUM_CAP_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_ENUM_CAP)
            }
            Self::Limit(c) => c,
            Self::Unlimited => u128::MAX,
        }
    }
}

/// Limits on a single exhaustive search.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        Self { node_limit: Some(limit), time_limit: None }
    }

    /// Unlimited up to seven vertices, otherwise ten million nodes.
    pub fn default_for(n: usize) -> Self {
        if n <= 7 {
            Self::unlimited()
        } else {
            Self::nodes(10_000_000)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(AntidirectedPath),
    NoPathExists,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Search-tree nodes expanded.
    pub nodes: u64,
}

struct Search<'a> {
    h: &'a Hypertournament,
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    exhausted: bool,
    visited: Vec<bool>,
    used: Vec<bool>,
    vertices: Vec<Vertex>,
    arcs: Vec<ArcId>,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        if self.budget.node_limit.is_some_and(|l| self.nodes >= l) {
            self.exhausted = true;
        } else if let Some(limit) = self.budget.time_limit {
            if self.nodes.is_multiple_of(1024) && self.started.elapsed() >= limit {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    // extend from the last vertex with a step of direction `step`
    fn extend(&mut self, step: Step) -> bool {
        if self.vertices.len() == self.h.n() {
            return true;
        }
        let u = *self.vertices.last().expect("nonempty");
        for w in self.h.vertices() {
            if self.visited[w.0 as usize] {
                continue;
            }
            let (from, to) = match step {
                Step::Forward => (u, w),
                Step::Backward => (w, u),
            };
            let candidates: Vec<ArcId> = self.h.preceding_iter(from, to).filter(|a| !self.used[a.0]).collect();
            for a in candidates {
                self.nodes += 1;
                if self.out_of_budget() {
                    return false;
                }
                self.visited[w.0 as usize] = true;
                self.used[a.0] = true;
                self.vertices.push(w);
                self.arcs.push(a);
                if self.extend(step.flip()) {
                    return true;
                }
                self.vertices.pop();
                self.arcs.pop();
                self.used[a.0] = false;
                self.visited[w.0 as usize] = false;
                if self.exhausted {
                    return false;
                }
            }
        }
        false
    }
}

/// Depth-first search for an antidirected hamiltonian path. Start vertices
/// are tried in ascending order, the first step forward before backward,
/// then next vertices and arcs in ascending order.
pub fn find_adhp_exhaustive(h: &Hypertournament, budget: SearchBudget) -> SearchResult {
    let mut s = Search {
        h,
        budget,
        started: Instant::now(),
        nodes: 0,
        exhausted: false,
        visited: vec![false; h.n() + 1],
        used: vec![false; h.arc_count()],
        vertices: Vec::with_capacity(h.n()),
        arcs: Vec::with_capacity(h.n()),
    };
    for start in h.vertices() {
        for first in [Step::Forward, Step::Backward] {
            s.visited[start.0 as usize] = true;
            s.vertices.push(start);
            if s.extend(first) {
                let path = validate_adp(h, &s.vertices, &s.arcs).expect("search only builds valid paths");
                return SearchResult { outcome: SearchOutcome::Found(path), nodes: s.nodes };
            }
            s.vertices.clear();
            s.visited[start.0 as usize] = false;
            if s.exhausted {
                return SearchResult { outcome: SearchOutcome::BudgetExhausted, nodes: s.nodes };
            }
        }
    }
    SearchResult { outcome: SearchOutcome::NoPathExists, nodes: s.nodes }
}

/// Number of labeled k-hypertournaments on `n` vertices, `(k!)^C(n,k)`,
/// or `None` if it does not fit in a `u128`.
pub fn instance_count(n: usize, k: usize) -> Option<u128> {
    let arcs = u32::try_from(binomial(n, k)).ok()?;
    factorial(k).checked_pow(arcs)
}

fn check_arity(n: usize, k: usize) -> Result<(), OracleError> {
    if k < 2 || k > n {
        return Err(OracleError::InvalidArity { n, k });
    }
    Ok(())
}

/// The instance at position `index` of the enumeration order.
pub fn instance(n: usize, k: usize, index: u128) -> Result<Hypertournament, OracleError> {
    check_arity(n, k)?;
    let radix = factorial(k);
    let mut rest = index;
    let arcs: Vec<Vec<u32>> = subsets(n, k)
        .map(|s| {
            let digit = rest % radix;
            rest /= radix;
            unrank_permutation(&s, digit)
        })
        .collect();
    Ok(Hypertournament::new(n, k, arcs).expect("enumeration builds valid instances"))
}

/// Call `visit` on every labeled k-hypertournament on `1..=n`, in
/// enumeration order. Returns the number visited.
pub fn for_each_instance(
    n: usize,
    k: usize,
    cap: EnumerationCap,
    mut visit: impl FnMut(u128, &Hypertournament),
) -> Result<u128, OracleError> {
    check_arity(n, k)?;
    let cap = cap.resolve();
    let total = instance_count(n, k).unwrap_or(u128::MAX);
    if total > cap {
        return Err(OracleError::CapExceeded { what: "full enumeration", required: total, cap });
    }
    let subs: Vec<Vec<u32>> = subsets(n, k).collect();
    let arrangements: Vec<Vec<Vec<u32>>> =
        subs.iter().map(|s| (0..factorial(k)).map(|r| unrank_permutation(s, r)).collect()).collect();
    let radix = factorial(k) as usize;
    let mut digits = vec![0usize; subs.len()];
    for index in 0..total {
        let arcs = digits.iter().zip(&arrangements).map(|(&d, arr)| arr[d].as_slice());
        let h = Hypertournament::new(n, k, arcs).expect("enumeration builds valid instances");
        visit(index, &h);
        for d in digits.iter_mut() {
            *d += 1;
            if *d < radix {
                break;
            }
            *d = 0;
        }
    }
    Ok(total)
}

/// What a visitor learned about one enumerated instance.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Visit {
    pub has_adhp: bool,
    /// Whether the methods compared on this instance agreed.
    pub agreement: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub total: u64,
    pub with_adhp: u64,
    /// Indices of instances without an antidirected hamiltonian path.
    pub failures: Vec<u64>,
    pub agreement: Vec<bool>,
}

impl EnumerationReport {
    pub fn record(&mut self, index: u64, visit: Visit) {
        self.total += 1;
        if visit.has_adhp {
            self.with_adhp += 1;
        } else {
            self.failures.push(index);
        }
        self.agreement.push(visit.agreement);
    }

    pub fn disagreements(&self) -> usize {
        self.agreement.iter().filter(|&&a| !a).count()
    }
}

/// Visit every labeled instance and aggregate the outcomes.
pub fn enumerate_all(
    n: usize,
    k: usize,
    cap: EnumerationCap,
    mut visitor: impl FnMut(u128, &Hypertournament) -> Visit,
) -> Result<EnumerationReport, OracleError> {
    let mut report = EnumerationReport::default();
    for_each_instance(n, k, cap, |i, h| {
        let v = visitor(i, h);
        report.record(i as u64, v);
    })?;
    Ok(report)
}

/// A hypertournament drawn from `seed`: for the subset of lexicographic rank
/// `r`, a SplitMix64 stream seeded with output `r` of the stream seeded by
/// `seed` picks one of the `k!` arrangements uniformly. For `k > 20` the
/// same stream drives a Fisher-Yates shuffle instead.
pub fn random_hypertournament(n: usize, k: usize, seed: u64) -> Result<Hypertournament, OracleError> {
    check_arity(n, k)?;
    let arcs = binomial(n, k);
    if arcs > MAX_ARCS {
        return Err(OracleError::CapExceeded { what: "arc storage", required: arcs, cap: MAX_ARCS });
    }
    // past 20! the rank no longer fits a draw, so shuffle instead
    let radix = u64::try_from(factorial(k)).ok();
    let tuples = subsets(n, k).enumerate().map(|(r, s)| {
        let mut g = SplitMix64::new(SplitMix64::output_at(seed, r as u64));
        match radix {
            Some(radix) => unrank_permutation(&s, g.below(radix) as u128),
            None => {
                let mut t = s;
                for i in (1..t.len()).rev() {
                    t.swap(i, g.below(i as u64 + 1) as usize);
                }
                t
            }
        }
    });
    Ok(Hypertournament::new(n, k, tuples).expect("one arrangement per subset"))
}
