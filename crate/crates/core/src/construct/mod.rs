//! The polynomial constructor.
//!
//! [`find_adhp`] dispatches on the shape of the input: exceptional
//! structures are reported with a witness, tournaments go to the exhaustive
//! oracle (or to an explicit splice when one vertex deletion leaves a
//! rotational exception), `k = n - 1` goes through the arc-deletion
//! reduction and everything else through the vertex-deletion reduction.
//!
//! Every branch is guarded. When a branch finds its precondition false the
//! solver does not guess: it returns a [`ProofGapDiagnostic`] naming the
//! branch and the instance.

mod case1;
mod case2;
pub mod select;
mod splice;
pub mod trace;

use serde::Serialize;
use thiserror::Error;

use crate::exceptions::{is_exceptional, ExceptionalWitness};
use crate::format::emit_instance;
use crate::hypertournament::{ArcId, Hypertournament, Vertex};
use crate::oracle::{find_adhp_exhaustive, SearchBudget, SearchOutcome};
use crate::path::{validate_adp, AntidirectedPath};

pub use select::{select_distinct_arcs, Selection};
pub use trace::{CaseTrace, Fact, TraceStep};

/// Largest tournament handed to the exhaustive search.
pub const TOURNAMENT_CAP: usize = 12;

/// A constructor branch whose precondition failed at runtime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Error)]
#[error("no branch applies at {branch}: {precondition}")]
pub struct ProofGapDiagnostic {
    pub branch: String,
    /// The instance in the text file format.
    pub instance: String,
    pub precondition: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum UnsupportedInput {
    #[error("arity k={k} is outside 2..n for n={n}")]
    ArityOutOfRange { n: usize, k: usize },
    #[error("tournament on {n} vertices exceeds the search cap of {cap}")]
    TournamentTooLarge { n: usize, cap: usize },
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Path { path: AntidirectedPath, trace: CaseTrace },
    Exceptional(ExceptionalWitness),
    ProofGap(ProofGapDiagnostic),
}

impl Outcome {
    pub fn path(&self) -> Option<&AntidirectedPath> {
        match self {
            Outcome::Path { path, .. } => Some(path),
            _ => None,
        }
    }

    pub fn is_gap(&self) -> bool {
        matches!(self, Outcome::ProofGap(_))
    }
}

/// Find an antidirected hamiltonian path, or show there is none.
///
/// ```
/// use adhp::{find_adhp, ExceptionalKind, Outcome};
///
/// let h4 = ExceptionalKind::H4.canonical();
/// assert!(matches!(find_adhp(&h4).unwrap(), Outcome::Exceptional(w) if w.kind == ExceptionalKind::H4));
///
/// let h = adhp::random_hypertournament(9, 4, 7).unwrap();
/// let Outcome::Path { path, .. } = find_adhp(&h).unwrap() else { panic!() };
/// assert!(path.is_hamiltonian(&h));
/// ```
pub fn find_adhp(h: &Hypertournament) -> Result<Outcome, UnsupportedInput> {
    let (n, k) = (h.n(), h.k());
    if k < 2 || k >= n {
        return Err(UnsupportedInput::ArityOutOfRange { n, k });
    }
    if let Some(w) = is_exceptional(h) {
        return Ok(Outcome::Exceptional(w));
    }
    let solved = if k == 2 {
        if n > TOURNAMENT_CAP {
            return Err(UnsupportedInput::TournamentTooLarge { n, cap: TOURNAMENT_CAP });
        }
        splice::tournament(h).unwrap_or_else(|| tournament_by_search(h))
    } else if k + 1 == n {
        case1::solve(h)
    } else {
        case2::solve(h)
    };
    Ok(match solved.and_then(|s| certify(h, s)) {
        Ok((path, trace)) => Outcome::Path { path, trace },
        Err(gap) => Outcome::ProofGap(gap.diagnose(h)),
    })
}

/// The arc-deletion induction for `k = n - 1 >= 3` on a non-exceptional
/// input.
pub fn case1_solve(h: &Hypertournament) -> Result<(AntidirectedPath, CaseTrace), ProofGapDiagnostic> {
    if h.k() < 3 || h.k() + 1 != h.n() {
        return Err(Gap::new("Case1", "needs k = n-1 >= 3").diagnose(h));
    }
    if is_exceptional(h).is_some() {
        return Err(Gap::new("Case1", "input is exceptional").diagnose(h));
    }
    case1::solve(h).and_then(|s| certify(h, s)).map_err(|g| g.diagnose(h))
}

/// The vertex-deletion induction for `3 <= k < n - 1`.
pub fn case2_solve(h: &Hypertournament) -> Result<(AntidirectedPath, CaseTrace), ProofGapDiagnostic> {
    if h.k() < 3 || h.k() + 1 >= h.n() {
        return Err(Gap::new("Case2", "needs 3 <= k < n-1").diagnose(h));
    }
    case2::solve(h).and_then(|s| certify(h, s)).map_err(|g| g.diagnose(h))
}

/// Splice `new_vertex` into an antidirected path covering every other
/// vertex. `child_path` is written in the labels and arc ids of `h` and must
/// use only arcs avoiding `new_vertex`.
pub fn case2_extend(
    h: &Hypertournament,
    child_path: &AntidirectedPath,
    new_vertex: Vertex,
) -> Result<(AntidirectedPath, CaseTrace), ProofGapDiagnostic> {
    case2::extend_anywhere(h, child_path, new_vertex).map_err(|g| g.diagnose(h))
}

pub(crate) type Solved = (AntidirectedPath, CaseTrace);

/// A failed precondition, before the instance is attached.
#[derive(Clone, Debug)]
pub(crate) struct Gap {
    pub(crate) branch: String,
    pub(crate) precondition: String,
}

impl Gap {
    pub(crate) fn new(branch: impl Into<String>, precondition: impl Into<String>) -> Self {
        Self { branch: branch.into(), precondition: precondition.into() }
    }

    fn diagnose(self, h: &Hypertournament) -> ProofGapDiagnostic {
        ProofGapDiagnostic { branch: self.branch, instance: emit_instance(h), precondition: self.precondition }
    }
}

/// Records the precedence facts a branch consults. With `mirrored` set the
/// queries are read in the reversed hypertournament but the facts are kept
/// in the original orientation.
pub(crate) struct Probe<'a> {
    h: &'a Hypertournament,
    mirrored: bool,
    facts: Vec<Fact>,
}

impl<'a> Probe<'a> {
    pub(crate) fn new(h: &'a Hypertournament) -> Self {
        Self::oriented(h, false)
    }

    pub(crate) fn oriented(h: &'a Hypertournament, mirrored: bool) -> Self {
        Self { h, mirrored, facts: Vec::new() }
    }

    pub(crate) fn contains(&self, arc: ArcId, v: Vertex) -> bool {
        self.h.arc(arc).contains(&v)
    }

    /// Whether `x` precedes `y` in `arc`. Whichever order holds is recorded;
    /// an arc missing either vertex answers `false` and records nothing.
    pub(crate) fn before(&mut self, arc: ArcId, x: Vertex, y: Vertex) -> bool {
        let Some(raw) = self.h.arc_precedes(arc, x, y) else { return false };
        let (before, after) = if raw { (x, y) } else { (y, x) };
        self.facts.push(Fact { arc, before, after });
        raw != self.mirrored
    }

    pub(crate) fn into_facts(self) -> Vec<Fact> {
        self.facts
    }
}

fn tournament_by_search(h: &Hypertournament) -> Result<Solved, Gap> {
    let result = find_adhp_exhaustive(h, SearchBudget::unlimited());
    match result.outcome {
        SearchOutcome::Found(path) => {
            let mut trace = CaseTrace::default();
            trace.push("Tournament/search", Vec::new());
            Ok((path, trace))
        }
        _ => Err(Gap::new("Tournament/search", "a non-exceptional tournament has an antidirected hamiltonian path")),
    }
}

/// Final check shared by every entry point: the path must be hamiltonian
/// and antidirected in `h`, and every fact the trace leaned on must hold.
/// The path's own arcs are cited in a closing step.
fn certify(h: &Hypertournament, (path, mut trace): Solved) -> Result<Solved, Gap> {
    let path = validate_adp(h, path.vertices(), path.arcs())
        .map_err(|v| Gap::new("Path", format!("constructed sequence is not antidirected: {v}")))?;
    if !path.is_hamiltonian(h) {
        return Err(Gap::new("Path", "constructed path misses a vertex"));
    }
    if let Some(f) = trace.first_false_fact(h) {
        return Err(Gap::new(
            "Path",
            format!("recorded fact {} before {} in arc {} is false", f.before, f.after, f.arc),
        ));
    }
    let cited = path
        .vertices()
        .windows(2)
        .zip(path.arcs())
        .map(|(pair, &arc)| {
            let (x, y) = (pair[0], pair[1]);
            if h.arc_precedes(arc, x, y) == Some(true) {
                Fact { arc, before: x, after: y }
            } else {
                Fact { arc, before: y, after: x }
            }
        })
        .collect();
    trace.push("Path", cited);
    Ok((path, trace))
}
