//! The k-hypertournament data model.
//!
//! A k-hypertournament on vertices `1..=n` holds exactly one ordered k-tuple
//! (an *arc*) for every k-subset of its vertices. Within an arc, earlier
//! entries *precede* later ones. Arcs are addressed by dense [`ArcId`]s that
//! follow the order in which they were supplied.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{binomial, subset_rank};

/// Upper bound on the number of arcs a [`Hypertournament`] may store.
pub const MAX_ARCS: u128 = 1 << 23;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn get(self) -> u32 {
        self.0
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub usize);

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("arity k={k} is not allowed on n={n} vertices (need 2 <= k <= n)")]
    InvalidArity { n: usize, k: usize },
    #[error("expected {expected} arcs, found {found}")]
    WrongArcCount { expected: u128, found: usize },
    #[error("arcs {first} and {second} cover the same vertex subset")]
    DuplicateSubset { first: usize, second: usize },
    #[error("arc {index} is malformed: {reason}")]
    MalformedArc { index: usize, reason: String },
    #[error("C({n},{k}) arcs exceed the storage cap")]
    TooLarge { n: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("vertex {0} was given twice")]
    SameVertex(Vertex),
    #[error("vertex {0} does not occur in the arc")]
    VertexNotInArc(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("deleting a vertex needs k < n-1 (n={n}, k={k})")]
    ArityTooLarge { n: usize, k: usize },
    #[error("vertex {0} is not in the hypertournament")]
    NoSuchVertex(Vertex),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Whether `x` comes before `y` in `arc`.
pub fn precedes(arc: &[Vertex], x: Vertex, y: Vertex) -> Result<bool, QueryError> {
    if x == y {
        return Err(QueryError::SameVertex(x));
    }
    let px = arc.iter().position(|&v| v == x).ok_or(QueryError::VertexNotInArc(x))?;
    let py = arc.iter().position(|&v| v == y).ok_or(QueryError::VertexNotInArc(y))?;
    Ok(px < py)
}

/// Index of the unordered pair `{x, y}` among all pairs of `1..=n`.
fn pair_slot(x: Vertex, y: Vertex) -> usize {
    let (lo, hi) = if x < y { (x.idx(), y.idx()) } else { (y.idx(), x.idx()) };
    // pairs with larger element hi come after all pairs with larger element < hi
    (hi - 1) * (hi - 2) / 2 + (lo - 1)
}

#[derive(Clone)]
pub struct Hypertournament {
    n: usize,
    k: usize,
    entries: Vec<Vertex>,
    // arc ids containing each unordered pair, ascending
    pairs: Vec<Vec<u32>>,
}

impl fmt::Debug for Hypertournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypertournament")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("arcs", &self.arcs().map(|a| a.iter().map(|v| v.0).collect::<Vec<_>>()).collect::<Vec<_>>())
            .finish()
    }
}

impl PartialEq for Hypertournament {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.entries == other.entries
    }
}

impl Eq for Hypertournament {}

impl Hypertournament {
    /// Validate and build a hypertournament. Arc ids follow input order.
    pub fn new<A, T>(n: usize, k: usize, arcs: A) -> Result<Self, BuildError>
    where
        A: IntoIterator<Item = T>,
        T: AsRef<[u32]>,
    {
        if k < 2 || k > n {
            return Err(BuildError::InvalidArity { n, k });
        }
        let expected = binomial(n, k);
        if expected > MAX_ARCS {
            return Err(BuildError::TooLarge { n, k });
        }
        let mut entries = Vec::with_capacity(expected as usize * k);
        let mut seen: Vec<Option<usize>> = vec![None; expected as usize];
        let mut found = 0usize;
        for (index, arc) in arcs.into_iter().enumerate() {
            found += 1;
            let arc = arc.as_ref();
            if found as u128 > expected {
                continue;
            }
            if arc.len() != k {
                return Err(BuildError::MalformedArc { index, reason: format!("length {} instead of {k}", arc.len()) });
            }
            let mut sorted = arc.to_vec();
            sorted.sort_unstable();
            if let Some(&v) = sorted.iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(BuildError::MalformedArc { index, reason: format!("vertex {v} out of range 1..={n}") });
            }
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(BuildError::MalformedArc { index, reason: format!("vertex {} repeated", w[0]) });
            }
            let rank = subset_rank(n, &sorted) as usize;
            if let Some(first) = seen[rank] {
                return Err(BuildError::DuplicateSubset { first, second: index });
            }
            seen[rank] = Some(index);
            entries.extend(arc.iter().map(|&v| Vertex(v)));
        }
        if found as u128 != expected {
            return Err(BuildError::WrongArcCount { expected, found });
        }
        Ok(Self::from_entries(n, k, entries))
    }

    /// Build from entries already known to be valid.
    fn from_entries(n: usize, k: usize, entries: Vec<Vertex>) -> Self {
        let mut pairs = vec![Vec::new(); n * n.saturating_sub(1) / 2];
        for (id, arc) in entries.chunks_exact(k).enumerate() {
            for i in 0..k {
                for j in i + 1..k {
                    pairs[pair_slot(arc[i], arc[j])].push(id as u32);
                }
            }
        }
        Self { n, k, entries, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arc_count(&self) -> usize {
        self.entries.len() / self.k
    }

    pub fn arc(&self, id: ArcId) -> &[Vertex] {
        &self.entries[id.0 * self.k..(id.0 + 1) * self.k]
    }

    pub fn arcs(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.entries.chunks_exact(self.k)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (1..=self.n as u32).map(Vertex)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v.0 >= 1 && v.idx() <= self.n
    }

    /// Arc ids whose vertex set contains both `x` and `y`, ascending.
    pub fn arcs_containing(&self, x: Vertex, y: Vertex) -> impl Iterator<Item = ArcId> + '_ {
        let slot =
            if x != y && self.contains_vertex(x) && self.contains_vertex(y) { Some(pair_slot(x, y)) } else { None };
        slot.into_iter().flat_map(move |s| self.pairs[s].iter().map(|&id| ArcId(id as usize)))
    }

    /// Whether `x` precedes `y` in arc `id`; `None` if either is absent.
    pub fn arc_precedes(&self, id: ArcId, x: Vertex, y: Vertex) -> Option<bool> {
        precedes(self.arc(id), x, y).ok()
    }

    /// The arcs in which `x` precedes `y`, as ascending ids.
    pub fn arcs_preceding(&self, x: Vertex, y: Vertex) -> Result<Vec<ArcId>, QueryError> {
        if x == y {
            return Err(QueryError::SameVertex(x));
        }
        Ok(self.preceding_iter(x, y).collect())
    }

    pub(crate) fn preceding_iter(&self, x: Vertex, y: Vertex) -> impl Iterator<Item = ArcId> + '_ {
        self.arcs_containing(x, y).filter(move |&id| self.arc_precedes(id, x, y) == Some(true))
    }

    /// Every arc with its entry sequence reversed; ids are preserved.
    pub fn reverse(&self) -> Self {
        let mut entries = self.entries.clone();
        for arc in entries.chunks_exact_mut(self.k) {
            arc.reverse();
        }
        Self { n: self.n, k: self.k, entries, pairs: self.pairs.clone() }
    }

    /// Rename every vertex `v` to `map(v)`. `map` must be a permutation of
    /// `1..=n`.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Self {
        let entries = self.entries.iter().map(|&v| map(v)).collect();
        Self::from_entries(self.n, self.k, entries)
    }

    /// For `k = n - 1`: the single vertex an arc does not contain.
    pub fn missing_vertex(&self, id: ArcId) -> Option<Vertex> {
        if self.k + 1 != self.n {
            return None;
        }
        let total: u64 = (1..=self.n as u64).sum();
        let present: u64 = self.arc(id).iter().map(|v| v.0 as u64).sum();
        Some(Vertex((total - present) as u32))
    }

    /// Remove `v` and every arc containing it. Remaining vertices are
    /// compacted to `1..=n-1` preserving their order.
    pub fn delete_vertex(&self, v: Vertex) -> Result<Reduction, ReduceError> {
        if self.k + 1 >= self.n {
            return Err(ReduceError::ArityTooLarge { n: self.n, k: self.k });
        }
        if !self.contains_vertex(v) {
            return Err(ReduceError::NoSuchVertex(v));
        }
        let to_parent: Vec<Vertex> = self.vertices().filter(|&u| u != v).collect();
        let compact = |u: Vertex| if u > v { Vertex(u.0 - 1) } else { u };
        let mut entries = Vec::new();
        let mut parent_of = Vec::new();
        let mut dropped = Vec::new();
        for (id, arc) in self.arcs().enumerate() {
            if arc.contains(&v) {
                dropped.push(ArcId(id));
            } else {
                parent_of.push(ArcId(id));
                entries.extend(arc.iter().map(|&u| compact(u)));
            }
        }
        Ok(Reduction {
            child: Self::from_entries(self.n - 1, self.k, entries),
            correspondence: ArcCorrespondence {
                parent_of,
                dropped_arcs: dropped,
                dropped_vertex: Some(v),
                trimmed: None,
            },
            relabeling: Relabeling { to_parent, parent_n: self.n },
        })
    }

    /// The sub-hypertournament induced on `1..=m` (arcs with all entries at
    /// most `m`). Labels are unchanged.
    pub fn induced_prefix(&self, m: usize) -> Result<Reduction, ReduceError> {
        if m < self.k || m > self.n {
            return Err(ReduceError::PreconditionViolated(format!(
                "prefix 1..={m} must hold at least k={} and at most n={} vertices",
                self.k, self.n
            )));
        }
        let mut entries = Vec::new();
        let mut parent_of = Vec::new();
        let mut dropped = Vec::new();
        for (id, arc) in self.arcs().enumerate() {
            if arc.iter().all(|u| u.idx() <= m) {
                parent_of.push(ArcId(id));
                entries.extend_from_slice(arc);
            } else {
                dropped.push(ArcId(id));
            }
        }
        Ok(Reduction {
            child: Self::from_entries(m, self.k, entries),
            correspondence: ArcCorrespondence { parent_of, dropped_arcs: dropped, dropped_vertex: None, trimmed: None },
            relabeling: Relabeling { to_parent: (1..=m as u32).map(Vertex).collect(), parent_n: self.n },
        })
    }

    /// The arc-deletion reduction for `k = n - 1`.
    ///
    /// The first arc is taken as `a`. Vertices are renamed so that the
    /// vertex missing from `a` becomes 1, the last entry of `a` becomes `n`
    /// and the rest of `a` becomes `2..n-1` in ascending original order.
    /// With `b` the arc missing `n`, the child is the `(k-1)`-hypertournament
    /// on `1..=n-1` whose arcs are every `e` other than `a`, `b` with `n`
    /// removed, plus `b` with vertex 1 removed.
    pub fn case1_reduce(&self) -> Result<Case1Reduction, ReduceError> {
        self.case1_reduce_with(ArcId(0))
    }

    /// [`Self::case1_reduce`] with an explicit choice of the arc `a`.
    pub fn case1_reduce_with(&self, a: ArcId) -> Result<Case1Reduction, ReduceError> {
        if self.k + 1 != self.n || self.n < 4 {
            return Err(ReduceError::PreconditionViolated(format!(
                "arc-deletion reduction needs k = n-1 and n >= 4 (n={}, k={})",
                self.n, self.k
            )));
        }
        if a.0 >= self.arc_count() {
            return Err(ReduceError::PreconditionViolated(format!("no arc {a}")));
        }
        let n = self.n;
        let arc_a = self.arc(a);
        let outside = self.missing_vertex(a).expect("k = n-1");
        let last = arc_a[n - 2];
        // new label of each original vertex
        let mut to_frame = vec![Vertex(0); n + 1];
        to_frame[outside.idx()] = Vertex(1);
        to_frame[last.idx()] = Vertex(n as u32);
        let mut middle: Vec<Vertex> = arc_a[..n - 2].to_vec();
        middle.sort_unstable();
        for (i, &u) in middle.iter().enumerate() {
            to_frame[u.idx()] = Vertex(i as u32 + 2);
        }
        let mut to_parent = vec![Vertex(0); n];
        for u in self.vertices() {
            to_parent[to_frame[u.idx()].idx() - 1] = u;
        }
        let frame = self.relabel(|u| to_frame[u.idx()]);
        let top = Vertex(n as u32);
        let b = (0..frame.arc_count())
            .map(ArcId)
            .find(|&id| frame.missing_vertex(id) == Some(top))
            .expect("some arc misses n");

        let mut entries = Vec::with_capacity((n - 1) * (n - 2));
        let mut parent_of = Vec::with_capacity(n - 1);
        for (id, arc) in frame.arcs().enumerate() {
            let id = ArcId(id);
            if id == a {
                continue;
            }
            let removed = if id == b { Vertex(1) } else { top };
            entries.extend(arc.iter().copied().filter(|&u| u != removed));
            parent_of.push(id);
        }
        let child = Self::from_entries(n - 1, n - 2, entries);
        let b_child = ArcId(parent_of.iter().position(|&p| p == b).expect("b kept"));
        Ok(Case1Reduction {
            frame,
            child,
            correspondence: ArcCorrespondence {
                parent_of,
                dropped_arcs: vec![a],
                dropped_vertex: Some(top),
                trimmed: Some((b_child, Vertex(1))),
            },
            relabeling: Relabeling { to_parent, parent_n: n },
            arc_a: a,
            arc_b: b,
        })
    }
}

/// Vertex renaming between a reduced hypertournament and its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    // parent label of child vertex i+1
    to_parent: Vec<Vertex>,
    parent_n: usize,
}

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Self { to_parent: (1..=n as u32).map(Vertex).collect(), parent_n: n }
    }

    /// Build from an explicit table: entry `i` is the parent label of child
    /// vertex `i + 1`.
    pub fn from_parent_labels(to_parent: Vec<Vertex>, parent_n: usize) -> Self {
        Self { to_parent, parent_n }
    }

    pub fn to_parent(&self, v: Vertex) -> Option<Vertex> {
        self.to_parent.get(v.idx().checked_sub(1)?).copied()
    }

    pub fn to_child(&self, v: Vertex) -> Option<Vertex> {
        self.to_parent.iter().position(|&p| p == v).map(|i| Vertex(i as u32 + 1))
    }

    pub fn parent_n(&self) -> usize {
        self.parent_n
    }

    pub fn child_n(&self) -> usize {
        self.to_parent.len()
    }
}

/// How arcs of a reduced hypertournament map back to its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCorrespondence {
    parent_of: Vec<ArcId>,
    dropped_arcs: Vec<ArcId>,
    dropped_vertex: Option<Vertex>,
    // child arc whose parent lost a different vertex, with that vertex
    trimmed: Option<(ArcId, Vertex)>,
}

impl ArcCorrespondence {
    pub fn identity(arc_count: usize) -> Self {
        Self {
            parent_of: (0..arc_count).map(ArcId).collect(),
            dropped_arcs: Vec::new(),
            dropped_vertex: None,
            trimmed: None,
        }
    }

    pub fn from_parent_ids(parent_of: Vec<ArcId>) -> Self {
        Self { parent_of, dropped_arcs: Vec::new(), dropped_vertex: None, trimmed: None }
    }

    pub fn parent(&self, child: ArcId) -> Option<ArcId> {
        self.parent_of.get(child.0).copied()
    }

    pub fn child(&self, parent: ArcId) -> Option<ArcId> {
        self.parent_of.iter().position(|&p| p == parent).map(ArcId)
    }

    pub fn len(&self) -> usize {
        self.parent_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent_of.is_empty()
    }

    /// Parent arcs with no child counterpart.
    pub fn dropped_arcs(&self) -> &[ArcId] {
        &self.dropped_arcs
    }

    /// The vertex stripped from surviving arcs, in parent labels.
    pub fn dropped_vertex(&self) -> Option<Vertex> {
        self.dropped_vertex
    }

    /// The one child arc that lost a different vertex than the others.
    pub fn trimmed(&self) -> Option<(ArcId, Vertex)> {
        self.trimmed
    }
}

/// Output of [`Hypertournament::delete_vertex`] and
/// [`Hypertournament::induced_prefix`].
#[derive(Debug, Clone)]
pub struct Reduction {
    pub child: Hypertournament,
    pub correspondence: ArcCorrespondence,
    pub relabeling: Relabeling,
}

/// Output of [`Hypertournament::case1_reduce`].
#[derive(Debug, Clone)]
pub struct Case1Reduction {
    /// The parent after renaming; the child's arc ids refer to this frame.
    pub frame: Hypertournament,
    pub child: Hypertournament,
    pub correspondence: ArcCorrespondence,
    /// Child/frame label to original label.
    pub relabeling: Relabeling,
    pub arc_a: ArcId,
    pub arc_b: ArcId,
}
