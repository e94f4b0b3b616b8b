//! The four hypertournaments without an antidirected hamiltonian path.
//!
//! `T3c`, `T5c` and `T7c` are the rotational tournaments on `Z_3`, `Z_5` and
//! `Z_7` (vertex `i` beats `i + d` for `d` in the difference set `{1}`,
//! `{1, 2}` and `{1, 2, 4}`), relabeled to `1..=n`. `H4` is the
//! 3-hypertournament on four vertices whose arcs are the cyclically
//! consecutive triples of `1, 2, 3, 4`.
//!
//! Isomorphism is tested by scanning vertex permutations in lexicographic
//! order, which is exact and cheap at these sizes.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, rank_permutation, subset_rank};
use crate::hypertournament::{Hypertournament, Vertex};
use crate::oracle::{for_each_instance, EnumerationCap};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionalKind {
    T3c,
    T5c,
    T7c,
    H4,
}

impl ExceptionalKind {
    pub const ALL: [ExceptionalKind; 4] = [Self::T3c, Self::T5c, Self::T7c, Self::H4];

    /// `(n, k)` of the structure.
    pub fn signature(self) -> (usize, usize) {
        match self {
            Self::T3c => (3, 2),
            Self::T5c => (5, 2),
            Self::T7c => (7, 2),
            Self::H4 => (4, 3),
        }
    }

    pub fn for_signature(n: usize, k: usize) -> Option<Self> {
        Self::ALL.into_iter().find(|kind| kind.signature() == (n, k))
    }

    pub fn canonical(self) -> Hypertournament {
        match self {
            Self::T3c => rotational(3, &[1]),
            Self::T5c => rotational(5, &[1, 2]),
            Self::T7c => rotational(7, &[1, 2, 4]),
            Self::H4 => Hypertournament::new(4, 3, [[2, 3, 4], [4, 1, 2], [3, 4, 1], [1, 2, 3]]).expect("valid"),
        }
    }
}

impl fmt::Display for ExceptionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::T3c => "t3c",
            Self::T5c => "t5c",
            Self::T7c => "t7c",
            Self::H4 => "h4",
        })
    }
}

impl FromStr for ExceptionalKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown structure {s:?} (expected t3c, t5c, t7c or h4)"))
    }
}

/// Tournament on `1..=m` where `i` beats `j` iff `j - i mod m` is in `diffs`.
fn rotational(m: u32, diffs: &[u32]) -> Hypertournament {
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if diffs.contains(&((j + m - i) % m)) {
                arcs.push([i + 1, j + 1]);
            } else {
                arcs.push([j + 1, i + 1]);
            }
        }
    }
    Hypertournament::new(m as usize, 2, arcs).expect("rotational tournament is valid")
}

/// Proof that an input is a copy of an exceptional structure: `iso[v - 1]`
/// is the canonical vertex that input vertex `v` maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalWitness {
    pub kind: ExceptionalKind,
    pub iso: Vec<Vertex>,
}

impl ExceptionalWitness {
    pub fn map(&self, v: Vertex) -> Vertex {
        self.iso[v.0 as usize - 1]
    }

    /// Input vertex that maps to canonical vertex `c`.
    pub fn preimage(&self, c: Vertex) -> Vertex {
        Vertex(self.iso.iter().position(|&x| x == c).expect("iso is a permutation") as u32 + 1)
    }
}

/// For every vertex, the sorted list of `|A(v, u)|` over `u != v`; the
/// multiset of these lists is an isomorphism invariant.
fn precedence_profile(h: &Hypertournament) -> Vec<Vec<usize>> {
    let mut profile: Vec<Vec<usize>> = h
        .vertices()
        .map(|v| {
            let mut row: Vec<usize> =
                h.vertices().filter(|&u| u != v).map(|u| h.preceding_iter(v, u).count()).collect();
            row.sort_unstable();
            row
        })
        .collect();
    profile.sort();
    profile
}

/// Does `perm` (input vertex `v` to `perm[v-1]`) carry `h` onto `target`?
fn carries(h: &Hypertournament, target: &Hypertournament, target_index: &[usize], perm: &[Vertex]) -> bool {
    let n = h.n();
    let mut mapped = Vec::with_capacity(h.k());
    let mut sorted = Vec::with_capacity(h.k());
    h.arcs().all(|arc| {
        mapped.clear();
        mapped.extend(arc.iter().map(|v| perm[v.0 as usize - 1]));
        sorted.clear();
        sorted.extend(mapped.iter().map(|v| v.0));
        sorted.sort_unstable();
        let t = target.arc(crate::hypertournament::ArcId(target_index[subset_rank(n, &sorted) as usize]));
        t == mapped.as_slice()
    })
}

fn subset_index(h: &Hypertournament) -> Vec<usize> {
    let mut index = vec![0; binomial(h.n(), h.k()) as usize];
    for (id, arc) in h.arcs().enumerate() {
        let mut s: Vec<u32> = arc.iter().map(|v| v.0).collect();
        s.sort_unstable();
        index[subset_rank(h.n(), &s) as usize] = id;
    }
    index
}

/// All isomorphisms from `h` onto the canonical form of `kind`, in
/// lexicographic order of the permutation.
pub fn isomorphisms(h: &Hypertournament, kind: ExceptionalKind) -> Vec<ExceptionalWitness> {
    if (h.n(), h.k()) != kind.signature() {
        return Vec::new();
    }
    let canon = kind.canonical();
    if precedence_profile(h) != precedence_profile(&canon) {
        return Vec::new();
    }
    let index = subset_index(&canon);
    (1..=h.n() as u32)
        .map(Vertex)
        .permutations(h.n())
        .filter(|perm| carries(h, &canon, &index, perm))
        .map(|iso| ExceptionalWitness { kind, iso })
        .collect()
}

/// Identify `h` as one of the four exceptional structures, returning the
/// lexicographically first isomorphism.
pub fn is_exceptional(h: &Hypertournament) -> Option<ExceptionalWitness> {
    let kind = ExceptionalKind::for_signature(h.n(), h.k())?;
    let canon = kind.canonical();
    if precedence_profile(h) != precedence_profile(&canon) {
        return None;
    }
    let index = subset_index(&canon);
    (1..=h.n() as u32)
        .map(Vertex)
        .permutations(h.n())
        .find(|perm| carries(h, &canon, &index, perm))
        .map(|iso| ExceptionalWitness { kind, iso })
}

/// Stable fingerprint of a hypertournament on `1..=n`: the lexicographic
/// rank of each subset's arrangement, listed by subset rank.
pub(crate) fn fingerprint(h: &Hypertournament) -> Vec<u32> {
    let mut out = vec![0u32; h.arc_count()];
    for arc in h.arcs() {
        let mut s: Vec<u32> = arc.iter().map(|v| v.0).collect();
        let raw = s.clone();
        s.sort_unstable();
        out[subset_rank(h.n(), &s) as usize] = rank_permutation(&raw) as u32;
    }
    out
}

/// The labeled hypertournaments on `1..=n` isomorphic to `kind`, as
/// fingerprints, found by applying every vertex permutation to the
/// canonical form.
pub fn labeled_copies(kind: ExceptionalKind) -> HashSet<Vec<u32>> {
    let canon = kind.canonical();
    let n = canon.n();
    (1..=n as u32)
        .map(Vertex)
        .permutations(n)
        .map(|perm| fingerprint(&canon.relabel(|v| perm[v.0 as usize - 1])))
        .collect()
}

/// Number of labeled copies of `kind`, either from the permutation orbit of
/// the canonical form or by enumerating every hypertournament with the same
/// signature and testing it.
pub fn count_labeled_copies(kind: ExceptionalKind, via_enumeration: bool) -> u64 {
    if !via_enumeration {
        return labeled_copies(kind).len() as u64;
    }
    let (n, k) = kind.signature();
    let mut count = 0u64;
    for_each_instance(n, k, EnumerationCap::Unlimited, |_, h| {
        if is_exceptional(h).is_some_and(|w| w.kind == kind) {
            count += 1;
        }
    })
    .expect("unlimited cap");
    count
}
