//! Reference code for the integration tests, written without the library's
//! own validators so that the tests compare against something independent.

#![allow(dead_code)]

use std::collections::BTreeSet;

use adhp::{AntidirectedPath, ArcId, ExceptionalKind, Hypertournament, Vertex};

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Some(true)` for a forward step (x before y in the arc).
fn direction(arc: &[Vertex], x: Vertex, y: Vertex) -> Option<bool> {
    let px = arc.iter().position(|&v| v == x)?;
    let py = arc.iter().position(|&v| v == y)?;
    Some(px < py)
}

/// Whether the sequences form an antidirected path of `h` through every
/// vertex. Returns the step directions on success.
pub fn check_adhp(h: &Hypertournament, vertices: &[Vertex], arcs: &[ArcId]) -> Result<Vec<bool>, String> {
    let n = h.n();
    let seen: BTreeSet<u32> = vertices.iter().map(|v| v.0).collect();
    if vertices.len() != n || seen != (1..=n as u32).collect() {
        return Err(format!("vertices {vertices:?} are not a permutation of 1..={n}"));
    }
    if arcs.len() + 1 != n {
        return Err(format!("{} arcs for {n} vertices", arcs.len()));
    }
    let distinct: BTreeSet<usize> = arcs.iter().map(|a| a.0).collect();
    if distinct.len() != arcs.len() || arcs.iter().any(|a| a.0 >= h.arc_count()) {
        return Err(format!("arcs {arcs:?} repeat or are out of range"));
    }
    let mut steps = Vec::new();
    for (i, a) in arcs.iter().enumerate() {
        let d = direction(h.arc(*a), vertices[i], vertices[i + 1])
            .ok_or_else(|| format!("arc {a:?} misses an endpoint of step {i}"))?;
        if i > 0 && d == steps[i - 1] {
            return Err(format!("steps {} and {i} run the same way", i - 1));
        }
        steps.push(d);
    }
    Ok(steps)
}

pub fn check_path(h: &Hypertournament, p: &AntidirectedPath) -> Result<Vec<bool>, String> {
    check_adhp(h, p.vertices(), p.arcs())
}

/// Endpoint roles read off the step directions: `true` means starting.
pub fn roles(steps: &[bool]) -> (bool, bool) {
    (steps[0], !steps[steps.len() - 1])
}

/// Lexicographic rank of a permutation of distinct values.
fn perm_rank(tuple: &[u32]) -> u64 {
    let mut rank = 0;
    for i in 0..tuple.len() {
        let smaller = tuple[i + 1..].iter().filter(|&&v| v < tuple[i]).count() as u64;
        let fact: u64 = (1..=(tuple.len() - 1 - i) as u64).product();
        rank += smaller * fact;
    }
    rank
}

fn all_subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Position of `arcs` in the full enumeration: subsets in lexicographic
/// order, the first subset being the least significant mixed-radix digit.
pub fn enumeration_index(n: usize, k: usize, arcs: &[Vec<u32>]) -> u64 {
    let radix: u64 = (1..=k as u64).product();
    let mut index = 0;
    for s in all_subsets(n as u32, k).iter().rev() {
        let arc = arcs.iter().find(|a| {
            let mut sorted = (*a).clone();
            sorted.sort_unstable();
            &sorted == s
        });
        index = index * radix + perm_rank(arc.expect("one arc per subset"));
    }
    index
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Enumeration indices of every relabeling of the canonical structure,
/// found by scanning all vertex permutations.
pub fn labeled_copy_indices(kind: ExceptionalKind) -> BTreeSet<u64> {
    let canon = kind.canonical();
    let (n, k) = (canon.n(), canon.k());
    let labels: Vec<u32> = (1..=n as u32).collect();
    permutations(&labels)
        .into_iter()
        .map(|perm| {
            let arcs: Vec<Vec<u32>> =
                canon.arcs().map(|a| a.iter().map(|v| perm[v.0 as usize - 1]).collect()).collect();
            enumeration_index(n, k, &arcs)
        })
        .collect()
}

/// Arcs of `h` as plain vectors.
pub fn raw_arcs(h: &Hypertournament) -> Vec<Vec<u32>> {
    h.arcs().map(|a| a.iter().map(|v| v.0).collect()).collect()
}
