//! Case `3 <= k < n - 1`: vertex-deletion induction.
//!
//! Deleting the highest label repeatedly gives the chain of prefixes
//! `1..=j`. The recursion is run bottom-up: a base path on the smallest
//! prefix, then one splice per level. Each level looks at `h` through a
//! [`View`] instead of materializing the prefix, which keeps `n = 100`
//! cheap.

use crate::exceptions::is_exceptional;
use crate::hypertournament::{ArcId, Hypertournament, Reduction, Vertex};
use crate::path::{lift_path, validate_adp, AntidirectedPath, EndpointRole};

use super::select::{select_distinct_arcs, Selection};
use super::trace::{CaseTrace, Fact};
use super::{case1, splice, Gap, Solved};

/// The arcs of `h` inside `1..=limit`, optionally with every arc reversed.
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub(crate) h: &'a Hypertournament,
    pub(crate) limit: u32,
    pub(crate) mirrored: bool,
}

impl View<'_> {
    fn visible(&self, arc: ArcId) -> bool {
        self.h.arc(arc).iter().all(|v| v.0 <= self.limit)
    }

    /// Visible arcs in which `x` precedes `y` after orientation.
    pub(crate) fn preceding(&self, x: Vertex, y: Vertex) -> impl Iterator<Item = ArcId> + '_ {
        let want = !self.mirrored;
        self.h.arcs_containing(x, y).filter(move |&a| self.visible(a) && self.h.arc_precedes(a, x, y) == Some(want))
    }

    fn fact(&self, arc: ArcId, x: Vertex, y: Vertex) -> Fact {
        if self.mirrored {
            Fact { arc, before: y, after: x }
        } else {
            Fact { arc, before: x, after: y }
        }
    }
}

pub(crate) fn solve(h: &Hypertournament) -> Result<Solved, Gap> {
    let (mut path, mut trace, base) = base(h)?;
    for j in base + 1..=h.n() {
        let (next, step) = extend(View { h, limit: j as u32, mirrored: false }, &path, Vertex(j as u32))?;
        path = next;
        trace.absorb_after(step);
    }
    Ok((path, trace))
}

fn lift(h: &Hypertournament, red: &Reduction, (p, t): Solved) -> Result<Solved, Gap> {
    let path =
        lift_path(&p, h, &red.correspondence, &red.relabeling).map_err(|e| Gap::new("Case2/lift", e.to_string()))?;
    Ok((path, t.lift(&red.correspondence, &red.relabeling)))
}

/// The first level solved without splicing a single vertex.
fn base(h: &Hypertournament) -> Result<(AntidirectedPath, CaseTrace, usize), Gap> {
    let k = h.k();
    let reduce_err = |e: crate::hypertournament::ReduceError| Gap::new("Case2/reduce", e.to_string());
    if k == 3 {
        // only a 5-vertex level can lose a vertex and become exceptional
        let five = h.induced_prefix(5).map_err(reduce_err)?;
        for v in five.child.vertices() {
            let minus = five.child.delete_vertex(v).map_err(reduce_err)?;
            if is_exceptional(&minus.child).is_some() {
                let solved = splice::h4(&five.child, &minus, v)?;
                let (p, t) = lift(h, &five, solved)?;
                return Ok((p, t, 5));
            }
        }
    }
    let prefix = h.induced_prefix(k + 1).map_err(reduce_err)?;
    let solved = case1::solve(&prefix.child)?;
    let (p, t) = lift(h, &prefix, solved)?;
    Ok((p, t, k + 1))
}

fn subcase(h: &Hypertournament) -> &'static str {
    match h.k() {
        3 => "Case2/Subcase2.1",
        4 => "Case2/Subcase2.2",
        _ => "Case2/Subcase2.3",
    }
}

/// Splice `w` into `path`, which covers every vertex of the view but `w`.
///
/// The path is oriented so that `x_1` is a starting vertex. `w` goes right
/// after the last `x_i` that can still be joined to it in the direction
/// the alternation needs there; every later step is redone with fresh
/// pairwise distinct arcs.
pub(crate) fn extend(view: View<'_>, path: &AntidirectedPath, w: Vertex) -> Result<Solved, Gap> {
    let (oriented, mirrored) = match path.endpoint_roles() {
        (EndpointRole::Starting, _) => (path.clone(), false),
        (_, EndpointRole::Starting) => (path.reverse_path(), false),
        _ => (path.clone(), true),
    };
    let view = View { mirrored: view.mirrored != mirrored, ..view };
    let xs = oriented.vertices();
    // x_i is closed when no arc joins it to w in the direction the
    // alternation would need at position i
    let closed = |i: usize| {
        let x = xs[i - 1];
        if i % 2 == 1 {
            view.preceding(x, w).next().is_none()
        } else {
            view.preceding(w, x).next().is_none()
        }
    };
    let mut at = xs.len();
    while at > 0 && closed(at) {
        at -= 1;
    }
    splice_at(view, &oriented, w, at, subcase(view.h))
}

/// [`extend`] without committing to one orientation or insertion point:
/// every orientation that makes `x_1` starting and every position is tried,
/// latest position first.
pub(crate) fn extend_exhaustive(
    view: View<'_>,
    path: &AntidirectedPath,
    w: Vertex,
    family: &str,
) -> Result<Solved, Gap> {
    let mut candidates = Vec::new();
    for mirrored in [false, true] {
        for p in [path.clone(), path.reverse_path()] {
            let starts = p.endpoint_roles().0 == EndpointRole::Starting;
            if starts != mirrored {
                candidates.push((p, mirrored));
            }
        }
    }
    for (p, mirrored) in candidates {
        let v = View { mirrored: view.mirrored != mirrored, ..view };
        for at in (0..=p.len()).rev() {
            if let Ok(done) = splice_at(v, &p, w, at, family) {
                return Ok(done);
            }
        }
    }
    Err(Gap::new(format!("{family}/exhausted"), "no orientation and insertion point admits distinct arcs"))
}

/// Insert `w` after `x_at` (before `x_1` when `at` is 0) in a path whose
/// first vertex is starting in `view`.
fn splice_at(view: View<'_>, oriented: &AntidirectedPath, w: Vertex, at: usize, family: &str) -> Result<Solved, Gap> {
    let xs = oriented.vertices();
    let old = oriented.arcs();
    let m = xs.len();
    let mut vertices = Vec::with_capacity(m + 1);
    vertices.extend_from_slice(&xs[..at]);
    vertices.push(w);
    vertices.extend_from_slice(&xs[at..]);

    let keep = &old[..at.saturating_sub(1)];
    let slots: Vec<Vec<ArcId>> = (at.max(1)..=m)
        .map(|step| {
            let (u, v) = (vertices[step - 1], vertices[step]);
            let (x, y) = if step % 2 == 1 { (u, v) } else { (v, u) };
            view.preceding(x, y).filter(|a| !keep.contains(a)).collect()
        })
        .collect();
    let label = match at {
        0 => "prepend-n".to_string(),
        _ if at == m => "append-n".to_string(),
        _ => format!("insert-after-x{at}"),
    };
    let tag = format!("{family}/{label}");

    let mut trace = CaseTrace::default();
    let chosen = match select_distinct_arcs(&slots) {
        Selection::Assigned { arcs, greedy, nodes } => {
            trace.selection_nodes = nodes;
            trace.max_slots = slots.len();
            trace.greedy_fallbacks = u32::from(!greedy);
            arcs
        }
        Selection::Infeasible { .. } => {
            return Err(Gap::new(tag, format!("no distinct arcs for the {} respliced steps", slots.len())));
        }
    };
    let facts = (at.max(1)..=m)
        .zip(&chosen)
        .map(|(step, &arc)| {
            let (u, v) = (vertices[step - 1], vertices[step]);
            if step % 2 == 1 {
                view.fact(arc, u, v)
            } else {
                view.fact(arc, v, u)
            }
        })
        .collect();
    trace.push(tag.clone(), facts);

    let mut arcs = keep.to_vec();
    arcs.extend(chosen);
    let path =
        validate_adp(view.h, &vertices, &arcs).map_err(|v| Gap::new(tag, format!("spliced sequence broke: {v}")))?;
    Ok((path, trace))
}

/// [`extend`] for an arbitrary new vertex: swap it with `n`, splice, and
/// swap back.
pub(crate) fn extend_anywhere(h: &Hypertournament, child: &AntidirectedPath, w: Vertex) -> Result<Solved, Gap> {
    let n = Vertex(h.n() as u32);
    if !h.contains_vertex(w) {
        return Err(Gap::new("Case2/extend", format!("vertex {w} is not in the hypertournament")));
    }
    let covers = child.len() + 1 == h.n() && !child.vertices().contains(&w);
    if !covers || child.arcs().iter().any(|&a| h.arc(a).contains(&w)) {
        return Err(Gap::new(
            "Case2/extend",
            format!("the child path must cover every vertex but {w} with arcs avoiding it"),
        ));
    }
    let swap = |v: Vertex| {
        if v == w {
            n
        } else if v == n {
            w
        } else {
            v
        }
    };
    let swapped = h.relabel(swap);
    let moved: Vec<Vertex> = child.vertices().iter().map(|&v| swap(v)).collect();
    let start = validate_adp(&swapped, &moved, child.arcs())
        .map_err(|v| Gap::new("Case2/extend", format!("child path is not antidirected: {v}")))?;
    let (p, mut t) = extend(View { h: &swapped, limit: n.0, mirrored: false }, &start, n)?;
    let back: Vec<Vertex> = p.vertices().iter().map(|&v| swap(v)).collect();
    let path = validate_adp(h, &back, p.arcs()).map_err(|v| Gap::new("Case2/extend", v.to_string()))?;
    for step in &mut t.steps {
        for f in &mut step.facts {
            f.before = swap(f.before);
            f.after = swap(f.after);
        }
    }
    Ok((path, t))
}
