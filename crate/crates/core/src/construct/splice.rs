//! Explicit paths for inputs where deleting one vertex leaves an
//! exceptional structure, so the induction has nothing to extend.

use crate::exceptions::{is_exceptional, isomorphisms, ExceptionalKind};
use crate::hypertournament::{ArcId, Hypertournament, Reduction, Vertex};
use crate::path::validate_adp;

use super::case2::View;
use super::select::{select_distinct_arcs, Selection};
use super::trace::CaseTrace;
use super::{Gap, Probe, Solved};

/// Position of `z_i` in the canonical labels. The drawn 3-cycle runs
/// `z1 -> z3 -> z2`, the rotational ones use `z_i = i`.
fn z_label(kind: ExceptionalKind, i: u32) -> Vertex {
    match kind {
        ExceptionalKind::T3c => Vertex([1, 3, 2][i as usize - 1]),
        _ => Vertex(i),
    }
}

/// Template in `z` indices; 0 stands for the deleted vertex.
fn template(kind: ExceptionalKind) -> &'static [u32] {
    match kind {
        ExceptionalKind::T3c => &[3, 1, 0, 2],
        ExceptionalKind::T5c => &[1, 0, 2, 4, 3, 5],
        ExceptionalKind::T7c => &[1, 0, 2, 6, 5, 7, 3, 4],
        ExceptionalKind::H4 => &[],
    }
}

/// A tournament on 4, 6 or 8 vertices with a vertex whose deletion leaves
/// a rotational exception. `None` when no vertex qualifies.
pub(crate) fn tournament(h: &Hypertournament) -> Option<Result<Solved, Gap>> {
    if h.k() != 2 || ![4, 6, 8].contains(&h.n()) {
        return None;
    }
    let mut applicable = false;
    for v in h.vertices() {
        let red = h.delete_vertex(v).ok()?;
        let Some(found) = is_exceptional(&red.child) else { continue };
        applicable = true;
        let kind = found.kind;
        // the mirrored pass covers the orientation where z1 and z2 are
        // entered from v
        for mirrored in [false, true] {
            let child = if mirrored { red.child.reverse() } else { red.child.clone() };
            for iso in isomorphisms(&child, kind) {
                let z = |i: u32| red.relabeling.to_parent(iso.preimage(z_label(kind, i))).expect("child label");
                let mut probe = Probe::oriented(h, mirrored);
                let arc = |x: Vertex, y: Vertex| h.arcs_containing(x, y).next().expect("tournament pair");
                if !probe.before(arc(z(1), v), z(1), v) || !probe.before(arc(z(2), v), z(2), v) {
                    continue;
                }
                let vertices: Vec<Vertex> = template(kind).iter().map(|&i| if i == 0 { v } else { z(i) }).collect();
                let arcs: Vec<ArcId> = vertices.windows(2).map(|p| arc(p[0], p[1])).collect();
                let tag = format!("Case2/{kind}-splice{}", if mirrored { "/reversed" } else { "" });
                let result = validate_adp(h, &vertices, &arcs)
                    .map(|path| {
                        let mut trace = CaseTrace::default();
                        trace.push(tag.clone(), probe.into_facts());
                        (path, trace)
                    })
                    .map_err(|e| Gap::new(tag, format!("template is not antidirected: {e}")));
                return Some(result);
            }
        }
    }
    applicable.then(|| {
        Err(Gap::new("Case2/tournament-splice", "no orientation sends both z1 and z2 into the deleted vertex"))
    })
}

/// A 5-vertex 3-hypertournament `h` with `h - v` (given as `minus`)
/// isomorphic to H4.
pub(crate) fn h4(h: &Hypertournament, minus: &Reduction, v: Vertex) -> Result<Solved, Gap> {
    let arc_over = |a: Vertex, b: Vertex, c: Vertex| {
        h.arcs_containing(a, b).find(|&id| h.arc(id).contains(&c)).expect("every triple is an arc")
    };
    for mirrored in [false, true] {
        let child = if mirrored { minus.child.reverse() } else { minus.child.clone() };
        let view = View { h, limit: h.n() as u32, mirrored };
        for iso in isomorphisms(&child, ExceptionalKind::H4) {
            let w = |i: u32| {
                if i == 5 {
                    v
                } else {
                    minus.relabeling.to_parent(iso.preimage(Vertex(i))).expect("child label")
                }
            };
            let into = |x: Vertex| view.preceding(x, v).collect::<Vec<_>>();
            let out_of = |x: Vertex| view.preceding(v, x).collect::<Vec<_>>();
            if into(w(1)).len() < 2 {
                continue;
            }
            let a1 = arc_over(w(2), w(3), w(4));
            let a2 = arc_over(w(4), w(1), w(2));
            let a4 = arc_over(w(1), w(2), w(3));
            let (label, vertices, slots) = if !into(w(2)).is_empty() {
                ("into-5-from-2", [4, 2, 5, 1, 3], vec![vec![a1], into(w(2)), into(w(1)), vec![a4]])
            } else if !into(w(3)).is_empty() {
                ("into-5-from-3", [4, 3, 5, 1, 2], vec![vec![a1], into(w(3)), into(w(1)), vec![a4]])
            } else {
                ("out-of-5", [4, 2, 5, 3, 1], vec![vec![a2], out_of(w(2)), out_of(w(3)), vec![a4]])
            };
            let tag = format!("Case2/H4-splice/{label}{}", if mirrored { "/reversed" } else { "" });
            let Selection::Assigned { arcs, .. } = select_distinct_arcs(&slots) else {
                return Err(Gap::new(tag, "the majority of A(1,5) leaves no distinct choice"));
            };
            let vertices: Vec<Vertex> = vertices.iter().map(|&i| w(i)).collect();
            let mut probe = Probe::oriented(h, mirrored);
            for (pair, &arc) in vertices.windows(2).zip(&arcs) {
                probe.before(arc, pair[0], pair[1]);
            }
            let path = validate_adp(h, &vertices, &arcs)
                .map_err(|e| Gap::new(tag.clone(), format!("template is not antidirected: {e}")))?;
            let mut trace = CaseTrace { max_slots: slots.len(), ..CaseTrace::default() };
            trace.push(tag, probe.into_facts());
            return Ok((path, trace));
        }
    }
    Err(Gap::new("Case2/H4-splice", "no vertex of the H4 copy has two arcs into the extra vertex"))
}
