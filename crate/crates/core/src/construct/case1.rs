//! Case `k = n - 1`: induction on `k` through the arc-deletion reduction.
//!
//! All work happens in the renamed frame produced by
//! [`Hypertournament::case1_reduce`]: the arc `a` holds every vertex but 1
//! and ends with `n`, and `b` is the arc without `n`. Paths are written with
//! 1-based positions `x_1 .. x_t` to keep the branch conditions readable.

use crate::exceptions::{is_exceptional, isomorphisms, ExceptionalKind};
use crate::hypertournament::{ArcCorrespondence, ArcId, Case1Reduction, Hypertournament, Relabeling, Vertex};
use crate::path::{lift_path, validate_adp, AntidirectedPath, EndpointRole};

use super::case2::{extend_exhaustive, View};
use super::trace::CaseTrace;
use super::{Gap, Probe, Solved};

/// Solve a non-exceptional hypertournament with `k = n - 1 >= 3`.
pub(crate) fn solve(h: &Hypertournament) -> Result<Solved, Gap> {
    let red = h.case1_reduce().map_err(|e| Gap::new("Case1/reduce", e.to_string()))?;
    let (framed, trace) = solve_frame(&red)?;
    let vertices: Vec<Vertex> =
        framed.vertices().iter().map(|&v| red.relabeling.to_parent(v).expect("frame label")).collect();
    let path = validate_adp(h, &vertices, framed.arcs())
        .map_err(|v| Gap::new("Case1/unrelabel", format!("path broke after undoing the renaming: {v}")))?;
    let trace = trace.lift(&ArcCorrespondence::identity(h.arc_count()), &red.relabeling);
    Ok((path, trace))
}

fn solve_frame(red: &Case1Reduction) -> Result<Solved, Gap> {
    let g = &red.frame;
    let child = &red.child;
    let n = g.n();
    let mut trace = CaseTrace::default();

    let child_path = if child.k() == 2 {
        if is_exceptional(child).is_some() {
            return child_is_t3c(red);
        }
        transitive_triangle(child, &mut trace)?
    } else if child.n() == 4 && is_exceptional(child).is_some() {
        return child_is_h4(red);
    } else {
        let (p, t) = solve(child)?;
        trace.absorb(t);
        p
    };

    let inclusion = Relabeling::from_parent_labels((1..n as u32).map(Vertex).collect(), n);
    let lifted = lift_path(&child_path, g, &red.correspondence, &inclusion)
        .map_err(|e| Gap::new("Case1/lift", e.to_string()))?;
    trace = trace.lift(&red.correspondence, &inclusion);

    let mut probe = Probe::new(g);
    let free: Vec<ArcId> = (0..g.arc_count()).map(ArcId).filter(|a| !lifted.arcs().contains(a)).collect();
    let other = match free.as_slice() {
        [x, y] if *x == red.arc_a => *y,
        [x, y] if *y == red.arc_a => *x,
        _ => return Err(Gap::new("Case1/lift", "lifted path must leave exactly a and one more arc unused")),
    };
    let (tag, vertices, arcs) = match lifted.endpoint_roles() {
        (EndpointRole::Starting, _) => starting_shape(&mut probe, red, &lifted, other)?,
        (_, EndpointRole::Starting) => starting_shape(&mut probe, red, &lifted.reverse_path(), other)?,
        _ => match terminal_shape(&mut probe, red, &lifted, other) {
            Ok(built) => built,
            Err(gap) => return terminal_fallback(red, &lifted, other, trace, gap),
        },
    };
    finish(g, tag, vertices, arcs, probe, trace)
}

fn finish(
    g: &Hypertournament,
    tag: String,
    vertices: Vec<Vertex>,
    arcs: Vec<ArcId>,
    probe: Probe<'_>,
    mut trace: CaseTrace,
) -> Result<Solved, Gap> {
    let path = validate_adp(g, &vertices, &arcs)
        .map_err(|v| Gap::new(tag.clone(), format!("printed construction is not antidirected: {v}")))?;
    if !path.is_hamiltonian(g) {
        return Err(Gap::new(tag, "construction misses a vertex"));
    }
    trace.push(tag, probe.into_facts());
    Ok((path, trace))
}

/// 3-vertex transitive tournament: source -> sink <- middle, which leaves
/// both ends starting.
fn transitive_triangle(t: &Hypertournament, trace: &mut CaseTrace) -> Result<AntidirectedPath, Gap> {
    let out = |v: Vertex| t.vertices().filter(|&u| u != v && !t.arcs_preceding(v, u).unwrap().is_empty()).count();
    let source = t.vertices().find(|&v| out(v) == 2).ok_or_else(|| Gap::new("Case1/base", "no source"))?;
    let sink = t.vertices().find(|&v| out(v) == 0).ok_or_else(|| Gap::new("Case1/base", "no sink"))?;
    let middle = t.vertices().find(|&v| v != source && v != sink).expect("three vertices");
    let mut probe = Probe::new(t);
    let first = t.arcs_preceding(source, sink).unwrap()[0];
    let second = t.arcs_preceding(middle, sink).unwrap()[0];
    probe.before(first, source, sink);
    probe.before(second, middle, sink);
    let path = validate_adp(t, &[source, sink, middle], &[first, second])
        .map_err(|v| Gap::new("Case1/base-transitive", v.to_string()))?;
    trace.push("Case1/base-transitive", probe.into_facts());
    Ok(path)
}

/// The arc of the frame missing exactly `v`.
fn arc_missing(g: &Hypertournament, v: Vertex) -> ArcId {
    (0..g.arc_count()).map(ArcId).find(|&a| g.missing_vertex(a) == Some(v)).expect("k = n-1")
}

fn child_is_t3c(red: &Case1Reduction) -> Result<Solved, Gap> {
    let g = &red.frame;
    let (a, b) = (red.arc_a, red.arc_b);
    let mut probe = Probe::new(g);
    // b' = b without 1 runs p -> q; rename so that b' = (2,3)
    let b_child = red.correspondence.child(b).expect("b survives");
    let bc = red.child.arc(b_child);
    let (v1, v2, v3, v4) = (Vertex(1), bc[0], bc[1], Vertex(4));
    let a1 = arc_missing(g, v3);
    let a2 = arc_missing(g, v2);
    let tag = |s: &str| format!("Case1/HprimeIsT3c/{s}");

    let (t, vs, arcs) = if probe.before(a1, v1, v4) {
        (tag("a1-from-1-to-4"), vec![v1, v4, v2, v3], vec![a1, a, b])
    } else if probe.before(a, v3, v2) {
        (tag("a-from-3-to-2"), vec![v2, v3, v1, v4], vec![a, a2, a1])
    } else if probe.before(b, v2, v1) {
        (tag("b-from-2-to-1"), vec![v3, v2, v1, v4], vec![a, b, a1])
    } else if probe.before(a2, v1, v4) {
        (tag("a2-from-1-to-4"), vec![v2, v1, v4, v3], vec![a1, a2, a])
    } else if probe.before(a2, v4, v3) {
        (tag("a2-from-4-to-3"), vec![v4, v3, v1, v2], vec![a2, b, a1])
    } else {
        return Err(Gap::new(tag("exhausted"), "all memberships failed, so H is a copy of H4"));
    };
    finish(g, t, vs, arcs, probe, CaseTrace::default())
}

fn child_is_h4(red: &Case1Reduction) -> Result<Solved, Gap> {
    let g = &red.frame;
    let (a, b) = (red.arc_a, red.arc_b);
    // rename the child onto the printed H4 with vertex 1 fixed, so that
    // b' (the arc without 1) becomes (2,3,4)
    let iso = isomorphisms(&red.child, ExceptionalKind::H4)
        .into_iter()
        .find(|w| w.map(Vertex(1)) == Vertex(1))
        .ok_or_else(|| Gap::new("Case1/HprimeIsH4", "no isomorphism fixes vertex 1"))?;
    let v = |i: u32| if i == 5 { Vertex(5) } else { iso.preimage(Vertex(i)) };
    let a1 = arc_missing(g, v(3));
    let a2 = arc_missing(g, v(2));
    let a3 = arc_missing(g, v(4));
    let mut probe = Probe::new(g);
    let tag = |s: &str| format!("Case1/HprimeIsH4/{s}");

    let (t, vs, arcs) = if probe.before(a1, v(5), v(4)) {
        if probe.before(a, v(2), v(3)) {
            (tag("a1-from-5-to-4/a-from-2-to-3"), vec![v(1), v(3), v(2), v(4), v(5)], vec![a3, a, b, a1])
        } else {
            (tag("a1-from-5-to-4/a-from-3-to-2"), vec![v(5), v(4), v(3), v(2), v(1)], vec![a1, a2, a, a3])
        }
    } else {
        (tag("a1-from-4-to-5"), vec![v(1), v(4), v(5), v(2), v(3)], vec![a2, a1, a, b])
    };
    finish(g, t, vs, arcs, probe, CaseTrace::default())
}

type Built = (String, Vec<Vertex>, Vec<ArcId>);

/// Positions are 1-based: `x(i)` is the i-th vertex, `arc(i)` the arc
/// between `x(i)` and `x(i+1)`.
struct Walk<'p> {
    xs: &'p [Vertex],
    arcs: &'p [ArcId],
}

impl Walk<'_> {
    fn x(&self, i: usize) -> Vertex {
        self.xs[i - 1]
    }

    fn arc(&self, i: usize) -> ArcId {
        self.arcs[i - 1]
    }

    /// Vertices `x(from..=to)`.
    fn xs(&self, from: usize, to: usize) -> Vec<Vertex> {
        if from > to {
            return Vec::new();
        }
        self.xs[from - 1..to].to_vec()
    }

    /// Arcs `arc(from..=to)`.
    fn arcs(&self, from: usize, to: usize) -> Vec<ArcId> {
        if from > to {
            return Vec::new();
        }
        self.arcs[from - 1..to].to_vec()
    }
}

fn cat<T: Clone>(parts: &[&[T]]) -> Vec<T> {
    parts.concat()
}

/// Lifted path `x_1 -> x_2 <- ...` with `x_1` a starting vertex; the free
/// arcs are `a` and `c`.
fn starting_shape(probe: &mut Probe<'_>, red: &Case1Reduction, q: &AntidirectedPath, c: ArcId) -> Result<Built, Gap> {
    let n = red.frame.n();
    let top = Vertex(n as u32);
    let a = red.arc_a;
    let w = Walk { xs: q.vertices(), arcs: q.arcs() };
    let one = Vertex(1);

    if w.x(1) != one {
        probe.before(a, w.x(1), top);
        return Ok(("Case1/lift/prepend-n-via-a".into(), cat(&[&[top], q.vertices()]), cat(&[&[a], q.arcs()])));
    }
    if n.is_multiple_of(2) {
        probe.before(a, w.x(n - 1), top);
        return Ok(("Case1/lift/append-n-via-a".into(), cat(&[q.vertices(), &[top]]), cat(&[q.arcs(), &[a]])));
    }
    if c != red.arc_b {
        subcase_c_not_b(probe, red, &w, c, "Subcase1.1")
    } else {
        subcase_c_is_b(probe, red, &w, c)
    }
}

fn subcase_c_not_b(
    probe: &mut Probe<'_>,
    red: &Case1Reduction,
    w: &Walk<'_>,
    c: ArcId,
    label: &str,
) -> Result<Built, Gap> {
    let n = red.frame.n();
    let top = Vertex(n as u32);
    let a = red.arc_a;
    let one = w.x(1);
    let tag = |s: &str| format!("Case1/{label}/{s}");
    let x = |i| w.x(i);
    let arc = |i| w.arc(i);

    if probe.contains(c, x(n - 1)) {
        if probe.before(c, top, x(n - 1)) {
            return Ok((tag("c-from-n-to-last"), cat(&[&w.xs(1, n - 1), &[top]]), cat(&[&w.arcs(1, n - 2), &[c]])));
        }
        probe.before(c, x(n - 1), top);
        probe.before(a, x(n - 2), top);
        return Ok((
            tag("c-from-last-to-n"),
            cat(&[&w.xs(1, n - 2), &[top, x(n - 1)]]),
            cat(&[&w.arcs(1, n - 3), &[a, c]]),
        ));
    }
    if probe.before(c, one, top) {
        return Ok((tag("c-from-1-to-n"), cat(&[&[top], w.xs]), cat(&[&[c], w.arcs])));
    }
    if probe.before(arc(n - 2), one, x(n - 1)) {
        probe.before(a, x(n - 2), top);
        return Ok((
            tag("last-arc-from-1"),
            cat(&[&[x(n - 1)], &w.xs(1, n - 2), &[top]]),
            cat(&[&[arc(n - 2)], &w.arcs(1, n - 3), &[a]]),
        ));
    }
    if probe.contains(arc(1), top) {
        if probe.before(arc(1), top, x(n - 1)) {
            probe.before(c, top, one);
            return Ok((
                tag("a1-holds-n/from-n"),
                cat(&[&w.xs(2, n - 1), &[top, one]]),
                cat(&[&w.arcs(2, n - 2), &[arc(1), c]]),
            ));
        }
        probe.before(a, x(n - 2), top);
        probe.before(arc(n - 2), x(n - 1), one);
        return Ok((
            tag("a1-holds-n/to-n"),
            cat(&[&w.xs(2, n - 2), &[top, x(n - 1), one]]),
            cat(&[&w.arcs(2, n - 3), &[a, arc(1), arc(n - 2)]]),
        ));
    }
    // a_1 = b, so a_2 .. a_{n-2} all hold n
    if probe.before(arc(n - 2), x(n - 2), top) {
        probe.before(a, x(n - 1), top);
        return Ok((
            tag("a1-is-b/last-arc-from-x(n-2)-to-n"),
            cat(&[&w.xs(1, n - 2), &[top, x(n - 1)]]),
            cat(&[&w.arcs(1, n - 3), &[arc(n - 2), a]]),
        ));
    }
    if probe.before(arc(n - 2), x(n - 1), top) {
        probe.before(a, x(n - 2), top);
        return Ok((
            tag("a1-is-b/last-arc-from-x(n-1)-to-n"),
            cat(&[&w.xs(1, n - 2), &[top, x(n - 1)]]),
            cat(&[&w.arcs(1, n - 3), &[a, arc(n - 2)]]),
        ));
    }
    if probe.before(a, x(n - 2), x(n - 1)) {
        return Ok((
            tag("a1-is-b/a-forward"),
            cat(&[&w.xs(1, n - 1), &[top]]),
            cat(&[&w.arcs(1, n - 3), &[a, arc(n - 2)]]),
        ));
    }
    if probe.before(c, x(n - 2), top) {
        return Ok((
            tag("a1-is-b/c-from-x(n-2)-to-n"),
            cat(&[&w.xs(1, n - 2), &[top, x(n - 1)]]),
            cat(&[&w.arcs(1, n - 3), &[c, a]]),
        ));
    }
    if probe.before(c, top, x(n - 3)) {
        return Ok((
            tag("a1-is-b/c-from-n-to-x(n-3)"),
            cat(&[&w.xs(1, n - 3), &[top, x(n - 2), x(n - 1)]]),
            cat(&[&w.arcs(1, n - 4), &[c, arc(n - 2), a]]),
        ));
    }
    if probe.before(arc(n - 3), x(n - 1), x(n - 3)) {
        return Ok((
            tag("a1-is-b/a(n-3)-from-x(n-1)"),
            cat(&[&w.xs(1, n - 3), &[x(n - 1), x(n - 2), top]]),
            cat(&[&w.arcs(1, n - 4), &[arc(n - 3), a, c]]),
        ));
    }
    if n >= 7 {
        return Ok((
            tag("a1-is-b/n-at-least-7"),
            cat(&[&w.xs(1, n - 4), &[top, x(n - 3), x(n - 1), x(n - 2)]]),
            cat(&[&w.arcs(1, n - 5), &[a, c, arc(n - 3), arc(n - 2)]]),
        ));
    }
    if n != 5 {
        return Err(Gap::new(tag("a1-is-b"), format!("n = {n} but the remaining branch needs n = 5")));
    }
    if probe.before(arc(1), x(3), one) {
        Ok((tag("a1-is-b/n-is-5/a1-to-1"), vec![top, x(2), x(4), x(3), one], vec![a, arc(2), arc(3), arc(1)]))
    } else {
        Ok((tag("a1-is-b/n-is-5/a1-from-1"), vec![one, x(3), top, x(4), x(2)], vec![arc(1), c, arc(3), arc(2)]))
    }
}

fn subcase_c_is_b(probe: &mut Probe<'_>, red: &Case1Reduction, w: &Walk<'_>, c: ArcId) -> Result<Built, Gap> {
    let n = red.frame.n();
    let top = Vertex(n as u32);
    let a = red.arc_a;
    let one = w.x(1);
    let x = |i| w.x(i);
    let arc = |i| w.arc(i);
    let tag = |s: &str| format!("Case1/Subcase1.2/{s}");

    if probe.before(c, x(n - 2), x(n - 1)) {
        // swap c in for the last arc; the freed arc is not b
        let arcs = cat(&[&w.arcs(1, n - 3), &[c]]);
        let inner = Walk { xs: w.xs, arcs: &arcs };
        let freed = arc(n - 2);
        let (t, vs, out) = subcase_c_not_b(probe, red, &inner, freed, "Subcase1.2/c-forward/Subcase1.1")?;
        return Ok((t, vs, out));
    }
    if probe.before(c, one, x(n - 1)) {
        probe.before(a, x(n - 2), top);
        return Ok((
            tag("c-from-1"),
            cat(&[&[x(n - 1)], &w.xs(1, n - 2), &[top]]),
            cat(&[&[c], &w.arcs(1, n - 3), &[a]]),
        ));
    }
    if probe.before(arc(n - 2), x(n - 2), one) {
        probe.before(a, x(n - 1), top);
        return Ok((
            tag("c-to-1/last-arc-to-1"),
            cat(&[&w.xs(2, n - 2), &[one, x(n - 1), top]]),
            cat(&[&w.arcs(2, n - 3), &[arc(n - 2), c, a]]),
        ));
    }
    probe.before(a, x(n - 1), top);
    Ok((
        tag("c-to-1/last-arc-from-1"),
        cat(&[&[top, x(n - 1), x(n - 2)], &w.xs(1, n - 3)]),
        cat(&[&[a, c, arc(n - 2)], &w.arcs(1, n - 4)]),
    ))
}

/// Lifted path with both ends terminal; the free arcs are `a` and `d`.
fn terminal_shape(probe: &mut Probe<'_>, red: &Case1Reduction, p: &AntidirectedPath, d: ArcId) -> Result<Built, Gap> {
    let n = red.frame.n();
    let top = Vertex(n as u32);
    let a = red.arc_a;
    let one = Vertex(1);
    let w = Walk { xs: p.vertices(), arcs: p.arcs() };
    let y = |i| w.x(i);
    let tag = |s: &str| format!("Case1/terminal-ends/{s}");

    if probe.before(d, top, y(n - 1)) {
        return Ok((tag("append-n-via-d"), cat(&[p.vertices(), &[top]]), cat(&[p.arcs(), &[d]])));
    }
    if probe.before(d, top, y(1)) {
        return Ok((tag("prepend-n-via-d"), cat(&[&[top], p.vertices()]), cat(&[&[d], p.arcs()])));
    }
    if y(n - 2) != one && probe.before(d, y(n - 1), top) {
        probe.before(a, y(n - 2), top);
        return Ok((
            tag("a-then-d-at-end"),
            cat(&[&w.xs(1, n - 2), &[top, y(n - 1)]]),
            cat(&[&w.arcs(1, n - 3), &[a, d]]),
        ));
    }
    if y(2) != one && probe.before(d, y(1), top) {
        probe.before(a, y(2), top);
        return Ok((
            tag("d-then-a-at-start"),
            cat(&[&[y(1), top], &w.xs(2, n - 1)]),
            cat(&[&[d, a], &w.arcs(2, n - 2)]),
        ));
    }
    Err(Gap::new(tag("exhausted"), "no printed extension applies to a path with two terminal ends"))
}

/// Both ends terminal and no direct extension. If `d` holds both ends, the
/// path closes into a cycle through `d` and reopens with starting ends,
/// which the starting-shape moves always finish. Otherwise `n` is spliced
/// in with a fresh choice of arcs for the tail of the path.
fn terminal_fallback(
    red: &Case1Reduction,
    p: &AntidirectedPath,
    d: ArcId,
    mut trace: CaseTrace,
    gap: Gap,
) -> Result<Solved, Gap> {
    let g = &red.frame;
    let n = g.n();
    let w = Walk { xs: p.vertices(), arcs: p.arcs() };
    let (first, last) = (w.x(1), w.x(n - 1));
    let mut probe = Probe::new(g);
    if probe.contains(d, first) && probe.contains(d, last) {
        let (label, vs, arcs, freed) = if probe.before(d, last, first) {
            ("last-to-first", cat(&[&[last], &w.xs(1, n - 2)]), cat(&[&[d], &w.arcs(1, n - 3)]), w.arc(n - 2))
        } else {
            ("first-to-last", cat(&[&w.xs(2, n - 1), &[first]]), cat(&[&w.arcs(2, n - 2), &[d]]), w.arc(1))
        };
        let rotated = validate_adp(g, &vs, &arcs)
            .map_err(|v| Gap::new("Case1/terminal-ends/rotate-d", format!("rotation broke: {v}")))?;
        let (tag, vs, arcs) = starting_shape(&mut probe, red, &rotated, freed)?;
        let tag = format!("Case1/terminal-ends/rotate-d/{label}/{}", tag.trim_start_matches("Case1/"));
        return finish(g, tag, vs, arcs, probe, trace);
    }
    let view = View { h: g, limit: n as u32, mirrored: false };
    let top = Vertex(n as u32);
    let family = "Case1/terminal-ends/resplice";
    let mut attempt = extend_exhaustive(view, p, top, family);
    if attempt.is_err() && first != Vertex(1) && last != Vertex(1) {
        // a holds both ends as well; close the cycle through a instead
        let (vs, arcs) = if probe.before(red.arc_a, last, first) {
            (cat(&[&[last], &w.xs(1, n - 2)]), cat(&[&[red.arc_a], &w.arcs(1, n - 3)]))
        } else {
            (cat(&[&w.xs(2, n - 1), &[first]]), cat(&[&w.arcs(2, n - 2), &[red.arc_a]]))
        };
        if let Ok(rotated) = validate_adp(g, &vs, &arcs) {
            attempt = extend_exhaustive(view, &rotated, top, "Case1/terminal-ends/rotate-a/resplice");
        }
    }
    let (path, step) = attempt.map_err(|e| {
        Gap::new(gap.branch, format!("{}; resplicing failed too: {}", gap.precondition, e.precondition))
    })?;
    trace.push("Case1/terminal-ends", probe.into_facts());
    trace.absorb_after(step);
    Ok((path, trace))
}
