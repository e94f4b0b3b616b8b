//! Hand-built instances that force particular constructor branches, checked
//! against the reference validator in `common`.

mod common;

use adhp::{find_adhp, ArcId, ExceptionalKind, Hypertournament, Outcome, Vertex};
use common::check_path;

fn build(n: usize, k: usize, arcs: &[&[u32]]) -> Hypertournament {
    Hypertournament::new(n, k, arcs.iter().copied()).unwrap()
}

fn solved(h: &Hypertournament) -> (Vec<u32>, Vec<usize>, Vec<String>) {
    match find_adhp(h).unwrap() {
        Outcome::Path { path, trace } => {
            check_path(h, &path).unwrap();
            let vertices = path.vertices().iter().map(|v| v.0).collect();
            let arcs = path.arcs().iter().map(|a| a.0).collect();
            (vertices, arcs, trace.tags().map(String::from).collect())
        }
        other => panic!("expected a path, got {other:?}"),
    }
}

#[test]
fn child_isomorphic_to_t3c() {
    // a = (2,3,4) misses 1 and ends in 4, b = (1,2,3) misses 4; the child
    // is 1->2, 2->3, 3->1 and (1,2,4) puts 1 before 4
    let h = build(4, 3, &[&[2, 3, 4], &[1, 2, 3], &[1, 2, 4], &[3, 1, 4]]);
    assert!(adhp::is_exceptional(&h).is_none());
    let (vertices, arcs, tags) = solved(&h);
    assert!(tags.iter().any(|t| t == "Case1/HprimeIsT3c/a1-from-1-to-4"), "{tags:?}");
    assert_eq!(vertices, [1, 4, 2, 3]);
    // 1 -> 4 by a1, 4 <- 2 by a, 2 -> 3 by b
    assert_eq!(arcs[1..], [0, 1]);
    assert!(h.arc_precedes(ArcId(arcs[0]), Vertex(1), Vertex(4)).unwrap());
}

#[test]
fn tournament_splice_around_t3c() {
    // 1 -> 2 -> 3 -> 1 and every vertex beats 4, so only h - 4 is cyclic;
    // with z1 = 1, z3 = 2, z2 = 3 the splice reads z3 <- z1 -> 4 <- z2
    let h = build(4, 2, &[&[1, 2], &[2, 3], &[3, 1], &[1, 4], &[2, 4], &[3, 4]]);
    let (vertices, _, tags) = solved(&h);
    assert_eq!(tags[0], "Case2/t3c-splice");
    assert_eq!(vertices, [2, 1, 4, 3]);
}

#[test]
fn h4_splice_from_two() {
    // H4 on 1..=4 with 5 appended last in every arc that holds it
    let mut arcs: Vec<&[u32]> = vec![&[2, 3, 4], &[4, 1, 2], &[3, 4, 1], &[1, 2, 3]];
    arcs.extend([&[1, 2, 5][..], &[1, 3, 5], &[1, 4, 5], &[2, 3, 5], &[2, 4, 5], &[3, 4, 5]]);
    let h = build(5, 3, &arcs);
    let minus = h.delete_vertex(Vertex(5)).unwrap();
    assert_eq!(adhp::is_exceptional(&minus.child).map(|w| w.kind), Some(ExceptionalKind::H4));
    let (vertices, _, tags) = solved(&h);
    assert!(tags.iter().any(|t| t.starts_with("Case2/H4-splice/into-5-from-2")), "{tags:?}");
    assert_eq!(vertices, [4, 2, 5, 1, 3]);
}

#[test]
fn exceptional_inputs_return_witnesses() {
    for kind in ExceptionalKind::ALL {
        let canon = kind.canonical();
        for h in [canon.clone(), canon.reverse()] {
            match find_adhp(&h).unwrap() {
                Outcome::Exceptional(w) => assert_eq!(w.kind, kind),
                other => panic!("{kind}: {other:?}"),
            }
        }
    }
}

#[test]
fn transitive_triple_has_a_path() {
    let h = build(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]);
    let (vertices, _, _) = solved(&h);
    assert_eq!(vertices.len(), 3);
}

#[test]
fn unsupported_inputs_are_rejected() {
    let h = adhp::random_hypertournament(13, 2, 0).unwrap();
    assert!(find_adhp(&h).is_err());
    let h = adhp::random_hypertournament(5, 5, 0).unwrap();
    assert!(find_adhp(&h).is_err());
}

/// Every way of attaching one more vertex to a rotational exception is
/// solved, by the splice or by search.
#[test]
fn every_attachment_to_a_rotational_exception() {
    for kind in [ExceptionalKind::T3c, ExceptionalKind::T5c, ExceptionalKind::T7c] {
        let canon = kind.canonical();
        let m = canon.n() as u32;
        for mask in 0u32..1 << m {
            let mut arcs: Vec<Vec<u32>> = canon.arcs().map(|a| a.iter().map(|v| v.0).collect()).collect();
            arcs.extend((1..=m).map(|z| if mask >> (z - 1) & 1 == 1 { vec![z, m + 1] } else { vec![m + 1, z] }));
            let h = Hypertournament::new(canon.n() + 1, 2, &arcs).unwrap();
            let (vertices, _, _) = solved(&h);
            assert_eq!(vertices.len(), canon.n() + 1, "{kind} mask {mask:b}");
        }
    }
}
