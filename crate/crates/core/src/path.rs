//! Antidirected paths: validation, endpoint roles, reversal and lifting.
//!
//! A path `x1 a1 x2 a2 ... x_t` uses distinct vertices and distinct arcs and
//! its steps alternate direction: each step is [`Step::Forward`] when `x_i`
//! precedes `x_{i+1}` in `a_i` and [`Step::Backward`] otherwise. Directions
//! are always recomputed from the arcs, never stored independently.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypertournament::{ArcCorrespondence, ArcId, Hypertournament, Relabeling, Vertex};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Forward,
    Backward,
}

impl Step {
    pub fn flip(self) -> Self {
        match self {
            Step::Forward => Step::Backward,
            Step::Backward => Step::Forward,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointRole {
    /// The path's arc leaves this endpoint.
    Starting,
    /// The path's arc enters this endpoint.
    Terminal,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    LengthMismatch,
    TooShort,
    UnknownVertex,
    UnknownArc,
    RepeatedVertex,
    RepeatedArc,
    VertexNotInArc,
    AlternationBroken,
}

/// The first reason a vertex/arc sequence is not an antidirected path.
/// `index` points into the vertex sequence for vertex problems and into the
/// arc sequence otherwise.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("{kind:?} at index {index}")]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntidirectedPath {
    vertices: Vec<Vertex>,
    arcs: Vec<ArcId>,
    steps: Vec<Step>,
}

impl fmt::Display for AntidirectedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for ((v, a), s) in self.vertices[1..].iter().zip(&self.arcs).zip(&self.steps) {
            let arrow = match s {
                Step::Forward => "->",
                Step::Backward => "<-",
            };
            write!(f, " {arrow}[{}] {v}", a.0)?;
        }
        Ok(())
    }
}

/// Check a vertex/arc sequence against the definition of an antidirected
/// path in `h`.
pub fn validate_adp(h: &Hypertournament, vertices: &[Vertex], arcs: &[ArcId]) -> Result<AntidirectedPath, Violation> {
    let fail = |kind, index| Err(Violation { kind, index });
    if vertices.len() < 2 {
        return fail(ViolationKind::TooShort, 0);
    }
    if arcs.len() + 1 != vertices.len() {
        return fail(ViolationKind::LengthMismatch, arcs.len().min(vertices.len()));
    }
    let mut seen = HashSet::with_capacity(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        if !h.contains_vertex(v) {
            return fail(ViolationKind::UnknownVertex, i);
        }
        if !seen.insert(v) {
            return fail(ViolationKind::RepeatedVertex, i);
        }
    }
    let mut used = HashSet::with_capacity(arcs.len());
    for (i, &a) in arcs.iter().enumerate() {
        if a.0 >= h.arc_count() {
            return fail(ViolationKind::UnknownArc, i);
        }
        if !used.insert(a) {
            return fail(ViolationKind::RepeatedArc, i);
        }
    }
    let mut steps = Vec::with_capacity(arcs.len());
    for (i, &a) in arcs.iter().enumerate() {
        let step = match h.arc_precedes(a, vertices[i], vertices[i + 1]) {
            Some(true) => Step::Forward,
            Some(false) => Step::Backward,
            None => return fail(ViolationKind::VertexNotInArc, i),
        };
        if steps.last() == Some(&step) {
            return fail(ViolationKind::AlternationBroken, i);
        }
        steps.push(step);
    }
    Ok(AntidirectedPath { vertices: vertices.to_vec(), arcs: arcs.to_vec(), steps })
}

impl AntidirectedPath {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[ArcId] {
        &self.arcs
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_hamiltonian(&self, h: &Hypertournament) -> bool {
        self.vertices.len() == h.n()
    }

    /// Roles of the first and last vertex.
    pub fn endpoint_roles(&self) -> (EndpointRole, EndpointRole) {
        let first = match self.steps[0] {
            Step::Forward => EndpointRole::Starting,
            Step::Backward => EndpointRole::Terminal,
        };
        let last = match self.steps[self.steps.len() - 1] {
            Step::Backward => EndpointRole::Starting,
            Step::Forward => EndpointRole::Terminal,
        };
        (first, last)
    }

    /// The same path traversed from the other end.
    pub fn reverse_path(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut arcs = self.arcs.clone();
        arcs.reverse();
        let steps = self.steps.iter().rev().map(|s| s.flip()).collect();
        Self { vertices, arcs, steps }
    }

    /// The same sequences read in the reversed hypertournament, where every
    /// step changes direction.
    pub fn mirrored(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            arcs: self.arcs.clone(),
            steps: self.steps.iter().map(|s| s.flip()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("child arc {0} has no parent arc")]
    UnmappedArc(ArcId),
    #[error("child vertex {0} has no parent vertex")]
    UnmappedVertex(Vertex),
    #[error("lifted sequence is not antidirected in the parent: {0}")]
    LiftBrokeAlternation(Violation),
}

/// Reinterpret a path of a reduced hypertournament inside its parent.
pub fn lift_path(
    path: &AntidirectedPath,
    parent: &Hypertournament,
    correspondence: &ArcCorrespondence,
    relabeling: &Relabeling,
) -> Result<AntidirectedPath, LiftError> {
    let vertices = path
        .vertices
        .iter()
        .map(|&v| relabeling.to_parent(v).ok_or(LiftError::UnmappedVertex(v)))
        .collect::<Result<Vec<_>, _>>()?;
    let arcs = path
        .arcs
        .iter()
        .map(|&a| correspondence.parent(a).ok_or(LiftError::UnmappedArc(a)))
        .collect::<Result<Vec<_>, _>>()?;
    validate_adp(parent, &vertices, &arcs).map_err(LiftError::LiftBrokeAlternation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(xs: &[u32]) -> Vec<Vertex> {
        xs.iter().map(|&x| Vertex(x)).collect()
    }

    fn ids(xs: &[usize]) -> Vec<ArcId> {
        xs.iter().map(|&x| ArcId(x)).collect()
    }

    fn h4() -> Hypertournament {
        Hypertournament::new(4, 3, [[2, 3, 4], [4, 1, 2], [3, 4, 1], [1, 2, 3]]).unwrap()
    }

    #[test]
    fn validates_short_path_in_h4() {
        let h = h4();
        let p = validate_adp(&h, &vs(&[2, 4, 3]), &ids(&[0, 2])).unwrap();
        assert_eq!(p.steps(), &[Step::Forward, Step::Backward]);
        assert!(!p.is_hamiltonian(&h));
        assert_eq!(p.endpoint_roles(), (EndpointRole::Starting, EndpointRole::Starting));
        assert_eq!(p.to_string(), "2 ->[0] 4 <-[2] 3");
    }

    #[test]
    fn violations_carry_kind_and_index() {
        let h = h4();
        let err = validate_adp(&h, &vs(&[2, 4, 3]), &ids(&[0, 0])).unwrap_err();
        assert_eq!(err, Violation { kind: ViolationKind::RepeatedArc, index: 1 });
        let err = validate_adp(&h, &vs(&[2, 4, 2]), &ids(&[0, 2])).unwrap_err();
        assert_eq!(err.kind, ViolationKind::RepeatedVertex);
        // (4,1,2) does not contain 3
        let err = validate_adp(&h, &vs(&[2, 3]), &ids(&[1])).unwrap_err();
        assert_eq!(err, Violation { kind: ViolationKind::VertexNotInArc, index: 0 });
        // 2 -> 3 in (2,3,4), then 3 -> 4 in (3,4,1): same direction twice
        let err = validate_adp(&h, &vs(&[2, 3, 4]), &ids(&[0, 2])).unwrap_err();
        assert_eq!(err, Violation { kind: ViolationKind::AlternationBroken, index: 1 });
        let err = validate_adp(&h, &vs(&[2, 3]), &ids(&[0, 2])).unwrap_err();
        assert_eq!(err.kind, ViolationKind::LengthMismatch);
        let err = validate_adp(&h, &vs(&[2]), &[]).unwrap_err();
        assert_eq!(err.kind, ViolationKind::TooShort);
    }

    #[test]
    fn single_step_path() {
        let t = Hypertournament::new(3, 2, [[1, 2], [2, 3], [3, 1]]).unwrap();
        let p = validate_adp(&t, &vs(&[1, 2]), &ids(&[0])).unwrap();
        assert_eq!(p.endpoint_roles(), (EndpointRole::Starting, EndpointRole::Terminal));
    }

    #[test]
    fn transitive_triangle_path_is_hamiltonian() {
        let t = Hypertournament::new(3, 2, [[1, 2], [1, 3], [2, 3]]).unwrap();
        let p = validate_adp(&t, &vs(&[1, 3, 2]), &ids(&[1, 2])).unwrap();
        assert!(p.is_hamiltonian(&t));
    }

    #[test]
    fn reversal() {
        let h = h4();
        let p = validate_adp(&h, &vs(&[2, 4, 3]), &ids(&[0, 2])).unwrap();
        let r = p.reverse_path();
        assert_eq!(r.vertices(), &vs(&[3, 4, 2])[..]);
        assert_eq!(validate_adp(&h, r.vertices(), r.arcs()).unwrap(), r);
        assert_eq!(r.reverse_path(), p);
        assert_eq!(r.endpoint_roles(), p.endpoint_roles());

        let m = p.mirrored();
        assert_eq!(validate_adp(&h.reverse(), m.vertices(), m.arcs()).unwrap(), m);
    }

    #[test]
    fn lifting() {
        let h = h4();
        let p = validate_adp(&h, &vs(&[2, 4, 3]), &ids(&[0, 2])).unwrap();
        let same = lift_path(&p, &h, &ArcCorrespondence::identity(4), &Relabeling::identity(4)).unwrap();
        assert_eq!(same, p);
        let short = ArcCorrespondence::from_parent_ids(ids(&[0]));
        assert_eq!(lift_path(&p, &h, &short, &Relabeling::identity(4)), Err(LiftError::UnmappedArc(ArcId(2))));
    }
}
