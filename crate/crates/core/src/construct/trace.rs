use serde::{Deserialize, Serialize};

use crate::hypertournament::{ArcCorrespondence, ArcId, Hypertournament, Relabeling, Vertex};

/// `before` precedes `after` in `arc`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fact {
    pub arc: ArcId,
    pub before: Vertex,
    pub after: Vertex,
}

impl Fact {
    pub fn holds_in(&self, h: &Hypertournament) -> bool {
        self.arc.0 < h.arc_count() && h.arc_precedes(self.arc, self.before, self.after) == Some(true)
    }
}

/// One branch taken by the constructor, with the precedence facts it relied
/// on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub tag: String,
    pub facts: Vec<Fact>,
}

/// The sequence of branches that produced a path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub steps: Vec<TraceStep>,
    /// Nodes visited by the augmenting-path fallback of arc selection.
    pub selection_nodes: u64,
    /// Largest single selection problem, in slots.
    pub max_slots: usize,
    /// Selections where greedy choice blocked and the fallback was needed.
    pub greedy_fallbacks: u32,
}

impl CaseTrace {
    pub(crate) fn push(&mut self, tag: impl Into<String>, facts: Vec<Fact>) {
        self.steps.push(TraceStep { tag: tag.into(), facts });
    }

    /// Prepend the steps of an earlier stage.
    pub(crate) fn absorb(&mut self, mut other: CaseTrace) {
        let mut steps = std::mem::take(&mut other.steps);
        steps.append(&mut self.steps);
        self.steps = steps;
        self.selection_nodes += other.selection_nodes;
        self.max_slots = self.max_slots.max(other.max_slots);
        self.greedy_fallbacks += other.greedy_fallbacks;
    }

    /// Append a later stage's steps.
    pub(crate) fn absorb_after(&mut self, mut other: CaseTrace) {
        self.steps.append(&mut other.steps);
        self.selection_nodes += other.selection_nodes;
        self.max_slots = self.max_slots.max(other.max_slots);
        self.greedy_fallbacks += other.greedy_fallbacks;
    }

    fn map_facts(mut self, f: impl Fn(Fact) -> Fact) -> Self {
        for step in &mut self.steps {
            for fact in &mut step.facts {
                *fact = f(*fact);
            }
        }
        self
    }

    /// Re-express a child's trace in its parent's arc ids and labels.
    pub(crate) fn lift(self, correspondence: &ArcCorrespondence, relabeling: &Relabeling) -> Self {
        self.map_facts(|f| Fact {
            arc: correspondence.parent(f.arc).expect("trace cites mapped arcs"),
            before: relabeling.to_parent(f.before).expect("trace cites mapped vertices"),
            after: relabeling.to_parent(f.after).expect("trace cites mapped vertices"),
        })
    }

    pub fn facts(&self) -> impl Iterator<Item = &Fact> {
        self.steps.iter().flat_map(|s| s.facts.iter())
    }

    pub fn tags(&self) -> impl Iterator<Item = &str> {
        self.steps.iter().map(|s| s.tag.as_str())
    }

    pub fn cites(&self, arc: ArcId) -> bool {
        self.facts().any(|f| f.arc == arc)
    }

    /// The first recorded fact that does not hold in `h`.
    pub fn first_false_fact(&self, h: &Hypertournament) -> Option<Fact> {
        self.facts().find(|f| !f.holds_in(h)).copied()
    }
}
