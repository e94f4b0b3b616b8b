//! Antidirected hamiltonian paths in k-hypertournaments.
//!
//! A k-hypertournament orders every k-subset of `1..=n` into one tuple. A
//! path is antidirected when consecutive steps run against each other.
//! Except for four small structures (the rotational tournaments on 3, 5 and
//! 7 vertices and one 3-hypertournament on 4 vertices) every
//! k-hypertournament has such a path through all of its vertices.
//!
//! [`find_adhp`] builds that path in polynomial time, or returns a witness
//! that the input is one of the four exceptions. [`find_adhp_exhaustive`]
//! is the brute-force oracle used to check it.
//!
//! ```
//! use adhp::{find_adhp, random_hypertournament, Outcome};
//!
//! let h = random_hypertournament(12, 3, 1).unwrap();
//! match find_adhp(&h).unwrap() {
//!     Outcome::Path { path, .. } => assert_eq!(path.len(), 12),
//!     other => panic!("{other:?}"),
//! }
//! ```

pub mod campaign;
pub mod combinatorics;
pub mod construct;
pub mod exceptions;
pub mod format;
pub mod hypertournament;
pub mod oracle;
pub mod path;
pub mod rng;

pub use construct::{
    case1_solve, case2_extend, case2_solve, find_adhp, select_distinct_arcs, CaseTrace, Fact, Outcome,
    ProofGapDiagnostic, Selection, UnsupportedInput,
};
pub use exceptions::{count_labeled_copies, is_exceptional, isomorphisms, ExceptionalKind, ExceptionalWitness};
pub use format::{emit_instance, emit_path, parse_instance, parse_path, ParseError};
pub use hypertournament::{ArcId, BuildError, Hypertournament, Vertex};
pub use oracle::{enumerate_all, find_adhp_exhaustive, random_hypertournament, SearchBudget, SearchOutcome};
pub use path::{validate_adp, AntidirectedPath, EndpointRole, Step};

// the guide's snippets run as doc-tests, one module per chapter
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/README.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hypertournaments.md")]
    mod hypertournaments {}
    #[doc = include_str!("../../../book/src/paths.md")]
    mod paths {}
    #[doc = include_str!("../../../book/src/exceptions.md")]
    mod exceptions {}
    #[doc = include_str!("../../../book/src/constructor.md")]
    mod constructor {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
