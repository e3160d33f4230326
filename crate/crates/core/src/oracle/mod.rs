//! Complete brute-force solvers used as ground truth.
//!
//! [`solve_cover`] decides whether one graph covers another by backtracking
//! over vertex images (pruned by partial degree-obedience and fibre-size
//! bounds) and then over edge images (pruned by local bijectivity counts).
//! [`enumerate_colorings`] lists every constrained red/blue coloring of a
//! small graph. Both honor an explicit [`SearchBudget`]; exceeding it yields
//! an explicit unknown outcome, never a silent wrong answer.
//!
//! Searches run sequentially, so a yes witness is always the first one in
//! the fixed candidate order and repeated runs agree.

mod cover_search;

use std::collections::BTreeSet;
use std::time::Duration;

use crate::cover::CoverMap;
use crate::decide::{bc, TwoColoring};
use crate::graph::{Graph, VertexId};

/// Node and wall-clock limits for exact searches.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget { max_nodes: u64::MAX, time_limit: None }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, time_limit: None }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::unlimited()
    }
}

/// Outcome of the cover search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoverOutcome {
    Yes(CoverMap),
    No,
    /// Budget exhausted before the space was exhausted.
    Unknown,
}

impl CoverOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, CoverOutcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, CoverOutcome::No)
    }

    pub fn witness(self) -> Option<CoverMap> {
        match self {
            CoverOutcome::Yes(map) => Some(map),
            _ => None,
        }
    }
}

/// Outcome of a coloring enumeration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnumOutcome {
    Complete(Vec<TwoColoring>),
    Unknown,
}

/// Decides whether `g` covers `h`, producing a verified witness on yes.
///
/// A cover here maps onto every target vertex (fibres are nonempty), so a
/// graph smaller than the target never covers it. For a connected target,
/// components of the source are solved independently.
pub fn solve_cover(g: &Graph, h: &Graph, budget: &SearchBudget) -> CoverOutcome {
    cover_search::solve(g, h, budget)
}

/// All red/blue assignments in which every vertex of `frame` (default: every
/// vertex whose weighted degree is exactly `b + c`) has exactly `b` same- and
/// `c` other-color neighbors. Vertices outside the frame are unconstrained.
/// The result is closed under the global color swap and sorted canonically.
pub fn enumerate_colorings(
    g: &Graph,
    b: usize,
    c: usize,
    frame: Option<&BTreeSet<VertexId>>,
    budget: &SearchBudget,
) -> EnumOutcome {
    let default_frame;
    let frame = match frame {
        Some(f) => f,
        None => {
            default_frame = crate::decide::full_degree_frame(g, b, c);
            &default_frame
        }
    };
    match bc::search(g, b, c, frame, bc::Mode::EnumerateAll, budget) {
        bc::Outcome::Complete(colorings) => EnumOutcome::Complete(colorings),
        bc::Outcome::Unknown => EnumOutcome::Unknown,
    }
}
