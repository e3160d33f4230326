//! Deterministic generators for hardness-reduction gadgets and full
//! reduction instances.
//!
//! Every generator returns a [`ReductionArtifact`]: the instance graph, a
//! provenance annotation for each vertex (hardness instances are unreadable
//! without them), the equivalence claim the construction establishes, and,
//! where the construction is accompanied by an explicit object, a witness
//! that verifies against the instance. Generators are pure functions of
//! their parameters: the same call always produces the identical serialized
//! instance.

mod bridges;
mod nonregular;
mod onevertex;
mod satbb;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::decide::Witness;
use crate::graph::{Graph, VertexId};

pub use bridges::{build_bb1_instance, build_bridge_cplus1, build_bridge_general, build_f_gadget};
pub use nonregular::{build_gab, build_galb, build_nonregular_instance};
pub use onevertex::{build_matchings_gadget, build_onevertex_instance};
pub use satbb::{
    assignment_from_coloring, build_bb_instance, build_unit_block, build_variable_gadget,
    SatFormula,
};

/// A generated gadget or reduction instance with provenance annotations.
#[derive(Clone, PartialEq, Debug)]
pub struct ReductionArtifact {
    pub instance: Graph,
    /// One label per instance vertex, tying it back to its source entity.
    pub annotations: BTreeMap<VertexId, String>,
    /// The equivalence or forcing statement the construction establishes.
    pub claim: String,
    pub witness: Option<Witness>,
}

impl ReductionArtifact {
    fn new(instance: Graph, claim: impl Into<String>) -> Self {
        ReductionArtifact {
            instance,
            annotations: BTreeMap::new(),
            claim: claim.into(),
            witness: None,
        }
    }

    /// Sidecar annotation lines: `a <vertex-id> <label>`.
    pub fn annotations_text(&self) -> String {
        let mut out = String::new();
        for (v, label) in &self.annotations {
            out.push_str(&format!("a {v} {label}\n"));
        }
        out
    }

    fn annotate(&mut self, v: impl Into<VertexId>, label: impl Into<String>) {
        self.annotations.insert(v.into(), label.into());
    }

    /// Every vertex must carry exactly one annotation.
    fn assert_fully_annotated(&self) {
        for v in self.instance.vertices() {
            assert!(self.annotations.contains_key(v), "missing annotation for `{v}`");
        }
        assert_eq!(self.annotations.len(), self.instance.vertex_count());
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("source graph unsuitable: {0}")]
    BadSource(String),
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("assignment does not satisfy the formula: {0}")]
    NotSatisfying(String),
}

/// Round-robin one-factorization of the complete graph on `n` vertices
/// (`n` even): `n - 1` rounds, each a perfect matching on `0..n`, jointly
/// covering every pair exactly once.
pub(crate) fn one_factorization(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 2 && n.is_multiple_of(2));
    let mut rounds = Vec::with_capacity(n - 1);
    let wheel = n - 1;
    for r in 0..wheel {
        let mut round = vec![(r, wheel)];
        for i in 1..n / 2 {
            let p = (r + i) % wheel;
            let q = (r + wheel - i) % wheel;
            round.push((p.min(q), p.max(q)));
        }
        round.sort();
        rounds.push(round);
    }
    rounds
}
