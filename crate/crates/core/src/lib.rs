//! Graph covers for multigraphs with semi-edges.
//!
//! A *graph* here is a multigraph whose edge set splits into three disjoint
//! families: ordinary edges joining two distinct vertices, loops incident to a
//! single vertex (contributing two to its degree), and semi-edges incident to
//! a single vertex (contributing one). A *covering projection* is a pair of
//! vertex/edge maps forming a locally bijective homomorphism: preimages of
//! ordinary edges are perfect matchings between two fibres, preimages of
//! semi-edges are spanning unions of edges and semi-edges inside a fibre, and
//! preimages of loops are spanning unions of loops and cycles.
//!
//! The crate provides:
//!
//! * [`graph`] — the data model, structural predicates and a line-based text
//!   format,
//! * [`cover`] — cover maps, the eight-condition verifier and the
//!   degree-obedience test,
//! * [`factor`] — matching, bipartite edge coloring, 2-factorization,
//!   degree-constrained subgraphs and the exact disjoint-perfect-matchings
//!   search,
//! * [`decide`] — polynomial deciders for one- and two-vertex targets, the
//!   bipartite extension algorithm and `(b,c)`-coloring machinery,
//! * [`oracle`] — complete brute-force solvers used as ground truth,
//! * [`gadgets`] — deterministic generators for hardness-reduction gadgets
//!   and full reduction instances.

pub mod cover;
pub mod decide;
pub mod factor;
pub mod families;
pub mod gadgets;
pub mod graph;
pub mod oracle;

pub(crate) mod indexed;
