//! Variable and clause gadgets reducing exact-half satisfiability to
//! balanced two-colorings.
//!
//! The source problem: clauses of exactly `2b` distinct positive literals,
//! every variable occurring exactly `b + 1` times, asking for an assignment
//! making exactly `b` literals true per clause. Occurrence vertices carry
//! the truth value as a color, variable gadgets force all occurrences of a
//! variable to agree, and clause gadgets (complete bipartite blocks against
//! the occurrence vertices) force the exact-half split.

use std::collections::{BTreeMap, BTreeSet};

use crate::decide::{
    check_bc_coloring, check_frame_coloring, full_degree_frame, ColorTag, TwoColoring, Witness,
};
use crate::graph::{Graph, VertexId};

use super::{GadgetError, ReductionArtifact};

/// A formula in the exact-half satisfiability dialect: every clause has
/// exactly `2k` distinct positive literals and every variable occurs exactly
/// `occurrences` times.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SatFormula {
    pub k: usize,
    pub occurrences: usize,
    pub clauses: Vec<Vec<String>>,
}

impl SatFormula {
    pub fn new(
        k: usize,
        occurrences: usize,
        clauses: Vec<Vec<String>>,
    ) -> Result<SatFormula, GadgetError> {
        if k == 0 || occurrences == 0 {
            return Err(GadgetError::MalformedFormula("k and q must be positive".into()));
        }
        let mut counts: BTreeMap<&String, usize> = BTreeMap::new();
        for (i, clause) in clauses.iter().enumerate() {
            if clause.len() != 2 * k {
                return Err(GadgetError::MalformedFormula(format!(
                    "clause {} has {} literals, expected {}",
                    i + 1,
                    clause.len(),
                    2 * k
                )));
            }
            let distinct: BTreeSet<&String> = clause.iter().collect();
            if distinct.len() != clause.len() {
                return Err(GadgetError::MalformedFormula(format!(
                    "clause {} repeats a variable",
                    i + 1
                )));
            }
            for name in clause {
                if name.is_empty() || name.contains('#') || name.chars().any(char::is_whitespace) {
                    return Err(GadgetError::MalformedFormula(format!(
                        "bad variable name `{name}`"
                    )));
                }
                *counts.entry(name).or_default() += 1;
            }
        }
        for (name, count) in counts {
            if count != occurrences {
                return Err(GadgetError::MalformedFormula(format!(
                    "variable `{name}` occurs {count} times, expected {occurrences}"
                )));
            }
        }
        Ok(SatFormula { k, occurrences, clauses })
    }

    pub fn variables(&self) -> BTreeSet<&String> {
        self.clauses.iter().flatten().collect()
    }

    /// Format: header `p kin2k <k> <q>`, then one clause of `2k` variable
    /// names per line.
    pub fn parse(text: &str) -> Result<SatFormula, GadgetError> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        for raw in text.lines() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            if header.is_none() {
                match toks.as_slice() {
                    ["p", "kin2k", k, q] => {
                        let parse = |s: &str| {
                            s.parse::<usize>().map_err(|_| {
                                GadgetError::MalformedFormula(format!("bad header number `{s}`"))
                            })
                        };
                        header = Some((parse(k)?, parse(q)?));
                    }
                    _ => {
                        return Err(GadgetError::MalformedFormula(
                            "expected header `p kin2k <k> <q>`".into(),
                        ))
                    }
                }
            } else {
                clauses.push(toks.iter().map(|s| s.to_string()).collect());
            }
        }
        let Some((k, q)) = header else {
            return Err(GadgetError::MalformedFormula("missing header".into()));
        };
        SatFormula::new(k, q, clauses)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p kin2k {} {}\n", self.k, self.occurrences);
        for clause in &self.clauses {
            out.push_str(&clause.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Adds one thinned complete bipartite block: parts `u1..u_{2b+1}` and
/// `v1..v_{2b+1}` minus the diagonal `u_i v_i` and minus `u_i v_{i+b}` for
/// `i = 2..=b+1`.
fn add_block(g: &mut Graph, b: usize, prefix: &str) {
    let n = 2 * b + 1;
    for j in 1..=n {
        g.add_vertex(format!("{prefix}.u{j}")).unwrap();
        g.add_vertex(format!("{prefix}.v{j}")).unwrap();
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            if (2..=b + 1).contains(&i) && j == i + b {
                continue;
            }
            g.add_edge(
                format!("{prefix}.u{i}~v{j}"),
                format!("{prefix}.u{i}"),
                format!("{prefix}.v{j}"),
            )
            .unwrap();
        }
    }
}

/// Adds one unit of the variable gadget under `prefix`: blocks `k1` and
/// `k2`, a middle vertex joining them, and the left/right attachment
/// vertices that later reach the occurrence vertices.
fn add_unit(g: &mut Graph, b: usize, prefix: &str) {
    add_block(g, b, &format!("{prefix}.k1"));
    add_block(g, b, &format!("{prefix}.k2"));
    for extra in ["mid", "left", "right"] {
        g.add_vertex(format!("{prefix}.{extra}")).unwrap();
    }
    for i in (b + 2)..=(2 * b + 1) {
        g.add_edge(
            format!("{prefix}.mid~k1.v{i}"),
            format!("{prefix}.mid"),
            format!("{prefix}.k1.v{i}"),
        )
        .unwrap();
        g.add_edge(
            format!("{prefix}.right~k2.v{i}"),
            format!("{prefix}.right"),
            format!("{prefix}.k2.v{i}"),
        )
        .unwrap();
    }
    for i in 2..=(b + 1) {
        g.add_edge(
            format!("{prefix}.mid~k2.u{i}"),
            format!("{prefix}.mid"),
            format!("{prefix}.k2.u{i}"),
        )
        .unwrap();
        g.add_edge(
            format!("{prefix}.left~k1.u{i}"),
            format!("{prefix}.left"),
            format!("{prefix}.k1.u{i}"),
        )
        .unwrap();
    }
}

/// The coloring pattern of one unit for a given truth value. One class of
/// the bipartition is fixed, the other flips with the truth value.
fn unit_pattern(b: usize, prefix: &str, truth: bool) -> Vec<(VertexId, ColorTag)> {
    let n = 2 * b + 1;
    let varying = |base: ColorTag| if truth { base } else { base.flipped() };
    let mut out: Vec<(VertexId, ColorTag)> = Vec::new();
    // Fixed class.
    for j in 1..=n {
        let tag = if (2..=b + 1).contains(&j) { ColorTag::Blue } else { ColorTag::Red };
        out.push((format!("{prefix}.k1.v{j}").into(), tag));
        let tag = if j <= b + 1 { ColorTag::Blue } else { ColorTag::Red };
        out.push((format!("{prefix}.k2.u{j}").into(), tag));
    }
    out.push((format!("{prefix}.left").into(), ColorTag::Blue));
    out.push((format!("{prefix}.right").into(), ColorTag::Red));
    // Varying class.
    out.push((format!("{prefix}.mid").into(), varying(ColorTag::Blue)));
    for j in 1..=n {
        let tag = if j <= b + 1 { ColorTag::Red } else { ColorTag::Blue };
        out.push((format!("{prefix}.k1.u{j}").into(), varying(tag)));
        let tag = if (2..=b + 1).contains(&j) { ColorTag::Blue } else { ColorTag::Red };
        out.push((format!("{prefix}.k2.v{j}").into(), varying(tag)));
    }
    out
}

fn annotate_unit(artifact: &mut ReductionArtifact, prefix: &str, b: usize, label: &str) {
    let n = 2 * b + 1;
    for block in ["k1", "k2"] {
        for j in 1..=n {
            artifact.annotate(format!("{prefix}.{block}.u{j}"), format!("{label} {block} u{j}"));
            artifact.annotate(format!("{prefix}.{block}.v{j}"), format!("{label} {block} v{j}"));
        }
    }
    artifact.annotate(format!("{prefix}.mid"), format!("{label} middle"));
    artifact.annotate(format!("{prefix}.left"), format!("{label} left"));
    artifact.annotate(format!("{prefix}.right"), format!("{label} right"));
}

/// The monochromaticity block: one thinned bipartite block plus its two
/// attachment vertices. In every coloring exact on the block vertices (the
/// attachments are free), `u2..u_{b+1}` end up monochromatic.
pub fn build_unit_block(b: usize) -> Result<ReductionArtifact, GadgetError> {
    if b < 2 {
        return Err(GadgetError::BadParameters(format!("need b >= 2, got {b}")));
    }
    let mut g = Graph::new();
    add_block(&mut g, b, "k1");
    g.add_vertex("left").unwrap();
    g.add_vertex("mid").unwrap();
    for i in 2..=(b + 1) {
        g.add_edge(format!("left~k1.u{i}"), "left", format!("k1.u{i}")).unwrap();
    }
    for i in (b + 2)..=(2 * b + 1) {
        g.add_edge(format!("mid~k1.v{i}"), "mid", format!("k1.v{i}")).unwrap();
    }
    assert_eq!(g.vertex_count(), 2 * (2 * b + 1) + 2);
    let frame = full_degree_frame(&g, b, b);
    assert_eq!(frame.len(), 2 * (2 * b + 1));

    let mut colors: Vec<(VertexId, ColorTag)> = Vec::new();
    for (v, tag) in unit_pattern(b, "", true) {
        let name = v.as_str().trim_start_matches('.').to_string();
        if name.starts_with("k1") || name == "left" || name == "mid" {
            colors.push((name.into(), tag));
        }
    }
    let witness = TwoColoring { colors: colors.into_iter().collect(), own: b, other: b };
    assert_eq!(check_frame_coloring(&g, &witness, &frame), Ok(true));

    let mut artifact = ReductionArtifact::new(
        g,
        format!(
            "in every ({b},{b})-coloring exact on the block vertices, u2..u{} are monochromatic",
            b + 1
        ),
    );
    for j in 1..=(2 * b + 1) {
        artifact.annotate(format!("k1.u{j}"), format!("block u{j}"));
        artifact.annotate(format!("k1.v{j}"), format!("block v{j}"));
    }
    artifact.annotate("left", "attachment left");
    artifact.annotate("mid", "attachment middle");
    artifact.witness = Some(Witness::Coloring(witness));
    artifact.assert_fully_annotated();
    Ok(artifact)
}

/// The standalone variable gadget: `b + 1` units plus `2b + 2` occurrence
/// vertices wired to the left and right attachment columns through
/// `b`-regular bipartite layers. Occurrence vertices have degree `b` here;
/// the clause gadgets later bring them to `2b`.
pub fn build_variable_gadget(b: usize) -> Result<ReductionArtifact, GadgetError> {
    if b < 2 {
        return Err(GadgetError::BadParameters(format!("need b >= 2, got {b}")));
    }
    let mut g = Graph::new();
    for i in 1..=(b + 1) {
        add_unit(&mut g, b, &format!("unit{i}"));
    }
    for j in 1..=(2 * b + 2) {
        g.add_vertex(format!("occ{j}")).unwrap();
    }
    wire_occurrences(&mut g, b, "", "");

    let mut artifact = ReductionArtifact::new(
        g,
        format!(
            "in every ({b},{b})-coloring of a host in which the occurrence vertices reach full \
             degree, all {} occurrence vertices share one color",
            2 * b + 2
        ),
    );
    for i in 1..=(b + 1) {
        annotate_unit(&mut artifact, &format!("unit{i}"), b, &format!("unit {i}"));
    }
    for j in 1..=(2 * b + 2) {
        let side = if j <= b + 1 { "left" } else { "right" };
        artifact.annotate(format!("occ{j}"), format!("occurrence {j} ({side})"));
    }

    // Witness: the truth pattern with all occurrences blue, exact on every
    // full-degree vertex.
    let mut colors: BTreeMap<VertexId, ColorTag> = BTreeMap::new();
    for i in 1..=(b + 1) {
        for (v, tag) in unit_pattern(b, &format!("unit{i}"), true) {
            colors.insert(v, tag);
        }
    }
    for j in 1..=(2 * b + 2) {
        colors.insert(format!("occ{j}").into(), ColorTag::Blue);
    }
    let witness = TwoColoring { colors, own: b, other: b };
    let frame = full_degree_frame(&artifact.instance, b, b);
    assert_eq!(
        frame.len(),
        artifact.instance.vertex_count() - (2 * b + 2),
        "exactly the occurrence vertices are below full degree"
    );
    assert_eq!(check_frame_coloring(&artifact.instance, &witness, &frame), Ok(true));
    artifact.witness = Some(Witness::Coloring(witness));
    artifact.assert_fully_annotated();
    Ok(artifact)
}

/// Connects occurrence vertices to the unit attachment columns: occurrence
/// `j` (left) reaches lefts of units `j, j+1, .., j+b-1` cyclically, and the
/// right occurrences mirror it.
fn wire_occurrences(g: &mut Graph, b: usize, unit_prefix: &str, occ_prefix: &str) {
    let units = b + 1;
    for j in 1..=units {
        for o in 0..b {
            let unit = (j - 1 + o) % units + 1;
            g.add_edge(
                format!("{occ_prefix}occ{j}~{unit_prefix}unit{unit}.left"),
                format!("{occ_prefix}occ{j}"),
                format!("{unit_prefix}unit{unit}.left"),
            )
            .unwrap();
            g.add_edge(
                format!("{occ_prefix}occ{}~{unit_prefix}unit{unit}.right", units + j),
                format!("{occ_prefix}occ{}", units + j),
                format!("{unit_prefix}unit{unit}.right"),
            )
            .unwrap();
        }
    }
}

/// Full reduction instance: one variable gadget per variable, two complete
/// bipartite clause blocks per clause (a left and a right copy against the
/// left and right occurrence vertices), every occurrence vertex used by
/// exactly one clause copy. Given an assignment with exactly `b` true
/// literals per clause, emits the constructive coloring as witness.
pub fn build_bb_instance(
    phi: &SatFormula,
    b: usize,
    assignment: Option<&BTreeMap<String, bool>>,
) -> Result<ReductionArtifact, GadgetError> {
    if b < 2 {
        return Err(GadgetError::BadParameters(format!("need b >= 2, got {b}")));
    }
    if phi.k != b {
        return Err(GadgetError::MalformedFormula(format!(
            "formula has clause arity 2*{}, the reduction needs 2*{b}",
            phi.k
        )));
    }
    if phi.occurrences != b + 1 {
        return Err(GadgetError::MalformedFormula(format!(
            "formula has {} occurrences per variable, the reduction needs {}",
            phi.occurrences,
            b + 1
        )));
    }

    let mut g = Graph::new();
    let mut artifact = ReductionArtifact::new(
        Graph::new(),
        format!(
            "the formula has an assignment with exactly {b} true literals per clause iff the \
             graph has a ({b},{b})-coloring"
        ),
    );

    let variables: Vec<&String> = phi.variables().into_iter().collect();
    for x in &variables {
        let vp = format!("var.{x}.");
        for i in 1..=(b + 1) {
            add_unit(&mut g, b, &format!("{vp}unit{i}"));
            annotate_unit(&mut artifact, &format!("{vp}unit{i}"), b, &format!("variable {x} unit {i}"));
        }
        for j in 1..=(2 * b + 2) {
            g.add_vertex(format!("{vp}occ{j}")).unwrap();
            artifact.annotate(format!("{vp}occ{j}"), format!("occurrence {j} of variable {x}"));
        }
        wire_occurrences(&mut g, b, &vp, &vp);
    }

    // Clause blocks. The h-th clause containing a variable consumes its h-th
    // left and h-th right occurrence vertex.
    let mut seen: BTreeMap<&String, usize> = BTreeMap::new();
    for (ci, clause) in phi.clauses.iter().enumerate() {
        let i = ci + 1;
        for side in ["l", "r"] {
            for s in 1..=b {
                g.add_vertex(format!("cl{i}.{side}.s{s}")).unwrap();
                artifact.annotate(
                    format!("cl{i}.{side}.s{s}"),
                    format!("clause {i} {} slot {s}", if side == "l" { "left" } else { "right" }),
                );
            }
        }
        for x in clause {
            let h = seen.entry(x).or_insert(0);
            *h += 1;
            let left_occ = format!("var.{x}.occ{}", *h);
            let right_occ = format!("var.{x}.occ{}", b + 1 + *h);
            for s in 1..=b {
                g.add_edge(format!("cl{i}.l.s{s}~{left_occ}"), format!("cl{i}.l.s{s}"), left_occ.clone())
                    .unwrap();
                g.add_edge(
                    format!("cl{i}.r.s{s}~{right_occ}"),
                    format!("cl{i}.r.s{s}"),
                    right_occ.clone(),
                )
                .unwrap();
            }
        }
    }
    assert_eq!(g.regular_degree(), Some(2 * b), "the instance must be 2b-regular");

    if let Some(assignment) = assignment {
        let mut colors: BTreeMap<VertexId, ColorTag> = BTreeMap::new();
        for (ci, clause) in phi.clauses.iter().enumerate() {
            let truths = clause
                .iter()
                .map(|x| {
                    assignment.get(x).copied().ok_or_else(|| {
                        GadgetError::NotSatisfying(format!("variable `{x}` unassigned"))
                    })
                })
                .collect::<Result<Vec<bool>, _>>()?;
            let true_count = truths.iter().filter(|t| **t).count();
            if true_count != b {
                return Err(GadgetError::NotSatisfying(format!(
                    "clause {} has {true_count} true literals, expected {b}",
                    ci + 1
                )));
            }
        }
        for x in &variables {
            let truth = assignment[*x];
            let vp = format!("var.{x}.");
            for i in 1..=(b + 1) {
                for (v, tag) in unit_pattern(b, &format!("{vp}unit{i}"), truth) {
                    colors.insert(v, tag);
                }
            }
            let occ_tag = if truth { ColorTag::Blue } else { ColorTag::Red };
            for j in 1..=(2 * b + 2) {
                colors.insert(format!("{vp}occ{j}").into(), occ_tag);
            }
        }
        for i in 1..=phi.clauses.len() {
            for s in 1..=b {
                colors.insert(format!("cl{i}.l.s{s}").into(), ColorTag::Red);
                colors.insert(format!("cl{i}.r.s{s}").into(), ColorTag::Blue);
            }
        }
        let witness = TwoColoring { colors, own: b, other: b };
        assert_eq!(check_bc_coloring(&g, &witness), Ok(true), "constructive coloring must verify");
        artifact.witness = Some(Witness::Coloring(witness));
    }

    artifact.instance = g;
    artifact.assert_fully_annotated();
    Ok(artifact)
}

/// Reads a truth assignment off the occurrence vertices of an instance
/// produced by [`build_bb_instance`], using only the annotations. Errors if
/// some variable's occurrences disagree.
pub fn assignment_from_coloring(
    artifact: &ReductionArtifact,
    coloring: &TwoColoring,
) -> Result<BTreeMap<String, bool>, GadgetError> {
    let mut out: BTreeMap<String, Option<bool>> = BTreeMap::new();
    for (v, label) in &artifact.annotations {
        let Some(rest) = label.strip_prefix("occurrence ") else {
            continue;
        };
        let Some((_, var)) = rest.split_once(" of variable ") else {
            continue;
        };
        let Some(tag) = coloring.color_of(v) else {
            return Err(GadgetError::NotSatisfying(format!("vertex `{v}` is uncolored")));
        };
        let truth = tag == ColorTag::Blue;
        match out.entry(var.to_string()).or_insert(None) {
            slot @ None => *slot = Some(truth),
            Some(prev) => {
                if *prev != truth {
                    return Err(GadgetError::NotSatisfying(format!(
                        "occurrences of `{var}` are not monochromatic"
                    )));
                }
            }
        }
    }
    Ok(out.into_iter().map(|(k, v)| (k, v.expect("every variable has occurrences"))).collect())
}

#[cfg(test)]
mod tests_local {
    use super::*;

    #[test]
    fn formula_validation() {
        let phi = SatFormula::new(
            2,
            3,
            vec![
                vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
                vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
                vec!["x1".into(), "x2".into(), "x3".into(), "x4".into()],
            ],
        )
        .unwrap();
        assert_eq!(phi.variables().len(), 4);
        let round = SatFormula::parse(&phi.to_text()).unwrap();
        assert_eq!(round, phi);

        assert!(SatFormula::new(2, 3, vec![vec!["a".into(), "b".into()]]).is_err());
        assert!(SatFormula::new(
            2,
            2,
            vec![vec!["a".into(), "b".into(), "c".into(), "d".into()]]
        )
        .is_err());
        assert!(SatFormula::parse("p kin2k 2\n").is_err());
    }

    #[test]
    fn unit_block_shape() {
        let art = build_unit_block(2).unwrap();
        assert_eq!(art.instance.vertex_count(), 12);
        assert!(build_unit_block(1).is_err());
    }

    #[test]
    fn variable_gadget_counts() {
        let art = build_variable_gadget(2).unwrap();
        // (b+1) units of 2(2b+1)+3 vertices plus 2b+2 occurrences.
        assert_eq!(art.instance.vertex_count(), 3 * 23 + 6);
    }
}
