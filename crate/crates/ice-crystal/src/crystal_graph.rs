//! Generation of the full crystal on ice models: the highest weight model,
//! breadth-first closure under the lowering operators, staircase checks,
//! crystal-axiom auditing, character extraction, and the graph file formats.

use std::collections::BTreeMap;
use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal_ops::{e_op, f_op, pairing, weight, Weight};
use crate::graph::CrystalGraph;
use crate::ice_model::{from_boxes, BoxSet, IceModel, Sign};
use crate::partition::Partition;
use crate::stembridge::{path_stats, PathError};

/// Canonical node key: the partition followed by the sorted box set. Models
/// biject with their box sets, so this is collision free within a family.
pub fn canonical_key(lambda: &Partition, boxes: &BoxSet) -> String {
    use std::fmt::Write;
    let mut key = String::new();
    for (i, p) in lambda.parts().iter().enumerate() {
        if i > 0 {
            key.push(',');
        }
        write!(key, "{p}").unwrap();
    }
    key.push('|');
    for (p, q) in boxes.iter() {
        write!(key, "({p},{q})").unwrap();
    }
    key
}

/// The model annihilated by every raising operator: row i carries its boxes
/// in the rightmost λᵢ columns, forming the staircase.
pub fn highest_weight_model(lambda: &Partition) -> IceModel {
    let s = lambda.num_cols();
    let mut boxes = BoxSet::new();
    for i in 1..=lambda.num_rows() {
        for q in (s - lambda.part(i) + 1)..=s {
            boxes.insert(i, q);
        }
    }
    from_boxes(lambda, &boxes).expect("the staircase box set always reconstructs")
}

/// The generated crystal: an abstract colored graph plus the ice model
/// behind each node, in breadth-first discovery order.
#[derive(Clone, Debug)]
pub struct IceCrystal {
    lambda: Partition,
    graph: CrystalGraph,
    models: Vec<IceModel>,
}

#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("crystal exceeds the node cap of {cap}")]
    NodeCap { cap: usize },
    #[error("raising-operator audit failed at node {key} color {color}: {detail}")]
    RaisingAudit {
        key: String,
        color: usize,
        detail: String,
    },
}

/// Breadth-first closure of the highest weight model under the lowering
/// operators, colors in ascending order. A raising-operator pass then
/// verifies that every raising image is already a known node and matches the
/// recorded edges; it can discover nothing new.
pub fn generate(lambda: &Partition, node_cap: usize) -> Result<IceCrystal, GenerateError> {
    let n = lambda.num_rows();
    let hw = highest_weight_model(lambda);
    let mut graph = CrystalGraph::new(n);
    let mut models = vec![hw.clone()];
    graph.add_node(canonical_key(lambda, &hw.boxes()), weight(&hw));
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        for i in 1..n {
            let Some(image) = f_op(&models[idx], i) else {
                continue;
            };
            let key = canonical_key(lambda, &image.boxes());
            let target = match graph.index_of(&key) {
                Some(existing) => existing,
                None => {
                    if graph.node_count() >= node_cap {
                        return Err(GenerateError::NodeCap { cap: node_cap });
                    }
                    let w = weight(&image);
                    models.push(image);
                    let fresh = graph.add_node(key, w);
                    queue.push_back(fresh);
                    fresh
                }
            };
            graph.add_edge(idx, i, target);
        }
    }

    for (idx, model) in models.iter().enumerate() {
        for i in 1..n {
            let recorded = graph
                .e_image(idx, i)
                .expect("generation produces functional edges");
            match e_op(model, i) {
                None => {
                    if let Some(src) = recorded {
                        return Err(GenerateError::RaisingAudit {
                            key: graph.key(idx).to_string(),
                            color: i,
                            detail: format!(
                                "raising gives nothing but an edge from {} exists",
                                graph.key(src)
                            ),
                        });
                    }
                }
                Some(raised) => {
                    let key = canonical_key(lambda, &raised.boxes());
                    if graph.index_of(&key) != recorded {
                        return Err(GenerateError::RaisingAudit {
                            key: graph.key(idx).to_string(),
                            color: i,
                            detail: format!("raising gives {key}, not the recorded edge source"),
                        });
                    }
                }
            }
        }
    }

    Ok(IceCrystal {
        lambda: lambda.clone(),
        graph,
        models,
    })
}

impl IceCrystal {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn graph(&self) -> &CrystalGraph {
        &self.graph
    }

    pub fn model(&self, idx: usize) -> &IceModel {
        &self.models[idx]
    }

    pub fn models(&self) -> &[IceModel] {
        &self.models
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }
}

/// Keys of the nodes with no incoming edge of any color.
pub fn find_highest_weights(g: &CrystalGraph) -> Vec<String> {
    g.sources()
        .into_iter()
        .map(|i| g.key(i).to_string())
        .collect()
}

// --- staircase structure -----------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StaircaseViolation {
    /// Clause (a): the boxes of this row are not a suffix of its columns.
    RowNotRightFlushed { row: usize },
    /// Clause (b): threshold of this row is below the previous row's.
    ThresholdOrder { row: usize },
    /// Clause (c): a box sits too close to the left wall.
    BoxTooFarLeft { row: usize, col: usize },
    /// Clause (d): the diagonal of minuses above the leftmost stair box
    /// stops before the top of the model.
    DiagonalBroken {
        row: usize,
        at_row: usize,
        at_col: usize,
    },
    /// Clause (e): stairs do not biject with the top-boundary minuses.
    StairMinusMismatch { detail: String },
}

impl fmt::Display for StaircaseViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StaircaseViolation::RowNotRightFlushed { row } => {
                write!(f, "(a) row {row}: boxes are not right-flushed")
            }
            StaircaseViolation::ThresholdOrder { row } => {
                write!(f, "(b) row {row}: stair threshold decreases")
            }
            StaircaseViolation::BoxTooFarLeft { row, col } => {
                write!(f, "(c) box ({row},{col}) violates q ≥ n − p + 2")
            }
            StaircaseViolation::DiagonalBroken {
                row,
                at_row,
                at_col,
            } => {
                write!(
                    f,
                    "(d) diagonal above row {row}'s stair misses a minus at ({at_row},{at_col})"
                )
            }
            StaircaseViolation::StairMinusMismatch { detail } => {
                write!(f, "(e) stair/top-minus bijection fails: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct StaircaseReport {
    pub violations: Vec<StaircaseViolation>,
}

impl StaircaseReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the box pattern expected of a highest weight model: per-row
/// right-flushed stairs with weakly increasing thresholds, the lower bound
/// q ≥ n − p + 2 on box columns, a diagonal of minuses running from each
/// stair to the top boundary, and the stair/top-minus bijection.
#[allow(clippy::needless_range_loop)] // rows are 1-based throughout
pub fn verify_staircase(m: &IceModel) -> StaircaseReport {
    let n = m.num_rows();
    let s = m.num_cols();
    let boxes = m.boxes();
    let mut report = StaircaseReport::default();

    // (a) right-flushed rows; threshold q_i = s − (stair length).
    let mut thresholds: Vec<Option<usize>> = vec![None; n + 1];
    for i in 1..=n {
        let cols: Vec<usize> = boxes.in_row(i).map(|(_, q)| q).collect();
        let len = cols.len();
        let flushed = cols.iter().copied().eq((s - len + 1)..=s);
        if flushed {
            thresholds[i] = Some(s - len);
        } else {
            report
                .violations
                .push(StaircaseViolation::RowNotRightFlushed { row: i });
        }
    }

    // (b) q₁ ≤ q₂ ≤ … ≤ qₙ, on the rows where thresholds exist.
    for i in 2..=n {
        if let (Some(prev), Some(cur)) = (thresholds[i - 1], thresholds[i]) {
            if prev > cur {
                report
                    .violations
                    .push(StaircaseViolation::ThresholdOrder { row: i });
            }
        }
    }

    // (c) every box satisfies q ≥ n − p + 2.
    for (p, q) in boxes.iter() {
        if q + p < n + 2 {
            report
                .violations
                .push(StaircaseViolation::BoxTooFarLeft { row: p, col: q });
        }
    }

    // (d) the diagonal of minuses above the leftmost stair box reaches the
    // top row. A stair of length zero starts its diagonal at column s.
    for i in 1..=n {
        let Some(q_i) = thresholds[i] else { continue };
        let leftmost = q_i + 1; // first box column; s + 1 when the stair is empty
        for k in 0..=(n - i) {
            let col = leftmost as i64 - 1 - k as i64;
            let row = i + k;
            if col < 1 || m.v_edges()[row][col as usize - 1] != Sign::Minus {
                report.violations.push(StaircaseViolation::DiagonalBroken {
                    row: i,
                    at_row: row,
                    at_col: col.max(0) as usize,
                });
                break;
            }
        }
    }

    // (e) stair i meets the top boundary at column qᵢ − n + i; these columns
    // must be exactly the top-boundary minuses. Signed arithmetic: a stair
    // that is too long would otherwise push the column below zero.
    let mut stair_cols: Vec<i64> = Vec::new();
    let mut all_flushed = true;
    for i in 1..=n {
        match thresholds[i] {
            Some(q_i) => stair_cols.push(q_i as i64 + i as i64 - n as i64),
            None => all_flushed = false,
        }
    }
    if all_flushed {
        let observed: Vec<i64> = (1..=s as i64)
            .filter(|&q| m.v_edges()[n][q as usize - 1] == Sign::Minus)
            .collect();
        let mut expected = stair_cols.clone();
        expected.sort_unstable();
        expected.dedup();
        if expected.len() != stair_cols.len() || expected != observed {
            report
                .violations
                .push(StaircaseViolation::StairMinusMismatch {
                    detail: format!(
                        "stairs map to columns {stair_cols:?}, top minuses at {observed:?}"
                    ),
                });
        }
    }

    report
}

// --- crystal axiom auditing ---------------------------------------------------

/// Access to the underlying operator maps, used to confront a graph's edges
/// with the operators that should have produced them.
pub trait OperatorOracle {
    fn f_key(&self, node: usize, color: usize) -> Option<String>;
    fn e_key(&self, node: usize, color: usize) -> Option<String>;
}

impl OperatorOracle for IceCrystal {
    fn f_key(&self, node: usize, color: usize) -> Option<String> {
        f_op(&self.models[node], color).map(|m| canonical_key(&self.lambda, &m.boxes()))
    }

    fn e_key(&self, node: usize, color: usize) -> Option<String> {
        e_op(&self.models[node], color).map(|m| canonical_key(&self.lambda, &m.boxes()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomClause {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    /// Branching or a cycle makes ε and φ ill-defined at this node.
    Structure,
}

impl fmt::Display for AxiomClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AxiomClause::C1 => "C1",
            AxiomClause::C2 => "C2",
            AxiomClause::C3 => "C3",
            AxiomClause::C4 => "C4",
            AxiomClause::C5 => "C5",
            AxiomClause::C6 => "C6",
            AxiomClause::Structure => "structure",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug)]
pub struct AxiomViolation {
    pub clause: AxiomClause,
    pub node: String,
    pub color: usize,
    pub detail: String,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at node {} color {}: {}",
            self.clause, self.node, self.color, self.detail
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the six defining clauses of a crystal at every node and color,
/// with ε and φ computed as graph path lengths. When an operator oracle is
/// supplied, clause C6 additionally confronts every edge with the operators:
/// an i-edge a → b must exist exactly when the lowering operator maps a to b
/// and the raising operator maps b back to a.
pub fn check_axioms_c1_c6(g: &CrystalGraph, ops: Option<&dyn OperatorOracle>) -> AxiomReport {
    let mut report = AxiomReport::default();
    let n = g.weight_len();
    let mut push = |clause, node: &str, color, detail| {
        report.violations.push(AxiomViolation {
            clause,
            node: node.to_string(),
            color,
            detail,
        });
    };

    let mut stats: Vec<Vec<Option<(usize, usize)>>> =
        vec![vec![None; n.saturating_sub(1)]; g.node_count()];
    for (idx, data) in g.nodes() {
        if data.weight.len() != n {
            push(
                AxiomClause::Structure,
                &data.key,
                0,
                format!("weight length {} differs from {n}", data.weight.len()),
            );
            continue;
        }
        for i in 1..n {
            match path_stats(g, idx, i) {
                Ok(st) => stats[idx][i - 1] = Some(st),
                Err(PathError::Branching(_)) => push(
                    AxiomClause::Structure,
                    &data.key,
                    i,
                    "branching edge of this color".into(),
                ),
                Err(PathError::Cycle { .. }) => push(
                    AxiomClause::Structure,
                    &data.key,
                    i,
                    "monochromatic cycle".into(),
                ),
            }
        }
    }

    // C1 at every node and color.
    for (idx, data) in g.nodes() {
        if data.weight.len() != n {
            continue;
        }
        for i in 1..n {
            let Some((eps, phi)) = stats[idx][i - 1] else {
                continue;
            };
            let paired = pairing(i, &data.weight);
            if phi as i64 != eps as i64 + paired {
                push(
                    AxiomClause::C1,
                    &data.key,
                    i,
                    format!("φ = {phi}, ε = {eps}, ⟨hᵢ,wt⟩ = {paired}"),
                );
            }
        }
    }

    // C2–C5 along every edge.
    for (a, i, b) in g.edges() {
        if i < 1 || i >= n {
            push(
                AxiomClause::Structure,
                g.key(a),
                i,
                format!("edge color {i} outside 1..={}", n - 1),
            );
            continue;
        }
        let (wa, wb) = (g.weight(a), g.weight(b));
        if wa.len() == n && wb.len() == n {
            let alpha = Weight::alpha(i, n);
            if *wa != wb.add(&alpha) {
                push(
                    AxiomClause::C2,
                    g.key(b),
                    i,
                    format!(
                        "wt(ẽᵢ b) = {:?} ≠ wt(b) + αᵢ = {:?}",
                        wa.canonical(),
                        wb.add(&alpha).canonical()
                    ),
                );
                push(
                    AxiomClause::C3,
                    g.key(a),
                    i,
                    format!(
                        "wt(f̃ᵢ b) = {:?} ≠ wt(b) − αᵢ = {:?}",
                        wb.canonical(),
                        wa.sub(&alpha).canonical()
                    ),
                );
            }
        }
        if let (Some((ea, pa)), Some((eb, pb))) = (stats[a][i - 1], stats[b][i - 1]) {
            // Edge a → b means ẽᵢ(b) = a and f̃ᵢ(a) = b.
            if ea + 1 != eb || pa != pb + 1 {
                push(
                    AxiomClause::C4,
                    g.key(b),
                    i,
                    format!(
                        "ε/φ of the raising image are ({ea},{pa}), expected ({},{})",
                        eb as i64 - 1,
                        pb + 1
                    ),
                );
                push(
                    AxiomClause::C5,
                    g.key(a),
                    i,
                    format!(
                        "ε/φ of the lowering image are ({eb},{pb}), expected ({},{})",
                        ea + 1,
                        pa as i64 - 1
                    ),
                );
            }
        }
    }

    // C6: the recorded edges against the actual operator maps.
    if let Some(oracle) = ops {
        for (idx, data) in g.nodes() {
            for i in 1..n {
                let by_graph_f = g
                    .f_image(idx, i)
                    .ok()
                    .flatten()
                    .map(|t| g.key(t).to_string());
                let by_ops_f = oracle.f_key(idx, i);
                if by_graph_f != by_ops_f {
                    push(
                        AxiomClause::C6,
                        &data.key,
                        i,
                        format!(
                            "graph lowering edge to {by_graph_f:?}, operator gives {by_ops_f:?}"
                        ),
                    );
                }
                let by_graph_e = g
                    .e_image(idx, i)
                    .ok()
                    .flatten()
                    .map(|t| g.key(t).to_string());
                let by_ops_e = oracle.e_key(idx, i);
                if by_graph_e != by_ops_e {
                    push(
                        AxiomClause::C6,
                        &data.key,
                        i,
                        format!(
                            "graph raising edge from {by_graph_e:?}, operator gives {by_ops_e:?}"
                        ),
                    );
                }
            }
        }
    }

    report
}

/// Multiset of node weights in canonical form.
pub fn character(g: &CrystalGraph) -> BTreeMap<Vec<i64>, usize> {
    let mut multiset = BTreeMap::new();
    for (_, data) in g.nodes() {
        *multiset.entry(data.weight.canonical()).or_insert(0) += 1;
    }
    multiset
}

// --- graph file formats -------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct GraphNodeJson {
    pub key: String,
    pub boxes: Vec<(usize, usize)>,
    pub weight: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
pub struct GraphEdgeJson {
    pub src: String,
    pub color: usize,
    pub dst: String,
}

/// Wire form of a crystal graph: nodes sorted by key, edges sorted by
/// (src, color, dst).
#[derive(Serialize, Deserialize)]
pub struct GraphJson {
    pub lambda: Vec<usize>,
    pub nodes: Vec<GraphNodeJson>,
    pub edges: Vec<GraphEdgeJson>,
}

impl GraphJson {
    pub fn from_crystal(c: &IceCrystal) -> GraphJson {
        let g = c.graph();
        let mut nodes: Vec<GraphNodeJson> = g
            .nodes()
            .map(|(idx, data)| GraphNodeJson {
                key: data.key.clone(),
                boxes: c.model(idx).boxes().iter().collect(),
                weight: data.weight.counts().to_vec(),
            })
            .collect();
        nodes.sort_by(|a, b| a.key.cmp(&b.key));
        let mut edges: Vec<GraphEdgeJson> = g
            .edges()
            .map(|(s, color, d)| GraphEdgeJson {
                src: g.key(s).to_string(),
                color,
                dst: g.key(d).to_string(),
            })
            .collect();
        edges.sort_by(|a, b| (&a.src, a.color, &a.dst).cmp(&(&b.src, b.color, &b.dst)));
        GraphJson {
            lambda: c.lambda().parts().to_vec(),
            nodes,
            edges,
        }
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serialization cannot fail")
    }
}

/// A graph read back from its wire form. Models are not reconstructed here;
/// callers that need them can rebuild from the per-node box sets.
pub struct LoadedGraph {
    pub lambda: Partition,
    pub graph: CrystalGraph,
    pub boxes: Vec<BoxSet>,
}

#[derive(Debug, Error)]
pub enum GraphParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid lambda: {0}")]
    Lambda(#[from] crate::partition::PartitionError),
    #[error("edge endpoint {0:?} is not a node key")]
    UnknownKey(String),
    #[error("duplicate node key {0:?}")]
    DuplicateKey(String),
}

pub fn parse_graph_json(text: &str) -> Result<LoadedGraph, GraphParseError> {
    let raw: GraphJson = serde_json::from_str(text)?;
    let lambda = Partition::new(raw.lambda)?;
    let mut graph = CrystalGraph::new(lambda.num_rows());
    let mut boxes = Vec::with_capacity(raw.nodes.len());
    for node in raw.nodes {
        let idx = graph.add_node(node.key.clone(), Weight::new(node.weight));
        if idx != boxes.len() {
            return Err(GraphParseError::DuplicateKey(node.key));
        }
        boxes.push(BoxSet::from_positions(node.boxes));
    }
    for edge in raw.edges {
        let src = graph
            .index_of(&edge.src)
            .ok_or_else(|| GraphParseError::UnknownKey(edge.src.clone()))?;
        let dst = graph
            .index_of(&edge.dst)
            .ok_or_else(|| GraphParseError::UnknownKey(edge.dst.clone()))?;
        graph.add_edge(src, edge.color, dst);
    }
    Ok(LoadedGraph {
        lambda,
        graph,
        boxes,
    })
}

const DOT_PALETTE: [&str; 8] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999",
];

/// DOT rendering: nodes labeled by their box sets in discovery order, edges
/// labeled `i=<color>` and tinted by a palette cycling over eight entries.
pub fn to_dot(c: &IceCrystal) -> String {
    use std::fmt::Write;
    let g = c.graph();
    let mut out = String::new();
    writeln!(out, "digraph ice_crystal {{").unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (idx, _) in g.nodes() {
        let boxes = c.model(idx).boxes();
        let label: Vec<String> = boxes.iter().map(|(p, q)| format!("({p},{q})")).collect();
        writeln!(out, "  n{idx} [label=\"{{{}}}\"];", label.join(",")).unwrap();
    }
    for (s, color, d) in g.edges() {
        let tint = DOT_PALETTE[(color - 1) % DOT_PALETTE.len()];
        writeln!(
            out,
            "  n{s} -> n{d} [label=\"i={color}\", color=\"{tint}\"];"
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal_ops::{epsilon, phi};
    use crate::ice_model::brute_force_enumerate;
    use crate::ice_model::fixtures::figure_model;

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn highest_weight_boxes_follow_the_stairs() {
        let hw = highest_weight_model(&lam(&[2, 1, 0]));
        assert_eq!(hw.boxes(), BoxSet::from_positions([(1, 4), (1, 5), (2, 5)]));
        for i in 1..3 {
            assert_eq!(epsilon(&hw, i), 0);
        }
        assert_eq!(weight(&hw), Weight::new(vec![2, 1, 0]));

        let empty = highest_weight_model(&lam(&[0, 0, 0]));
        assert!(empty.boxes().is_empty());

        let rank1 = highest_weight_model(&lam(&[1, 0]));
        assert_eq!(rank1.boxes(), BoxSet::from_positions([(1, 3)]));
    }

    #[test]
    fn the_unique_raising_annihilated_model_is_the_staircase() {
        let lambda = lam(&[1, 0]);
        let all = brute_force_enumerate(&lambda, 1 << 20).unwrap();
        let killed: Vec<_> = all
            .iter()
            .filter(|m| (1..2).all(|i| epsilon(m, i) == 0))
            .collect();
        assert_eq!(killed.len(), 1);
        assert_eq!(*killed[0], highest_weight_model(&lambda));
    }

    #[test]
    fn generate_counts() {
        assert_eq!(generate(&lam(&[2, 1, 0]), 10_000).unwrap().node_count(), 8);
        assert_eq!(generate(&lam(&[0, 0, 0]), 10_000).unwrap().node_count(), 1);
        let chain = generate(&lam(&[1, 0]), 10_000).unwrap();
        assert_eq!(chain.node_count(), 2);
        assert_eq!(chain.graph().edge_count(), 1);
        assert_eq!(chain.graph().edges().next(), Some((0, 1, 1)));
    }

    #[test]
    fn generate_respects_the_node_cap() {
        assert!(matches!(
            generate(&lam(&[2, 1, 0]), 3),
            Err(GenerateError::NodeCap { cap: 3 })
        ));
    }

    #[test]
    fn generation_agrees_with_brute_force() {
        for parts in [vec![1, 0], vec![2, 1, 0], vec![2, 2, 0], vec![1, 1, 0, 0]] {
            let lambda = lam(&parts);
            let crystal = generate(&lambda, 10_000).unwrap();
            let mut generated: Vec<String> = crystal
                .models()
                .iter()
                .map(|m| canonical_key(&lambda, &m.boxes()))
                .collect();
            generated.sort();
            let mut brute: Vec<String> = brute_force_enumerate(&lambda, 1 << 22)
                .unwrap()
                .iter()
                .map(|m| canonical_key(&lambda, &m.boxes()))
                .collect();
            brute.sort();
            assert_eq!(generated, brute, "mismatch for {lambda}");
        }
    }

    #[test]
    fn unique_source_with_weight_lambda() {
        let crystal = generate(&lam(&[2, 1, 0]), 10_000).unwrap();
        let sources = find_highest_weights(crystal.graph());
        assert_eq!(sources.len(), 1);
        let idx = crystal.graph().index_of(&sources[0]).unwrap();
        assert_eq!(*crystal.graph().weight(idx), Weight::new(vec![2, 1, 0]));
    }

    #[test]
    fn staircase_passes_on_highest_weight_models() {
        for parts in [vec![2, 1, 0], vec![0, 0], vec![3, 1, 0], vec![2, 2, 1, 0]] {
            let report = verify_staircase(&highest_weight_model(&lam(&parts)));
            assert!(report.passed(), "{parts:?}: {:?}", report.violations);
        }
    }

    #[test]
    fn staircase_flags_the_figure_model() {
        // Row 2 has boxes at columns 3 and 5 but not 4.
        let report = verify_staircase(&figure_model());
        assert!(report
            .violations
            .contains(&StaircaseViolation::RowNotRightFlushed { row: 2 }));
    }

    #[test]
    fn staircase_survives_a_fully_boxed_row() {
        // Not a member of any family (its left boundary is minus), but the
        // checker must still report rather than underflow: a full bottom row
        // maps its stair to a nonpositive top column.
        use crate::ice_model::Sign::{Minus as M, Plus as P};
        let lambda = lam(&[1, 0]);
        let h = vec![vec![M, M, M, M], vec![P, P, P, M]];
        let v = vec![vec![P, P, P], vec![P, P, P], vec![M, P, P]];
        let m = crate::ice_model::IceModel::new(lambda, h, v).unwrap();
        let report = verify_staircase(&m);
        assert!(!report.passed());
    }

    #[test]
    fn axioms_hold_on_generated_graphs() {
        for parts in [vec![2, 1, 0], vec![3, 1, 0], vec![1, 1, 0, 0]] {
            let crystal = generate(&lam(&parts), 10_000).unwrap();
            let report = check_axioms_c1_c6(crystal.graph(), Some(&crystal));
            assert!(report.passed(), "{parts:?}: {:?}", report.violations);
        }
    }

    #[test]
    fn deleted_edge_breaks_c6() {
        let crystal = generate(&lam(&[2, 1, 0]), 10_000).unwrap();
        let (a, i, b) = crystal.graph().edges().next().unwrap();
        let mut broken = crystal.clone();
        let mut g = broken.graph.clone();
        g.remove_edge(a, i, b);
        broken.graph = g;
        let report = check_axioms_c1_c6(broken.graph(), Some(&broken));
        assert!(report
            .violations
            .iter()
            .any(|v| v.clause == AxiomClause::C6));
    }

    #[test]
    fn signature_counts_equal_path_lengths() {
        let crystal = generate(&lam(&[2, 1, 0]), 10_000).unwrap();
        for (idx, _) in crystal.graph().nodes() {
            for i in 1..3 {
                let (eps, ph) = path_stats(crystal.graph(), idx, i).unwrap();
                assert_eq!(epsilon(crystal.model(idx), i), eps);
                assert_eq!(phi(crystal.model(idx), i), ph);
            }
        }
    }

    #[test]
    fn character_of_the_defining_family() {
        let crystal = generate(&lam(&[1, 0, 0]), 10_000).unwrap();
        let ch = character(crystal.graph());
        assert_eq!(ch.len(), 3);
        assert!(ch.values().all(|&c| c == 1));

        let trivial = generate(&lam(&[0, 0]), 10_000).unwrap();
        assert_eq!(
            character(trivial.graph()),
            BTreeMap::from([(vec![0, 0], 1)])
        );
    }

    #[test]
    fn character_matches_the_tableau_side() {
        for parts in [vec![2, 1, 0], vec![2, 2, 0], vec![3, 1, 0]] {
            let lambda = lam(&parts);
            let ice = generate(&lambda, 10_000).unwrap();
            let tab = crate::tableau::tableau_crystal(&lambda, lambda.num_rows(), 10_000).unwrap();
            assert_eq!(
                character(ice.graph()),
                character(tab.graph()),
                "λ = {lambda}"
            );
        }
    }

    #[test]
    fn graph_json_roundtrip() {
        let crystal = generate(&lam(&[2, 1, 0]), 10_000).unwrap();
        let text = GraphJson::from_crystal(&crystal).to_string_pretty();
        let loaded = parse_graph_json(&text).unwrap();
        assert_eq!(loaded.graph.node_count(), 8);
        assert_eq!(loaded.graph.edge_count(), crystal.graph().edge_count());
        assert_eq!(loaded.lambda, *crystal.lambda());
        // Node keys and boxes agree with reconstruction.
        for (idx, data) in loaded.graph.nodes() {
            let rebuilt = from_boxes(&loaded.lambda, &loaded.boxes[idx]).unwrap();
            assert_eq!(canonical_key(&loaded.lambda, &rebuilt.boxes()), data.key);
        }
    }

    #[test]
    fn dot_output_is_stable_and_labeled() {
        let crystal = generate(&lam(&[1, 0]), 10_000).unwrap();
        let dot = to_dot(&crystal);
        assert_eq!(to_dot(&crystal), dot);
        assert!(dot.contains("digraph ice_crystal"));
        assert!(dot.contains("label=\"i=1\""));
        assert!(dot.contains("{(1,3)}"));
    }
}
