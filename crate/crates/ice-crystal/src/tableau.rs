//! Independent oracle: the crystal of semistandard Young tableaux, the
//! closed-form dimension count, and a structural isomorphism checker.
//!
//! Nothing here touches ice models. Tableau operators use the standard
//! bracketing rule on the column reading word (columns right to left, top to
//! bottom within a column): an entry i opens a bracket, an entry i+1 closes
//! the most recent open one; the lowering operator bumps the cell of the
//! first unclosed i, the raising operator drops the cell of the last
//! unmatched i+1.

use std::fmt;

use thiserror::Error;

use crate::crystal_ops::Weight;
use crate::graph::CrystalGraph;
use crate::partition::Partition;
use crate::stembridge::path_stats;

/// Semistandard Young tableau: rows weakly increase, columns strictly
/// increase, entries in 1..=n. Row 0 is the top (longest) row.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn key(&self) -> String {
        let body: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("[{}]", body.join("|"))
    }

    /// Entry counts as a weight vector of length n.
    pub fn weight(&self, n: usize) -> Weight {
        let mut counts = vec![0i64; n];
        for row in &self.rows {
            for &e in row {
                counts[e - 1] += 1;
            }
        }
        Weight::new(counts)
    }

    fn is_semistandard(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if r > 0 {
                let above = &self.rows[r - 1];
                if row.len() > above.len() {
                    return false;
                }
                if row.iter().zip(above).any(|(lo, up)| lo <= up) {
                    return false;
                }
            }
        }
        true
    }

    /// Cells of the column reading word: columns right to left, top to
    /// bottom within each column.
    fn reading_order(&self) -> Vec<(usize, usize)> {
        let width = self.rows.first().map_or(0, |r| r.len());
        let mut order = Vec::new();
        for c in (0..width).rev() {
            for r in 0..self.rows.len() {
                if c < self.rows[r].len() {
                    order.push((r, c));
                }
            }
        }
        order
    }

    fn bracket(&self, color: usize) -> Bracketed {
        let mut open: Vec<(usize, usize)> = Vec::new();
        let mut unmatched_close: Vec<(usize, usize)> = Vec::new();
        for (r, c) in self.reading_order() {
            let e = self.rows[r][c];
            if e == color {
                open.push((r, c));
            } else if e == color + 1 && open.pop().is_none() {
                unmatched_close.push((r, c));
            }
        }
        Bracketed {
            open,
            unmatched_close,
        }
    }

    pub fn epsilon(&self, color: usize) -> usize {
        self.bracket(color).unmatched_close.len()
    }

    pub fn phi(&self, color: usize) -> usize {
        self.bracket(color).open.len()
    }

    /// Lowering operator: bump the first unclosed `color` to `color + 1`.
    pub fn lower(&self, color: usize) -> Option<Tableau> {
        let (r, c) = *self.bracket(color).open.first()?;
        let mut rows = self.rows.clone();
        rows[r][c] = color + 1;
        let out = Tableau { rows };
        debug_assert!(out.is_semistandard(), "lowering broke semistandardness");
        Some(out)
    }

    /// Raising operator: drop the last unmatched `color + 1` to `color`.
    pub fn raise(&self, color: usize) -> Option<Tableau> {
        let (r, c) = *self.bracket(color).unmatched_close.last()?;
        let mut rows = self.rows.clone();
        rows[r][c] = color;
        let out = Tableau { rows };
        debug_assert!(out.is_semistandard(), "raising broke semistandardness");
        Some(out)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

struct Bracketed {
    /// Cells of unclosed `i` entries, in reading order.
    open: Vec<(usize, usize)>,
    /// Cells of unmatched `i+1` entries, in reading order.
    unmatched_close: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("enumeration exceeds the cap of {cap} tableaux")]
pub struct TableauCapExceeded {
    pub cap: usize,
}

/// All semistandard tableaux of shape λ (zero parts dropped) with entries in
/// 1..=n, by cell-wise backtracking in row-major order.
pub fn enumerate_ssyt(
    lambda: &Partition,
    n: usize,
    cap: usize,
) -> Result<Vec<Tableau>, TableauCapExceeded> {
    let shape: Vec<usize> = lambda.parts().iter().copied().filter(|&p| p > 0).collect();
    let mut rows: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fn fill(
        shape: &[usize],
        n: usize,
        cap: usize,
        rows: &mut Vec<Vec<usize>>,
        r: usize,
        c: usize,
        out: &mut Vec<Tableau>,
    ) -> Result<(), TableauCapExceeded> {
        if r == shape.len() {
            if out.len() == cap {
                return Err(TableauCapExceeded { cap });
            }
            out.push(Tableau { rows: rows.clone() });
            return Ok(());
        }
        let (next_r, next_c) = if c + 1 < shape[r] {
            (r, c + 1)
        } else {
            (r + 1, 0)
        };
        let min = {
            let left = if c > 0 { rows[r][c - 1] } else { 1 };
            let up = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
            left.max(up)
        };
        for value in min..=n {
            rows[r][c] = value;
            fill(shape, n, cap, rows, next_r, next_c, out)?;
        }
        rows[r][c] = 0;
        Ok(())
    }
    if shape.is_empty() {
        out.push(Tableau { rows });
        return Ok(out);
    }
    fill(&shape, n, cap, &mut rows, 0, 0, &mut out)?;
    Ok(out)
}

/// Closed-form count ∏_{1≤i<j≤n} (λᵢ − λⱼ + j − i)/(j − i) in exact integer
/// arithmetic: numerators and denominators are multiplied separately and
/// divided once at the end, since intermediate quotients need not be
/// integers.
pub fn dimension(lambda: &Partition, n: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 1..=n {
        for j in (i + 1)..=n {
            let top = (lambda.part(i) + j - i - lambda.part(j)) as u128;
            num = num.checked_mul(top).expect("dimension numerator overflow");
            den = den
                .checked_mul((j - i) as u128)
                .expect("dimension denominator overflow");
        }
    }
    assert!(num.is_multiple_of(den), "Weyl product must be an integer");
    num / den
}

/// The tableau crystal: nodes are all semistandard tableaux of shape λ with
/// entries bounded by n, edges given by the lowering operators.
pub struct TableauCrystal {
    n: usize,
    graph: CrystalGraph,
    tableaux: Vec<Tableau>,
}

impl TableauCrystal {
    pub fn graph(&self) -> &CrystalGraph {
        &self.graph
    }

    pub fn tableau(&self, idx: usize) -> &Tableau {
        &self.tableaux[idx]
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn entries_bound(&self) -> usize {
        self.n
    }
}

impl crate::crystal_graph::OperatorOracle for TableauCrystal {
    fn f_key(&self, node: usize, color: usize) -> Option<String> {
        self.tableaux[node].lower(color).map(|t| t.key())
    }

    fn e_key(&self, node: usize, color: usize) -> Option<String> {
        self.tableaux[node].raise(color).map(|t| t.key())
    }
}

pub fn tableau_crystal(
    lambda: &Partition,
    n: usize,
    cap: usize,
) -> Result<TableauCrystal, TableauCapExceeded> {
    let tableaux = enumerate_ssyt(lambda, n, cap)?;
    let mut graph = CrystalGraph::new(n);
    for t in &tableaux {
        graph.add_node(t.key(), t.weight(n));
    }
    for (idx, t) in tableaux.iter().enumerate() {
        for i in 1..n {
            if let Some(image) = t.lower(i) {
                let target = graph
                    .index_of(&image.key())
                    .expect("lowering stays inside the enumerated family");
                graph.add_edge(idx, i, target);
            }
        }
    }
    Ok(TableauCrystal { n, graph, tableaux })
}

// --- structural isomorphism ---------------------------------------------------

/// Explanation of the first place the forced propagation broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub detail: String,
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.detail)
    }
}

fn witness(detail: impl Into<String>) -> IsoWitness {
    IsoWitness {
        detail: detail.into(),
    }
}

/// Decides whether two finite crystal graphs are isomorphic as edge-colored
/// weighted digraphs. Each graph must have exactly one source; the map is
/// forced from source to source along colored edges, so isomorphism holds
/// exactly when the propagation is total, injective, edge-complete, and
/// weight-preserving modulo the all-ones vector.
pub fn crystal_isomorphic(g1: &CrystalGraph, g2: &CrystalGraph) -> Result<(), IsoWitness> {
    if g1.weight_len() != g2.weight_len() {
        return Err(witness(format!(
            "weight lengths differ: {} vs {}",
            g1.weight_len(),
            g2.weight_len()
        )));
    }
    if g1.node_count() != g2.node_count() {
        return Err(witness(format!(
            "node counts differ: {} vs {}",
            g1.node_count(),
            g2.node_count()
        )));
    }
    if g1.edge_count() != g2.edge_count() {
        return Err(witness(format!(
            "edge counts differ: {} vs {}",
            g1.edge_count(),
            g2.edge_count()
        )));
    }
    let sources1 = g1.sources();
    let sources2 = g2.sources();
    if sources1.len() != 1 || sources2.len() != 1 {
        return Err(witness(format!(
            "graphs must have exactly one source, found {} and {}",
            sources1.len(),
            sources2.len()
        )));
    }

    let rank = g1.rank();
    let mut map: Vec<Option<usize>> = vec![None; g1.node_count()];
    let mut used: Vec<bool> = vec![false; g2.node_count()];
    map[sources1[0]] = Some(sources2[0]);
    used[sources2[0]] = true;
    let mut queue = std::collections::VecDeque::from([sources1[0]]);
    let mut mapped = 1usize;
    while let Some(a) = queue.pop_front() {
        let b = map[a].unwrap();
        for i in 1..=rank {
            let ta = g1
                .f_image(a, i)
                .map_err(|_| witness(format!("branching at {} color {i}", g1.key(a))))?;
            let tb = g2
                .f_image(b, i)
                .map_err(|_| witness(format!("branching at {} color {i}", g2.key(b))))?;
            match (ta, tb) {
                (None, None) => {}
                (Some(x), None) => {
                    return Err(witness(format!(
                        "edge {} --{i}--> {} has no counterpart at {}",
                        g1.key(a),
                        g1.key(x),
                        g2.key(b)
                    )));
                }
                (None, Some(y)) => {
                    return Err(witness(format!(
                        "node {} lacks the color-{i} edge that {} has (to {})",
                        g1.key(a),
                        g2.key(b),
                        g2.key(y)
                    )));
                }
                (Some(x), Some(y)) => match map[x] {
                    Some(already) if already != y => {
                        return Err(witness(format!(
                            "propagation conflict at {}: mapped to both {} and {}",
                            g1.key(x),
                            g2.key(already),
                            g2.key(y)
                        )));
                    }
                    Some(_) => {}
                    None => {
                        if used[y] {
                            return Err(witness(format!(
                                "propagation is not injective at {}",
                                g2.key(y)
                            )));
                        }
                        map[x] = Some(y);
                        used[y] = true;
                        mapped += 1;
                        queue.push_back(x);
                    }
                },
            }
        }
    }
    if mapped != g1.node_count() {
        return Err(witness(format!(
            "propagation reached only {mapped} of {} nodes",
            g1.node_count()
        )));
    }
    for (a, data) in g1.nodes() {
        let b = map[a].unwrap();
        if data.weight != *g2.weight(b) {
            return Err(witness(format!(
                "weights differ at {} vs {}: {:?} vs {:?}",
                data.key,
                g2.key(b),
                data.weight.canonical(),
                g2.weight(b).canonical()
            )));
        }
        for i in 1..=rank {
            let s1 = path_stats(g1, a, i).map_err(|e| witness(format!("{e:?}")))?;
            let s2 = path_stats(g2, b, i).map_err(|e| witness(format!("{e:?}")))?;
            if s1 != s2 {
                return Err(witness(format!(
                    "(ε,φ) differ at {} color {i}: {s1:?} vs {s2:?}",
                    data.key
                )));
            }
        }
    }
    Ok(())
}
