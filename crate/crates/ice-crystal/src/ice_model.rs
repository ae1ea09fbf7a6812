//! 5-vertex ice models: lattice storage, vertex classification, boundary
//! conditions, the boxing map, and reconstruction of a model from its boxes.
//!
//! Rows are numbered 1..n with row 1 at the **bottom**, columns 1..s left to
//! right. Each horizontal and vertical edge is stored once, so two adjacent
//! vertices always agree on their shared edge.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

/// Sign on a lattice edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The five valid vertex configurations, identified by their
/// (left, right, top, bottom) sign tuple.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VertexConfig {
    /// (+,+,+,+)
    Type1,
    /// (−,−,+,+) — a box.
    Type2Box,
    /// (−,+,+,−)
    Type3,
    /// (+,−,−,+)
    Type4,
    /// (−,−,−,−)
    Type5,
}

/// Classifies a sign tuple, or returns `None` for the eleven forbidden ones.
pub fn classify_vertex(left: Sign, right: Sign, top: Sign, bottom: Sign) -> Option<VertexConfig> {
    use Sign::{Minus as M, Plus as P};
    match (left, right, top, bottom) {
        (P, P, P, P) => Some(VertexConfig::Type1),
        (M, M, P, P) => Some(VertexConfig::Type2Box),
        (M, P, P, M) => Some(VertexConfig::Type3),
        (P, M, M, P) => Some(VertexConfig::Type4),
        (M, M, M, M) => Some(VertexConfig::Type5),
        _ => None,
    }
}

/// Set of (row, column) positions of box (type 2) vertices.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BoxSet {
    positions: BTreeSet<(usize, usize)>,
}

impl BoxSet {
    pub fn new() -> BoxSet {
        BoxSet::default()
    }

    pub fn from_positions<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> BoxSet {
        BoxSet {
            positions: iter.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, row: usize, col: usize) {
        self.positions.insert((row, col));
    }

    pub fn remove(&mut self, row: usize, col: usize) -> bool {
        self.positions.remove(&(row, col))
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.positions.contains(&(row, col))
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Positions sorted by (row, column).
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.iter().copied()
    }

    /// Boxes in the given row, sorted by column.
    pub fn in_row(&self, row: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.range((row, 0)..(row + 1, 0)).copied()
    }

    /// Count of boxes in each of rows 1..=n.
    pub fn row_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for (p, _) in self.iter() {
            if (1..=n).contains(&p) {
                counts[p - 1] += 1;
            }
        }
        counts
    }
}

impl fmt::Debug for BoxSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, q)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({p},{q})")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<(usize, usize)> for BoxSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> BoxSet {
        BoxSet::from_positions(iter)
    }
}

/// An n×s lattice of edge signs together with the partition whose boundary
/// condition it claims to satisfy. Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct IceModel {
    lambda: Partition,
    n: usize,
    s: usize,
    /// `h_edges[i][j]` is the left edge of vertex (i+1, j+1) for j < s, and
    /// `h_edges[i][s]` is the right edge of vertex (i+1, s).
    h_edges: Vec<Vec<Sign>>,
    /// `v_edges[i][q]` is the bottom edge of vertex (i+1, q+1) for i < n, and
    /// `v_edges[n][q]` is the top edge of vertex (n, q+1).
    v_edges: Vec<Vec<Sign>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("model must have at least one row of horizontal edges")]
    NoRows,
    #[error("h_edges row {0} has {1} entries, expected {2}")]
    BadHorizontalRow(usize, usize, usize),
    #[error("expected {0} rows of vertical edges, got {1}")]
    BadVerticalRowCount(usize, usize),
    #[error("v_edges row {0} has {1} entries, expected {2}")]
    BadVerticalRow(usize, usize, usize),
}

/// One failed clause of the membership conditions for the family of models
/// determined by a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Grid size differs from n × (λ₁ + n).
    Dimension {
        expected: (usize, usize),
        actual: (usize, usize),
    },
    /// Vertex (row, col) matches none of the five valid configurations.
    InvalidVertex { row: usize, col: usize },
    /// Top boundary: a minus is present or absent at the wrong column.
    TopBoundary { col: usize, expected: Sign },
    /// Left boundary edge of the given row is not plus.
    LeftBoundary { row: usize },
    /// Bottom boundary edge of the given column is not plus.
    BottomBoundary { col: usize },
    /// Right boundary edge of the given row is not minus.
    RightBoundary { row: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Dimension { expected, actual } => {
                write!(
                    f,
                    "dimension: boundary condition needs a {}x{} grid, model is {}x{}",
                    expected.0, expected.1, actual.0, actual.1
                )
            }
            Violation::InvalidVertex { row, col } => {
                write!(
                    f,
                    "vertex ({row},{col}) is not one of the five valid configurations"
                )
            }
            Violation::TopBoundary { col, expected } => {
                write!(f, "top boundary at column {col}: expected {expected}")
            }
            Violation::LeftBoundary { row } => {
                write!(f, "left boundary of row {row} is not +")
            }
            Violation::BottomBoundary { col } => {
                write!(f, "bottom boundary of column {col} is not +")
            }
            Violation::RightBoundary { row } => {
                write!(f, "right boundary of row {row} is not -")
            }
        }
    }
}

/// Why a box set fails to reconstruct into a model.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Inconsistency {
    #[error("box position ({0},{1}) lies outside the {2}x{3} grid")]
    OutOfGrid(usize, usize, usize, usize),
    #[error("box at ({0},{1}) is forced to a non-box configuration by its right and bottom edges")]
    ForcedNonBox(usize, usize),
    #[error("reconstruction breaks the left boundary at row {0}")]
    LeftBoundary(usize),
    #[error("reconstruction breaks the top boundary at column {0}")]
    TopBoundary(usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("brute force would examine {candidates} box sets, above the cap {cap}")]
pub struct BruteForceCapExceeded {
    pub candidates: u128,
    pub cap: u128,
}

/// Columns carrying a minus on the top boundary: { λ₁ + j − λⱼ : j = 1..n }.
pub fn boundary_top_minus_columns(lambda: &Partition) -> BTreeSet<usize> {
    (1..=lambda.num_rows())
        .map(|j| lambda.first() + j - lambda.part(j))
        .collect()
}

impl IceModel {
    /// Builds a model from explicit edge grids. Only the grid shape is
    /// checked here; run [`IceModel::validate`] for the membership clauses.
    pub fn new(
        lambda: Partition,
        h_edges: Vec<Vec<Sign>>,
        v_edges: Vec<Vec<Sign>>,
    ) -> Result<IceModel, GridError> {
        let n = h_edges.len();
        if n == 0 {
            return Err(GridError::NoRows);
        }
        let s = h_edges[0].len().saturating_sub(1);
        if s == 0 {
            return Err(GridError::BadHorizontalRow(1, h_edges[0].len(), 2));
        }
        for (i, row) in h_edges.iter().enumerate() {
            if row.len() != s + 1 {
                return Err(GridError::BadHorizontalRow(i + 1, row.len(), s + 1));
            }
        }
        if v_edges.len() != n + 1 {
            return Err(GridError::BadVerticalRowCount(n + 1, v_edges.len()));
        }
        for (i, row) in v_edges.iter().enumerate() {
            if row.len() != s {
                return Err(GridError::BadVerticalRow(i, row.len(), s));
            }
        }
        Ok(IceModel {
            lambda,
            n,
            s,
            h_edges,
            v_edges,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn num_rows(&self) -> usize {
        self.n
    }

    pub fn num_cols(&self) -> usize {
        self.s
    }

    pub fn h_edges(&self) -> &[Vec<Sign>] {
        &self.h_edges
    }

    pub fn v_edges(&self) -> &[Vec<Sign>] {
        &self.v_edges
    }

    /// The four signs (left, right, top, bottom) adjacent to vertex (i, j).
    /// Indices are 1-based with row 1 at the bottom.
    pub fn vertex_edges(&self, i: usize, j: usize) -> (Sign, Sign, Sign, Sign) {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.s).contains(&j),
            "vertex ({i},{j}) out of range for a {}x{} model",
            self.n,
            self.s
        );
        (
            self.h_edges[i - 1][j - 1],
            self.h_edges[i - 1][j],
            self.v_edges[i][j - 1],
            self.v_edges[i - 1][j - 1],
        )
    }

    pub fn classify(&self, i: usize, j: usize) -> Option<VertexConfig> {
        let (l, r, t, b) = self.vertex_edges(i, j);
        classify_vertex(l, r, t, b)
    }

    /// Checks all membership clauses; an empty list means the model belongs
    /// to the family determined by its partition.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let expected = (self.lambda.num_rows(), self.lambda.num_cols());
        if (self.n, self.s) != expected {
            violations.push(Violation::Dimension {
                expected,
                actual: (self.n, self.s),
            });
            // Boundary clauses are meaningless on the wrong grid.
            return violations;
        }
        for i in 1..=self.n {
            for j in 1..=self.s {
                if self.classify(i, j).is_none() {
                    violations.push(Violation::InvalidVertex { row: i, col: j });
                }
            }
        }
        let minus_cols = boundary_top_minus_columns(&self.lambda);
        for q in 1..=self.s {
            let expected = if minus_cols.contains(&q) {
                Sign::Minus
            } else {
                Sign::Plus
            };
            if self.v_edges[self.n][q - 1] != expected {
                violations.push(Violation::TopBoundary { col: q, expected });
            }
            if self.v_edges[0][q - 1] != Sign::Plus {
                violations.push(Violation::BottomBoundary { col: q });
            }
        }
        for p in 1..=self.n {
            if self.h_edges[p - 1][0] != Sign::Plus {
                violations.push(Violation::LeftBoundary { row: p });
            }
            if self.h_edges[p - 1][self.s] != Sign::Minus {
                violations.push(Violation::RightBoundary { row: p });
            }
        }
        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// The boxing map: positions of all type 2 vertices.
    pub fn boxes(&self) -> BoxSet {
        let mut set = BoxSet::new();
        for i in 1..=self.n {
            for j in 1..=self.s {
                if self.classify(i, j) == Some(VertexConfig::Type2Box) {
                    set.insert(i, j);
                }
            }
        }
        set
    }
}

/// Reconstructs the unique model with the given box set, sweeping vertices
/// right to left by column and bottom to top within each column. At each
/// vertex the right and bottom edges are already known, and together with
/// box membership they determine the left and top edges.
pub fn from_boxes(lambda: &Partition, boxes: &BoxSet) -> Result<IceModel, Inconsistency> {
    let n = lambda.num_rows();
    let s = lambda.num_cols();
    for (p, q) in boxes.iter() {
        if p < 1 || p > n || q < 1 || q > s {
            return Err(Inconsistency::OutOfGrid(p, q, n, s));
        }
    }
    let mut h = vec![vec![Sign::Plus; s + 1]; n];
    let mut v = vec![vec![Sign::Plus; s]; n + 1];
    for row in h.iter_mut() {
        row[s] = Sign::Minus; // right boundary
    }
    // v[0] stays all plus: bottom boundary.
    for j in (1..=s).rev() {
        for i in 1..=n {
            let right = h[i - 1][j];
            let bottom = v[i - 1][j - 1];
            let (left, top) = if boxes.contains(i, j) {
                if right != Sign::Minus || bottom != Sign::Plus {
                    return Err(Inconsistency::ForcedNonBox(i, j));
                }
                (Sign::Minus, Sign::Plus)
            } else {
                match (right, bottom) {
                    (Sign::Plus, Sign::Plus) => (Sign::Plus, Sign::Plus), // type 1
                    (Sign::Plus, Sign::Minus) => (Sign::Minus, Sign::Plus), // type 3
                    (Sign::Minus, Sign::Plus) => (Sign::Plus, Sign::Minus), // type 4
                    (Sign::Minus, Sign::Minus) => (Sign::Minus, Sign::Minus), // type 5
                }
            };
            h[i - 1][j - 1] = left;
            v[i][j - 1] = top;
        }
    }
    for p in 1..=n {
        if h[p - 1][0] != Sign::Plus {
            return Err(Inconsistency::LeftBoundary(p));
        }
    }
    let minus_cols = boundary_top_minus_columns(lambda);
    for q in 1..=s {
        let expected = if minus_cols.contains(&q) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        if v[n][q - 1] != expected {
            return Err(Inconsistency::TopBoundary(q));
        }
    }
    Ok(IceModel {
        lambda: lambda.clone(),
        n,
        s,
        h_edges: h,
        v_edges: v,
    })
}

/// Number of k-subsets of an m-set, saturating at `u128::MAX`.
fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((m - i) as u128) {
            Some(x) => x / (i + 1) as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Enumerates the whole family for a partition by trying every box set of
/// size |λ| over the grid. This is the generation oracle: it makes no use of
/// the crystal operators.
pub fn brute_force_enumerate(
    lambda: &Partition,
    cap: u128,
) -> Result<Vec<IceModel>, BruteForceCapExceeded> {
    let n = lambda.num_rows();
    let s = lambda.num_cols();
    let k = lambda.size();
    let candidates = binomial(n * s, k);
    if candidates > cap {
        return Err(BruteForceCapExceeded { candidates, cap });
    }
    let cells: Vec<(usize, usize)> = (1..=n).cartesian_product(1..=s).collect();
    let mut out = Vec::new();
    for combo in cells.into_iter().combinations(k) {
        let boxes = BoxSet::from_positions(combo);
        if let Ok(model) = from_boxes(lambda, &boxes) {
            out.push(model);
        }
    }
    Ok(out)
}

impl fmt::Debug for IceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IceModel {}x{} lambda={}", self.n, self.s, self.lambda)?;
        // Top row first so the printout matches the usual picture.
        for i in (1..=self.n).rev() {
            write!(f, "  top{i}: ")?;
            for q in 1..=self.s {
                write!(f, " {}", self.v_edges[i][q - 1])?;
            }
            writeln!(f)?;
            write!(f, "  row{i}:")?;
            for j in 1..=self.s + 1 {
                write!(f, "{} ", self.h_edges[i - 1][j - 1])?;
            }
            writeln!(f)?;
        }
        write!(f, "  bot : ")?;
        for q in 1..=self.s {
            write!(f, " {}", self.v_edges[0][q - 1])?;
        }
        Ok(())
    }
}

// --- JSON model format ------------------------------------------------------

/// Wire form of a model: rows are listed bottom-up and signs are the
/// one-character strings "+" and "-".
#[derive(Serialize, Deserialize)]
pub struct ModelJson {
    pub n: usize,
    pub lambda: Vec<usize>,
    pub row_order: String,
    pub h_edges: Vec<Vec<String>>,
    pub v_edges: Vec<Vec<String>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelParseError {
    #[error("row_order must be \"bottom_up\", got {0:?}")]
    RowOrder(String),
    #[error("n is {0} but h_edges has {1} rows")]
    RowCount(usize, usize),
    #[error("invalid sign {0:?}: expected \"+\" or \"-\"")]
    BadSign(String),
    #[error("invalid lambda: {0}")]
    BadPartition(#[from] crate::partition::PartitionError),
    #[error("bad grid: {0}")]
    BadGrid(#[from] GridError),
}

fn parse_sign(s: &str) -> Result<Sign, ModelParseError> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(ModelParseError::BadSign(other.to_string())),
    }
}

impl ModelJson {
    pub fn from_model(m: &IceModel) -> ModelJson {
        let grid = |rows: &[Vec<Sign>]| {
            rows.iter()
                .map(|r| r.iter().map(|s| s.as_char().to_string()).collect())
                .collect()
        };
        ModelJson {
            n: m.num_rows(),
            lambda: m.lambda().parts().to_vec(),
            row_order: "bottom_up".to_string(),
            h_edges: grid(m.h_edges()),
            v_edges: grid(m.v_edges()),
        }
    }

    pub fn into_model(self) -> Result<IceModel, ModelParseError> {
        if self.row_order != "bottom_up" {
            return Err(ModelParseError::RowOrder(self.row_order));
        }
        if self.h_edges.len() != self.n {
            return Err(ModelParseError::RowCount(self.n, self.h_edges.len()));
        }
        let lambda = Partition::new(self.lambda)?;
        let grid = |rows: Vec<Vec<String>>| -> Result<Vec<Vec<Sign>>, ModelParseError> {
            rows.into_iter()
                .map(|r| r.iter().map(|s| parse_sign(s)).collect())
                .collect()
        };
        Ok(IceModel::new(
            lambda,
            grid(self.h_edges)?,
            grid(self.v_edges)?,
        )?)
    }
}

impl IceModel {
    /// Canonical serialization: pretty-printed JSON in the stable field order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ModelJson::from_model(self))
            .expect("model serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<IceModel, String> {
        let parsed: ModelJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
        parsed.into_model().map_err(|e| e.to_string())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// The worked 3×5 model with boxes {(1,5),(2,3),(2,5)}, transcribed edge
    /// by edge. Row 1 is the bottom row.
    pub fn figure_model() -> IceModel {
        use Sign::{Minus as M, Plus as P};
        let lambda = Partition::new(vec![2, 1, 0]).unwrap();
        let h = vec![
            vec![P, P, P, P, M, M],
            vec![P, P, M, M, M, M],
            vec![P, M, P, M, P, M],
        ];
        let v = vec![
            vec![P, P, P, P, P],
            vec![P, P, P, M, P],
            vec![P, M, P, M, P],
            vec![M, P, M, P, M],
        ];
        IceModel::new(lambda, h, v).unwrap()
    }

    /// The worked example with boxes {(2,3),(3,4),(1,5)} used to illustrate
    /// signatures and the operators.
    pub fn example_model() -> IceModel {
        use Sign::{Minus as M, Plus as P};
        let lambda = Partition::new(vec![2, 1, 0]).unwrap();
        let h = vec![
            vec![P, P, P, P, M, M],
            vec![P, P, M, M, P, M],
            vec![P, M, P, M, M, M],
        ];
        let v = vec![
            vec![P, P, P, P, P],
            vec![P, P, P, M, P],
            vec![P, M, P, P, M],
            vec![M, P, M, P, M],
        ];
        IceModel::new(lambda, h, v).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::{example_model, figure_model};
    use super::*;
    use Sign::{Minus as M, Plus as P};

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn classify_accepts_exactly_the_five_valid_tuples() {
        let all = [P, M];
        let mut valid = 0;
        for &l in &all {
            for &r in &all {
                for &t in &all {
                    for &b in &all {
                        if classify_vertex(l, r, t, b).is_some() {
                            valid += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(valid, 5);
        assert_eq!(classify_vertex(M, M, P, P), Some(VertexConfig::Type2Box));
        assert_eq!(classify_vertex(P, P, P, P), Some(VertexConfig::Type1));
        assert_eq!(classify_vertex(P, P, M, M), None);
    }

    #[test]
    fn negate_is_an_involution() {
        assert_eq!(Sign::Plus.negate().negate(), Sign::Plus);
        assert_eq!(Sign::Minus.negate(), Sign::Plus);
    }

    #[test]
    fn figure_model_vertex_edges() {
        let m = figure_model();
        assert_eq!(m.vertex_edges(3, 1), (P, M, M, P));
        assert_eq!(m.vertex_edges(1, 5), (M, M, P, P));
        // Shared storage: right edge of (i,j) is the left edge of (i,j+1).
        for i in 1..=3 {
            for j in 1..5 {
                assert_eq!(m.vertex_edges(i, j).1, m.vertex_edges(i, j + 1).0);
            }
        }
    }

    #[test]
    fn top_minus_columns_formula() {
        assert_eq!(
            boundary_top_minus_columns(&lam(&[2, 1, 0])),
            BTreeSet::from([1, 3, 5])
        );
        assert_eq!(
            boundary_top_minus_columns(&lam(&[0, 0])),
            BTreeSet::from([1, 2])
        );
        assert_eq!(
            boundary_top_minus_columns(&lam(&[3, 1, 0])),
            BTreeSet::from([1, 4, 6])
        );
    }

    #[test]
    fn figure_model_is_valid() {
        assert_eq!(figure_model().validate(), vec![]);
        assert_eq!(example_model().validate(), vec![]);
    }

    #[test]
    fn flipped_bottom_edge_breaks_bottom_clause() {
        let m = figure_model();
        let mut v = m.v_edges().to_vec();
        v[0][0] = M;
        let bad = IceModel::new(m.lambda().clone(), m.h_edges().to_vec(), v).unwrap();
        let violations = bad.validate();
        assert!(violations.contains(&Violation::BottomBoundary { col: 1 }));
    }

    #[test]
    fn wrong_lambda_breaks_top_clause() {
        let m = figure_model();
        let relabeled =
            IceModel::new(lam(&[2, 2, 0]), m.h_edges().to_vec(), m.v_edges().to_vec()).unwrap();
        let violations = relabeled.validate();
        // (2,2,0) expects minuses at {1,4,5}; the model has them at {1,3,5}.
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::TopBoundary { .. })));
    }

    #[test]
    fn boxes_of_the_worked_models() {
        assert_eq!(
            figure_model().boxes(),
            BoxSet::from_positions([(2, 3), (1, 5), (2, 5)])
        );
        assert_eq!(
            example_model().boxes(),
            BoxSet::from_positions([(2, 3), (3, 4), (1, 5)])
        );
    }

    #[test]
    fn from_boxes_rebuilds_the_figure_model() {
        let rebuilt = from_boxes(
            &lam(&[2, 1, 0]),
            &BoxSet::from_positions([(2, 3), (1, 5), (2, 5)]),
        )
        .unwrap();
        assert_eq!(rebuilt, figure_model());
    }

    #[test]
    fn from_boxes_empty_partition() {
        let m = from_boxes(&lam(&[0, 0]), &BoxSet::new()).unwrap();
        assert!(m.is_valid());
        assert!(m.boxes().is_empty());
    }

    #[test]
    fn box_in_first_column_is_inconsistent() {
        // No model has a box in column 1, whatever the rest of the set.
        assert!(from_boxes(&lam(&[2, 1, 0]), &BoxSet::from_positions([(1, 1)])).is_err());
        assert!(from_boxes(
            &lam(&[2, 1, 0]),
            &BoxSet::from_positions([(2, 1), (1, 4), (1, 5)])
        )
        .is_err());
    }

    #[test]
    fn brute_force_counts() {
        assert_eq!(
            brute_force_enumerate(&lam(&[0, 0, 0]), 1 << 20)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            brute_force_enumerate(&lam(&[1, 0]), 1 << 20).unwrap().len(),
            2
        );
        assert_eq!(
            brute_force_enumerate(&lam(&[2, 1, 0]), 1 << 20)
                .unwrap()
                .len(),
            8
        );
    }

    #[test]
    fn brute_force_cap() {
        let err = brute_force_enumerate(&lam(&[2, 1, 0]), 10).unwrap_err();
        assert_eq!(err.candidates, binomial(15, 3));
    }

    #[test]
    fn enumerated_models_validate_roundtrip_and_avoid_column_one() {
        let lambda = lam(&[2, 1, 0]);
        for m in brute_force_enumerate(&lambda, 1 << 20).unwrap() {
            assert!(m.is_valid());
            let boxes = m.boxes();
            assert_eq!(boxes.len(), lambda.size());
            assert!(boxes.iter().all(|(_, q)| q > 1));
            assert_eq!(from_boxes(&lambda, &boxes).unwrap(), m);
        }
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let m = figure_model();
        let text = m.to_json();
        let back = IceModel::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn json_rejects_bad_sign_and_row_order() {
        let mut j = ModelJson::from_model(&figure_model());
        j.h_edges[0][0] = "x".into();
        assert!(matches!(j.into_model(), Err(ModelParseError::BadSign(_))));
        let mut j = ModelJson::from_model(&figure_model());
        j.row_order = "top_down".into();
        assert!(matches!(j.into_model(), Err(ModelParseError::RowOrder(_))));
    }
}
