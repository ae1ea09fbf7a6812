//! Crystal operators on ice models: i-signatures, their reduction, the
//! raising and lowering moves, weights, and the Cartan pairing.
//!
//! For a color i, boxes in rows i and i+1 are read off in column-then-row
//! order; a box in row i contributes an `L` token and a box in row i+1 an
//! `R`. Deleting adjacent `L R` pairs leaves a word `R^m L^k`, whose counts
//! are ε and φ. The lowering operator moves the box of the first surviving
//! `L` one step up-left; the raising operator moves the box of the last
//! surviving `R` one step down-right. Both touch only a 2×2 patch of edges.

use crate::ice_model::{BoxSet, IceModel, Sign};

/// Token of an i-signature. `L` marks a box in row i, `R` a box in row i+1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TokenKind {
    L,
    R,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SigToken {
    pub kind: TokenKind,
    /// (row, column) of the box this token came from.
    pub pos: (usize, usize),
}

/// The i-signature: tokens sorted by column, ties broken by row.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SignatureWord {
    pub tokens: Vec<SigToken>,
}

impl SignatureWord {
    pub fn kinds(&self) -> Vec<TokenKind> {
        self.tokens.iter().map(|t| t.kind).collect()
    }
}

/// Result of cancelling all adjacent `L R` pairs: a word `R^m L^k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedSignature {
    /// Number of surviving `R` tokens; equals εᵢ.
    pub r_count: usize,
    /// Number of surviving `L` tokens; equals φᵢ.
    pub l_count: usize,
    /// Box of the leading surviving `L`, if any.
    pub first_l: Option<(usize, usize)>,
    /// Box of the trailing surviving `R`, if any.
    pub last_r: Option<(usize, usize)>,
}

/// Collects the i-signature of a model. Requires 1 ≤ i ≤ n−1.
pub fn signature(m: &IceModel, i: usize) -> SignatureWord {
    assert!(
        (1..m.num_rows()).contains(&i),
        "color {i} out of range for n = {}",
        m.num_rows()
    );
    let boxes = m.boxes();
    signature_of_boxes(&boxes, i)
}

/// Same as [`signature`] but from an already computed box set.
pub fn signature_of_boxes(boxes: &BoxSet, i: usize) -> SignatureWord {
    let mut toks: Vec<SigToken> = boxes
        .iter()
        .filter(|&(p, _)| p == i || p == i + 1)
        .map(|(p, q)| SigToken {
            kind: if p == i { TokenKind::L } else { TokenKind::R },
            pos: (p, q),
        })
        .collect();
    toks.sort_by_key(|t| (t.pos.1, t.pos.0));
    SignatureWord { tokens: toks }
}

/// Cancels adjacent `L R` pairs to a fixpoint. The result does not depend on
/// the cancellation order; this implementation uses a single left-to-right
/// scan with a stack of open `L` tokens.
pub fn reduce(word: &SignatureWord) -> ReducedSignature {
    let mut open_l: Vec<(usize, usize)> = Vec::new();
    let mut surviving_r: Vec<(usize, usize)> = Vec::new();
    for tok in &word.tokens {
        match tok.kind {
            TokenKind::L => open_l.push(tok.pos),
            TokenKind::R => {
                if open_l.pop().is_none() {
                    surviving_r.push(tok.pos);
                }
            }
        }
    }
    ReducedSignature {
        r_count: surviving_r.len(),
        l_count: open_l.len(),
        first_l: open_l.first().copied(),
        last_r: surviving_r.last().copied(),
    }
}

/// Number of `R` tokens in the reduced i-signature; equals the length of the
/// raising string above the model.
pub fn epsilon(m: &IceModel, i: usize) -> usize {
    reduce(&signature(m, i)).r_count
}

/// Number of `L` tokens in the reduced i-signature; equals the length of the
/// lowering string below the model.
pub fn phi(m: &IceModel, i: usize) -> usize {
    reduce(&signature(m, i)).l_count
}

/// Integer weight vector: entry i counts the boxes in row i. Weights are
/// compared modulo the all-ones vector, since adding a constant to every
/// entry does not change the class in the weight lattice.
#[derive(Clone, Debug)]
pub struct Weight {
    counts: Vec<i64>,
}

impl Weight {
    pub fn new(counts: Vec<i64>) -> Weight {
        Weight { counts }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Canonical representative: subtract the last entry from every entry.
    pub fn canonical(&self) -> Vec<i64> {
        match self.counts.last() {
            Some(&last) => self.counts.iter().map(|&a| a - last).collect(),
            None => Vec::new(),
        }
    }

    /// The simple-root direction for color i: +1 in entry i, −1 in entry i+1.
    pub fn alpha(i: usize, n: usize) -> Weight {
        assert!(i >= 1 && i < n, "color {i} out of range for n = {n}");
        let mut counts = vec![0i64; n];
        counts[i - 1] = 1;
        counts[i] = -1;
        Weight { counts }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len());
        Weight {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        assert_eq!(self.len(), other.len());
        Weight {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Equality as classes modulo the all-ones vector.
impl PartialEq for Weight {
    fn eq(&self, other: &Weight) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl Eq for Weight {}

impl std::hash::Hash for Weight {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

/// Per-row box counts of a model.
pub fn weight(m: &IceModel) -> Weight {
    Weight {
        counts: m
            .boxes()
            .row_counts(m.num_rows())
            .into_iter()
            .map(|c| c as i64)
            .collect(),
    }
}

/// Cartan pairing ⟨hᵢ, w⟩ = wᵢ − wᵢ₊₁. Well defined on classes modulo the
/// all-ones vector.
pub fn pairing(i: usize, w: &Weight) -> i64 {
    assert!(
        i >= 1 && i < w.len(),
        "color {i} out of range for n = {}",
        w.len()
    );
    w.counts()[i - 1] - w.counts()[i]
}

// --- local moves --------------------------------------------------------

struct Patch<'a> {
    m: &'a IceModel,
}

impl Patch<'_> {
    fn h(&self, row: usize, idx: usize) -> Sign {
        self.m.h_edges()[row - 1][idx]
    }
    fn v(&self, level: usize, col: usize) -> Sign {
        self.m.v_edges()[level][col - 1]
    }
}

/// Lowering operator: `None` iff no `L` survives in the reduced i-signature.
/// Otherwise the box (i,q) of the first surviving `L` moves to (i+1,q−1) and
/// exactly four edges inside the 2×2 patch on rows i,i+1 and columns q−1,q
/// are flipped.
pub fn f_op(m: &IceModel, i: usize) -> Option<IceModel> {
    let reduced = reduce(&signature(m, i));
    let (row, q) = reduced.first_l?;
    debug_assert_eq!(row, i);
    assert!(q >= 2, "movable box cannot sit in column 1");

    use Sign::{Minus as M, Plus as P};
    let p = Patch { m };
    // The proven local pattern around the moving box. A mismatch means the
    // operator was applied to a model outside the family, i.e. a bug.
    let pattern_ok = p.h(i, q - 1) == M       // left of the box
        && p.h(i, q) == M                     // right of the box
        && p.v(i - 1, q) == P                 // below the box
        && p.v(i, q) == P                     // above the box
        && p.v(i, q - 1) == M                 // between (i,q-1) and (i+1,q-1)
        && p.h(i + 1, q - 2) == M             // left of (i+1,q-1)
        && p.h(i + 1, q - 1) == P             // between (i+1,q-1) and (i+1,q)
        && p.v(i + 1, q - 1) == P             // above (i+1,q-1)
        && p.h(i, q - 2) == p.v(i - 1, q - 1) // left and bottom of (i,q-1) agree
        && p.h(i + 1, q) == p.v(i + 1, q); // right and top of (i+1,q) agree
    assert!(
        pattern_ok,
        "local pattern mismatch at box ({i},{q}) for color {i}"
    );

    let mut h = m.h_edges().to_vec();
    let mut v = m.v_edges().to_vec();
    h[i - 1][q - 1] = P; // left of the old box
    v[i][q - 1] = M; // above the old box
    v[i][q - 2] = P; // the new box's bottom neighbor edge
    h[i][q - 1] = M; // right of the new box
    let moved = IceModel::new(m.lambda().clone(), h, v).expect("patch keeps the grid shape");

    debug_assert_eq!(
        {
            let mut b = m.boxes();
            b.remove(i, q);
            b.insert(i + 1, q - 1);
            crate::ice_model::from_boxes(m.lambda(), &b).ok()
        },
        Some(moved.clone()),
        "local move disagrees with reconstruction from the box set"
    );
    Some(moved)
}

/// Raising operator: `None` iff no `R` survives in the reduced i-signature.
/// Otherwise the box (i+1,q) of the last surviving `R` moves to (i,q+1).
pub fn e_op(m: &IceModel, i: usize) -> Option<IceModel> {
    let reduced = reduce(&signature(m, i));
    let (row, q) = reduced.last_r?;
    debug_assert_eq!(row, i + 1);
    assert!(
        q < m.num_cols(),
        "movable box cannot sit in the last column"
    );

    use Sign::{Minus as M, Plus as P};
    let p = Patch { m };
    let pattern_ok = p.h(i + 1, q - 1) == M   // left of the box
        && p.h(i + 1, q) == M                 // right of the box
        && p.v(i, q) == P                     // below the box
        && p.v(i + 1, q) == P                 // above the box
        && p.h(i, q) == P                     // between (i,q) and (i,q+1)
        && p.v(i - 1, q + 1) == P             // below (i,q+1)
        && p.v(i, q + 1) == M                 // above (i,q+1)
        && p.h(i, q + 1) == M                 // right of (i,q+1)
        && p.h(i, q - 1) == p.v(i - 1, q)     // left and bottom of (i,q) agree
        && p.h(i + 1, q + 1) == p.v(i + 1, q + 1); // right and top of (i+1,q+1) agree
    assert!(
        pattern_ok,
        "local pattern mismatch at box ({},{q}) for color {i}",
        i + 1
    );

    let mut h = m.h_edges().to_vec();
    let mut v = m.v_edges().to_vec();
    v[i][q - 1] = M; // below the old box
    h[i - 1][q] = M; // right edge of (i,q)
    h[i][q] = P; // right of the old box
    v[i][q] = P; // above the new box
    let moved = IceModel::new(m.lambda().clone(), h, v).expect("patch keeps the grid shape");

    debug_assert_eq!(
        {
            let mut b = m.boxes();
            b.remove(i + 1, q);
            b.insert(i, q + 1);
            crate::ice_model::from_boxes(m.lambda(), &b).ok()
        },
        Some(moved.clone()),
        "local move disagrees with reconstruction from the box set"
    );
    Some(moved)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ice_model::fixtures::{example_model, figure_model};
    use crate::ice_model::from_boxes;
    use crate::partition::Partition;
    use TokenKind::{L, R};

    fn lam(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn signatures_of_the_worked_example() {
        let m = example_model();
        let s1 = signature(&m, 1);
        assert_eq!(s1.kinds(), vec![R, L]);
        assert_eq!(s1.tokens[0].pos, (2, 3));
        assert_eq!(s1.tokens[1].pos, (1, 5));

        let s2 = signature(&m, 2);
        assert_eq!(s2.kinds(), vec![L, R]);
        assert_eq!(s2.tokens[0].pos, (2, 3));
        assert_eq!(s2.tokens[1].pos, (3, 4));
    }

    #[test]
    fn empty_signature_when_rows_have_no_boxes() {
        let m = from_boxes(&lam(&[0, 0, 0]), &BoxSet::new()).unwrap();
        assert!(signature(&m, 1).tokens.is_empty());
        assert!(signature(&m, 2).tokens.is_empty());
    }

    fn word_of(kinds: &[TokenKind]) -> SignatureWord {
        SignatureWord {
            tokens: kinds
                .iter()
                .enumerate()
                .map(|(idx, &kind)| SigToken {
                    kind,
                    pos: (0, idx + 1),
                })
                .collect(),
        }
    }

    #[test]
    fn reduce_examples() {
        let rl = reduce(&word_of(&[R, L]));
        assert_eq!((rl.r_count, rl.l_count), (1, 1));

        let lr = reduce(&word_of(&[L, R]));
        assert_eq!((lr.r_count, lr.l_count), (0, 0));
        assert_eq!(lr.first_l, None);
        assert_eq!(lr.last_r, None);

        let llr = reduce(&word_of(&[L, L, R]));
        assert_eq!((llr.r_count, llr.l_count), (0, 1));
        assert_eq!(llr.first_l, Some((0, 1)));
    }

    /// Brute-force cancellation removing one adjacent L R pair at a time, in
    /// every possible order; used to confirm the stack reduction is confluent.
    fn reduce_all_orders(kinds: &[TokenKind]) -> std::collections::BTreeSet<(usize, usize)> {
        fn go(word: Vec<TokenKind>, out: &mut std::collections::BTreeSet<(usize, usize)>) {
            let mut cancelled_any = false;
            for idx in 0..word.len().saturating_sub(1) {
                if word[idx] == L && word[idx + 1] == R {
                    cancelled_any = true;
                    let mut next = word.clone();
                    next.drain(idx..idx + 2);
                    go(next, out);
                }
            }
            if !cancelled_any {
                let r = word.iter().filter(|&&k| k == R).count();
                let l = word.len() - r;
                out.insert((r, l));
            }
        }
        let mut out = std::collections::BTreeSet::new();
        go(kinds.to_vec(), &mut out);
        out
    }

    #[test]
    fn reduction_is_confluent_on_all_short_words() {
        for len in 0..=10usize {
            for bits in 0..(1u32 << len) {
                let kinds: Vec<TokenKind> = (0..len)
                    .map(|j| if bits >> j & 1 == 1 { R } else { L })
                    .collect();
                let every_order = reduce_all_orders(&kinds);
                assert_eq!(every_order.len(), 1, "not confluent on {kinds:?}");
                let stack = reduce(&word_of(&kinds));
                assert!(every_order.contains(&(stack.r_count, stack.l_count)));
            }
        }
    }

    #[test]
    fn operators_on_the_worked_example() {
        let m = example_model();
        assert!(f_op(&m, 2).is_none());
        assert!(e_op(&m, 2).is_none());

        let raised = e_op(&m, 1).unwrap();
        assert_eq!(
            raised.boxes(),
            BoxSet::from_positions([(1, 4), (3, 4), (1, 5)])
        );
        assert!(raised.is_valid());

        // The inverse move brings the box back.
        assert_eq!(f_op(&raised, 1).unwrap(), m);
    }

    #[test]
    fn lowering_the_top_model_gives_the_figure_model() {
        let top = from_boxes(
            &lam(&[2, 1, 0]),
            &BoxSet::from_positions([(1, 4), (1, 5), (2, 5)]),
        )
        .unwrap();
        assert_eq!(epsilon(&top, 1), 0);
        assert_eq!(phi(&top, 1), 1);
        let lowered = f_op(&top, 1).unwrap();
        assert_eq!(lowered, figure_model());
        assert_eq!(e_op(&lowered, 1).unwrap(), top);
    }

    #[test]
    fn raising_annihilates_the_top_model() {
        let top = from_boxes(
            &lam(&[2, 1, 0]),
            &BoxSet::from_positions([(1, 4), (1, 5), (2, 5)]),
        )
        .unwrap();
        assert!(e_op(&top, 1).is_none());
        assert!(e_op(&top, 2).is_none());
    }

    #[test]
    fn epsilon_phi_of_the_worked_example() {
        let m = example_model();
        assert_eq!((epsilon(&m, 1), phi(&m, 1)), (1, 1));
        assert_eq!((epsilon(&m, 2), phi(&m, 2)), (0, 0));
    }

    #[test]
    fn weights() {
        let top = from_boxes(
            &lam(&[2, 1, 0]),
            &BoxSet::from_positions([(1, 4), (1, 5), (2, 5)]),
        )
        .unwrap();
        assert_eq!(weight(&top), Weight::new(vec![2, 1, 0]));

        let m = example_model();
        assert_eq!(weight(&m), Weight::new(vec![1, 1, 1]));
        assert_eq!(weight(&m), Weight::new(vec![0, 0, 0])); // class equality

        let empty = from_boxes(&lam(&[0, 0]), &BoxSet::new()).unwrap();
        assert_eq!(weight(&empty), Weight::new(vec![0, 0]));
    }

    #[test]
    fn pairing_examples() {
        let w = Weight::new(vec![2, 1, 0]);
        assert_eq!(pairing(1, &w), 1);
        assert_eq!(pairing(2, &w), 1);
        let constant = Weight::new(vec![3, 3, 3]);
        assert_eq!(pairing(1, &constant), 0);
        assert_eq!(pairing(2, &constant), 0);
    }

    #[test]
    fn pairing_of_simple_roots_is_the_cartan_matrix() {
        let n = 4;
        for i in 1..n {
            for j in 1..n {
                let expect = 2 * i64::from(i == j) - i64::from(i + 1 == j) - i64::from(i == j + 1);
                assert_eq!(pairing(j, &Weight::alpha(i, n)), expect);
            }
        }
    }

    #[test]
    fn signature_counts_equal_iterated_operator_counts() {
        let lambda = lam(&[2, 1, 0]);
        for m in crate::ice_model::brute_force_enumerate(&lambda, 1 << 20).unwrap() {
            for i in 1..3 {
                let mut up = m.clone();
                let mut steps = 0;
                while let Some(next) = e_op(&up, i) {
                    up = next;
                    steps += 1;
                }
                assert_eq!(steps, epsilon(&m, i));

                let mut down = m.clone();
                let mut steps = 0;
                while let Some(next) = f_op(&down, i) {
                    down = next;
                    steps += 1;
                }
                assert_eq!(steps, phi(&m, i));
            }
        }
    }

    #[test]
    fn weight_changes_by_a_simple_root_under_the_moves() {
        let m = example_model();
        let n = m.num_rows();
        let raised = e_op(&m, 1).unwrap();
        assert_eq!(weight(&raised), weight(&m).add(&Weight::alpha(1, n)));
        let lowered = f_op(&raised, 1).unwrap();
        assert_eq!(weight(&lowered), weight(&raised).sub(&Weight::alpha(1, n)));
    }
}
