//! Verifier for the local regularity axioms on an edge-colored directed
//! graph with a type-A Cartan matrix.
//!
//! The verifier never looks at ice models; it consumes only the abstract
//! graph. The raising map ẽᵢ follows an i-edge backwards and the lowering
//! map f̃ᵢ follows it forwards. The four difference quantities attached to a
//! node b and colors i, j are
//!
//! ```text
//! Δᵢφⱼ(b) = φⱼ(ẽᵢb) − φⱼ(b)      ∇ᵢφⱼ(b) = φⱼ(b) − φⱼ(f̃ᵢb)
//! Δᵢεⱼ(b) = εⱼ(b) − εⱼ(ẽᵢb)      ∇ᵢεⱼ(b) = εⱼ(f̃ᵢb) − εⱼ(b)
//! ```
//!
//! each defined only when the operator image it mentions exists. The primed
//! axioms R5'/R6' are the exact duals of R5/R6 under the symmetry that
//! swaps raising with lowering and ε with φ, so their hypotheses read ∇φ
//! where the unprimed ones read Δε.

use std::fmt;

use crate::graph::{Branching, CrystalGraph};

/// Type-A Cartan matrix of the given rank: 2 on the diagonal, −1 for
/// adjacent colors, 0 otherwise.
#[derive(Clone, Copy, Debug)]
pub struct CartanA {
    rank: usize,
}

impl CartanA {
    pub fn new(rank: usize) -> CartanA {
        CartanA { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        assert!((1..=self.rank).contains(&i) && (1..=self.rank).contains(&j));
        2 * i64::from(i == j) - i64::from(i + 1 == j) - i64::from(i == j + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathError {
    Branching(Branching),
    Cycle { node: usize, color: usize },
}

/// Distances from a node to the two ends of its monochromatic string:
/// ε steps backwards along incoming i-edges, φ steps forwards.
pub fn path_stats(
    g: &CrystalGraph,
    node: usize,
    color: usize,
) -> Result<(usize, usize), PathError> {
    let bound = g.node_count();
    let mut eps = 0usize;
    let mut cur = node;
    while let Some(prev) = g.e_image(cur, color).map_err(PathError::Branching)? {
        eps += 1;
        if eps > bound {
            return Err(PathError::Cycle { node, color });
        }
        cur = prev;
    }
    let mut phi = 0usize;
    let mut cur = node;
    while let Some(next) = g.f_image(cur, color).map_err(PathError::Branching)? {
        phi += 1;
        if phi > bound {
            return Err(PathError::Cycle { node, color });
        }
        cur = next;
    }
    Ok((eps, phi))
}

/// The four signed differences at (b, i, j); a field is `None` when the
/// operator image it depends on does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalQuantities {
    pub d_phi: Option<i64>,
    pub d_eps: Option<i64>,
    pub n_phi: Option<i64>,
    pub n_eps: Option<i64>,
}

/// Computes [`LocalQuantities`] directly from string walks. Requires a
/// structurally clean graph (no branching, no monochromatic cycles).
pub fn local_quantities(
    g: &CrystalGraph,
    b: usize,
    i: usize,
    j: usize,
) -> Result<LocalQuantities, PathError> {
    let (eps_b, phi_b) = path_stats(g, b, j)?;
    let up = g.e_image(b, i).map_err(PathError::Branching)?;
    let down = g.f_image(b, i).map_err(PathError::Branching)?;
    let (d_phi, d_eps) = match up {
        Some(e) => {
            let (eps_e, phi_e) = path_stats(g, e, j)?;
            (
                Some(phi_e as i64 - phi_b as i64),
                Some(eps_b as i64 - eps_e as i64),
            )
        }
        None => (None, None),
    };
    let (n_phi, n_eps) = match down {
        Some(f) => {
            let (eps_f, phi_f) = path_stats(g, f, j)?;
            (
                Some(phi_b as i64 - phi_f as i64),
                Some(eps_f as i64 - eps_b as i64),
            )
        }
        None => (None, None),
    };
    Ok(LocalQuantities {
        d_phi,
        d_eps,
        n_phi,
        n_eps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R5Prime,
    R6Prime,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::R1 => "R1",
            Axiom::R2 => "R2",
            Axiom::R3 => "R3",
            Axiom::R4 => "R4",
            Axiom::R5 => "R5",
            Axiom::R6 => "R6",
            Axiom::R5Prime => "R5'",
            Axiom::R6Prime => "R6'",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug)]
pub struct RegularityViolation {
    pub axiom: Axiom,
    pub node: String,
    pub colors: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for RegularityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at node {} colors {:?}: {}",
            self.axiom, self.node, self.colors, self.detail
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct RegularityReport {
    pub violations: Vec<RegularityViolation>,
    /// True when R1/R2 failed and the remaining axioms were skipped because
    /// ε and φ are then ill-defined.
    pub structural_failure: bool,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks all eight axioms and returns every violation found. Structural
/// axioms run first; if they fail, the remaining axioms are skipped.
pub fn verify_regular(g: &CrystalGraph, cartan: &CartanA) -> RegularityReport {
    let mut report = RegularityReport::default();
    let rank = cartan.rank();

    // R2 plus well-colored edges: at most one i-edge out of and into a node.
    for (idx, _) in g.nodes() {
        for i in 1..=rank {
            if g.f_image(idx, i).is_err() {
                report.violations.push(RegularityViolation {
                    axiom: Axiom::R2,
                    node: g.key(idx).to_string(),
                    colors: vec![i],
                    detail: "more than one outgoing edge of this color".into(),
                });
            }
            if g.e_image(idx, i).is_err() {
                report.violations.push(RegularityViolation {
                    axiom: Axiom::R2,
                    node: g.key(idx).to_string(),
                    colors: vec![i],
                    detail: "more than one incoming edge of this color".into(),
                });
            }
        }
    }
    for (src, color, _) in g.edges() {
        if color < 1 || color > rank {
            report.violations.push(RegularityViolation {
                axiom: Axiom::R2,
                node: g.key(src).to_string(),
                colors: vec![color],
                detail: format!("edge color {color} outside 1..={rank}"),
            });
        }
    }

    // R1: monochromatic paths of finite length, i.e. no directed cycle in
    // any single color.
    for i in 1..=rank {
        if let Some(node) = monochromatic_cycle(g, i) {
            report.violations.push(RegularityViolation {
                axiom: Axiom::R1,
                node: g.key(node).to_string(),
                colors: vec![i],
                detail: "directed cycle in this color".into(),
            });
        }
    }

    if !report.violations.is_empty() {
        report.structural_failure = true;
        return report;
    }

    // Strings are clean paths from here on.
    let stats: Vec<Vec<(usize, usize)>> = (0..g.node_count())
        .map(|b| {
            (1..=rank)
                .map(|i| path_stats(g, b, i).expect("structure verified"))
                .collect()
        })
        .collect();
    let eps = |b: usize, i: usize| stats[b][i - 1].0 as i64;
    let phi = |b: usize, i: usize| stats[b][i - 1].1 as i64;
    let e_img = |b: usize, i: usize| g.e_image(b, i).expect("structure verified");
    let f_img = |b: usize, i: usize| g.f_image(b, i).expect("structure verified");
    let d_phi = |b: usize, i: usize, j: usize| e_img(b, i).map(|e| phi(e, j) - phi(b, j));
    let d_eps = |b: usize, i: usize, j: usize| e_img(b, i).map(|e| eps(b, j) - eps(e, j));
    let n_phi = |b: usize, i: usize, j: usize| f_img(b, i).map(|f| phi(b, j) - phi(f, j));

    for b in 0..g.node_count() {
        let key = || g.key(b).to_string();
        for i in 1..=rank {
            for j in 1..=rank {
                if i == j {
                    continue;
                }
                // R3 and R4 apply whenever the raising image exists.
                if let (Some(dp), Some(de)) = (d_phi(b, i, j), d_eps(b, i, j)) {
                    let expected = cartan.entry(i, j);
                    if dp + de != expected {
                        report.violations.push(RegularityViolation {
                            axiom: Axiom::R3,
                            node: key(),
                            colors: vec![i, j],
                            detail: format!("Δφ + Δε = {} expected {expected}", dp + de),
                        });
                    }
                    if dp > 0 || de > 0 {
                        report.violations.push(RegularityViolation {
                            axiom: Axiom::R4,
                            node: key(),
                            colors: vec![i, j],
                            detail: format!("Δφ = {dp}, Δε = {de}, both must be ≤ 0"),
                        });
                    }
                }

                // R5: raising maps commute when Δᵢεⱼ vanishes.
                if e_img(b, i).is_some() && e_img(b, j).is_some() && d_eps(b, i, j) == Some(0) {
                    match compose(&e_img, b, &[j, i]).zip(compose(&e_img, b, &[i, j])) {
                        Some((y1, y2)) if y1 == y2 => {
                            if n_phi(y1, j, i) != Some(0) {
                                report.violations.push(RegularityViolation {
                                    axiom: Axiom::R5,
                                    node: key(),
                                    colors: vec![i, j],
                                    detail: format!("∇ⱼφᵢ(y) = {:?} expected 0", n_phi(y1, j, i)),
                                });
                            }
                        }
                        Some((y1, y2)) => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R5,
                                node: key(),
                                colors: vec![i, j],
                                detail: format!("ẽᵢẽⱼ ≠ ẽⱼẽᵢ ({} vs {})", g.key(y1), g.key(y2)),
                            });
                        }
                        None => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R5,
                                node: key(),
                                colors: vec![i, j],
                                detail: "a composite raising image is undefined".into(),
                            });
                        }
                    }
                }

                // R5': the mirror of R5 under the raising/lowering duality,
                // which also swaps ε with φ: the hypothesis reads ∇ᵢφⱼ = 0
                // and the condition at the meeting point reads Δⱼεᵢ = 0.
                if f_img(b, i).is_some() && f_img(b, j).is_some() && n_phi(b, i, j) == Some(0) {
                    match compose(&f_img, b, &[j, i]).zip(compose(&f_img, b, &[i, j])) {
                        Some((y1, y2)) if y1 == y2 => {
                            if d_eps(y1, j, i) != Some(0) {
                                report.violations.push(RegularityViolation {
                                    axiom: Axiom::R5Prime,
                                    node: key(),
                                    colors: vec![i, j],
                                    detail: format!("Δⱼεᵢ(y) = {:?} expected 0", d_eps(y1, j, i)),
                                });
                            }
                        }
                        Some((y1, y2)) => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R5Prime,
                                node: key(),
                                colors: vec![i, j],
                                detail: format!("f̃ᵢf̃ⱼ ≠ f̃ⱼf̃ᵢ ({} vs {})", g.key(y1), g.key(y2)),
                            });
                        }
                        None => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R5Prime,
                                node: key(),
                                colors: vec![i, j],
                                detail: "a composite lowering image is undefined".into(),
                            });
                        }
                    }
                }

                if j < i {
                    continue; // R6 hypotheses are symmetric in i and j
                }

                // R6: degree-four braid relation.
                if e_img(b, i).is_some()
                    && e_img(b, j).is_some()
                    && d_eps(b, i, j) == Some(-1)
                    && d_eps(b, j, i) == Some(-1)
                {
                    match compose(&e_img, b, &[i, j, j, i]).zip(compose(&e_img, b, &[j, i, i, j])) {
                        Some((y1, y2)) if y1 == y2 => {
                            if n_phi(y1, i, j) != Some(-1) || n_phi(y1, j, i) != Some(-1) {
                                report.violations.push(RegularityViolation {
                                    axiom: Axiom::R6,
                                    node: key(),
                                    colors: vec![i, j],
                                    detail: format!(
                                        "∇ᵢφⱼ(y) = {:?}, ∇ⱼφᵢ(y) = {:?}, expected −1, −1",
                                        n_phi(y1, i, j),
                                        n_phi(y1, j, i)
                                    ),
                                });
                            }
                        }
                        Some((y1, y2)) => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R6,
                                node: key(),
                                colors: vec![i, j],
                                detail: format!(
                                    "ẽᵢẽⱼ²ẽᵢ ≠ ẽⱼẽᵢ²ẽⱼ ({} vs {})",
                                    g.key(y1),
                                    g.key(y2)
                                ),
                            });
                        }
                        None => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R6,
                                node: key(),
                                colors: vec![i, j],
                                detail: "a composite raising image is undefined".into(),
                            });
                        }
                    }
                }

                // R6': braid relation for the lowering maps, hypotheses and
                // meeting-point conditions dualized like R5'.
                if f_img(b, i).is_some()
                    && f_img(b, j).is_some()
                    && n_phi(b, i, j) == Some(-1)
                    && n_phi(b, j, i) == Some(-1)
                {
                    match compose(&f_img, b, &[i, j, j, i]).zip(compose(&f_img, b, &[j, i, i, j])) {
                        Some((y1, y2)) if y1 == y2 => {
                            if d_eps(y1, i, j) != Some(-1) || d_eps(y1, j, i) != Some(-1) {
                                report.violations.push(RegularityViolation {
                                    axiom: Axiom::R6Prime,
                                    node: key(),
                                    colors: vec![i, j],
                                    detail: format!(
                                        "Δᵢεⱼ(y) = {:?}, Δⱼεᵢ(y) = {:?}, expected −1, −1",
                                        d_eps(y1, i, j),
                                        d_eps(y1, j, i)
                                    ),
                                });
                            }
                        }
                        Some((y1, y2)) => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R6Prime,
                                node: key(),
                                colors: vec![i, j],
                                detail: format!(
                                    "f̃ᵢf̃ⱼ²f̃ᵢ ≠ f̃ⱼf̃ᵢ²f̃ⱼ ({} vs {})",
                                    g.key(y1),
                                    g.key(y2)
                                ),
                            });
                        }
                        None => {
                            report.violations.push(RegularityViolation {
                                axiom: Axiom::R6Prime,
                                node: key(),
                                colors: vec![i, j],
                                detail: "a composite lowering image is undefined".into(),
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// Applies single-color steps left to right: `colors = [a, b]` computes the
/// b-step after the a-step.
fn compose(
    step: &dyn Fn(usize, usize) -> Option<usize>,
    start: usize,
    colors: &[usize],
) -> Option<usize> {
    let mut cur = start;
    for &c in colors {
        cur = step(cur, c)?;
    }
    Some(cur)
}

/// Returns a node lying on a directed cycle of the given color, if any.
fn monochromatic_cycle(g: &CrystalGraph, color: usize) -> Option<usize> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.node_count();
    let mut state = vec![WHITE; n];
    for start in 0..n {
        if state[start] != WHITE {
            continue;
        }
        // Iterative DFS over the one-color subgraph.
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(start, g.out_targets(start, color))];
        state[start] = GRAY;
        while let Some((node, mut pending)) = stack.pop() {
            match pending.pop() {
                Some(next) => {
                    stack.push((node, pending));
                    match state[next] {
                        GRAY => return Some(next),
                        WHITE => {
                            state[next] = GRAY;
                            stack.push((next, g.out_targets(next, color)));
                        }
                        _ => {}
                    }
                }
                None => state[node] = BLACK,
            }
        }
    }
    None
}
