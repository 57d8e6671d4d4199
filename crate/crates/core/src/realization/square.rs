use crate::error::{Error, Result};
use crate::fibration::{BaseData, Gluing, KVector};
use crate::graph::{GkmGraph, GraphBuilder, Mode};
use crate::lattice::{congruent_mod, Weight};
use serde::Serialize;

/// The unsigned graph of the projectivized bundle over the single edge `e_i`:
/// vertices `p_i, q_i` over `v_i` and `p_{i+1}, q_{i+1}` over `v_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HirzebruchSquare {
    pub index: usize,
    pub graph: GkmGraph,
    /// `γ_i`, the label of both horizontal edges.
    pub base_weight: Weight,
    /// Signed vertical weights `α_i` and `α_{i+1}`.
    pub verticals: (Weight, Weight),
}

/// Serializable view of a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSummary {
    pub index: usize,
    pub base_weight: Weight,
    pub verticals: (Weight, Weight),
    pub fiberwise_signed: bool,
}

impl HirzebruchSquare {
    /// The verticals satisfy `α_{i+1} ≡ α_i mod γ_i`, so the square fibers
    /// over the edge with coherently signed fibers.
    pub fn is_fiberwise_signed(&self) -> bool {
        congruent_mod(self.verticals.1, self.verticals.0, self.base_weight, true).is_some()
    }

    pub fn summary(&self) -> SquareSummary {
        SquareSummary {
            index: self.index,
            base_weight: self.base_weight,
            verticals: self.verticals,
            fiberwise_signed: self.is_fiberwise_signed(),
        }
    }
}

/// Square over `e_i`, `1 ≤ i ≤ n`. Edges: `g_i` (`p_i → q_i`), `f_i`
/// (`p_i → p_{i+1}`), `h_i` (`q_i → q_{i+1}`), `g_{i+1}` (`p_{i+1} → q_{i+1}`).
pub fn hirzebruch_square(kv: &KVector, bd: &BaseData, i: usize) -> Result<HirzebruchSquare> {
    let n = bd.n();
    if kv.n() != n {
        return Err(Error::PreconditionUnmet(format!("K has {} entries but the base has {n} vertices", kv.n())));
    }
    if i == 0 || i > n {
        return Err(Error::PreconditionUnmet(format!("edge index {i} is outside 1..={n}")));
    }
    let idx = i as i64;
    let gamma = bd.gamma(idx);
    let (left, right) = (bd.alpha(kv, idx), bd.alpha(kv, idx + 1));
    let mut gb = GraphBuilder::new(Mode::Unsigned);
    let p0 = gb.vertex(format!("p{i}"));
    let q0 = gb.vertex(format!("q{i}"));
    let p1 = gb.vertex(format!("p{}", i + 1));
    let q1 = gb.vertex(format!("q{}", i + 1));
    gb.edge(p0, q0, left, format!("g{i}"));
    gb.edge(p0, p1, gamma, format!("f{i}"));
    gb.edge(q0, q1, gamma, format!("h{i}"));
    gb.edge(p1, q1, right, format!("g{}", i + 1));
    Ok(HirzebruchSquare { index: i, graph: gb.build()?, base_weight: gamma, verticals: (left, right) })
}

/// Glues consecutive squares along their shared fibers, closing the ladder
/// straight (product type) or crosswise (twisted type). The result uses the
/// vertex and edge layout of [`crate::fibration::build_total`].
pub fn stitch_squares(squares: &[HirzebruchSquare], gluing: Gluing) -> Result<GkmGraph> {
    let n = squares.len();
    if n == 0 {
        return Err(Error::PreconditionUnmet("no squares to stitch".into()));
    }
    for (j, s) in squares.iter().enumerate() {
        if s.index != j + 1 {
            return Err(Error::PreconditionUnmet(format!("square {} found at position {}", s.index, j + 1)));
        }
        let next = &squares[(j + 1) % n];
        if !s.verticals.1.eq_up_to_sign(next.verticals.0) {
            return Err(Error::InconsistentFibration(format!(
                "fiber weight {} of square {} does not match {} of square {}",
                s.verticals.1, s.index, next.verticals.0, next.index
            )));
        }
    }
    let mut gb = GraphBuilder::new(Mode::Unsigned);
    for i in 1..=n {
        gb.vertex(format!("p{i}"));
        gb.vertex(format!("q{i}"));
    }
    let (p, q) = (|i: usize| 2 * (i - 1), |i: usize| 2 * (i - 1) + 1);
    for s in squares {
        let i = s.index;
        let (np, nq) = match (i == n, gluing) {
            (true, Gluing::Twisted) => (q(1), p(1)),
            _ => (p(i % n + 1), q(i % n + 1)),
        };
        gb.edge(p(i), q(i), s.verticals.0, format!("g{i}"));
        gb.edge(p(i), np, s.base_weight, format!("f{i}"));
        gb.edge(q(i), nq, s.base_weight, format!("h{i}"));
    }
    gb.build()
}
