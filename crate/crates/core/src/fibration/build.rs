use super::{BaseData, Fibration, KVector};
use crate::error::{Error, Result};
use crate::graph::{GraphBuilder, Mode};

/// The fiberwise signed fibration over `bd` classified by `kv`.
///
/// Vertices are `p_i = 2(i−1)` and `q_i = 2(i−1)+1` over `v_i`. Per `i` the
/// edge pairs are `g_i: p_i → q_i` (fiber weight `α_i`), then `f_i` and `h_i`
/// over `e_i` leaving `p_i` and `q_i`.
pub fn build_total(bd: &BaseData, kv: &KVector) -> Result<Fibration> {
    let n = bd.n();
    if kv.n() != n {
        return Err(Error::PreconditionUnmet(format!("K-vector has {} entries, base has {n} vertices", kv.n())));
    }
    let twisted = kv.eta() == 1;
    let base = bd.base();
    let mut gb = GraphBuilder::new(Mode::Unsigned);
    for i in 1..=n {
        gb.vertex(format!("p{i}"));
        gb.vertex(format!("q{i}"));
    }
    let (p, q) = (|i: usize| 2 * (i - 1), |i: usize| 2 * (i - 1) + 1);
    let mut vertex_map = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let v = bd.vertex(i as i64);
        vertex_map.extend([v, v]);
    }
    let mut edge_map = Vec::with_capacity(6 * n);
    let mut fiber_signs = Vec::with_capacity(6 * n);
    for i in 1..=n {
        let alpha = bd.alpha(kv, i as i64);
        let gamma = bd.gamma(i as i64);
        let e = bd.edge(i as i64);
        let (np, nq) = match (i == n, twisted) {
            (false, _) | (true, false) => (p(i % n + 1), q(i % n + 1)),
            (true, true) => (q(1), p(1)),
        };
        gb.edge(p(i), q(i), alpha, format!("g{i}"));
        edge_map.extend([None, None]);
        fiber_signs.extend([Some(alpha), Some(-alpha)]);
        gb.edge(p(i), np, gamma, format!("f{i}"));
        gb.edge(q(i), nq, gamma, format!("h{i}"));
        for _ in 0..2 {
            edge_map.extend([Some(e), Some(base.bar(e))]);
            fiber_signs.extend([None, None]);
        }
    }
    Fibration::new(gb.build()?, bd.clone(), vertex_map, edge_map, Some(fiber_signs))
}
