use super::KVector;
use crate::graph::GkmGraph;
use crate::lattice::Weight;

/// True iff the weights positively span the plane, i.e. lie in no closed half-plane.
pub fn positively_spanning(ws: &[Weight]) -> bool {
    // A closed half-plane containing all of them can be rotated until its
    // boundary passes through one of them.
    !ws.iter().any(|&w| {
        [1i128, -1].iter().any(|&s| ws.iter().all(|&u| s * w.cross(u) >= 0))
    })
}

/// Vertices whose outgoing labels positively span the plane.
pub fn interior_vertices(g: &GkmGraph) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|&v| {
            let ws: Vec<Weight> = g.out_edges(v).iter().map(|&e| g.label(e)).collect();
            positively_spanning(&ws)
        })
        .collect()
}

/// Predicted interior flag of each fiber: fiber `i ≥ 2` iff `k_{i−1}`, `k_i`
/// share a sign; fiber 1 iff `k_n` and `(−1)^η k_1` do.
pub fn interior_by_k(kv: &KVector) -> Vec<bool> {
    let ks = kv.ks();
    let n = ks.len();
    (0..n)
        .map(|i| {
            if i == 0 {
                let k1 = if kv.eta() == 1 { -ks[0] } else { ks[0] };
                (ks[n - 1] > 0) == (k1 > 0)
            } else {
                (ks[i - 1] > 0) == (ks[i] > 0)
            }
        })
        .collect()
}
