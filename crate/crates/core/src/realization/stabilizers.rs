use crate::fibration::KVector;
use crate::graph::GkmGraph;
use serde::Serialize;

/// Whether the realization of `kv` has connected isotropy groups: exactly
/// when every `k_i = ±1`.
pub fn connected_stabilizers(kv: &KVector) -> bool {
    kv.ks().iter().all(|k| k.abs() == 1)
}

/// Two weights at a fixed point spanning a proper sublattice; their common
/// kernel is a disconnected isotropy group near that point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerWitness {
    pub vertex: String,
    pub first: String,
    pub second: String,
    /// Index of the sublattice spanned by the two weights.
    pub index: u128,
}

/// Graph-level test: the first pair of weights at a common vertex that does
/// not form a lattice basis, if any.
pub fn disconnected_stabilizer_witness(g: &GkmGraph) -> Option<StabilizerWitness> {
    for v in 0..g.vertex_count() {
        let star = g.out_edges(v);
        for (j, &a) in star.iter().enumerate() {
            for &b in &star[j + 1..] {
                let index = g.label(a).cross(g.label(b)).unsigned_abs();
                if index != 1 {
                    return Some(StabilizerWitness {
                        vertex: g.vertex_name(v).to_string(),
                        first: g.edge_name(a).to_string(),
                        second: g.edge_name(b).to_string(),
                        index,
                    });
                }
            }
        }
    }
    None
}
