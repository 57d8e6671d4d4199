//! Signed structures on total graphs, winding numbers and the Kähler and
//! Hamiltonian obstruction checks.

mod report;
mod structures;
mod subgraphs;
mod winding;

pub use report::{edge_labels, nonkaehler_report, CaseCheck, CaseReport, EdgeLabel, ExteriorWinding, NonKaehlerReport};
pub use structures::{
    classify_cases, enumerate_signed_structures, flip_even_basic_edges, has_distinct_lift_weights, CaseTag,
    SignedStructure, SignedStructureCase,
};
pub use subgraphs::{
    exterior_cycles, hamiltonian_cone_obstruction, kaehler_obstruction, polytope_type_subgraphs, AdjacentPair,
    ConeVerdict, CycleSubgraph, ExteriorCycle, KaehlerVerdict,
};
pub use winding::{is_locally_convex, is_polytope_cycle, preferred_winding, winding_number, WeightCycle};

use crate::fibration::interior_vertices;
use crate::graph::GkmGraph;
use std::collections::BTreeSet;

fn interior_set(g: &GkmGraph) -> BTreeSet<usize> {
    interior_vertices(g).into_iter().collect()
}
