//! Combinatorial data of the geometric realization: cohomogeneity-one group
//! diagrams over the base edges, Hirzebruch squares, stabilizer connectivity
//! and the toric lift of product-type examples.

mod delzant;
mod diagrams;
mod square;
mod stabilizers;

pub use delzant::{delzant_lift, DelzantLift, VertexCheck};
pub use diagrams::{
    diagrams_for_chain, group_diagrams, resolve_coefficients, verify_gluing, CoefficientChain, GluingFailure,
    GroupDiagram,
};
pub use square::{hirzebruch_square, stitch_squares, HirzebruchSquare, SquareSummary};
pub use stabilizers::{connected_stabilizers, disconnected_stabilizer_witness, StabilizerWitness};
