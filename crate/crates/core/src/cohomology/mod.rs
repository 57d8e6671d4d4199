//! Equivariant cohomology of the base as tuples of polynomials, Chern
//! classes of the rank-2 bundles, and the cohomology ring of their projectivizations.

mod classes;
mod discriminant;
mod poly;
mod ring;

pub use classes::{
    a_zero, base_chern, beta_classes, beta_pairing, BetaBasis, equivariant_chern_in_beta, equivariant_chern_raw,
    fiber_weights, localize_integral, BetaQuadratic, ChernInBeta, VertexClass,
};
pub use discriminant::{cubic_discriminant, delta_cp2_fibration, transform_cubic};
pub use poly::{Poly, MAX_DEGREE};
pub use ring::{
    chern_of_projectivization, projectivization_ring, BaseRing, Deg2, Deg4, DegreeShape, ProjectiveChern,
    ProjectiveRing,
};
