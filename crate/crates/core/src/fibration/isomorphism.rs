use super::Fibration;
use crate::budget::Budget;
use crate::error::Result;

/// Whether the unsigned total graphs of two fiberwise signed fibrations are
/// isomorphic (lattice automorphisms allowed).
///
/// For bases with at least five vertices every isomorphism of totals covers
/// one of the bases, so it suffices to transport the base data of `f1` along
/// each base isomorphism and compare K-vectors, recomputed by [`Fibration::classify`].
/// Smaller bases fall back to a direct search on the total graphs.
pub fn total_isomorphic(f1: &Fibration, f2: &Fibration, budget: &Budget) -> Result<bool> {
    let n = f1.base_data().n();
    if n != f2.base_data().n() {
        return Ok(false);
    }
    if n < 5 {
        let (g1, g2) = (f1.total().forget_signs(), f2.total().forget_signs());
        return Ok(g1.isomorphic(&g2, true, budget)?.is_some());
    }
    let k1 = f1.classify()?;
    if k1.eta() != f2.classify()?.eta() {
        return Ok(false);
    }
    let (b1, b2) = (f1.base().forget_signs(), f2.base().forget_signs());
    for iso in b1.all_isomorphisms(&b2, true, budget)? {
        let Ok(bd2) = f1.base_data().transported(&iso.edge_map, iso.phi, b2.clone()) else {
            continue;
        };
        if f2.with_base_data(bd2)?.classify()? == k1 {
            return Ok(true);
        }
    }
    Ok(false)
}
