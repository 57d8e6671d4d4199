//! Equivariant Chern classes of the bundle and the ring of its projectivization.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::cohomology::{
    chern_of_projectivization, equivariant_chern_in_beta, localize_integral, projectivization_ring, BaseRing,
};
use gkm_fibrations::fibration::KVector;
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bd = load(&dir.join("square.json"))?.base_data()?;
    let k = KVector::new(vec![2, -1, 1, 1], 1)?;
    let a = [1, 0, -1, 0];
    let chern = equivariant_chern_in_beta(&bd, &k, &a)?;
    println!("c1 coefficients on the beta classes: {:?}", chern.c1);
    let (c1, c2) = chern.expand(&bd);
    for i in 1..=bd.n() as i64 {
        println!("  v{i}: c1 = {}, c2 = {}", c1.at(i), c2.at(i));
    }
    println!("integral of c2(E): {}", localize_integral(&bd, &c2)?);

    let ring = BaseRing::from_base_data(&bd)?;
    let pe = projectivization_ring(&ring, &bd, &k)?;
    let c = chern_of_projectivization(&pe, &bd)?;
    println!("P(E): Betti {:?}, c1^3 = {}, c1 c2 = {}, Euler characteristic {}", pe.betti(), c.c1_cubed, c.c1_c2, c.c3);
    Ok(())
}
