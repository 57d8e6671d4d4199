//! Interior-vertex counts of signed lifts against the sign pattern of K.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::fibration::{build_total, interior_by_k, interior_vertices, KVector};
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bd = load(&dir.join("hexagon.json"))?.base_data()?;
    for (ks, eta) in [(vec![1, 1, 1, 1, 1, 1], 1), (vec![1, -1, 1, 1, 2, 1], 1), (vec![1, -1, 1, -1, 1, -1], 0)] {
        let k = KVector::new(ks, eta)?;
        let lifted = build_total(&bd, &k)?.lift_signed_default()?;
        let found = interior_vertices(&lifted).len();
        let predicted: Vec<u8> = interior_by_k(&k).into_iter().map(u8::from).collect();
        println!("{k:<24} interior {found}, fibers with one {predicted:?}");
    }
    Ok(())
}
