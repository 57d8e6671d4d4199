//! Which K-vectors over the triangle give isomorphic total graphs.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::fibration::{build_total, total_isomorphic, KVector};
use gkm_fibrations::Budget;
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bd = load(&dir.join("cp2.json"))?.base_data()?;
    let budget = Budget::default();
    let reference = build_total(&bd, &KVector::new(vec![1, -1, -1], 1)?)?;
    for ks in [[-1, 1, -1], [-1, -1, 1], [1, -1, 1], [1, 1, 1]] {
        let other = build_total(&bd, &KVector::new(ks.to_vec(), 1)?)?;
        println!("[1,-1,-1] eta=1 vs {:?} eta=1: {}", ks, total_isomorphic(&reference, &other, &budget)?);
    }
    Ok(())
}
