//! Builds the total graph for a K-vector over a pentagon and reads it back.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::fibration::{build_total, KVector};
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bd = load(&dir.join("pentagon.json"))?.base_data()?;
    let k = KVector::new(vec![2, -1, 1, 3, -1], 1)?;
    let f = build_total(&bd, &k)?;
    let g = f.total();
    println!("{} vertices, {} edge pairs", g.vertex_count(), g.pair_representatives().count());
    for e in g.pair_representatives() {
        println!("  {:>3}: {} -> {}  {}", g.edge_name(e), g.vertex_name(g.src(e)), g.vertex_name(g.dst(e)), g.label(e));
    }
    println!("classifies back to {}", f.classify()?);
    println!("after regluing over e1: {}", f.twist_involution()?.classify()?);
    Ok(())
}
