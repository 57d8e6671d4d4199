//! Signed structures on the twisted hexagon graph with five interior vertices.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::fibration::{build_total, KVector};
use gkm_fibrations::signed::{classify_cases, enumerate_signed_structures};
use gkm_fibrations::Budget;
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let bd = load(&dir.join("hexagon.json"))?.base_data()?;
    let f = build_total(&bd, &KVector::new(vec![1; 6], 1)?)?;
    let budget = Budget::default();
    let structures = enumerate_signed_structures(f.total(), &budget)?;
    for case in classify_cases(&f, &structures, &budget)? {
        println!("{:?}: {} sign assignments", case.tag, case.structure.members.len());
    }
    Ok(())
}
