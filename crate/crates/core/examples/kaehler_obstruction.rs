//! Rules out invariant Kähler structures on the twisted flag example.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::signed::nonkaehler_report;
use gkm_fibrations::Budget;
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let f = load(&dir.join("tolman.json"))?.fibration(Some(&dir))?;
    let report = nonkaehler_report(&f, &Budget::default())?;
    println!("K = {}, {} interior vertices", report.k_vector, report.interior_vertices);
    for case in &report.cases {
        println!("  {:?}: obstructed = {}", case.tag, case.obstructed);
    }
    println!("no invariant Kähler structure: {}", report.no_invariant_kaehler_structure);
    Ok(())
}
