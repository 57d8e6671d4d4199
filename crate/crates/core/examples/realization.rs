//! Group diagrams of the flag example and the Delzant lift over the square.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::fibration::KVector;
use gkm_fibrations::realization::{connected_stabilizers, delzant_lift, group_diagrams, verify_gluing};
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let cp2 = load(&dir.join("cp2.json"))?.base_data()?;
    let flag = KVector::new(vec![1, -1, 1], 1)?;
    let diagrams = group_diagrams(&flag, &[0, 0, 0], &cp2)?;
    for d in &diagrams {
        println!("{d}");
    }
    println!("gluing failures: {:?}", verify_gluing(&flag, &cp2, &diagrams));
    println!("connected stabilizers: {}", connected_stabilizers(&flag));

    let square_doc = load(&dir.join("square.json"))?;
    let polygon = square_doc.positions().expect("the square fixture has positions");
    let lift = delzant_lift(&polygon, &KVector::new(vec![1; 4], 0)?, &square_doc.base_data()?)?;
    println!("top face {:?}, Delzant: {}", lift.top, lift.is_delzant);
    Ok(())
}
