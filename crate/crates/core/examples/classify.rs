//! Reads the bundled fibrations and prints their classifying K-vectors.
use gkm_fibrations::cli::document::load;
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["flag", "tolman", "nonunit", "square_product"] {
        let f = load(&dir.join(format!("{name}.json")))?.fibration(Some(&dir))?;
        let report = f.validate();
        println!("{name:>15}: {}  (valid: {})", f.classify()?, report.is_valid());
    }
    Ok(())
}
