//! Draws the twisted flag graph from its stored vertex positions.
use gkm_fibrations::cli::document::load;
use gkm_fibrations::cli::render_svg;
use std::path::Path;

fn main() -> gkm_fibrations::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/tolman.json");
    let doc = load(&path)?;
    let positions = doc.positions().expect("the fixture has positions");
    let svg = render_svg(&doc.graph()?, &positions);
    let out = std::env::temp_dir().join("tolman.svg");
    std::fs::write(&out, svg).map_err(|e| gkm_fibrations::Error::Io(e.to_string()))?;
    println!("wrote {}", out.display());
    Ok(())
}
