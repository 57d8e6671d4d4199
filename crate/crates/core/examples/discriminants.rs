//! The discriminant invariant separates projectivizations over the triangle.
use gkm_fibrations::cohomology::{cubic_discriminant, delta_cp2_fibration, transform_cubic};
use gkm_fibrations::fibration::KVector;
use gkm_fibrations::lattice::Mat2;

fn main() -> gkm_fibrations::Result<()> {
    for m in 1..=10 {
        let k = KVector::new(vec![m, -1, -1], 1)?;
        println!("{k:<18} delta = {}", delta_cp2_fibration(&k)?);
    }
    let form = [1, -2, 0, 3];
    let moved = transform_cubic(form, Mat2::new(2, 1, 1, 1));
    println!(
        "cubic {form:?} -> {moved:?}: discriminant {} -> {}",
        cubic_discriminant(form[0], form[1], form[2], form[3]),
        cubic_discriminant(moved[0], moved[1], moved[2], moved[3])
    );
    Ok(())
}
