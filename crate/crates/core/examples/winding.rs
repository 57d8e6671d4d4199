//! Winding numbers of convex and sign-alternated weight cycles.
use gkm_fibrations::lattice::Weight;
use gkm_fibrations::signed::{is_locally_convex, preferred_winding};

fn main() -> gkm_fibrations::Result<()> {
    let octagon: Vec<Weight> = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
        .into_iter()
        .map(|(x, y)| Weight::new(x, y))
        .collect();
    let alternating: Vec<Weight> =
        octagon.iter().enumerate().map(|(i, &w)| if i % 2 == 0 { w } else { -w }).collect();
    for (name, ws) in [("octagon", &octagon), ("alternating", &alternating)] {
        let (o, s) = preferred_winding(ws)?;
        println!("{name:>12}: locally convex {:?}, preferred orientation {o:+}, winding {s}", is_locally_convex(ws)?);
    }
    Ok(())
}
