//! Lattice utilities: congruences, bases and the Smith normal form.
use gkm_fibrations::lattice::{congruent_mod, is_basis, IntMatrix, Weight};

fn main() {
    let (a, b, g) = (Weight::new(3, 1), Weight::new(1, 2), Weight::new(2, -1));
    println!("{a} = {b} mod {g}: {:?}", congruent_mod(a, b, g, true));
    println!("({a}, {g}) is a basis: {}", is_basis(a, g));
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
    let snf = m.smith();
    println!("Smith diagonal {:?}, rank {}, torsion {:?}", snf.diagonal, snf.rank, snf.torsion());
}
