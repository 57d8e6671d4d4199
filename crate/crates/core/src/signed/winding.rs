use crate::error::{Error, Result};
use crate::lattice::Weight;
use serde::Serialize;
use std::cmp::Ordering;

/// A cyclic sequence of weights with an orientation `ε = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCycle {
    pub weights: Vec<Weight>,
    pub orientation: i8,
}

impl WeightCycle {
    pub fn new(weights: Vec<Weight>, orientation: i8) -> Result<Self> {
        check_consecutive(&weights)?;
        if orientation != 1 && orientation != -1 {
            return Err(Error::PreconditionUnmet("orientation must be +1 or -1".into()));
        }
        Ok(WeightCycle { weights, orientation })
    }

    pub fn winding_number(&self) -> u64 {
        winding_number(&self.weights, self.orientation).expect("checked on construction")
    }
}

fn check_consecutive(ws: &[Weight]) -> Result<()> {
    let n = ws.len();
    if n == 0 {
        return Err(Error::PreconditionUnmet("empty weight sequence".into()));
    }
    for i in 0..n {
        if ws[i].cross(ws[(i + 1) % n]) == 0 {
            return Err(Error::DegenerateSequence { index: i + 1 });
        }
    }
    Ok(())
}

/// `+1` if every consecutive cross product is positive, `−1` if every one is
/// negative, `None` otherwise. Zero cross products are a precondition violation.
pub fn is_locally_convex(ws: &[Weight]) -> Result<Option<i8>> {
    check_consecutive(ws)?;
    let n = ws.len();
    let first = ws[0].cross(ws[1 % n]).signum();
    let uniform = (0..n).all(|i| ws[i].cross(ws[(i + 1) % n]).signum() == first);
    Ok(uniform.then_some(first as i8))
}

/// 0 for directions in `[0, π)`, 1 for `[π, 2π)`.
fn half(w: Weight) -> u8 {
    u8::from(!(w.y > 0 || (w.y == 0 && w.x > 0)))
}

/// Compares the angles of two nonzero weights in `[0, 2π)`.
fn angle_cmp(a: Weight, b: Weight) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Total turning of the cyclic sequence in full turns.
///
/// With `ε = +1` each step turns by an angle in `(0, 2π)`, so the sum is
/// `2π` times the number of steps where the angle in `[0, 2π)` decreases.
/// With `ε = −1` the steps turn by angles in `(−2π, 0)` and the count is
/// the number of increases.
pub fn winding_number(ws: &[Weight], orientation: i8) -> Result<u64> {
    check_consecutive(ws)?;
    let n = ws.len();
    let wanted = if orientation >= 0 { Ordering::Less } else { Ordering::Greater };
    Ok((0..n).filter(|&i| angle_cmp(ws[(i + 1) % n], ws[i]) == wanted).count() as u64)
}

/// The orientation giving the smaller winding number (`+1` on ties) and that number.
pub fn preferred_winding(ws: &[Weight]) -> Result<(i8, u64)> {
    let plus = winding_number(ws, 1)?;
    let minus = winding_number(ws, -1)?;
    Ok(if minus < plus { (-1, minus) } else { (1, plus) })
}

/// Locally convex with winding number 1 for its preferred orientation.
pub fn is_polytope_cycle(ws: &[Weight]) -> Result<bool> {
    Ok(match is_locally_convex(ws)? {
        Some(o) => winding_number(ws, o)? == 1,
        None => false,
    })
}
