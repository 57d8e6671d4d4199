use crate::error::{Error, Result};
use crate::fibration::{BaseData, Gluing, KVector};
use crate::lattice::{congruent_mod, is_basis, Weight};
use serde::Serialize;

/// Three edge directions at one vertex of the lifted polytope and their determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCheck {
    pub vertex: String,
    pub directions: [[i64; 3]; 3],
    pub determinant: i128,
}

/// The 3-polytope with bottom face `P × {0}` and top face spanned by
/// `w_i = v_i + (α_i, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelzantLift {
    pub bottom: Vec<[i64; 3]>,
    pub top: Vec<[i64; 3]>,
    /// `t_i` with `w_{i+1} − w_i = t_i γ_i`.
    pub top_edge_multiples: Vec<i64>,
    pub checks: Vec<VertexCheck>,
    /// Every determinant is `±1` and every top edge runs along `+γ_i`.
    pub is_delzant: bool,
}

fn det3(m: &[[i64; 3]; 3]) -> i128 {
    let e = |i: usize, j: usize| i128::from(m[i][j]);
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

fn flat(w: Weight, z: i64) -> [i64; 3] {
    [w.x, w.y, z]
}

/// Lifts the Delzant polygon `P` (vertices listed as `v_1, …, v_n`) along
/// the fiber weights of a product-type `kv` and checks the Delzant
/// condition at all `2n` vertices with integer determinants.
pub fn delzant_lift(polygon: &[[i64; 2]], kv: &KVector, bd: &BaseData) -> Result<DelzantLift> {
    let n = bd.n();
    if kv.gluing() != Gluing::Product {
        return Err(Error::NotProductType);
    }
    if kv.n() != n || polygon.len() != n {
        return Err(Error::PreconditionUnmet(format!(
            "base has {n} vertices, K has {} entries and the polygon {}",
            kv.n(),
            polygon.len()
        )));
    }
    if !bd.is_signed_data() {
        return Err(Error::PreconditionUnmet("the base does not carry signed data".into()));
    }
    let v: Vec<Weight> = polygon.iter().map(|&p| Weight::from(p)).collect();
    let at = |i: usize| v[i % n];
    for i in 0..n {
        let idx = i as i64 + 1;
        let edge = at(i + 1) - at(i);
        let g = bd.gamma(idx);
        match congruent_mod(edge, Weight::new(0, 0), g, true) {
            Some(m) if m > 0 => {}
            _ => return Err(Error::NotDelzant(format!("edge v{idx}v{} is not a positive multiple of {g}", idx % n as i64 + 1))),
        }
        if !is_basis(bd.gamma(idx - 1), g) {
            return Err(Error::NotDelzant(format!("edge directions at v{idx} do not form a lattice basis")));
        }
    }
    let alphas: Vec<Weight> = (1..=n as i64).map(|i| bd.alpha(kv, i)).collect();
    let w: Vec<Weight> = (0..n).map(|i| v[i] + alphas[i]).collect();
    let wat = |i: usize| w[i % n];
    let mut checks = Vec::with_capacity(2 * n);
    let mut multiples = Vec::with_capacity(n);
    let mut ok = true;
    for i in 0..n {
        let idx = i as i64 + 1;
        let dirs = [flat(-bd.gamma(idx - 1), 0), flat(bd.gamma(idx), 0), flat(alphas[i], 1)];
        checks.push(VertexCheck { vertex: format!("v{idx}"), directions: dirs, determinant: det3(&dirs) });
    }
    for i in 0..n {
        let idx = i as i64 + 1;
        let back = (wat(i + n - 1) - w[i]).primitive();
        let fwd = (wat(i + 1) - w[i]).primitive();
        let dirs = [flat(back, 0), flat(fwd, 0), flat(-alphas[i], -1)];
        checks.push(VertexCheck { vertex: format!("w{idx}"), directions: dirs, determinant: det3(&dirs) });
        match congruent_mod(wat(i + 1) - w[i], Weight::new(0, 0), bd.gamma(idx), true) {
            Some(t) => {
                ok &= t > 0;
                multiples.push(t);
            }
            None => {
                return Err(Error::InconsistentFibration(format!("top edge at w{idx} is not parallel to γ_{idx}")));
            }
        }
    }
    ok &= checks.iter().all(|c| c.determinant.abs() == 1);
    Ok(DelzantLift {
        bottom: v.iter().map(|&p| flat(p, 0)).collect(),
        top: w.iter().map(|&p| flat(p, 1)).collect(),
        top_edge_multiples: multiples,
        checks,
        is_delzant: ok,
    })
}
