use crate::error::{Error, Result};
use crate::fibration::KVector;
use crate::lattice::Mat2;

/// `(n_0 n_3 − n_1 n_2)² − 4 (n_0 n_2 − n_1²)(n_1 n_3 − n_2²)`.
pub fn cubic_discriminant(n0: i128, n1: i128, n2: i128, n3: i128) -> i128 {
    let a = n0 * n3 - n1 * n2;
    a * a - 4 * (n0 * n2 - n1 * n1) * (n1 * n3 - n2 * n2)
}

/// The values `n_j = T(e_1^{3−j} e_2^j)` after the basis change `e'_i = Σ_j m_{ji} e_j`.
pub fn transform_cubic(ns: [i128; 4], m: Mat2) -> [i128; 4] {
    let t = |a: usize, b: usize, c: usize| ns[a + b + c];
    let col = |i: usize| [i128::from(m.m[0][i]), i128::from(m.m[1][i])];
    let cols = [col(0), col(1)];
    let mut out = [0i128; 4];
    for (j, slot) in out.iter_mut().enumerate() {
        let idx: Vec<usize> = (0..3).map(|p| usize::from(p >= 3 - j)).collect();
        let (u, v, w) = (cols[idx[0]], cols[idx[1]], cols[idx[2]]);
        let mut s = 0;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    s += u[a] * v[b] * w[c] * t(a, b, c);
                }
            }
        }
        *slot = s;
    }
    out
}

/// `(k_1 + k_2 + k_3)² − 4η k_1 k_3` for a fibration over a triangle.
pub fn delta_cp2_fibration(kv: &KVector) -> Result<i128> {
    if kv.n() != 3 {
        return Err(Error::WrongBase { n: kv.n() });
    }
    let k: Vec<i128> = kv.ks().iter().map(|&x| x.into()).collect();
    let s = k[0] + k[1] + k[2];
    Ok(s * s - 4 * i128::from(kv.eta()) * k[0] * k[2])
}
