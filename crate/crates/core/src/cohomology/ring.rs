use super::classes::{beta_classes, beta_pairing, equivariant_chern_in_beta, localize_integral, BetaQuadratic, VertexClass};
use super::discriminant::cubic_discriminant;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::fibration::{BaseData, KVector};
use crate::lattice::{quotient_shape, IntMatrix};
use serde::Serialize;

/// Rank and torsion of one degree of a cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeShape {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<i128>,
}

/// Ordinary cohomology of the base, generated by the images `b_i` of the `β_i`.
///
/// Degree-2 classes are written as integer combinations of the `b_i`; two
/// combinations are equal iff they pair identically with every `b_j`.
#[derive(Clone, Debug, Serialize)]
pub struct BaseRing {
    pub n: usize,
    /// `∫ β_i β_j`.
    pub pairing: Vec<Vec<i128>>,
    /// Integer combinations of the `b_i` that vanish.
    pub linear_relations: Vec<Vec<i128>>,
    /// A basis of `H²`, each entry written in the `b_i`.
    pub h2_basis: Vec<Vec<i128>>,
    pub shapes: Vec<DegreeShape>,
}

/// All sorted multisets of size `m` from `0..n`.
fn multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(n, m - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

fn flatten(c: &VertexClass, d: usize) -> Vec<i128> {
    c.values().iter().flat_map(|p| p.homogeneous(d)).collect()
}

/// Shapes of `H^{2d}_T / (u_1, u_2)·H^{2d−2}_T` for `d ≤ 3`, computed from
/// the spanning set of `β` monomials.
fn ordinary_shapes(bd: &BaseData) -> Result<Vec<DegreeShape>> {
    let n = bd.n();
    let betas = beta_classes(bd);
    let product = |idx: &[usize]| -> VertexClass {
        idx.iter().fold(VertexClass::constant(n, Poly::constant(1)), |acc, &i| &acc * &betas[i])
    };
    let mut out = Vec::new();
    for d in 0..=super::poly::MAX_DEGREE {
        let dim = n * (d + 1);
        let all: Vec<Vec<i128>> = multisets(n, d).iter().map(|m| flatten(&product(m), d)).collect();
        let mut ideal = Vec::new();
        if d > 0 {
            for m in multisets(n, d - 1) {
                let base = product(&m);
                for u in [Poly::monomial(1, 0, 1), Poly::monomial(0, 1, 1)] {
                    ideal.push(flatten(&(&base * &VertexClass::constant(n, u)), d));
                }
            }
        }
        let shape = quotient_shape(&all, &ideal, dim).ok_or_else(|| {
            Error::NotEquivariantClass(format!("the beta monomials do not span degree {}", 2 * d))
        })?;
        out.push(DegreeShape { degree: 2 * d, rank: shape.rank, torsion: shape.torsion });
    }
    Ok(out)
}

fn normalize_sign(v: &mut [i128]) {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

impl BaseRing {
    /// Builds the presentation from equivariant data; needs signed base data.
    pub fn from_base_data(bd: &BaseData) -> Result<BaseRing> {
        let n = bd.n();
        let pairing = beta_pairing(bd)?;
        let q = IntMatrix::from_rows(&pairing, n);
        let sf = q.smith();
        let linear_relations = (sf.rank..n)
            .map(|k| {
                let mut r = sf.u.row(k).to_vec();
                normalize_sign(&mut r);
                r
            })
            .collect();
        let h2_basis = sf
            .row_lattice_basis()
            .into_iter()
            .map(|mut b| {
                normalize_sign(&mut b);
                let mut x = sf.solve_left(&b).expect("basis vector lies in the row lattice");
                reduce(&mut x, &sf.u, sf.rank);
                x
            })
            .collect();
        let shapes = ordinary_shapes(bd)?;
        Ok(BaseRing { n, pairing, linear_relations, h2_basis, shapes })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.shapes.iter().map(|s| s.rank).collect()
    }

    /// `∫ ξ η` for degree-2 classes in `b` coordinates.
    pub fn pair(&self, a: &[i128], b: &[i128]) -> i128 {
        let mut s = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += a[i] * self.pairing[i][j] * b[j];
            }
        }
        s
    }

    /// `∫` of a quadratic expression in the `b_i`.
    pub fn integrate(&self, q: &BetaQuadratic) -> i128 {
        let mut s = 0;
        for i in 0..self.n {
            for j in i..self.n {
                s += i128::from(q.matrix[i][j]) * self.pairing[i][j];
            }
        }
        s
    }

    /// Coordinates of a degree-2 class in [`Self::h2_basis`].
    pub fn h2_coordinates(&self, v: &[i128]) -> Option<Vec<i128>> {
        let gram: Vec<Vec<i128>> =
            self.h2_basis.iter().map(|b| (0..self.n).map(|j| self.pair_with_b(b, j)).collect()).collect();
        let target: Vec<i128> = (0..self.n).map(|j| self.pair_with_b(v, j)).collect();
        IntMatrix::from_rows(&gram, self.n).smith().solve_left(&target)
    }

    fn pair_with_b(&self, v: &[i128], j: usize) -> i128 {
        (0..self.n).map(|i| v[i] * self.pairing[i][j]).sum()
    }
}

/// Shortens `x` by the trailing rows of `u` (the kernel) where that helps.
fn reduce(x: &mut [i128], u: &IntMatrix, rank: usize) {
    for k in rank..u.rows() {
        let r = u.row(k);
        loop {
            let norm = |v: &[i128]| v.iter().map(|a| a.abs()).sum::<i128>();
            let plus: Vec<i128> = x.iter().zip(r).map(|(a, b)| a + b).collect();
            let minus: Vec<i128> = x.iter().zip(r).map(|(a, b)| a - b).collect();
            let cur = norm(x);
            if norm(&plus) < cur {
                x.copy_from_slice(&plus);
            } else if norm(&minus) < cur {
                x.copy_from_slice(&minus);
            } else {
                break;
            }
        }
    }
}

/// A degree-2 class `Σ v_i b_i + t·x` of the projectivization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deg2 {
    pub base: Vec<i128>,
    pub x: i128,
}

/// A degree-4 class `p·[pt] + (Σ w_i b_i)·x` of the projectivization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deg4 {
    pub point: i128,
    pub x: Vec<i128>,
}

/// `H*(X)[x] / ⟨x² + c_1(E) x + c_2(E)⟩`.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveRing {
    pub base: BaseRing,
    /// `c_1(E)` in the `b_i`.
    pub c1: Vec<i128>,
    /// `c_2(E)` as a quadratic in the `b_i`.
    pub c2: BetaQuadratic,
    /// `∫ c_2(E)`.
    pub c2_integral: i128,
}

impl ProjectiveRing {
    pub fn betti(&self) -> Vec<usize> {
        let b = self.base.betti();
        (0..=3).map(|d| b.get(d).copied().unwrap_or(0) + if d > 0 { b.get(d - 1).copied().unwrap_or(0) } else { 0 }).collect()
    }

    pub fn mul22(&self, a: &Deg2, b: &Deg2) -> Deg4 {
        let bx = a.x * b.x;
        Deg4 {
            point: self.base.pair(&a.base, &b.base) - bx * self.c2_integral,
            x: (0..self.base.n).map(|i| a.x * b.base[i] + b.x * a.base[i] - bx * self.c1[i]).collect(),
        }
    }

    /// `∫` over the projectivization, normalized by `∫_fiber x = 1`.
    pub fn integrate24(&self, a: &Deg2, b: &Deg4) -> i128 {
        self.base.pair(&a.base, &b.x) + a.x * b.point - a.x * self.base.pair(&b.x, &self.c1)
    }

    pub fn triple(&self, a: &Deg2, b: &Deg2, c: &Deg2) -> i128 {
        self.integrate24(a, &self.mul22(b, c))
    }

    /// A basis of `H²`: the base basis followed by `x`.
    pub fn h2_basis(&self) -> Vec<Deg2> {
        let mut out: Vec<Deg2> = self.base.h2_basis.iter().map(|b| Deg2 { base: b.clone(), x: 0 }).collect();
        out.push(Deg2 { base: vec![0; self.base.n], x: 1 });
        out
    }

    /// `T(e_i, e_j, e_k)` over the basis of [`Self::h2_basis`].
    pub fn trilinear_form(&self) -> Vec<Vec<Vec<i128>>> {
        let basis = self.h2_basis();
        basis
            .iter()
            .map(|a| basis.iter().map(|b| basis.iter().map(|c| self.triple(a, b, c)).collect()).collect())
            .collect()
    }

    /// For second Betti number 2: `(n_0, n_1, n_2, n_3)` with
    /// `n_j = T(e_1^{3−j} e_2^j)` and the binary cubic discriminant.
    pub fn cubic_invariants(&self) -> Option<([i128; 4], i128)> {
        let t = self.trilinear_form();
        if t.len() != 2 {
            return None;
        }
        let ns = [t[0][0][0], t[0][0][1], t[0][1][1], t[1][1][1]];
        Some((ns, cubic_discriminant(ns[0], ns[1], ns[2], ns[3])))
    }
}

/// Presentation of the projectivization of the bundle with parameters `K`
/// (the choice `a = 0`; the ring does not depend on `a`).
pub fn projectivization_ring(base: &BaseRing, bd: &BaseData, kv: &KVector) -> Result<ProjectiveRing> {
    let chern = equivariant_chern_in_beta(bd, kv, &vec![0; bd.n()])?;
    let c2_integral = base.integrate(&chern.c2);
    Ok(ProjectiveRing {
        base: base.clone(),
        c1: chern.c1.iter().map(|&c| c.into()).collect(),
        c2: chern.c2,
        c2_integral,
    })
}

/// Chern classes of the projectivization with the induced almost complex structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveChern {
    pub c1: Deg2,
    pub c2: Deg4,
    /// `∫ c_3`, the Euler characteristic.
    pub c3: i128,
    pub c1_cubed: i128,
    pub c1_c2: i128,
}

/// `c_1 = Σ (k_i + 1) b_i + 2x`,
/// `c_2 = Σ_{i<j} b_i b_j + Σ_{i,j} k_i b_i b_j + 2 Σ b_i x`, `c_3 = χ·[pt]`.
pub fn chern_of_projectivization(ring: &ProjectiveRing, bd: &BaseData) -> Result<ProjectiveChern> {
    let n = ring.base.n;
    let ones = vec![1i128; n];
    let c1 = Deg2 { base: ring.c1.iter().map(|k| k + 1).collect(), x: 2 };
    let mut c2x = BetaQuadratic::zero(n);
    for i in 1..=n {
        for j in i + 1..=n {
            c2x.add_term(i, j, 1);
        }
    }
    // ∫ c_2(X) is checked against the localization of the equivariant class.
    let c2_base = ring.base.integrate(&c2x);
    let (_, c2_t) = super::classes::base_chern(bd);
    let localized = localize_integral(bd, &c2_t)?;
    if localized != c2_base {
        return Err(Error::NotEquivariantClass(format!(
            "c_2 of the base integrates to {localized}, expected {c2_base} from the beta expansion"
        )));
    }
    let c2 = Deg4 { point: ring.base.pair(&ring.c1, &ones) + c2_base, x: vec![2; n] };
    let c3 = 2 * n as i128;
    let c1_sq = ring.mul22(&c1, &c1);
    Ok(ProjectiveChern {
        c1_cubed: ring.integrate24(&c1, &c1_sq),
        c1_c2: ring.integrate24(&c1, &c2),
        c1,
        c2,
        c3,
    })
}
