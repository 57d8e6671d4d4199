use super::poly::Poly;
use crate::error::{Error, Result};
use crate::fibration::{BaseData, KVector};
use crate::lattice::Weight;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::Serialize;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `⊕_i Z[u_1, u_2]`, one polynomial per base vertex `v_1, …, v_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexClass {
    values: Vec<Poly>,
}

impl VertexClass {
    pub fn new(values: Vec<Poly>) -> Self {
        VertexClass { values }
    }

    pub fn zero(n: usize) -> Self {
        VertexClass { values: vec![Poly::ZERO; n] }
    }

    pub fn constant(n: usize, p: Poly) -> Self {
        VertexClass { values: vec![p; n] }
    }

    /// `δ_i · p` for `i` taken modulo `n`.
    pub fn point(n: usize, i: i64, p: Poly) -> Self {
        let mut c = VertexClass::zero(n);
        c.values[(i - 1).rem_euclid(n as i64) as usize] = p;
        c
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Value at `v_i`, `i` taken modulo `n`.
    pub fn at(&self, i: i64) -> Poly {
        self.values[(i - 1).rem_euclid(self.n() as i64) as usize]
    }

    pub fn values(&self) -> &[Poly] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, s: i64) -> Self {
        VertexClass { values: self.values.iter().map(|&p| p * s).collect() }
    }

    /// Edges `e_i` whose endpoint values are not congruent modulo `γ_i`.
    pub fn gkm_violations(&self, bd: &BaseData) -> Vec<i64> {
        (1..=bd.n() as i64)
            .filter(|&i| (self.at(i + 1) - self.at(i)).div_linear(bd.gamma(i)).is_none())
            .collect()
    }

    /// Membership test for the equivariant cohomology of the base.
    pub fn is_equivariant(&self, bd: &BaseData) -> bool {
        self.gkm_violations(bd).is_empty()
    }

    /// Printable per-vertex values labelled by base vertex name.
    pub fn describe(&self, bd: &BaseData) -> Vec<(String, String)> {
        (1..=self.n() as i64)
            .map(|i| (bd.base().vertex_name(bd.vertex(i)).to_string(), self.at(i).to_string()))
            .collect()
    }
}

impl Add for &VertexClass {
    type Output = VertexClass;
    fn add(self, o: &VertexClass) -> VertexClass {
        VertexClass { values: self.values.iter().zip(&o.values).map(|(&a, &b)| a + b).collect() }
    }
}

impl Sub for &VertexClass {
    type Output = VertexClass;
    fn sub(self, o: &VertexClass) -> VertexClass {
        self + &-o
    }
}

impl Neg for &VertexClass {
    type Output = VertexClass;
    fn neg(self) -> VertexClass {
        self.scale(-1)
    }
}

impl Mul for &VertexClass {
    type Output = VertexClass;
    fn mul(self, o: &VertexClass) -> VertexClass {
        VertexClass { values: self.values.iter().zip(&o.values).map(|(&a, &b)| a * b).collect() }
    }
}

/// `β_i = −γ_{i−1} δ_i + γ_{i+1} δ_{i+1}` for `i = 1, …, n`.
pub fn beta_classes(bd: &BaseData) -> Vec<VertexClass> {
    let n = bd.n();
    (1..=n as i64).map(|i| beta(bd, i)).collect()
}

fn beta(bd: &BaseData, i: i64) -> VertexClass {
    let n = bd.n();
    let here = VertexClass::point(n, i, Poly::linear(-bd.gamma(i - 1)));
    let next = VertexClass::point(n, i + 1, Poly::linear(bd.gamma(i + 1)));
    &here + &next
}

/// `a_0 = (−1)^{ε_1} a_n + η k_0`.
pub fn a_zero(bd: &BaseData, kv: &KVector, a: &[i64]) -> i64 {
    let n = bd.n();
    let s = if bd.eps(1) == 0 { 1 } else { -1 };
    s * a[n - 1] + i64::from(kv.eta()) * bd.k(kv, 0)
}

fn a_at(bd: &BaseData, kv: &KVector, a: &[i64], i: i64) -> i64 {
    if i == 0 {
        a_zero(bd, kv, a)
    } else {
        a[(i - 1) as usize]
    }
}

fn check_lengths(bd: &BaseData, kv: &KVector, a: &[i64]) -> Result<()> {
    if kv.n() != bd.n() {
        return Err(Error::PreconditionUnmet(format!("K has {} entries but the base has {} vertices", kv.n(), bd.n())));
    }
    if a.len() != bd.n() {
        return Err(Error::PreconditionUnmet(format!("a has {} entries but the base has {} vertices", a.len(), bd.n())));
    }
    Ok(())
}

/// The two fiber weights over `v_i`:
/// `a_i γ_{i−1} − a_{i−1} γ_i` and `(a_i − k_i) γ_{i−1} + (k_{i−1} − a_{i−1}) γ_i`.
pub fn fiber_weights(bd: &BaseData, kv: &KVector, a: &[i64], i: i64) -> (Weight, Weight) {
    let (ai, ap) = (a_at(bd, kv, a, i), a_at(bd, kv, a, i - 1));
    let (ki, kp) = (bd.k(kv, i), bd.k(kv, i - 1));
    let (gp, gi) = (bd.gamma(i - 1), bd.gamma(i));
    (ai * gp - ap * gi, (ai - ki) * gp + (kp - ap) * gi)
}

/// Vertexwise `c_1^T` and `c_2^T` of the rank-2 bundle with the given fiber weights.
pub fn equivariant_chern_raw(bd: &BaseData, kv: &KVector, a: &[i64]) -> Result<(VertexClass, VertexClass)> {
    check_lengths(bd, kv, a)?;
    let mut c1 = Vec::with_capacity(bd.n());
    let mut c2 = Vec::with_capacity(bd.n());
    for i in 1..=bd.n() as i64 {
        let (w1, w2) = fiber_weights(bd, kv, a, i);
        let (p1, p2) = (Poly::linear(w1), Poly::linear(w2));
        c1.push(p1 + p2);
        c2.push(p1 * p2);
    }
    Ok((VertexClass::new(c1), VertexClass::new(c2)))
}

/// A quadratic expression `Σ_{i ≤ j} m_{ij} β_i β_j`, stored upper triangular.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaQuadratic {
    pub matrix: Vec<Vec<i64>>,
}

impl BetaQuadratic {
    pub fn zero(n: usize) -> Self {
        BetaQuadratic { matrix: vec![vec![0; n]; n] }
    }

    /// Adds `c · β_i β_j` with 1-based `i, j`.
    pub fn add_term(&mut self, i: usize, j: usize, c: i64) {
        let (lo, hi) = (i.min(j), i.max(j));
        self.matrix[lo - 1][hi - 1] += c;
    }

    pub fn expand(&self, basis: &BetaBasis) -> VertexClass {
        let mut out = VertexClass::zero(basis.products.len());
        for (v, terms) in basis.products.iter().enumerate() {
            for &(i, j, p) in terms {
                let c = self.matrix[i][j];
                if c != 0 {
                    out.values[v] += p * c;
                }
            }
        }
        out
    }
}

/// The `β` classes together with their nonzero vertexwise values and products.
#[derive(Clone, Debug)]
pub struct BetaBasis {
    betas: Vec<VertexClass>,
    linear: Vec<Vec<(usize, Poly)>>,
    products: Vec<Vec<(usize, usize, Poly)>>,
}

impl BetaBasis {
    pub fn new(bd: &BaseData) -> Self {
        let betas = beta_classes(bd);
        let m = bd.n();
        let linear: Vec<Vec<(usize, Poly)>> = (0..m)
            .map(|v| betas.iter().enumerate().map(|(i, b)| (i, b.values[v])).filter(|(_, p)| !p.is_zero()).collect())
            .collect();
        let products = linear
            .iter()
            .map(|live| {
                let mut out = Vec::new();
                for (a, &(i, p)) in live.iter().enumerate() {
                    for &(j, q) in &live[a..] {
                        out.push((i, j, p * q));
                    }
                }
                out
            })
            .collect();
        BetaBasis { betas, linear, products }
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.betas
    }
}

/// Coefficients of `c_1^T(E)` and `c_2^T(E)` in the `β` generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChernInBeta {
    /// `c_1^T = Σ_i c1[i−1] β_i`.
    pub c1: Vec<i64>,
    pub c2: BetaQuadratic,
}

impl ChernInBeta {
    pub fn expand(&self, bd: &BaseData) -> (VertexClass, VertexClass) {
        self.expand_with(&BetaBasis::new(bd))
    }

    /// As [`Self::expand`] with a precomputed basis.
    pub fn expand_with(&self, basis: &BetaBasis) -> (VertexClass, VertexClass) {
        let mut c1 = VertexClass::zero(basis.linear.len());
        for (v, terms) in basis.linear.iter().enumerate() {
            for &(i, p) in terms {
                c1.values[v] += p * self.c1[i];
            }
        }
        (c1, self.c2.expand(basis))
    }
}

/// `c_1^T = Σ (k_i − 2a_i) β_i` and
/// `c_2^T = Σ (2a_i a_{i−1} − a_{i−1} k_i − a_i k_{i−1}) β_{i−1} β_i + Σ (a_i² − a_i k_i) β_i²`
/// with `β_0 = (−1)^{ε_1} β_n`.
pub fn equivariant_chern_in_beta(bd: &BaseData, kv: &KVector, a: &[i64]) -> Result<ChernInBeta> {
    check_lengths(bd, kv, a)?;
    let n = bd.n();
    let c1 = (1..=n as i64).map(|i| bd.k(kv, i) - 2 * a[(i - 1) as usize]).collect();
    let mut c2 = BetaQuadratic::zero(n);
    let s0 = if bd.eps(1) == 0 { 1 } else { -1 };
    for i in 1..=n as i64 {
        let (ai, ap) = (a_at(bd, kv, a, i), a_at(bd, kv, a, i - 1));
        let (ki, kp) = (bd.k(kv, i), bd.k(kv, i - 1));
        let mixed = 2 * ai * ap - ap * ki - ai * kp;
        // β_{i−1} with β_0 = (−1)^{ε_1} β_n.
        let (prev, sign) = if i == 1 { (n, s0) } else { ((i - 1) as usize, 1) };
        c2.add_term(prev, i as usize, sign * mixed);
        c2.add_term(i as usize, i as usize, ai * ai - ai * ki);
    }
    Ok(ChernInBeta { c1, c2 })
}

/// `c^T(X) = Σ (1 − γ_{i−1})(1 + γ_i) δ_i` of the base, split into degrees 1 and 2.
pub fn base_chern(bd: &BaseData) -> (VertexClass, VertexClass) {
    let n = bd.n();
    let mut c1 = Vec::with_capacity(n);
    let mut c2 = Vec::with_capacity(n);
    for i in 1..=n as i64 {
        let (p, q) = (Poly::linear(-bd.gamma(i - 1)), Poly::linear(bd.gamma(i)));
        c1.push(p + q);
        c2.push(p * q);
    }
    (VertexClass::new(c1), VertexClass::new(c2))
}

/// Integration over the base by localization: `Σ_i c(v_i) / e(v_i)` with
/// `e(v_i) = (−γ_{i−1}) · γ_i`, the product of the outgoing weights.
///
/// The sum is evaluated exactly at two integer points off every weight
/// hyperplane; disagreement means `c` is not an equivariant class.
pub fn localize_integral(bd: &BaseData, c: &VertexClass) -> Result<i128> {
    if !bd.is_signed_data() {
        return Err(Error::PreconditionUnmet("localization needs a signed base".into()));
    }
    if c.n() != bd.n() {
        return Err(Error::PreconditionUnmet("class and base have different vertex counts".into()));
    }
    if let Some(i) = (0..c.n()).find(|&i| !c.values[i].is_homogeneous_of(2)) {
        return Err(Error::PreconditionUnmet(format!("value at vertex {} is not of degree 4", i + 1)));
    }
    if !c.is_equivariant(bd) {
        return Err(Error::NotEquivariantClass(format!("fails the edge congruences at {:?}", c.gkm_violations(bd))));
    }
    let points = evaluation_points(bd);
    let values: Vec<BigRational> = points.iter().map(|&(u1, u2)| localize_at(bd, c, u1, u2)).collect();
    if values[0] != values[1] {
        return Err(Error::NotEquivariantClass("localization sum is not constant".into()));
    }
    let v = &values[0];
    if !v.is_integer() {
        return Err(Error::NonIntegral(v.to_string()));
    }
    v.to_integer().to_i128().ok_or_else(|| Error::NonIntegral(v.to_string()))
}

fn localize_at(bd: &BaseData, c: &VertexClass, u1: i128, u2: i128) -> BigRational {
    let mut sum = BigRational::zero();
    for i in 1..=bd.n() as i64 {
        let num = c.at(i).eval(u1, u2);
        let den = -bd.gamma(i - 1).eval(u1, u2) * bd.gamma(i).eval(u1, u2);
        sum += BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    sum
}

/// Two points `(1, t)` avoiding the zeros of every `γ_i`.
fn evaluation_points(bd: &BaseData) -> [(i128, i128); 2] {
    let mut found = Vec::new();
    let mut t: i128 = 2;
    while found.len() < 2 {
        if bd.gammas().iter().all(|g| g.eval(1, t) != 0) {
            found.push((1, t));
        }
        t = if t > 0 { -t } else { -t + 1 };
    }
    [found[0], found[1]]
}

/// Intersection numbers `∫ β_i β_j`.
pub fn beta_pairing(bd: &BaseData) -> Result<Vec<Vec<i128>>> {
    let betas = beta_classes(bd);
    let n = bd.n();
    let mut q = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = localize_integral(bd, &(&betas[i] * &betas[j]))?;
            q[i][j] = v;
            q[j][i] = v;
        }
    }
    Ok(q)
}
