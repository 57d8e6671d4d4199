use crate::error::{Error, Result};
use crate::fibration::{BaseData, Gluing, KVector};
use crate::lattice::Weight;
use serde::Serialize;
use std::fmt;

/// Integer parameters `a_i, b_i, c_i` (1-based, stored from index 0) of the
/// representations over the base vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientChain {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub c: Vec<i64>,
}

fn sign(e: u8) -> i64 {
    if e == 0 {
        1
    } else {
        -1
    }
}

fn check_input(kv: &KVector, bd: &BaseData, len: usize) -> Result<()> {
    if kv.n() != bd.n() {
        return Err(Error::PreconditionUnmet(format!("K has {} entries but the base has {} vertices", kv.n(), bd.n())));
    }
    if len != bd.n() {
        return Err(Error::PreconditionUnmet(format!("expected {} coefficients, got {len}", bd.n())));
    }
    Ok(())
}

/// The unique chain with the given `a` satisfying every gluing constraint.
///
/// Interior: `b_{i+1} = a_i`, `c_i = a_{i+1}`. Closing, product type:
/// `c_n = (−1)^{ε_0} a_1`, `b_1 = (−1)^{ε_1} a_n`; twisted type:
/// `c_n = (−1)^{ε_0}(a_1 − k_1)`, `b_1 = (−1)^{ε_1} a_n + k_0`.
pub fn resolve_coefficients(kv: &KVector, a: &[i64], bd: &BaseData) -> Result<CoefficientChain> {
    check_input(kv, bd, a.len())?;
    let n = a.len();
    let (s0, s1) = (sign(bd.eps(0)), sign(bd.eps(1)));
    let mut b = vec![0; n];
    let mut c = vec![0; n];
    for i in 1..n {
        b[i] = a[i - 1];
        c[i - 1] = a[i];
    }
    match kv.gluing() {
        Gluing::Product => {
            c[n - 1] = s0 * a[0];
            b[0] = s1 * a[n - 1];
        }
        Gluing::Twisted => {
            c[n - 1] = s0 * (a[0] - bd.k(kv, 1));
            b[0] = s1 * a[n - 1] + bd.k(kv, 0);
        }
    }
    Ok(CoefficientChain { a: a.to_vec(), b, c })
}

/// Data of the cohomogeneity-one `T × U(2)` manifold over the edge `e_i`: the
/// diagonal characters of `A_i^+` (fiber over `v_i`) and `A_i^−` (fiber over
/// `v_{i+1}`), and `γ_i`, whose kernel defines the principal isotropy `H_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDiagram {
    pub index: usize,
    pub plus_weights: (Weight, Weight),
    pub minus_weights: (Weight, Weight),
    pub principal_kernel: Weight,
}

impl fmt::Display for GroupDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.index;
        let (p, q) = self.plus_weights;
        let (r, s) = self.minus_weights;
        write!(
            f,
            "K{i}+ = diag({p}, {q})  K{i}- = diag({r}, {s})  H{i} over ker {}",
            self.principal_kernel
        )
    }
}

/// Diagrams for an arbitrary chain; no gluing constraint is assumed.
pub fn diagrams_for_chain(kv: &KVector, chain: &CoefficientChain, bd: &BaseData) -> Result<Vec<GroupDiagram>> {
    check_input(kv, bd, chain.a.len())?;
    if chain.b.len() != chain.a.len() || chain.c.len() != chain.a.len() {
        return Err(Error::PreconditionUnmet("coefficient sequences differ in length".into()));
    }
    let out = (1..=bd.n())
        .map(|idx| {
            let i = idx as i64;
            let (a, b, c) = (chain.a[idx - 1], chain.b[idx - 1], chain.c[idx - 1]);
            let (kp, k, kn) = (bd.k(kv, i - 1), bd.k(kv, i), bd.k(kv, i + 1));
            let (gp, g, gn) = (bd.gamma(i - 1), bd.gamma(i), bd.gamma(i + 1));
            GroupDiagram {
                index: idx,
                plus_weights: (a * gp - b * g, (a - k) * gp + (kp - b) * g),
                minus_weights: (c * g - a * gn, (c - kn) * g + (k - a) * gn),
                principal_kernel: g,
            }
        })
        .collect();
    Ok(out)
}

/// Diagrams of the chain resolved from `a`.
pub fn group_diagrams(kv: &KVector, a: &[i64], bd: &BaseData) -> Result<Vec<GroupDiagram>> {
    diagrams_for_chain(kv, &resolve_coefficients(kv, a, bd)?, bd)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GluingFailure {
    /// `A_i^− ≠ A_{i+1}^+`.
    Interior { index: usize },
    /// The closing pair `A_n^−`, `A_1^+` neither agrees (product type) nor
    /// agrees after swapping the diagonal (twisted type).
    Closing,
    /// Upper minus lower character of `A_i^+` is not `α_i`.
    FiberWeight { index: usize },
    /// `H_i` is not contained in `K_i^±`.
    Principal { index: usize },
}

/// Every gluing identity the diagrams must satisfy for `kv`; empty when all hold.
pub fn verify_gluing(kv: &KVector, bd: &BaseData, diagrams: &[GroupDiagram]) -> Vec<GluingFailure> {
    let n = diagrams.len();
    let mut failures = Vec::new();
    for (idx, d) in diagrams.iter().enumerate() {
        let i = idx as i64 + 1;
        let (u, l) = d.plus_weights;
        if u - l != bd.alpha(kv, i) {
            failures.push(GluingFailure::FiberWeight { index: idx + 1 });
        }
        // On ker γ_i both representations restrict to the same one: γ_{i−1} ≡ −γ_{i+1}.
        let (mu, ml) = d.minus_weights;
        let g = d.principal_kernel;
        let same = |x: Weight, y: Weight| crate::lattice::congruent_mod(x, y, g, true).is_some();
        if g.is_zero() || !same(u, mu) || !same(l, ml) {
            failures.push(GluingFailure::Principal { index: idx + 1 });
        }
        if idx + 1 < n && d.minus_weights != diagrams[idx + 1].plus_weights {
            failures.push(GluingFailure::Interior { index: idx + 1 });
        }
    }
    if let (Some(first), Some(last)) = (diagrams.first(), diagrams.last()) {
        let (u, l) = first.plus_weights;
        let expected = match kv.gluing() {
            Gluing::Product => (u, l),
            Gluing::Twisted => (l, u),
        };
        if last.minus_weights != expected {
            failures.push(GluingFailure::Closing);
        }
    }
    failures
}
