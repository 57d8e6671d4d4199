use crate::error::{Error, Result};
use crate::graph::{GkmGraph, Mode};
use crate::lattice::{congruent_mod, is_basis, Mat2, Weight};
use serde::Serialize;

use super::KVector;

/// A fixed enumeration of a 2-valent base together with sign choices for its labels.
///
/// Indices are 1-based and cyclic: `v_i`, `e_i` and `γ_i` make sense for every
/// integer `i`, with `γ_{i+n} = (−1)^{ε_i} γ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseData {
    base: GkmGraph,
    vertex_order: Vec<usize>,
    edge_order: Vec<usize>,
    gammas: Vec<Weight>,
    /// `[ε_even, ε_odd]`.
    eps: [u8; 2],
}

/// Serializable summary of the choices pinned by a [`BaseData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseDataSummary {
    pub vertex_order: Vec<String>,
    pub edge_order: Vec<String>,
    pub gammas: Vec<Weight>,
    pub eps_even: u8,
    pub eps_odd: u8,
}

fn sign(e: u8) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

impl BaseData {
    /// Default enumeration: start at vertex 0 along its lowest-id outgoing edge.
    /// Signed bases use their labels; unsigned bases take canonical
    /// representatives for `γ_1`, `γ_2` and force the rest by the congruences.
    pub fn new(base: GkmGraph) -> Result<Self> {
        if base.vertex_count() == 0 {
            return Err(Error::InvalidGraph("empty base".into()));
        }
        let first = *base
            .out_edges(0)
            .iter()
            .min()
            .ok_or_else(|| Error::InvalidGraph("base vertex without edges".into()))?;
        Self::from_first_edge(base, first)
    }

    /// Enumeration starting with the directed edge `first`.
    pub fn from_first_edge(base: GkmGraph, first: usize) -> Result<Self> {
        let edge_order = walk_cycle(&base, first)?;
        let gammas = match base.mode() {
            Mode::Signed => edge_order.iter().map(|&e| base.label(e)).collect(),
            Mode::Unsigned => forced_gammas(&base, &edge_order)?,
        };
        Self::from_gammas(base, edge_order, gammas)
    }

    /// Enumeration along `edge_order` with `γ_i = signs[i]·label(e_i)`.
    pub fn from_signs(base: GkmGraph, edge_order: Vec<usize>, signs: &[i8]) -> Result<Self> {
        if signs.len() != edge_order.len() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidGraph("one sign ±1 per base edge is required".into()));
        }
        let gammas = edge_order
            .iter()
            .zip(signs)
            .map(|(&e, &s)| i64::from(s) * base.label(e))
            .collect();
        Self::from_gammas(base, edge_order, gammas)
    }

    /// Checks every invariant for explicit representatives and derives `ε`.
    pub fn from_gammas(base: GkmGraph, edge_order: Vec<usize>, gammas: Vec<Weight>) -> Result<Self> {
        let n = base.vertex_count();
        if base.valence() != Some(2) {
            return Err(Error::InvalidGraph("base must be 2-valent".into()));
        }
        if edge_order.len() != n || gammas.len() != n {
            return Err(Error::InvalidGraph("enumeration length differs from the vertex count".into()));
        }
        let mut vertex_order = Vec::with_capacity(n);
        for (i, &e) in edge_order.iter().enumerate() {
            if e >= base.edge_count() || base.dst(e) != base.src(edge_order[(i + 1) % n]) {
                return Err(Error::InvalidGraph("edge order is not a closed walk".into()));
            }
            if i > 0 && base.bar(edge_order[i - 1]) == e {
                return Err(Error::InvalidGraph("edge order backtracks".into()));
            }
            vertex_order.push(base.src(e));
        }
        let mut seen = vec![false; n];
        for &v in &vertex_order {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidGraph("edge order revisits a vertex".into()));
            }
        }
        for (&e, &g) in edge_order.iter().zip(&gammas) {
            if !base.labels_agree(g, base.label(e)) {
                return Err(Error::InvalidGraph(format!(
                    "{g} is not a representative of the label of {}",
                    base.edge_name(e)
                )));
            }
        }
        for i in 0..n {
            let prev = (i + n - 1) % n;
            if !is_basis(gammas[prev], gammas[i]) {
                return Err(Error::InvalidGraph(format!(
                    "labels at {} do not form a lattice basis",
                    base.vertex_name(vertex_order[i])
                )));
            }
        }
        for i in 0..n.saturating_sub(2) {
            if congruent_mod(gammas[i], -gammas[i + 2], gammas[i + 1], true).is_none() {
                return Err(Error::InvalidGraph(format!(
                    "γ_{} ≢ −γ_{} mod γ_{}",
                    i + 1,
                    i + 3,
                    i + 2
                )));
            }
        }
        let wrap_sign = |prev: Weight, here: Weight, next: Weight| -> Result<u8> {
            // Find s with prev ≡ −s·next mod here.
            if congruent_mod(prev, -next, here, true).is_some() {
                Ok(0)
            } else if congruent_mod(prev, next, here, true).is_some() {
                Ok(1)
            } else {
                Err(Error::InvalidGraph("base labels violate the congruence at the closing vertex".into()))
            }
        };
        // γ_{n+1} = (−1)^{ε_1} γ_1 from γ_{n−1} ≡ −γ_{n+1} mod γ_n.
        let eps_odd = wrap_sign(gammas[(n + n - 2) % n], gammas[n - 1], gammas[0])?;
        let g_n1 = sign(eps_odd) * gammas[0];
        // γ_{n+2} = (−1)^{ε_2} γ_2 from γ_n ≡ −γ_{n+2} mod γ_{n+1}.
        let eps_even = wrap_sign(gammas[n - 1], g_n1, gammas[1 % n])?;
        let eps = [eps_even, eps_odd];
        if base.is_signed() && eps != [0, 0] {
            return Err(Error::InvalidGraph("signed base labels violate the congruences".into()));
        }
        let bd = BaseData { base, vertex_order, edge_order, gammas, eps };
        for i in 1..=n as i64 {
            if congruent_mod(bd.gamma(i), -bd.gamma(i + 2), bd.gamma(i + 1), true).is_none() {
                return Err(Error::InvalidGraph("sign bookkeeping is inconsistent".into()));
            }
        }
        Ok(bd)
    }

    pub fn base(&self) -> &GkmGraph {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.gammas.len()
    }

    fn wrap(&self, i: i64) -> usize {
        (i - 1).rem_euclid(self.n() as i64) as usize
    }

    /// Base vertex `v_i`.
    pub fn vertex(&self, i: i64) -> usize {
        self.vertex_order[self.wrap(i)]
    }

    /// Directed base edge `e_i` from `v_i` to `v_{i+1}`.
    pub fn edge(&self, i: i64) -> usize {
        self.edge_order[self.wrap(i)]
    }

    pub fn vertex_order(&self) -> &[usize] {
        &self.vertex_order
    }

    pub fn edge_order(&self) -> &[usize] {
        &self.edge_order
    }

    /// `γ_1, …, γ_n`.
    pub fn gammas(&self) -> &[Weight] {
        &self.gammas
    }

    /// `ε_i`, which depends only on the parity of `i`.
    pub fn eps(&self, i: i64) -> u8 {
        if i.rem_euclid(2) == 0 {
            self.eps[0]
        } else {
            self.eps[1]
        }
    }

    pub fn eps_even(&self) -> u8 {
        self.eps[0]
    }

    pub fn eps_odd(&self) -> u8 {
        self.eps[1]
    }

    /// True when every `ε_i` vanishes, i.e. the `γ_i` define a signed structure on the base.
    pub fn is_signed_data(&self) -> bool {
        self.eps == [0, 0]
    }

    /// `γ_i` for any integer `i`.
    pub fn gamma(&self, i: i64) -> Weight {
        let n = self.n() as i64;
        let mut idx = i;
        let mut s = 1;
        while idx > n {
            s *= sign(self.eps(idx - n));
            idx -= n;
        }
        while idx < 1 {
            s *= sign(self.eps(idx));
            idx += n;
        }
        s * self.gammas[(idx - 1) as usize]
    }

    /// Position `i ∈ 1..=n` of a base vertex.
    pub fn index_of_vertex(&self, v: usize) -> Option<i64> {
        self.vertex_order.iter().position(|&x| x == v).map(|p| p as i64 + 1)
    }

    /// Position of a directed base edge: `Some((i, true))` for `e_i`, `Some((i, false))` for `ē_i`.
    pub fn index_of_edge(&self, e: usize) -> Option<(i64, bool)> {
        if let Some(p) = self.edge_order.iter().position(|&x| x == e) {
            return Some((p as i64 + 1, true));
        }
        let b = self.base.bar(e);
        self.edge_order.iter().position(|&x| x == b).map(|p| (p as i64 + 1, false))
    }

    /// `k_i` for any integer `i`, using `k_i = (−1)^{η+ε_{i+1}} k_{i+n}`.
    pub fn k(&self, kv: &KVector, i: i64) -> i64 {
        let n = self.n() as i64;
        let eta = kv.eta();
        let mut idx = i;
        let mut s = 1;
        while idx > n {
            // k_{idx} = (−1)^{η+ε_{idx−n+1}} k_{idx−n}
            s *= sign(eta + self.eps(idx - n + 1));
            idx -= n;
        }
        while idx < 1 {
            s *= sign(eta + self.eps(idx + 1));
            idx += n;
        }
        s * kv.ks()[(idx - 1) as usize]
    }

    /// `α_i = k_i γ_{i−1} − k_{i−1} γ_i`.
    pub fn alpha(&self, kv: &KVector, i: i64) -> Weight {
        self.k(kv, i) * self.gamma(i - 1) - self.k(kv, i - 1) * self.gamma(i)
    }

    /// The signed structure `e_i ↦ γ_i` on the base; needs `ε = 0`.
    pub fn signed_base(&self) -> Result<GkmGraph> {
        if !self.is_signed_data() {
            return Err(Error::PreconditionUnmet("the chosen γ_i do not define a signed base (ε ≠ 0)".into()));
        }
        let mut labels = self.base.labels().to_vec();
        for (&e, &g) in self.edge_order.iter().zip(&self.gammas) {
            labels[e] = g;
            labels[self.base.bar(e)] = -g;
        }
        Ok(self.base.relabeled(Mode::Signed, labels))
    }

    /// The same data read from `v_{shift+1}` onwards.
    pub fn rotated(&self, shift: i64) -> Result<BaseData> {
        let n = self.n() as i64;
        let edges = (1..=n).map(|i| self.edge(i + shift)).collect();
        let gammas = (1..=n).map(|i| self.gamma(i + shift)).collect();
        BaseData::from_gammas(self.base.clone(), edges, gammas)
    }

    /// The reversed enumeration `v_1, v_n, v_{n−1}, …` with `γ'_i = −γ_{1−i}`.
    pub fn reflected(&self) -> Result<BaseData> {
        let n = self.n() as i64;
        let gammas = (1..=n).map(|i| -self.gamma(1 - i)).collect();
        // e'_i runs from v_{2−i} to v_{1−i}, the reverse of e_{1−i}.
        let edges = (1..=n).map(|i| self.base.bar(self.edge(1 - i))).collect();
        BaseData::from_gammas(self.base.clone(), edges, gammas)
    }

    /// The data transported along a base isomorphism into `target`.
    pub fn transported(&self, vertex_edge_map: &[usize], phi: Mat2, target: GkmGraph) -> Result<BaseData> {
        let edges = self.edge_order.iter().map(|&e| vertex_edge_map[e]).collect();
        let gammas = self.gammas.iter().map(|&g| phi.apply(g)).collect();
        BaseData::from_gammas(target, edges, gammas)
    }

    pub fn summary(&self) -> BaseDataSummary {
        BaseDataSummary {
            vertex_order: self.vertex_order.iter().map(|&v| self.base.vertex_name(v).to_string()).collect(),
            edge_order: self.edge_order.iter().map(|&e| self.base.edge_name(e).to_string()).collect(),
            gammas: self.gammas.clone(),
            eps_even: self.eps[0],
            eps_odd: self.eps[1],
        }
    }
}

/// Directed edges `e_1, …, e_n` of the cycle starting with `first`.
fn walk_cycle(base: &GkmGraph, first: usize) -> Result<Vec<usize>> {
    let n = base.vertex_count();
    if base.valence() != Some(2) {
        return Err(Error::InvalidGraph("base must be 2-valent".into()));
    }
    let mut order = vec![first];
    while order.len() < n {
        let last = *order.last().unwrap();
        let v = base.dst(last);
        let next = base
            .out_edges(v)
            .iter()
            .copied()
            .find(|&f| f != base.bar(last))
            .ok_or_else(|| Error::InvalidGraph("base walk is stuck".into()))?;
        order.push(next);
    }
    if base.dst(order[n - 1]) != base.src(first) {
        return Err(Error::InvalidGraph("base is not a single cycle".into()));
    }
    Ok(order)
}

/// Canonical `γ_1`, `γ_2`; later signs forced by `γ_{i−2} ≡ −γ_i mod γ_{i−1}`.
fn forced_gammas(base: &GkmGraph, order: &[usize]) -> Result<Vec<Weight>> {
    let n = order.len();
    let mut g: Vec<Weight> = Vec::with_capacity(n);
    for (i, &e) in order.iter().enumerate() {
        let w = base.label(e).canonical();
        if i < 2 {
            g.push(w);
            continue;
        }
        let (a, b) = (g[i - 2], g[i - 1]);
        let w = if congruent_mod(a, -w, b, true).is_some() {
            w
        } else if congruent_mod(a, w, b, true).is_some() {
            -w
        } else {
            return Err(Error::InvalidGraph(format!(
                "no sign of the label of {} satisfies the congruence",
                base.edge_name(e)
            )));
        };
        g.push(w);
    }
    Ok(g)
}
