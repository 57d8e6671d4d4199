use super::{BaseData, Gluing, KVector};
use crate::error::{Error, Result};
use crate::graph::{GkmGraph, Issue, ValidationReport};
use crate::lattice::{congruent_mod, coordinates, Weight};

/// A graph fibration `π: Γ → B` of a 3-valent graph over a 2-valent one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fibration {
    total: GkmGraph,
    base_data: BaseData,
    vertex_map: Vec<usize>,
    /// `Some(base edge)` on horizontal edges, `None` on vertical ones.
    edge_map: Vec<Option<usize>>,
    /// Signed fiber weights `α̃`, indexed by directed total edge (`None` off vertical edges).
    fiber_signs: Option<Vec<Option<Weight>>>,
}

fn fib_issue(message: impl Into<String>) -> Issue {
    Issue::Fibration { message: message.into() }
}

impl Fibration {
    /// Checks index ranges and lengths; the fibration axioms are checked by
    /// [`Fibration::validate`].
    pub fn new(
        total: GkmGraph,
        base_data: BaseData,
        vertex_map: Vec<usize>,
        edge_map: Vec<Option<usize>>,
        fiber_signs: Option<Vec<Option<Weight>>>,
    ) -> Result<Self> {
        let base = base_data.base();
        if vertex_map.len() != total.vertex_count() || vertex_map.iter().any(|&v| v >= base.vertex_count()) {
            return Err(Error::InvalidGraph("vertex map does not fit the graphs".into()));
        }
        if edge_map.len() != total.edge_count() || edge_map.iter().flatten().any(|&e| e >= base.edge_count()) {
            return Err(Error::InvalidGraph("edge map does not fit the graphs".into()));
        }
        if fiber_signs.as_ref().is_some_and(|s| s.len() != total.edge_count()) {
            return Err(Error::InvalidGraph("fiber signs do not fit the total graph".into()));
        }
        Ok(Fibration { total, base_data, vertex_map, edge_map, fiber_signs })
    }

    pub fn total(&self) -> &GkmGraph {
        &self.total
    }

    pub fn base_data(&self) -> &BaseData {
        &self.base_data
    }

    pub fn base(&self) -> &GkmGraph {
        self.base_data.base()
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[Option<usize>] {
        &self.edge_map
    }

    pub fn fiber_signs(&self) -> Option<&[Option<Weight>]> {
        self.fiber_signs.as_deref()
    }

    /// Same fibration read with different base data over the same base graph.
    pub fn with_base_data(&self, base_data: BaseData) -> Result<Fibration> {
        Fibration::new(
            self.total.clone(),
            base_data,
            self.vertex_map.clone(),
            self.edge_map.clone(),
            self.fiber_signs.clone(),
        )
    }

    pub fn with_fiber_signs(&self, fiber_signs: Option<Vec<Option<Weight>>>) -> Result<Fibration> {
        Fibration::new(
            self.total.clone(),
            self.base_data.clone(),
            self.vertex_map.clone(),
            self.edge_map.clone(),
            fiber_signs,
        )
    }

    pub fn is_vertical(&self, e: usize) -> bool {
        self.edge_map[e].is_none()
    }

    /// Total vertices over base vertex `b`, in id order.
    pub fn fiber(&self, b: usize) -> Vec<usize> {
        (0..self.total.vertex_count()).filter(|&p| self.vertex_map[p] == b).collect()
    }

    /// The vertical edge leaving `p`.
    pub fn vertical_edge(&self, p: usize) -> Option<usize> {
        self.total.out_edges(p).iter().copied().find(|&e| self.edge_map[e].is_none())
    }

    /// The horizontal lift of base edge `b` starting at `p`.
    pub fn lift(&self, p: usize, b: usize) -> Option<usize> {
        self.total.out_edges(p).iter().copied().find(|&e| self.edge_map[e] == Some(b))
    }

    /// `p_1, …, p_{n+1}`: the lift of the loop `e_1 ⋯ e_n` starting at `start`.
    pub fn lifted_loop(&self, start: usize) -> Option<Vec<usize>> {
        let n = self.base_data.n() as i64;
        let mut path = vec![start];
        for i in 1..=n {
            let e = self.lift(*path.last().unwrap(), self.base_data.edge(i))?;
            path.push(self.total.dst(e));
        }
        Some(path)
    }

    /// Product or twisted, read off the lifted loop from the lower vertex over `v_1`.
    pub fn gluing(&self) -> Option<Gluing> {
        let p1 = *self.fiber(self.base_data.vertex(1)).first()?;
        let path = self.lifted_loop(p1)?;
        Some(if path[path.len() - 1] == p1 { Gluing::Product } else { Gluing::Twisted })
    }

    /// Graph-fibration axioms and label agreement; no connection search.
    pub(crate) fn structural_issues(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        let (g, b) = (&self.total, self.base());
        if g.valence() != Some(3) {
            issues.push(fib_issue("total graph is not 3-valent"));
        }
        if b.valence() != Some(2) {
            issues.push(fib_issue("base graph is not 2-valent"));
        }
        for v in 0..b.vertex_count() {
            let f = self.fiber(v);
            if f.len() != 2 {
                issues.push(fib_issue(format!("fiber over {} has {} vertices", b.vertex_name(v), f.len())));
            }
        }
        for e in 0..g.edge_count() {
            let (s, t) = (self.vertex_map[g.src(e)], self.vertex_map[g.dst(e)]);
            let name = g.edge_name(e);
            match self.edge_map[e] {
                None if s != t => issues.push(fib_issue(format!("edge {name} joins two fibers but has no image"))),
                None => {}
                Some(_) if s == t => issues.push(fib_issue(format!("vertical edge {name} is mapped to a base edge"))),
                Some(be) => {
                    if b.src(be) != s || b.dst(be) != t {
                        issues.push(fib_issue(format!("edge {name} is mapped to a base edge with other endpoints")));
                    }
                    if self.edge_map[g.bar(e)] != Some(b.bar(be)) {
                        issues.push(fib_issue(format!("reversal of {name} is not mapped to the reversed base edge")));
                    }
                    let agree = if g.is_signed() && b.is_signed() {
                        g.label(e) == b.label(be)
                    } else {
                        g.label(e).eq_up_to_sign(b.label(be))
                    };
                    if !agree {
                        issues.push(fib_issue(format!("label of {name} differs from the base label")));
                    }
                }
            }
        }
        for p in 0..g.vertex_count() {
            let star = g.out_edges(p);
            let vertical = star.iter().filter(|&&e| self.edge_map[e].is_none()).count();
            if vertical != 1 {
                issues.push(fib_issue(format!("{} has {vertical} vertical edges", g.vertex_name(p))));
            }
            let mut images: Vec<usize> = star.iter().filter_map(|&e| self.edge_map[e]).collect();
            images.sort_unstable();
            let mut expected = b.out_edges(self.vertex_map[p]).to_vec();
            expected.sort_unstable();
            if images != expected {
                issues.push(fib_issue(format!(
                    "horizontal edges at {} do not biject onto the base star",
                    g.vertex_name(p)
                )));
            }
        }
        if let Some(signs) = &self.fiber_signs {
            for e in 0..g.edge_count() {
                let name = g.edge_name(e);
                match (self.edge_map[e], signs[e]) {
                    (None, Some(w)) => {
                        if !w.eq_up_to_sign(g.label(e)) {
                            issues.push(fib_issue(format!("fiber sign of {name} does not lift its label")));
                        }
                        if signs[g.bar(e)] != Some(-w) {
                            issues.push(fib_issue(format!("fiber signs of {name} are not antisymmetric")));
                        }
                    }
                    (None, None) => issues.push(fib_issue(format!("vertical edge {name} has no fiber sign"))),
                    (Some(_), Some(_)) => issues.push(fib_issue(format!("horizontal edge {name} has a fiber sign"))),
                    (Some(_), None) => {}
                }
            }
        }
        issues
    }

    /// Whether the fiber-sign congruence holds along every horizontal edge.
    fn sign_congruence_issues(&self, signs: &[Option<Weight>]) -> Vec<Issue> {
        let g = &self.total;
        let mut issues = Vec::new();
        for e in g.pair_representatives() {
            if self.is_vertical(e) {
                continue;
            }
            let (Some(fp), Some(fq)) = (self.vertical_edge(g.src(e)), self.vertical_edge(g.dst(e))) else {
                continue;
            };
            let (Some(a), Some(b)) = (signs[fp], signs[fq]) else { continue };
            if congruent_mod(b, a, g.label(e), true).is_none() {
                issues.push(fib_issue(format!(
                    "fiber signs at the ends of {} are not congruent modulo its label",
                    g.edge_name(e)
                )));
            }
        }
        issues
    }

    /// Fibration axioms, a joint search for compatible connections, and the
    /// fiber-sign congruences when fiber signs are present.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.total.validate();
        for issue in self.base().validate().issues {
            report.issues.push(fib_issue(format!("base: {issue}")));
        }
        let structural = self.structural_issues();
        let sound = report.issues.is_empty() && structural.is_empty();
        report.issues.extend(structural);
        if !sound {
            report.connection_found = false;
            return report;
        }
        let found = self.joint_connection_exists();
        report.connection_found = found;
        if !found {
            report.issues.push(fib_issue("no connections compatible with the fibration exist"));
        }
        if let Some(signs) = &self.fiber_signs {
            report.issues.extend(self.sign_congruence_issues(signs));
        }
        report
    }

    /// For every edge pair of the total graph, some admissible bijection
    /// keeps vertical edges vertical and, along horizontal edges, lifts the
    /// base connection.
    fn joint_connection_exists(&self) -> bool {
        let (g, b) = (&self.total, self.base());
        let Some(base_conn) = b.find_connection() else { return false };
        g.pair_representatives().all(|e| {
            let from = g.out_edges(g.src(e));
            let to = g.out_edges(g.dst(e));
            g.connection_candidates(e).iter().any(|map| {
                from.iter().zip(map).all(|(&f, &f2)| {
                    if self.is_vertical(f) != self.is_vertical(f2) {
                        return false;
                    }
                    match (self.edge_map[e], self.edge_map[f]) {
                        (Some(be), Some(bf)) if f != e => {
                            let image = base_conn.apply(b, be, bf);
                            to.contains(&f2) && self.edge_map[f2] == Some(image)
                        }
                        _ => true,
                    }
                })
            })
        })
    }

    /// All fiber-sign lifts making this a fiberwise signed fibration: either
    /// none or a pair of mutual negatives.
    pub fn fiber_sign_lifts(&self) -> Vec<Vec<Option<Weight>>> {
        let g = &self.total;
        if !self.structural_issues().is_empty() {
            return Vec::new();
        }
        // value[p] = α̃ of the vertical edge leaving p
        let mut value: Vec<Option<Weight>> = vec![None; g.vertex_count()];
        let Some(&p1) = self.fiber(self.base_data.vertex(1)).first() else { return Vec::new() };
        let v1 = self.vertical_edge(p1).expect("checked");
        value[p1] = Some(g.label(v1).canonical());
        let mut stack = vec![p1];
        while let Some(p) = stack.pop() {
            let w = value[p].unwrap();
            for &e in g.out_edges(p) {
                let q = g.dst(e);
                let wq = if self.is_vertical(e) {
                    -w
                } else {
                    let lq = g.label(self.vertical_edge(q).unwrap());
                    if congruent_mod(lq, w, g.label(e), true).is_some() {
                        lq
                    } else if congruent_mod(-lq, w, g.label(e), true).is_some() {
                        -lq
                    } else {
                        return Vec::new();
                    }
                };
                match value[q] {
                    Some(x) if x != wq => return Vec::new(),
                    Some(_) => {}
                    None => {
                        value[q] = Some(wq);
                        stack.push(q);
                    }
                }
            }
        }
        if value.iter().any(Option::is_none) {
            return Vec::new();
        }
        let lift: Vec<Option<Weight>> = (0..g.edge_count())
            .map(|e| self.is_vertical(e).then(|| value[g.src(e)].unwrap()))
            .collect();
        if !self.sign_congruence_issues(&lift).is_empty() {
            return Vec::new();
        }
        let neg = lift.iter().map(|w| w.map(|w| -w)).collect();
        vec![lift, neg]
    }

    /// The stored fiber signs, or the first computed lift.
    pub fn effective_fiber_signs(&self) -> Result<Vec<Option<Weight>>> {
        match &self.fiber_signs {
            Some(s) => Ok(s.clone()),
            None => self.fiber_sign_lifts().into_iter().next().ok_or(Error::NotFiberwiseSigned),
        }
    }

    /// The classifying K-vector relative to the base data.
    pub fn classify(&self) -> Result<KVector> {
        let structural = self.structural_issues();
        if let Some(issue) = structural.first() {
            return Err(Error::InconsistentFibration(issue.to_string()));
        }
        let signs = self.effective_fiber_signs()?;
        let bd = &self.base_data;
        let n = bd.n();
        let p1 = self.fiber(bd.vertex(1))[0];
        let path = self.lifted_loop(p1).ok_or_else(|| Error::InconsistentFibration("lift failed".into()))?;
        let eta = u8::from(path[n] != p1);
        let mut ks = Vec::with_capacity(n);
        let mut ls = Vec::with_capacity(n);
        for i in 1..=n {
            let p = path[i - 1];
            let alpha = signs[self.vertical_edge(p).unwrap()]
                .ok_or_else(|| Error::InconsistentFibration("vertical edge without fiber sign".into()))?;
            let (k, l) = coordinates(alpha, bd.gamma(i as i64 - 1), bd.gamma(i as i64)).ok_or_else(|| {
                Error::InconsistentFibration(format!("α_{i} is not integral in the basis (γ_{}, γ_{i})", i - 1))
            })?;
            if k == 0 {
                return Err(Error::InconsistentFibration(format!("k_{i} vanishes")));
            }
            ks.push(k);
            ls.push(l);
        }
        for i in 1..n {
            if ks[i - 1] != -ls[i] {
                return Err(Error::InconsistentFibration(format!(
                    "k_{} = {} but l_{} = {}",
                    i,
                    ks[i - 1],
                    i + 1,
                    ls[i]
                )));
            }
        }
        let kv = KVector::new(ks, eta)?;
        if bd.k(&kv, 0) != -ls[0] {
            return Err(Error::InconsistentFibration(format!(
                "closing condition fails: k_0 = {} but l_1 = {}",
                bd.k(&kv, 0),
                ls[0]
            )));
        }
        Ok(kv)
    }

    /// The signed total graph extending the fiber signs by a signed base.
    pub fn lift_signed(&self, signed_base: &GkmGraph) -> Result<GkmGraph> {
        let b = self.base();
        if !signed_base.is_signed()
            || signed_base.edge_count() != b.edge_count()
            || (0..b.edge_count()).any(|e| !signed_base.label(e).eq_up_to_sign(b.label(e)))
        {
            return Err(Error::PreconditionUnmet("signed base does not project to the base graph".into()));
        }
        let signs = self.effective_fiber_signs()?;
        let labels = (0..self.total.edge_count())
            .map(|e| match self.edge_map[e] {
                Some(be) => Ok(signed_base.label(be)),
                None => signs[e].ok_or(Error::NotFiberwiseSigned),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.total.relabeled(crate::graph::Mode::Signed, labels))
    }

    /// [`Fibration::lift_signed`] over the signed base given by the `γ_i`.
    pub fn lift_signed_default(&self) -> Result<GkmGraph> {
        self.lift_signed(&self.base_data.signed_base()?)
    }

    /// Regluing over `e_1`: the two lifts of `e_1` exchange their endpoints in the fiber over `v_2`.
    pub fn twist_involution(&self) -> Result<Fibration> {
        let g = &self.total;
        let e1 = self.base_data.edge(1);
        let f = self.fiber(self.base_data.vertex(1));
        if f.len() != 2 {
            return Err(Error::InconsistentFibration("fiber over v_1 is not a pair".into()));
        }
        let (Some(a), Some(b)) = (self.lift(f[0], e1), self.lift(f[1], e1)) else {
            return Err(Error::InconsistentFibration("e_1 does not lift".into()));
        };
        let mut edges: Vec<_> = (0..g.edge_count()).map(|e| g.edge(e)).collect();
        let (ta, tb) = (g.dst(a), g.dst(b));
        edges[a].dst = tb;
        edges[g.bar(a)].src = tb;
        edges[b].dst = ta;
        edges[g.bar(b)].src = ta;
        let total = GkmGraph::from_parts(
            g.mode(),
            g.vertex_names().to_vec(),
            edges,
            g.labels().to_vec(),
            (0..g.edge_count()).map(|e| g.edge_name(e).to_string()).collect(),
        )?;
        Fibration::new(total, self.base_data.clone(), self.vertex_map.clone(), self.edge_map.clone(), None)
    }

    /// Equivalence of fibrations over the same base: an isomorphism of total
    /// graphs with identity lattice map commuting with the projections.
    pub fn equivalent(&self, other: &Fibration, budget: &crate::Budget) -> Result<bool> {
        if self.base() != other.base() {
            return Ok(false);
        }
        let (g1, g2) = (self.total.forget_signs(), other.total.forget_signs());
        let vertex = |v: usize, w: usize| self.vertex_map[v] == other.vertex_map[w];
        let edge = |e: usize, f: usize| self.edge_map[e] == other.edge_map[f];
        let constraints = crate::graph::IsoConstraints { vertex: Some(&vertex), edge: Some(&edge) };
        Ok(!g1.isomorphisms_with(&g2, false, constraints, Some(1), budget)?.is_empty())
    }
}
