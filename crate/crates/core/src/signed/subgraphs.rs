use super::winding::{is_locally_convex, preferred_winding, winding_number};
use super::interior_set;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::GkmGraph;
use crate::lattice::{congruent_mod, Weight};
use serde::Serialize;
use std::collections::BTreeSet;

/// A closed 2-valent subgraph, stored as a directed cycle of edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleSubgraph {
    pub edges: Vec<usize>,
    pub orientation: i8,
}

impl CycleSubgraph {
    pub fn vertices(&self, g: &GkmGraph) -> Vec<usize> {
        self.edges.iter().map(|&e| g.src(e)).collect()
    }

    pub fn weights(&self, g: &GkmGraph) -> Vec<Weight> {
        self.edges.iter().map(|&e| g.label(e)).collect()
    }
}

/// The signed connection along the middle edge of `a → b → c` can send `ā` to `c`.
fn turn_ok(g: &GkmGraph, a: usize, b: usize, c: usize) -> bool {
    congruent_mod(g.label(c), -g.label(a), g.label(b), true).is_some()
}

fn require_signed(g: &GkmGraph) -> Result<()> {
    if g.is_signed() {
        Ok(())
    } else {
        Err(Error::PreconditionUnmet("a signed graph is required".into()))
    }
}

struct CycleSearch<'a> {
    g: &'a GkmGraph,
    budget: &'a Budget,
    start: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    orientation: i8,
    seen: BTreeSet<Vec<usize>>,
    out: Vec<CycleSubgraph>,
}

impl CycleSearch<'_> {
    fn pair_key(&self) -> Vec<usize> {
        let mut k: Vec<usize> = self.path.iter().map(|&e| e.min(self.g.bar(e))).collect();
        k.sort_unstable();
        k
    }

    fn close(&mut self) -> Result<()> {
        let g = self.g;
        let m = self.path.len();
        let p = &self.path;
        if m < 3 {
            return Ok(());
        }
        if !turn_ok(g, p[m - 2], p[m - 1], p[0]) || !turn_ok(g, p[m - 1], p[0], p[1]) {
            return Ok(());
        }
        let ws: Vec<Weight> = p.iter().map(|&e| g.label(e)).collect();
        if is_locally_convex(&ws)? != Some(self.orientation) || winding_number(&ws, self.orientation)? != 1 {
            return Ok(());
        }
        let key = self.pair_key();
        if self.seen.insert(key) {
            self.out.push(CycleSubgraph { edges: self.path.clone(), orientation: self.orientation });
        }
        Ok(())
    }

    fn extend(&mut self) -> Result<()> {
        self.budget.tick()?;
        let g = self.g;
        let last = *self.path.last().unwrap();
        let v = g.dst(last);
        for &e in g.out_edges(v) {
            if e == g.bar(last) {
                continue;
            }
            let w = g.dst(e);
            if w != self.start && (w < self.start || self.on_path[w]) {
                continue;
            }
            let turn = g.label(last).cross(g.label(e)).signum() as i8;
            if self.path.len() == 1 {
                self.orientation = turn;
            } else if turn != self.orientation || !turn_ok(g, self.path[self.path.len() - 2], last, e) {
                continue;
            }
            self.path.push(e);
            if w == self.start {
                self.close()?;
            } else {
                self.on_path[w] = true;
                self.extend()?;
                self.on_path[w] = false;
            }
            self.path.pop();
        }
        Ok(())
    }
}

/// Closed 2-valent subgraphs with a compatible signed connection whose
/// weight cycle is locally convex with winding number 1, each listed once.
pub fn polytope_type_subgraphs(g: &GkmGraph, budget: &Budget) -> Result<Vec<CycleSubgraph>> {
    require_signed(g)?;
    let mut s = CycleSearch {
        g,
        budget,
        start: 0,
        on_path: vec![false; g.vertex_count()],
        path: Vec::new(),
        orientation: 0,
        seen: BTreeSet::new(),
        out: Vec::new(),
    };
    for start in 0..g.vertex_count() {
        s.start = start;
        s.on_path[start] = true;
        for &e in g.out_edges(start) {
            let w = g.dst(e);
            if w < start {
                continue;
            }
            s.path.push(e);
            s.on_path[w] = true;
            s.extend()?;
            s.on_path[w] = false;
            s.path.pop();
        }
        s.on_path[start] = false;
    }
    Ok(s.out)
}

/// Two edges leaving a common vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacentPair {
    pub vertex: usize,
    pub first: usize,
    pub second: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "pairs")]
pub enum KaehlerVerdict {
    PassesCriterion,
    FailsAt(Vec<AdjacentPair>),
}

impl KaehlerVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, KaehlerVerdict::PassesCriterion)
    }
}

/// Adjacent edge pairs lying in no polytope-type 2-valent subgraph. An
/// empty list means the necessary condition for an invariant Kähler structure holds.
pub fn kaehler_obstruction(g: &GkmGraph, budget: &Budget) -> Result<KaehlerVerdict> {
    let subgraphs = polytope_type_subgraphs(g, budget)?;
    let mut covered = BTreeSet::new();
    for c in &subgraphs {
        let m = c.edges.len();
        for j in 0..m {
            let into = c.edges[j];
            let out = c.edges[(j + 1) % m];
            let back = g.bar(into);
            covered.insert((g.dst(into), back.min(out), back.max(out)));
        }
    }
    let mut failures = Vec::new();
    for v in 0..g.vertex_count() {
        let star = g.out_edges(v);
        for (i, &a) in star.iter().enumerate() {
            for &b in &star[i + 1..] {
                if !covered.contains(&(v, a.min(b), a.max(b))) {
                    failures.push(AdjacentPair { vertex: v, first: a.min(b), second: a.max(b) });
                }
            }
        }
    }
    Ok(if failures.is_empty() { KaehlerVerdict::PassesCriterion } else { KaehlerVerdict::FailsAt(failures) })
}

/// Result of the cone test: a linear realization needs some vertex whose
/// outgoing weights do not positively span the plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeVerdict {
    pub interior: Vec<usize>,
    /// An exterior vertex, if any.
    pub exterior_witness: Option<usize>,
}

impl ConeVerdict {
    /// True when every vertex is interior, so no Hamiltonian realization exists.
    pub fn fails(&self) -> bool {
        self.exterior_witness.is_none()
    }
}

pub fn hamiltonian_cone_obstruction(g: &GkmGraph) -> Result<ConeVerdict> {
    require_signed(g)?;
    let interior = interior_set(g);
    let exterior_witness = (0..g.vertex_count()).find(|v| !interior.contains(v));
    Ok(ConeVerdict { interior: interior.into_iter().collect(), exterior_witness })
}

/// A closed path through every exterior vertex exactly once and no interior vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExteriorCycle {
    pub edges: Vec<usize>,
    pub locally_convex: bool,
    /// Winding number for the orientation minimizing it.
    pub winding_number: u64,
}

/// Every cycle through exactly the exterior vertices, once per edge set.
pub fn exterior_cycles(g: &GkmGraph, budget: &Budget) -> Result<Vec<ExteriorCycle>> {
    require_signed(g)?;
    let interior = interior_set(g);
    let exterior: Vec<usize> = (0..g.vertex_count()).filter(|v| !interior.contains(v)).collect();
    let Some(&start) = exterior.first() else { return Ok(Vec::new()) };
    let allowed: Vec<bool> = (0..g.vertex_count()).map(|v| !interior.contains(&v)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    on_path[start] = true;
    hamiltonian(g, budget, start, start, exterior.len(), &allowed, &mut on_path, &mut path, &mut seen, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn hamiltonian(
    g: &GkmGraph,
    budget: &Budget,
    start: usize,
    v: usize,
    target: usize,
    allowed: &[bool],
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    seen: &mut BTreeSet<Vec<usize>>,
    out: &mut Vec<ExteriorCycle>,
) -> Result<()> {
    budget.tick()?;
    for &e in g.out_edges(v) {
        if path.last().is_some_and(|&l| g.bar(l) == e) {
            continue;
        }
        let w = g.dst(e);
        if !allowed[w] {
            continue;
        }
        if w == start {
            if path.len() + 1 == target && target >= 3 {
                path.push(e);
                let mut key: Vec<usize> = path.iter().map(|&x| x.min(g.bar(x))).collect();
                key.sort_unstable();
                if seen.insert(key) {
                    let ws: Vec<Weight> = path.iter().map(|&x| g.label(x)).collect();
                    let convex = is_locally_convex(&ws)?.is_some();
                    let (_, sigma) = preferred_winding(&ws)?;
                    out.push(ExteriorCycle { edges: path.clone(), locally_convex: convex, winding_number: sigma });
                }
                path.pop();
            }
            continue;
        }
        if on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(e);
        hamiltonian(g, budget, start, w, target, allowed, on_path, path, seen, out)?;
        path.pop();
        on_path[w] = false;
    }
    Ok(())
}
