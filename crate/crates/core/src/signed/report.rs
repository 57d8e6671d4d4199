use super::structures::{classify_cases, enumerate_signed_structures, CaseTag};
use super::subgraphs::{exterior_cycles, hamiltonian_cone_obstruction, kaehler_obstruction, ConeVerdict, KaehlerVerdict};
use super::winding::is_polytope_cycle;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fibration::{interior_vertices, Fibration, Gluing};
use crate::graph::GkmGraph;
use serde::Serialize;

/// One directed edge of a structure with its signed weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLabel {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub weight: [i64; 2],
}

/// Pair representatives of `g` with their labels, by name.
pub fn edge_labels(g: &GkmGraph) -> Vec<EdgeLabel> {
    g.pair_representatives()
        .map(|e| {
            let w = g.label(e);
            EdgeLabel {
                name: g.edge_name(e).to_string(),
                src: g.vertex_name(g.src(e)).to_string(),
                dst: g.vertex_name(g.dst(e)).to_string(),
                weight: [w.x, w.y],
            }
        })
        .collect()
}

/// Outcome of the winding argument on the cycle of exterior vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExteriorWinding {
    pub exterior_vertices: Vec<String>,
    pub cycles_found: usize,
    /// Smallest winding number among the locally convex exterior cycles.
    pub min_convex_winding: Option<u64>,
    /// `(n − 2) / 2`, the winding number forced on case II structures.
    pub predicted_winding: u64,
    pub obstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CaseCheck {
    Kaehler { verdict: KaehlerVerdict, obstructed: bool },
    ExteriorWinding(ExteriorWinding),
    Cone { verdict: ConeVerdict, obstructed: bool },
}

impl CaseCheck {
    pub fn obstructed(&self) -> bool {
        match self {
            CaseCheck::Kaehler { obstructed, .. } | CaseCheck::Cone { obstructed, .. } => *obstructed,
            CaseCheck::ExteriorWinding(w) => w.obstructed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub tag: CaseTag,
    pub edges: Vec<EdgeLabel>,
    pub identity_classes: usize,
    pub checks: Vec<CaseCheck>,
    pub obstructed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonKaehlerReport {
    pub k_vector: String,
    pub interior_vertices: usize,
    pub cases: Vec<CaseReport>,
    /// True when every signed structure is ruled out.
    pub no_invariant_kaehler_structure: bool,
}

fn kaehler_check(g: &GkmGraph, budget: &Budget) -> Result<CaseCheck> {
    let verdict = kaehler_obstruction(g, budget)?;
    let obstructed = !verdict.passes();
    Ok(CaseCheck::Kaehler { verdict, obstructed })
}

fn cone_check(g: &GkmGraph) -> Result<CaseCheck> {
    let verdict = hamiltonian_cone_obstruction(g)?;
    let obstructed = verdict.fails();
    Ok(CaseCheck::Cone { verdict, obstructed })
}

fn winding_check(g: &GkmGraph, n: usize, budget: &Budget) -> Result<CaseCheck> {
    let interior = interior_vertices(g);
    let exterior_vertices =
        (0..g.vertex_count()).filter(|v| !interior.contains(v)).map(|v| g.vertex_name(v).to_string()).collect();
    let cycles = exterior_cycles(g, budget)?;
    let min_convex_winding = cycles.iter().filter(|c| c.locally_convex).map(|c| c.winding_number).min();
    Ok(CaseCheck::ExteriorWinding(ExteriorWinding {
        exterior_vertices,
        cycles_found: cycles.len(),
        min_convex_winding,
        predicted_winding: (n as u64).saturating_sub(2) / 2,
        obstructed: min_convex_winding != Some(1),
    }))
}

/// Runs every applicable obstruction on every signed structure of the total graph.
pub fn nonkaehler_report(f: &Fibration, budget: &Budget) -> Result<NonKaehlerReport> {
    let bd = f.base_data();
    let n = bd.n();
    if f.gluing() != Some(Gluing::Twisted) {
        return Err(Error::PreconditionUnmet("the fibration is of product type".into()));
    }
    if n == 4 {
        return Err(Error::PreconditionUnmet("the base has 4 vertices".into()));
    }
    if !bd.is_signed_data() {
        return Err(Error::PreconditionUnmet("the base does not carry signed data".into()));
    }
    if !bd.base().is_effective() || !is_polytope_cycle(bd.gammas())? {
        return Err(Error::PreconditionUnmet("the base is not of polytope type".into()));
    }
    let lifted = f.lift_signed_default()?;
    let interior = interior_vertices(&lifted).len();
    if interior != n - 1 {
        return Err(Error::PreconditionUnmet(format!(
            "the total graph has {interior} interior vertices, expected {}",
            n - 1
        )));
    }
    let kv = f.classify()?;
    let structures = enumerate_signed_structures(f.total(), budget)?;
    let cases = classify_cases(f, &structures, budget)?;
    let mut reports = Vec::new();
    for c in cases {
        let g = &c.structure.graph;
        let checks = match c.tag {
            CaseTag::CaseI => vec![kaehler_check(g, budget)?],
            CaseTag::CaseII => vec![winding_check(g, n, budget)?],
            CaseTag::CaseIII => vec![cone_check(g)?],
            CaseTag::Other => vec![kaehler_check(g, budget)?, winding_check(g, n, budget)?, cone_check(g)?],
        };
        let obstructed = checks.iter().any(CaseCheck::obstructed);
        reports.push(CaseReport {
            tag: c.tag,
            edges: edge_labels(g),
            identity_classes: c.structure.identity_classes,
            checks,
            obstructed,
        });
    }
    let none_possible = reports.iter().all(|r| r.obstructed);
    Ok(NonKaehlerReport {
        k_vector: kv.to_string(),
        interior_vertices: interior,
        cases: reports,
        no_invariant_kaehler_structure: none_possible,
    })
}
