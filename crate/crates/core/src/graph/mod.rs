//! GKM graphs: directed multigraphs with a reversal involution and an axial
//! function into the weight lattice, signed or up to sign.

mod connection;
mod isomorphism;
mod validate;

pub use connection::Connection;
pub use isomorphism::{IsoConstraints, Isomorphism};
pub use validate::{Issue, ValidationReport};

use crate::error::{Error, Result};
use crate::lattice::{is_basis, Weight};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Signed,
    Unsigned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DirectedEdge {
    pub src: usize,
    pub dst: usize,
    pub bar: usize,
}

/// Vertices and edges are dense indices; names are kept for exchange and display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmGraph {
    mode: Mode,
    vertex_names: Vec<String>,
    edges: Vec<DirectedEdge>,
    labels: Vec<Weight>,
    edge_names: Vec<String>,
    out: Vec<Vec<usize>>,
}

impl GkmGraph {
    /// Assembles a graph from raw parts. Only index ranges and lengths are
    /// checked here; everything else is reported by [`GkmGraph::validate`].
    /// Unsigned labels are stored by their canonical representative.
    pub fn from_parts(
        mode: Mode,
        vertex_names: Vec<String>,
        edges: Vec<DirectedEdge>,
        labels: Vec<Weight>,
        edge_names: Vec<String>,
    ) -> Result<Self> {
        let nv = vertex_names.len();
        if labels.len() != edges.len() || edge_names.len() != edges.len() {
            return Err(Error::InvalidGraph("edge, label and name counts differ".into()));
        }
        let mut out = vec![Vec::new(); nv];
        for (id, e) in edges.iter().enumerate() {
            if e.src >= nv || e.dst >= nv || e.bar >= edges.len() {
                return Err(Error::InvalidGraph(format!("edge {id} refers outside the graph")));
            }
            out[e.src].push(id);
        }
        let labels = match mode {
            Mode::Signed => labels,
            Mode::Unsigned => labels.into_iter().map(Weight::canonical).collect(),
        };
        Ok(GkmGraph { mode, vertex_names, edges, labels, edge_names, out })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_signed(&self) -> bool {
        self.mode == Mode::Signed
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// Name of the edge pair containing `e`.
    pub fn edge_name(&self, e: usize) -> &str {
        &self.edge_names[e]
    }

    pub fn edge(&self, e: usize) -> DirectedEdge {
        self.edges[e]
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn dst(&self, e: usize) -> usize {
        self.edges[e].dst
    }

    pub fn bar(&self, e: usize) -> usize {
        self.edges[e].bar
    }

    pub fn label(&self, e: usize) -> Weight {
        self.labels[e]
    }

    pub fn labels(&self) -> &[Weight] {
        &self.labels
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// The common out-degree, if the graph is regular.
    pub fn valence(&self) -> Option<usize> {
        let d = self.out.first()?.len();
        self.out.iter().all(|o| o.len() == d).then_some(d)
    }

    /// One directed representative (the smaller id) per edge pair.
    pub fn pair_representatives(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| e < self.edges[e].bar)
    }

    /// The directed edge from `src` with the given pair name, if any.
    pub fn edge_by_name(&self, name: &str, src: usize) -> Option<usize> {
        self.out[src].iter().copied().find(|&e| self.edge_names[e] == name)
    }

    /// Whether two labels agree in this graph's mode.
    pub fn labels_agree(&self, a: Weight, b: Weight) -> bool {
        match self.mode {
            Mode::Signed => a == b,
            Mode::Unsigned => a.eq_up_to_sign(b),
        }
    }

    /// Same underlying graph with new labels (and mode).
    pub fn relabeled(&self, mode: Mode, labels: Vec<Weight>) -> GkmGraph {
        GkmGraph::from_parts(
            mode,
            self.vertex_names.clone(),
            self.edges.clone(),
            labels,
            self.edge_names.clone(),
        )
        .expect("relabeling keeps the shape")
    }

    /// Projects signed labels to labels up to sign. Identity on unsigned graphs.
    pub fn forget_signs(&self) -> GkmGraph {
        self.relabeled(Mode::Unsigned, self.labels.clone())
    }

    /// True iff the labels at every vertex generate `Z²`.
    ///
    /// For graphs of valence 2 this is the basis condition on the two
    /// outgoing labels; in general the 2×2 minors must have gcd 1.
    pub fn is_effective(&self) -> bool {
        self.out.iter().all(|star| {
            let mut g: i128 = 0;
            for (i, &e) in star.iter().enumerate() {
                for &f in &star[i + 1..] {
                    if is_basis(self.labels[e], self.labels[f]) {
                        return true;
                    }
                    g = num::integer::gcd(g, self.labels[e].cross(self.labels[f]));
                }
            }
            g == 1
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.out[v] {
                let w = self.edges[e].dst;
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Incremental construction of a graph from edge pairs.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    mode: Mode,
    vertex_names: Vec<String>,
    edges: Vec<DirectedEdge>,
    labels: Vec<Weight>,
    edge_names: Vec<String>,
}

impl GraphBuilder {
    pub fn new(mode: Mode) -> Self {
        GraphBuilder {
            mode,
            vertex_names: Vec::new(),
            edges: Vec::new(),
            labels: Vec::new(),
            edge_names: Vec::new(),
        }
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertex_names.push(name.into());
        self.vertex_names.len() - 1
    }

    /// Adds the pair `src → dst` (label `w`) and its reverse; returns the id of `src → dst`.
    pub fn edge(&mut self, src: usize, dst: usize, w: Weight, name: impl Into<String>) -> usize {
        let id = self.edges.len();
        let name = name.into();
        self.edges.push(DirectedEdge { src, dst, bar: id + 1 });
        self.edges.push(DirectedEdge { src: dst, dst: src, bar: id });
        let rev = match self.mode {
            Mode::Signed => -w,
            Mode::Unsigned => w,
        };
        self.labels.extend([w, rev]);
        self.edge_names.extend([name.clone(), name]);
        id
    }

    pub fn build(self) -> Result<GkmGraph> {
        GkmGraph::from_parts(self.mode, self.vertex_names, self.edges, self.labels, self.edge_names)
    }
}
