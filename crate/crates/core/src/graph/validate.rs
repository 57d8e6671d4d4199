use super::{GkmGraph, Mode};
use serde::Serialize;
use std::fmt;

/// One violated condition. Vertices and edges are referred to by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    BarNotInvolution { edge: String },
    BarFixedPoint { edge: String },
    BarEndpoints { edge: String },
    Loop { edge: String },
    ZeroLabel { edge: String },
    LabelsNotAntisymmetric { edge: String },
    LabelsNotSymmetric { edge: String },
    NotRegular { vertex: String, degree: usize, expected: usize },
    Disconnected,
    Empty,
    DependentLabels { vertex: String, first: String, second: String },
    NoCompatibleConnection,
    Fibration { message: String },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::BarNotInvolution { edge } => write!(f, "reversal of {edge} is not an involution"),
            Issue::BarFixedPoint { edge } => write!(f, "edge {edge} is its own reversal"),
            Issue::BarEndpoints { edge } => write!(f, "reversal of {edge} does not swap its endpoints"),
            Issue::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Issue::ZeroLabel { edge } => write!(f, "edge {edge} has the zero label"),
            Issue::LabelsNotAntisymmetric { edge } => {
                write!(f, "signed label of {edge} is not the negative of its reversal")
            }
            Issue::LabelsNotSymmetric { edge } => {
                write!(f, "unsigned label of {edge} differs from its reversal")
            }
            Issue::NotRegular { vertex, degree, expected } => {
                write!(f, "vertex {vertex} has {degree} outgoing edges, expected {expected}")
            }
            Issue::Disconnected => write!(f, "graph is disconnected"),
            Issue::Empty => write!(f, "graph has no vertices"),
            Issue::DependentLabels { vertex, first, second } => {
                write!(f, "labels of {first} and {second} at {vertex} are linearly dependent")
            }
            Issue::NoCompatibleConnection => write!(f, "no compatible connection exists"),
            Issue::Fibration { message } => write!(f, "{message}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
    /// Whether a compatible connection was found; `false` also when the
    /// structural checks failed and no search was attempted.
    pub connection_found: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl GkmGraph {
    /// Structural checks only (everything except the connection search).
    pub(crate) fn structural_issues(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        if self.vertex_count() == 0 {
            issues.push(Issue::Empty);
            return issues;
        }
        let name = |e: usize| self.edge_name(e).to_string();
        for (id, e) in self.edges.iter().enumerate() {
            if e.src == e.dst {
                issues.push(Issue::Loop { edge: name(id) });
            }
            if e.bar == id {
                issues.push(Issue::BarFixedPoint { edge: name(id) });
                continue;
            }
            let b = self.edges[e.bar];
            if b.bar != id {
                issues.push(Issue::BarNotInvolution { edge: name(id) });
            }
            if b.src != e.dst || b.dst != e.src {
                issues.push(Issue::BarEndpoints { edge: name(id) });
            }
            let (l, lb) = (self.labels[id], self.labels[e.bar]);
            if l.is_zero() {
                issues.push(Issue::ZeroLabel { edge: name(id) });
            }
            match self.mode {
                Mode::Signed if lb != -l => issues.push(Issue::LabelsNotAntisymmetric { edge: name(id) }),
                Mode::Unsigned if lb != l => issues.push(Issue::LabelsNotSymmetric { edge: name(id) }),
                _ => {}
            }
        }
        let expected = self.out[0].len();
        for (v, star) in self.out.iter().enumerate() {
            if star.len() != expected {
                issues.push(Issue::NotRegular {
                    vertex: self.vertex_name(v).to_string(),
                    degree: star.len(),
                    expected,
                });
            }
            for (i, &e) in star.iter().enumerate() {
                for &f in &star[i + 1..] {
                    if !self.labels[e].is_independent(self.labels[f]) {
                        issues.push(Issue::DependentLabels {
                            vertex: self.vertex_name(v).to_string(),
                            first: name(e),
                            second: name(f),
                        });
                    }
                }
            }
        }
        if !self.is_connected() {
            issues.push(Issue::Disconnected);
        }
        issues
    }

    /// Checks every condition of an abstract GKM graph and searches for a
    /// compatible connection when the structure is sound.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = self.structural_issues();
        let mut connection_found = false;
        if issues.is_empty() {
            connection_found = self.find_connection().is_some();
            if !connection_found {
                issues.push(Issue::NoCompatibleConnection);
            }
        }
        ValidationReport { issues, connection_found }
    }
}
