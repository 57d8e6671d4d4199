//! JSON interchange format for graphs, base data and fibrations.

use crate::error::{Error, Result};
use crate::fibration::{BaseData, Fibration};
use crate::graph::{GkmGraph, GraphBuilder, Mode};
use crate::lattice::Weight;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format_version: String,
    pub mode: Mode,
    pub vertices: Vec<VertexEntry>,
    pub edge_pairs: Vec<EdgePairEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_data: Option<BaseDataStanza>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibration: Option<FibrationStanza>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<[i64; 2]>,
}

/// One edge pair; `weight` labels the direction `src → dst`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgePairEntry {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub weight: [i64; 2],
}

/// Pinned enumeration and sign choices for a 2-valent base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDataStanza {
    /// `v_1, …, v_n`.
    pub vertex_order: Vec<String>,
    /// Edge pairs carrying `e_1, …, e_n`; needed only when two vertices are
    /// joined by several pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_order: Option<Vec<String>>,
    /// `γ_i = sign_i · weight(e_i)`, with the weight read in the direction `v_i → v_{i+1}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_signs: Option<Vec<i8>>,
    /// Expected `[ε_even, ε_odd]`; checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<[u8; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationStanza {
    /// Base document, relative to this document's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<GraphDocument>>,
    pub vertex_map: BTreeMap<String, String>,
    /// Horizontal edge pair → base edge pair. Vertical pairs are absent.
    pub edge_map: BTreeMap<String, String>,
    /// Vertical edge pair → signed weight of its `src → dst` direction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fiber_signs: Option<BTreeMap<String, [i64; 2]>>,
}

/// Parses document text, reporting the position of syntax errors.
pub fn parse(text: &str) -> Result<GraphDocument> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.check()?;
    Ok(doc)
}

/// Canonical text: pretty-printed JSON with a trailing newline.
pub fn serialize(doc: &GraphDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn load(path: &Path) -> Result<GraphDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn semantic(msg: impl Into<String>) -> Error {
    Error::Semantic(msg.into())
}

impl GraphDocument {
    /// Identifier uniqueness, dangling references and nonzero weights.
    pub fn check(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(semantic(format!("unsupported format_version {:?}", self.format_version)));
        }
        let mut vids = HashSet::new();
        for v in &self.vertices {
            if !vids.insert(v.id.as_str()) {
                return Err(semantic(format!("duplicate vertex id {:?}", v.id)));
            }
        }
        let mut eids = HashSet::new();
        for e in &self.edge_pairs {
            if !eids.insert(e.id.as_str()) {
                return Err(semantic(format!("duplicate edge id {:?}", e.id)));
            }
            for end in [&e.src, &e.dst] {
                if !vids.contains(end.as_str()) {
                    return Err(semantic(format!("edge {:?} refers to unknown vertex {end:?}", e.id)));
                }
            }
            if e.weight == [0, 0] {
                return Err(semantic(format!("edge {:?} has the zero weight", e.id)));
            }
        }
        if let Some(bd) = &self.base_data {
            for v in &bd.vertex_order {
                if !vids.contains(v.as_str()) {
                    return Err(semantic(format!("base_data refers to unknown vertex {v:?}")));
                }
            }
            for e in bd.edge_order.iter().flatten() {
                if !eids.contains(e.as_str()) {
                    return Err(semantic(format!("base_data refers to unknown edge {e:?}")));
                }
            }
        }
        if let Some(f) = &self.fibration {
            if f.base.is_some() == f.base_path.is_some() {
                return Err(semantic("fibration needs exactly one of base and base_path"));
            }
            if let Some(b) = &f.base {
                b.check()?;
                if b.fibration.is_some() {
                    return Err(semantic("an inline base cannot itself be a fibration"));
                }
            }
            for v in f.vertex_map.keys() {
                if !vids.contains(v.as_str()) {
                    return Err(semantic(format!("vertex_map refers to unknown vertex {v:?}")));
                }
            }
            for e in f.edge_map.keys().chain(f.fiber_signs.iter().flat_map(|s| s.keys())) {
                if !eids.contains(e.as_str()) {
                    return Err(semantic(format!("fibration refers to unknown edge {e:?}")));
                }
            }
            if f.fiber_signs.iter().flat_map(|s| s.values()).any(|w| *w == [0, 0]) {
                return Err(semantic("a fiber sign is the zero weight"));
            }
        }
        Ok(())
    }

    pub fn graph(&self) -> Result<GkmGraph> {
        let mut b = GraphBuilder::new(self.mode);
        let mut idx = HashMap::new();
        for v in &self.vertices {
            idx.insert(v.id.as_str(), b.vertex(v.id.clone()));
        }
        for e in &self.edge_pairs {
            let w = Weight::new(e.weight[0], e.weight[1]);
            b.edge(idx[e.src.as_str()], idx[e.dst.as_str()], w, e.id.clone());
        }
        b.build()
    }

    pub fn positions(&self) -> Option<Vec<[i64; 2]>> {
        self.vertices.iter().map(|v| v.position).collect()
    }

    /// Base data from the stanza, or the default enumeration.
    pub fn base_data(&self) -> Result<BaseData> {
        let g = self.graph()?;
        let Some(st) = &self.base_data else { return BaseData::new(g) };
        let n = st.vertex_order.len();
        let vid = |s: &str| g.vertex_index(s).expect("checked");
        let mut edges = Vec::with_capacity(n);
        let mut raw = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (vid(&st.vertex_order[i]), vid(&st.vertex_order[(i + 1) % n]));
            let cands: Vec<usize> = g
                .out_edges(a)
                .iter()
                .copied()
                .filter(|&e| g.dst(e) == b)
                .filter(|&e| st.edge_order.as_ref().is_none_or(|o| o.get(i).is_some_and(|id| id == g.edge_name(e))))
                .collect();
            let e = match cands.as_slice() {
                [e] => *e,
                [] => return Err(semantic(format!("no edge e_{} in the base order", i + 1))),
                _ => return Err(semantic(format!("edge e_{} is ambiguous; give edge_order", i + 1))),
            };
            let entry = self.edge_pairs.iter().find(|p| p.id == g.edge_name(e)).expect("named");
            let w = Weight::new(entry.weight[0], entry.weight[1]);
            raw.push(if g.src(e) == vid(&entry.src) { w } else { -w });
            edges.push(e);
        }
        let bd = match &st.gamma_signs {
            Some(signs) => {
                if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
                    return Err(semantic("gamma_signs needs one entry ±1 per base edge"));
                }
                let gammas = raw.iter().zip(signs).map(|(&w, &s)| i64::from(s) * w).collect();
                BaseData::from_gammas(g, edges, gammas)?
            }
            None if g.is_signed() => BaseData::from_gammas(g, edges, raw)?,
            None => BaseData::from_first_edge(g, edges[0])?,
        };
        if let Some(eps) = st.eps {
            if eps != [bd.eps_even(), bd.eps_odd()] {
                return Err(semantic(format!(
                    "stated eps {eps:?} differs from the derived [{}, {}]",
                    bd.eps_even(),
                    bd.eps_odd()
                )));
            }
        }
        Ok(bd)
    }

    /// The fibration described by the stanza; `dir` resolves `base_path`.
    pub fn fibration(&self, dir: Option<&Path>) -> Result<Fibration> {
        let st = self.fibration.as_ref().ok_or_else(|| semantic("document has no fibration stanza"))?;
        let base_doc = match (&st.base, &st.base_path) {
            (Some(b), _) => (**b).clone(),
            (None, Some(p)) => {
                let path: PathBuf = dir.map(|d| d.join(p)).unwrap_or_else(|| PathBuf::from(p));
                load(&path)?
            }
            (None, None) => unreachable!("checked"),
        };
        let bd = base_doc.base_data()?;
        let total = self.graph()?;
        let base = bd.base();
        let mut vertex_map = Vec::with_capacity(total.vertex_count());
        for v in total.vertex_names() {
            let b = st.vertex_map.get(v).ok_or_else(|| semantic(format!("vertex {v:?} has no image")))?;
            vertex_map.push(base.vertex_index(b).ok_or_else(|| semantic(format!("unknown base vertex {b:?}")))?);
        }
        let mut edge_map = vec![None; total.edge_count()];
        for e in 0..total.edge_count() {
            let Some(bname) = st.edge_map.get(total.edge_name(e)) else { continue };
            let src = vertex_map[total.src(e)];
            let be = base
                .edge_by_name(bname, src)
                .ok_or_else(|| semantic(format!("base edge {bname:?} does not leave the image of the source of {:?}", total.edge_name(e))))?;
            edge_map[e] = Some(be);
        }
        let fiber_signs = match &st.fiber_signs {
            Some(map) => {
                let mut signs = vec![None; total.edge_count()];
                for entry in &self.edge_pairs {
                    let Some(w) = map.get(&entry.id) else { continue };
                    let w = Weight::new(w[0], w[1]);
                    let src = total.vertex_index(&entry.src).expect("checked");
                    let e = total.edge_by_name(&entry.id, src).expect("named");
                    signs[e] = Some(w);
                    signs[total.bar(e)] = Some(-w);
                }
                Some(signs)
            }
            None if total.is_signed() => Some(
                (0..total.edge_count()).map(|e| edge_map[e].is_none().then(|| total.label(e))).collect(),
            ),
            None => None,
        };
        Fibration::new(total, bd, vertex_map, edge_map, fiber_signs)
    }

    /// Document for a graph, with optional vertex positions.
    pub fn from_graph(g: &GkmGraph, positions: Option<&[[i64; 2]]>) -> GraphDocument {
        GraphDocument {
            format_version: FORMAT_VERSION.into(),
            mode: g.mode(),
            vertices: (0..g.vertex_count())
                .map(|v| VertexEntry { id: g.vertex_name(v).into(), position: positions.map(|p| p[v]) })
                .collect(),
            edge_pairs: g
                .pair_representatives()
                .map(|e| {
                    let w = g.label(e);
                    EdgePairEntry {
                        id: g.edge_name(e).into(),
                        src: g.vertex_name(g.src(e)).into(),
                        dst: g.vertex_name(g.dst(e)).into(),
                        weight: [w.x, w.y],
                    }
                })
                .collect(),
            base_data: None,
            fibration: None,
        }
    }

    /// Base document pinning the enumeration and signs of `bd`.
    pub fn from_base_data(bd: &BaseData, positions: Option<&[[i64; 2]]>) -> GraphDocument {
        let g = bd.base();
        let mut doc = GraphDocument::from_graph(g, positions);
        let signs = bd
            .edge_order()
            .iter()
            .zip(bd.gammas())
            .map(|(&e, &gamma)| {
                let rep = g.pair_representatives().find(|&r| r == e || g.bar(r) == e).expect("pair");
                let w = if rep == e { g.label(e) } else { -g.label(rep) };
                if w == gamma {
                    1
                } else {
                    -1
                }
            })
            .collect();
        doc.base_data = Some(BaseDataStanza {
            vertex_order: bd.vertex_order().iter().map(|&v| g.vertex_name(v).into()).collect(),
            edge_order: Some(bd.edge_order().iter().map(|&e| g.edge_name(e).into()).collect()),
            gamma_signs: Some(signs),
            eps: Some([bd.eps_even(), bd.eps_odd()]),
        });
        doc
    }

    /// Document for a fibration with its base inlined; `base_positions`
    /// follow the vertex order of the base graph.
    pub fn from_fibration(f: &Fibration, base_positions: Option<&[[i64; 2]]>) -> GraphDocument {
        let g = f.total();
        let b = f.base();
        let mut doc = GraphDocument::from_graph(g, None);
        let vertex_map = (0..g.vertex_count())
            .map(|v| (g.vertex_name(v).to_string(), b.vertex_name(f.vertex_map()[v]).to_string()))
            .collect();
        let edge_map = g
            .pair_representatives()
            .filter_map(|e| f.edge_map()[e].map(|be| (g.edge_name(e).to_string(), b.edge_name(be).to_string())))
            .collect();
        let fiber_signs = f.fiber_signs().map(|s| {
            g.pair_representatives()
                .filter_map(|e| s[e].map(|w| (g.edge_name(e).to_string(), [w.x, w.y])))
                .collect()
        });
        doc.fibration = Some(FibrationStanza {
            base_path: None,
            base: Some(Box::new(GraphDocument::from_base_data(f.base_data(), base_positions))),
            vertex_map,
            edge_map,
            fiber_signs,
        });
        doc
    }
}
