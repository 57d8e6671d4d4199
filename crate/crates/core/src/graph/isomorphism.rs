use super::{GkmGraph, Mode};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{Mat2, Weight};
use std::collections::BTreeSet;

/// A GKM isomorphism `(f, g, φ)`: vertex map, directed-edge map and lattice automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub phi: Mat2,
}

impl Isomorphism {
    /// Re-checks the three defining conditions against both graphs.
    pub fn verify(&self, g1: &GkmGraph, g2: &GkmGraph) -> bool {
        let nv = g1.vertex_count();
        let ne = g1.edge_count();
        if nv != g2.vertex_count() || ne != g2.edge_count() || !self.phi.is_unimodular() {
            return false;
        }
        let bijective = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.len() == n && m.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !bijective(&self.vertex_map, nv) || !bijective(&self.edge_map, ne) {
            return false;
        }
        (0..ne).all(|e| {
            let e2 = self.edge_map[e];
            self.vertex_map[g1.src(e)] == g2.src(e2)
                && self.vertex_map[g1.dst(e)] == g2.dst(e2)
                && label_matches(g2.mode(), self.phi, g1.label(e), g2.label(e2))
        })
    }
}

fn label_matches(mode: Mode, phi: Mat2, a: Weight, b: Weight) -> bool {
    let pa = phi.apply(a);
    match mode {
        Mode::Signed => pa == b,
        Mode::Unsigned => pa.eq_up_to_sign(b),
    }
}

type Pred<'a> = &'a (dyn Fn(usize, usize) -> bool + Sync);

/// Extra admissibility conditions on vertex and edge assignments.
#[derive(Clone, Copy, Default)]
pub struct IsoConstraints<'a> {
    pub vertex: Option<Pred<'a>>,
    pub edge: Option<Pred<'a>>,
}

impl GkmGraph {
    /// Finds an isomorphism `self → other`; with `allow_lattice_automorphism`
    /// false, `φ` is the identity.
    pub fn isomorphic(
        &self,
        other: &GkmGraph,
        allow_lattice_automorphism: bool,
        budget: &Budget,
    ) -> Result<Option<Isomorphism>> {
        let mut found =
            self.isomorphisms_with(other, allow_lattice_automorphism, IsoConstraints::default(), Some(1), budget)?;
        Ok(found.pop())
    }

    /// Every isomorphism `self → other`.
    pub fn all_isomorphisms(
        &self,
        other: &GkmGraph,
        allow_lattice_automorphism: bool,
        budget: &Budget,
    ) -> Result<Vec<Isomorphism>> {
        self.isomorphisms_with(other, allow_lattice_automorphism, IsoConstraints::default(), None, budget)
    }

    /// Isomorphism search with additional constraints, stopping after `limit` witnesses.
    pub fn isomorphisms_with(
        &self,
        other: &GkmGraph,
        allow_lattice_automorphism: bool,
        constraints: IsoConstraints<'_>,
        limit: Option<usize>,
        budget: &Budget,
    ) -> Result<Vec<Isomorphism>> {
        if self.mode() != other.mode() {
            return Err(Error::PreconditionUnmet("isomorphism test needs graphs of the same mode".into()));
        }
        let mut out = Vec::new();
        if self.vertex_count() != other.vertex_count()
            || self.edge_count() != other.edge_count()
            || self.vertex_count() == 0
        {
            return Ok(out);
        }
        let phis = if allow_lattice_automorphism {
            self.candidate_automorphisms(other)?
        } else {
            vec![Mat2::IDENTITY]
        };
        for phi in phis {
            let mut s = Search {
                g1: self,
                g2: other,
                phi,
                constraints,
                vmap: vec![None; self.vertex_count()],
                vinv: vec![None; other.vertex_count()],
                emap: vec![None; self.edge_count()],
                einv: vec![None; other.edge_count()],
                limit,
                out: &mut out,
                budget,
            };
            for w in 0..other.vertex_count() {
                if s.vertex_ok(0, w) {
                    s.vmap[0] = Some(w);
                    s.vinv[w] = Some(0);
                    let stop = s.extend()?;
                    s.vmap[0] = None;
                    s.vinv[w] = None;
                    if stop {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Lattice automorphisms sending the first two independent labels at
    /// vertex 0 to some pair of labels at some vertex of `other`.
    fn candidate_automorphisms(&self, other: &GkmGraph) -> Result<Vec<Mat2>> {
        let star = self.out_edges(0);
        let pair = star.iter().enumerate().find_map(|(i, &e)| {
            star[i + 1..]
                .iter()
                .find(|&&f| self.label(e).is_independent(self.label(f)))
                .map(|&f| (self.label(e), self.label(f)))
        });
        let Some((a, b)) = pair else {
            return Err(Error::PreconditionUnmet(
                "lattice automorphism search needs two independent labels at a vertex".into(),
            ));
        };
        let signs: &[i64] = match self.mode() {
            Mode::Signed => &[1],
            Mode::Unsigned => &[1, -1],
        };
        let mut set = BTreeSet::new();
        for w in 0..other.vertex_count() {
            let s2 = other.out_edges(w);
            for &e2 in s2 {
                for &f2 in s2 {
                    if e2 == f2 {
                        continue;
                    }
                    for &sa in signs {
                        for &sb in signs {
                            let a2 = sa * other.label(e2);
                            let b2 = sb * other.label(f2);
                            if let Some(phi) = Mat2::sending(a, b, a2, b2) {
                                // φ and −φ act identically on unsigned labels.
                                let phi = if self.mode() == Mode::Unsigned { phi.min(phi.neg()) } else { phi };
                                set.insert(phi);
                            }
                        }
                    }
                }
            }
        }
        Ok(set.into_iter().collect())
    }
}

struct Search<'a, 'c> {
    g1: &'a GkmGraph,
    g2: &'a GkmGraph,
    phi: Mat2,
    constraints: IsoConstraints<'c>,
    vmap: Vec<Option<usize>>,
    vinv: Vec<Option<usize>>,
    emap: Vec<Option<usize>>,
    einv: Vec<Option<usize>>,
    limit: Option<usize>,
    out: &'a mut Vec<Isomorphism>,
    budget: &'a Budget,
}

impl Search<'_, '_> {
    fn vertex_ok(&self, v: usize, w: usize) -> bool {
        self.g1.out_edges(v).len() == self.g2.out_edges(w).len()
            && self.constraints.vertex.is_none_or(|p| p(v, w))
    }

    fn edge_ok(&self, e: usize, e2: usize) -> bool {
        label_matches(self.g2.mode(), self.phi, self.g1.label(e), self.g2.label(e2))
            && self.constraints.edge.is_none_or(|p| p(e, e2))
    }

    /// Returns `true` when the search should stop.
    fn extend(&mut self) -> Result<bool> {
        self.budget.tick()?;
        let next = (0..self.g1.edge_count()).find(|&e| self.emap[e].is_none() && self.vmap[self.g1.src(e)].is_some());
        let Some(e) = next else {
            if self.vmap.iter().all(Option::is_some) {
                self.out.push(Isomorphism {
                    vertex_map: self.vmap.iter().map(|v| v.unwrap()).collect(),
                    edge_map: self.emap.iter().map(|e| e.unwrap()).collect(),
                    phi: self.phi,
                });
                return Ok(self.limit.is_some_and(|l| self.out.len() >= l));
            }
            return Ok(false);
        };
        let (g1, g2) = (self.g1, self.g2);
        let src2 = self.vmap[g1.src(e)].unwrap();
        let dst1 = g1.dst(e);
        let eb = g1.bar(e);
        for &e2 in g2.out_edges(src2) {
            let eb2 = g2.bar(e2);
            if self.einv[e2].is_some() || self.einv[eb2].is_some() || self.emap[eb].is_some() {
                continue;
            }
            let dst2 = g2.dst(e2);
            let new_vertex = match self.vmap[dst1] {
                Some(w) if w == dst2 => false,
                Some(_) => continue,
                None if self.vinv[dst2].is_none() && self.vertex_ok(dst1, dst2) => true,
                None => continue,
            };
            if !self.edge_ok(e, e2) || !self.edge_ok(eb, eb2) {
                continue;
            }
            self.emap[e] = Some(e2);
            self.einv[e2] = Some(e);
            self.emap[eb] = Some(eb2);
            self.einv[eb2] = Some(eb);
            if new_vertex {
                self.vmap[dst1] = Some(dst2);
                self.vinv[dst2] = Some(dst1);
            }
            let stop = self.extend()?;
            self.emap[e] = None;
            self.einv[e2] = None;
            self.emap[eb] = None;
            self.einv[eb2] = None;
            if new_vertex {
                self.vmap[dst1] = None;
                self.vinv[dst2] = None;
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
