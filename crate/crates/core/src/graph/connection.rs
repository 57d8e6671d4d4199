use super::GkmGraph;
use crate::budget::Budget;
use crate::error::Result;
use crate::lattice::congruent_mod;

/// For every directed edge `e`, a bijection from the star at `i(e)` to the star at `t(e)`.
///
/// `maps[e][k]` is the image of `out_edges(src(e))[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Connection {
    pub maps: Vec<Vec<usize>>,
}

impl Connection {
    /// `∇_e f` for `f` leaving `i(e)`.
    pub fn apply(&self, g: &GkmGraph, e: usize, f: usize) -> usize {
        let k = g
            .out_edges(g.src(e))
            .iter()
            .position(|&x| x == f)
            .expect("f must leave the source of e");
        self.maps[e][k]
    }
}

impl GkmGraph {
    /// Does `∇_e f = f2` satisfy the label congruence?
    pub(crate) fn compatible(&self, e: usize, f: usize, f2: usize) -> bool {
        congruent_mod(self.label(f2), self.label(f), self.label(e), self.is_signed()).is_some()
    }

    /// Every admissible bijection for `∇_e`: it sends `e` to `ē`, satisfies the
    /// congruences, and its inverse satisfies them along `ē`.
    pub(crate) fn connection_candidates(&self, e: usize) -> Vec<Vec<usize>> {
        let from = self.out_edges(self.src(e));
        let to = self.out_edges(self.dst(e));
        let bar = self.bar(e);
        let mut out = Vec::new();
        if from.len() != to.len() {
            return out;
        }
        let mut image = vec![usize::MAX; from.len()];
        let mut used = vec![false; to.len()];
        self.extend_candidate(e, bar, from, to, 0, &mut image, &mut used, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_candidate(
        &self,
        e: usize,
        bar: usize,
        from: &[usize],
        to: &[usize],
        k: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == from.len() {
            out.push(image.clone());
            return;
        }
        let f = from[k];
        for (j, &f2) in to.iter().enumerate() {
            if used[j] || ((f == e) != (f2 == bar)) {
                continue;
            }
            if f != e && !(self.compatible(e, f, f2) && self.compatible(bar, f2, f)) {
                continue;
            }
            used[j] = true;
            image[k] = f2;
            self.extend_candidate(e, bar, from, to, k + 1, image, used, out);
            used[j] = false;
        }
    }

    /// Inverse of a candidate for `∇_e`, as a candidate for `∇_ē`.
    fn invert_candidate(&self, e: usize, map: &[usize]) -> Vec<usize> {
        let from = self.out_edges(self.src(e));
        let to = self.out_edges(self.dst(e));
        to.iter()
            .map(|&f2| from[map.iter().position(|&x| x == f2).expect("bijection")])
            .collect()
    }

    /// Candidate lists for each pair representative, or `None` if some pair has none.
    fn per_pair_candidates(&self) -> Option<Vec<(usize, Vec<Vec<usize>>)>> {
        self.pair_representatives()
            .map(|e| {
                let c = self.connection_candidates(e);
                (!c.is_empty()).then_some((e, c))
            })
            .collect()
    }

    fn assemble(&self, choice: &[(usize, &Vec<usize>)]) -> Connection {
        let mut maps = vec![Vec::new(); self.edge_count()];
        for &(e, map) in choice {
            maps[self.bar(e)] = self.invert_candidate(e, map);
            maps[e] = map.clone();
        }
        Connection { maps }
    }

    /// One compatible connection, choosing the first admissible bijection for
    /// each edge pair in id order. Requires sound structure (see [`GkmGraph::validate`]).
    pub fn find_connection(&self) -> Option<Connection> {
        if !self.structural_issues().is_empty() {
            return None;
        }
        let cands = self.per_pair_candidates()?;
        let choice: Vec<_> = cands.iter().map(|(e, c)| (*e, &c[0])).collect();
        Some(self.assemble(&choice))
    }

    /// Number of compatible connections. The congruence conditions couple only
    /// `∇_e` and `∇_ē`, so this is a product over edge pairs.
    pub fn count_connections(&self) -> u128 {
        if !self.structural_issues().is_empty() {
            return 0;
        }
        match self.per_pair_candidates() {
            None => 0,
            Some(c) => c.iter().map(|(_, c)| c.len() as u128).product(),
        }
    }

    /// Every compatible connection, enumerated by backtracking over edge pairs.
    pub fn all_connections(&self, budget: &Budget) -> Result<Vec<Connection>> {
        if !self.structural_issues().is_empty() {
            return Ok(Vec::new());
        }
        let Some(cands) = self.per_pair_candidates() else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut choice: Vec<(usize, &Vec<usize>)> = Vec::with_capacity(cands.len());
        self.enumerate_connections(&cands, &mut choice, &mut out, budget)?;
        Ok(out)
    }

    fn enumerate_connections<'a>(
        &self,
        cands: &'a [(usize, Vec<Vec<usize>>)],
        choice: &mut Vec<(usize, &'a Vec<usize>)>,
        out: &mut Vec<Connection>,
        budget: &Budget,
    ) -> Result<()> {
        budget.tick()?;
        let k = choice.len();
        if k == cands.len() {
            out.push(self.assemble(choice));
            return Ok(());
        }
        let (e, ref list) = cands[k];
        for map in list {
            choice.push((e, map));
            self.enumerate_connections(cands, choice, out, budget)?;
            choice.pop();
        }
        Ok(())
    }
}
