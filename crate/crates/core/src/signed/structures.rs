use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fibration::Fibration;
use crate::graph::{GkmGraph, Mode};
use crate::lattice::{congruent_mod, Weight};
use rayon::prelude::*;
use serde::Serialize;

/// One isomorphism class of signed structures on an unsigned graph.
#[derive(Clone, Debug)]
pub struct SignedStructure {
    /// Representative; same vertex and edge ids as the unsigned input.
    pub graph: GkmGraph,
    /// Every sign assignment (one sign per edge pair) in this class.
    pub members: Vec<GkmGraph>,
    /// Number of classes the raw assignments fall into when only the
    /// identity lattice map is allowed.
    pub identity_classes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    CaseI,
    CaseII,
    CaseIII,
    Other,
}

#[derive(Clone, Debug)]
pub struct SignedStructureCase {
    pub tag: CaseTag,
    pub structure: SignedStructure,
}

/// Sign-assignment search state shared by all workers.
struct SignProblem<'a> {
    g: &'a GkmGraph,
    /// Pair representatives in search order.
    order: Vec<usize>,
    /// Position in `order` of the pair containing each directed edge.
    slot: Vec<usize>,
    /// Pairs (as representatives) whose connection condition becomes checkable
    /// once the slot is assigned.
    checks_at: Vec<Vec<usize>>,
}

impl<'a> SignProblem<'a> {
    fn new(g: &'a GkmGraph) -> Self {
        // Breadth-first edge order so that constraints close early.
        let mut order = Vec::new();
        let mut seen_pair = vec![false; g.edge_count()];
        let mut seen_v = vec![false; g.vertex_count()];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen_v[0] = true;
        while let Some(v) = queue.pop_front() {
            for &e in g.out_edges(v) {
                let rep = e.min(g.bar(e));
                if !seen_pair[rep] {
                    seen_pair[rep] = true;
                    order.push(rep);
                }
                let w = g.dst(e);
                if !seen_v[w] {
                    seen_v[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut slot = vec![usize::MAX; g.edge_count()];
        for (i, &e) in order.iter().enumerate() {
            slot[e] = i;
            slot[g.bar(e)] = i;
        }
        let mut checks_at = vec![Vec::new(); order.len()];
        for &e in &order {
            let ready = g
                .out_edges(g.src(e))
                .iter()
                .chain(g.out_edges(g.dst(e)))
                .map(|&f| slot[f])
                .max()
                .unwrap();
            checks_at[ready].push(e);
        }
        SignProblem { g, order, slot, checks_at }
    }

    fn label(&self, signs: &[i8], e: usize) -> Weight {
        let rep = self.order[self.slot[e]];
        let w = self.g.label(rep);
        let s = i64::from(signs[self.slot[e]]) * if rep == e { 1 } else { -1 };
        s * w
    }

    /// Some bijection of the remaining stars along `e` satisfies the signed congruences.
    fn pair_ok(&self, signs: &[i8], e: usize) -> bool {
        let g = self.g;
        let le = self.label(signs, e);
        let from: Vec<usize> = g.out_edges(g.src(e)).iter().copied().filter(|&f| f != e).collect();
        let to: Vec<usize> = g.out_edges(g.dst(e)).iter().copied().filter(|&f| f != g.bar(e)).collect();
        let mut used = vec![false; to.len()];
        self.match_star(signs, le, &from, &to, 0, &mut used)
    }

    fn match_star(&self, signs: &[i8], le: Weight, from: &[usize], to: &[usize], k: usize, used: &mut [bool]) -> bool {
        if k == from.len() {
            return true;
        }
        let lf = self.label(signs, from[k]);
        for j in 0..to.len() {
            if !used[j] && congruent_mod(self.label(signs, to[j]), lf, le, true).is_some() {
                used[j] = true;
                let ok = self.match_star(signs, le, from, to, k + 1, used);
                used[j] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }

    fn search(&self, signs: &mut Vec<i8>, out: &mut Vec<Vec<i8>>, budget: &Budget) -> Result<()> {
        budget.tick()?;
        let k = signs.len();
        if k == self.order.len() {
            out.push(signs.clone());
            return Ok(());
        }
        for s in [1i8, -1] {
            signs.push(s);
            if self.checks_at[k].iter().all(|&e| self.pair_ok(signs, e)) {
                self.search(signs, out, budget)?;
            }
            signs.pop();
        }
        Ok(())
    }

    fn graph(&self, signs: &[i8]) -> GkmGraph {
        let labels = (0..self.g.edge_count()).map(|e| self.label(signs, e)).collect();
        self.g.relabeled(Mode::Signed, labels)
    }
}

/// Number of leading free slots split across workers.
const PREFIX_SLOTS: usize = 4;

/// Every signed structure compatible with the unsigned graph `g`, grouped
/// into isomorphism classes (lattice automorphisms allowed).
///
/// Sign assignments are enumerated exhaustively with the first pair fixed
/// positive; the negation of a structure is always a structure and is
/// isomorphic to it via `−id`.
pub fn enumerate_signed_structures(g: &GkmGraph, budget: &Budget) -> Result<Vec<SignedStructure>> {
    let g = g.forget_signs();
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::InvalidGraph(
            report.issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    let problem = SignProblem::new(&g);
    let m = problem.order.len();
    let free = PREFIX_SLOTS.min(m - 1);
    let prefixes: Vec<Vec<i8>> = (0..1usize << free)
        .map(|bits| {
            let mut p = vec![1i8];
            p.extend((0..free).map(|j| if bits >> (free - 1 - j) & 1 == 0 { 1 } else { -1 }));
            p
        })
        .collect();
    let parts: Vec<Result<Vec<Vec<i8>>>> = prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut out = Vec::new();
            let mut signs = Vec::with_capacity(m);
            for (k, &s) in prefix.iter().enumerate() {
                signs.push(s);
                if !problem.checks_at[k].iter().all(|&e| problem.pair_ok(&signs, e)) {
                    return Ok(out);
                }
            }
            problem.search(&mut signs, &mut out, budget)?;
            Ok(out)
        })
        .collect();
    let mut solutions = Vec::new();
    for p in parts {
        solutions.extend(p?);
    }
    let mut classes: Vec<(GkmGraph, Vec<GkmGraph>)> = Vec::new();
    for s in &solutions {
        let sg = problem.graph(s);
        let neg: Vec<i8> = s.iter().map(|x| -x).collect();
        let ng = problem.graph(&neg);
        let mut placed = false;
        for (rep, members) in classes.iter_mut() {
            if rep.isomorphic(&sg, true, budget)?.is_some() {
                members.extend([sg.clone(), ng.clone()]);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((sg.clone(), vec![sg, ng]));
        }
    }
    classes
        .into_iter()
        .map(|(rep, members)| {
            let mut reps: Vec<&GkmGraph> = Vec::new();
            for m in &members {
                let mut found = false;
                for r in &reps {
                    if r.isomorphic(m, false, budget)?.is_some() {
                        found = true;
                        break;
                    }
                }
                if !found {
                    reps.push(m);
                }
            }
            let identity_classes = reps.len();
            Ok(SignedStructure { graph: rep, members, identity_classes })
        })
        .collect()
}

/// Both lifts of every base edge carry different signed weights.
pub fn has_distinct_lift_weights(f: &Fibration, structure: &GkmGraph) -> bool {
    let bd = f.base_data();
    (1..=bd.n() as i64).all(|i| {
        let e = bd.edge(i);
        let fiber = f.fiber(bd.vertex(i));
        let labels: Vec<Weight> =
            fiber.iter().filter_map(|&p| f.lift(p, e)).map(|x| structure.label(x)).collect();
        labels.len() == 2 && labels[0] != labels[1]
    })
}

/// The structure obtained from `signed_total` by negating the lifts of `e_2, e_4, …`.
pub fn flip_even_basic_edges(f: &Fibration, signed_total: &GkmGraph) -> GkmGraph {
    let bd = f.base_data();
    let mut labels = signed_total.labels().to_vec();
    for e in 0..labels.len() {
        if let Some(be) = f.edge_map()[e] {
            if let Some((i, _)) = bd.index_of_edge(be) {
                if i % 2 == 0 {
                    labels[e] = -labels[e];
                }
            }
        }
    }
    signed_total.relabeled(Mode::Signed, labels)
}

/// Tags each structure as case I (the lifted signed total), case II (its
/// every-second-pair flip, even `n` only), case III (lifts of each base edge
/// always differ) or other.
pub fn classify_cases(
    f: &Fibration,
    structures: &[SignedStructure],
    budget: &Budget,
) -> Result<Vec<SignedStructureCase>> {
    let case_one = f.lift_signed_default().ok();
    let case_two = match &case_one {
        Some(g) if f.base_data().n() % 2 == 0 => Some(flip_even_basic_edges(f, g)),
        _ => None,
    };
    structures
        .iter()
        .map(|s| {
            let iso = |r: &Option<GkmGraph>| -> Result<bool> {
                match r {
                    Some(r) => Ok(r.isomorphic(&s.graph, true, budget)?.is_some()),
                    None => Ok(false),
                }
            };
            let mut structure = s.clone();
            // The case III pattern refers to the fibration, which a graph
            // automorphism need not preserve, so every member is tried.
            let tag = if iso(&case_one)? {
                CaseTag::CaseI
            } else if iso(&case_two)? {
                CaseTag::CaseII
            } else if let Some(m) = s.members.iter().find(|m| has_distinct_lift_weights(f, m)) {
                structure.graph = m.clone();
                CaseTag::CaseIII
            } else {
                CaseTag::Other
            };
            Ok(SignedStructureCase { tag, structure })
        })
        .collect()
}
