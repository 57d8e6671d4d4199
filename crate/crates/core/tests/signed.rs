mod common;

use common::{base, fibration, graph, kv, w};
use gkm_fibrations::fibration::{build_total, interior_vertices, BaseData, Fibration};
use gkm_fibrations::graph::GkmGraph;
use gkm_fibrations::lattice::Weight;
use gkm_fibrations::signed::*;
use gkm_fibrations::{Budget, Error};
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::f64::consts::TAU;

fn budget() -> Budget {
    Budget::new(1 << 24)
}

// Floating-point oracle: accumulate each turn, taken in (0, 2π) in the
// direction of the orientation.
fn winding_oracle(ws: &[Weight], orientation: i8) -> u64 {
    let n = ws.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = (ws[i].y as f64).atan2(ws[i].x as f64);
        let b = (ws[(i + 1) % n].y as f64).atan2(ws[(i + 1) % n].x as f64);
        total += (f64::from(orientation) * (b - a)).rem_euclid(TAU);
    }
    (total / TAU).round() as u64
}

fn convex_directions(n: usize) -> Vec<Weight> {
    match n {
        4 => vec![w(1, 0), w(0, 1), w(-1, 0), w(0, -1)],
        6 => vec![w(1, 0), w(1, 1), w(0, 1), w(-1, 0), w(-1, -1), w(0, -1)],
        8 => vec![w(1, 0), w(1, 1), w(0, 1), w(-1, 1), w(-1, 0), w(-1, -1), w(0, -1), w(1, -1)],
        10 => vec![w(1, 0), w(2, 1), w(1, 1), w(0, 1), w(-1, 1), w(-1, 0), w(-2, -1), w(-1, -1), w(0, -1), w(1, -1)],
        _ => unreachable!(),
    }
}

fn alternate(ws: &[Weight]) -> Vec<Weight> {
    ws.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).collect()
}

#[test]
fn convexity_examples() {
    assert_eq!(is_locally_convex(&[w(1, 0), w(0, 1), w(-1, 0), w(0, -1)]).unwrap(), Some(1));
    assert_eq!(is_locally_convex(&[w(1, 0), w(0, -1), w(-1, 0), w(0, 1)]).unwrap(), Some(-1));
    assert!(matches!(
        is_locally_convex(&[w(1, 0), w(0, 1), w(0, -1), w(1, 1)]),
        Err(Error::DegenerateSequence { index: 2 })
    ));
    assert!(WeightCycle::new(vec![w(1, 0), w(2, 0)], 1).is_err());
    assert!(WeightCycle::new(vec![w(1, 0), w(0, 1)], 0).is_err());
}

#[test]
fn winding_examples() {
    for n in [4, 6, 8, 10] {
        let ws = convex_directions(n);
        assert_eq!(winding_number(&ws, 1).unwrap(), 1);
        assert_eq!(preferred_winding(&ws).unwrap(), (1, 1));
        let alt = alternate(&ws);
        assert_eq!(preferred_winding(&alt).unwrap(), (-1, (n as u64 - 2) / 2), "n = {n}");
        assert_eq!(winding_oracle(&alt, -1), (n as u64 - 2) / 2);
    }
    let square = convex_directions(4);
    assert_eq!(winding_number(&square, -1).unwrap(), 3);
    assert_eq!(WeightCycle::new(square, -1).unwrap().winding_number(), 3);
    let hex = base("hexagon");
    let alt = alternate(hex.gammas());
    let convex = is_locally_convex(hex.gammas()).unwrap().unwrap();
    assert_eq!(winding_number(hex.gammas(), convex).unwrap(), 1);
    assert_eq!(winding_number(&alt, -convex).unwrap(), 2);
}

fn structures(g: &GkmGraph) -> Vec<SignedStructure> {
    enumerate_signed_structures(g, &budget()).unwrap()
}

fn tags(f: &Fibration, ss: &[SignedStructure]) -> BTreeSet<CaseTag> {
    classify_cases(f, ss, &budget()).unwrap().into_iter().map(|c| c.tag).collect()
}

#[test]
fn tolman_census() {
    let f = fibration("tolman");
    let ss = structures(f.total());
    assert_eq!(ss.len(), 2);
    assert_eq!(tags(&f, &ss), BTreeSet::from([CaseTag::CaseI, CaseTag::CaseIII]));
    let raw: usize = ss.iter().map(|s| s.members.len()).sum();
    assert_eq!(common::brute_force_census(f.total()), (raw, 2));
    assert!(ss.iter().all(|s| s.graph.validate().is_valid()));
}

#[test]
fn hexagon_census() {
    let f = build_total(&base("hexagon"), &kv(&[1; 6], 1)).unwrap();
    assert_eq!(interior_vertices(&f.lift_signed_default().unwrap()).len(), 5);
    let ss = structures(f.total());
    assert_eq!(ss.len(), 3);
    assert_eq!(tags(&f, &ss), BTreeSet::from([CaseTag::CaseI, CaseTag::CaseII, CaseTag::CaseIII]));
    let raw: usize = ss.iter().map(|s| s.members.len()).sum();
    assert_eq!(common::brute_force_census(f.total()), (raw, 3));
}

#[test]
fn pentagon_with_nonunit_k_has_no_case_three() {
    let f = build_total(&base("pentagon"), &kv(&[1, 1, 1, 1, 2], 1)).unwrap();
    let t = tags(&f, &structures(f.total()));
    assert!(t.contains(&CaseTag::CaseI));
    assert!(!t.contains(&CaseTag::CaseIII));
}

#[test]
fn case_two_reclassifies_with_alternating_signs() {
    let bd = base("hexagon");
    let k = kv(&[1, 2, -1, 1, -2, 3], 1);
    let f = build_total(&bd, &k).unwrap();
    let lifted = f.lift_signed_default().unwrap();
    let case_two = flip_even_basic_edges(&f, &lifted);
    assert!(case_two.validate().is_valid());
    // The horizontal labels of the flipped structure define the new base data.
    let gammas: Vec<Weight> = (1..=6).map(|i| case_two.label(f.lift(f.fiber(bd.vertex(i))[0], bd.edge(i)).unwrap())).collect();
    let flipped = BaseData::from_gammas(bd.base().forget_signs(), bd.edge_order().to_vec(), gammas).unwrap();
    let got = f.with_base_data(flipped).unwrap().classify().unwrap();
    assert_eq!(got, kv(&[-1, 2, 1, 1, 2, 3], 1));
}

#[test]
fn case_one_always_present_for_built_totals() {
    for (name, max) in [("cp2", 2), ("square", 1), ("pentagon", 1)] {
        let bd = base(name);
        for k in common::k_grid(bd.n(), max) {
            let f = build_total(&bd, &k).unwrap();
            let ss = structures(f.total());
            assert!(tags(&f, &ss).contains(&CaseTag::CaseI), "{name} {k}");
        }
    }
}

#[test]
fn polytope_subgraph_examples() {
    let b = budget();
    let flag = fibration("flag").lift_signed_default().unwrap();
    assert!(kaehler_obstruction(&flag, &b).unwrap().passes());
    assert!(!hamiltonian_cone_obstruction(&flag).unwrap().fails());

    let tolman_f = fibration("tolman");
    let tolman = tolman_f.lift_signed_default().unwrap();
    let interior: BTreeSet<usize> = interior_vertices(&tolman).into_iter().collect();
    match kaehler_obstruction(&tolman, &b).unwrap() {
        KaehlerVerdict::FailsAt(pairs) => assert!(pairs.iter().any(|p| interior.contains(&p.vertex))),
        KaehlerVerdict::PassesCriterion => panic!("the Tolman graph must fail"),
    }
    let cone = hamiltonian_cone_obstruction(&tolman).unwrap();
    assert!(!cone.fails());
    assert_eq!(cone.interior.len(), 2);

    let cases = classify_cases(&tolman_f, &structures(tolman_f.total()), &b).unwrap();
    let three = cases.iter().find(|c| c.tag == CaseTag::CaseIII).unwrap();
    let g3 = &three.structure.graph;
    assert_eq!(interior_vertices(g3).len(), 6);
    assert!(hamiltonian_cone_obstruction(g3).unwrap().fails());
    // All six vertices are interior, yet two convex 4-cycles survive, both
    // running through the middle fiber edge.
    let subs = polytope_type_subgraphs(g3, &b).unwrap();
    assert_eq!(subs.len(), 2);
    for c in &subs {
        let vertical: Vec<&str> = c.edges.iter().filter(|&&e| tolman_f.is_vertical(e)).map(|&e| g3.edge_name(e)).collect();
        assert_eq!(vertical, ["g2"]);
    }

    let counter = graph("kaehler_counterexample");
    assert!(!kaehler_obstruction(&counter, &b).unwrap().passes());
}

// Brute-force oracle: every simple cycle, checked against the definition.
fn polytope_subgraph_oracle(g: &GkmGraph) -> BTreeSet<Vec<usize>> {
    fn turn_ok(g: &GkmGraph, a: usize, b: usize, c: usize) -> bool {
        let (x, y, m) = (g.label(c), -g.label(a), g.label(b));
        let (dx, dy) = (x.x - y.x, x.y - y.y);
        dx * m.y == dy * m.x && if m.x != 0 { dx % m.x == 0 } else { dy % m.y == 0 }
    }
    fn dfs(g: &GkmGraph, start: usize, path: &mut Vec<usize>, seen: &mut Vec<bool>, out: &mut BTreeSet<Vec<usize>>) {
        let v = g.dst(*path.last().unwrap());
        for &e in g.out_edges(v) {
            if e == g.bar(*path.last().unwrap()) {
                continue;
            }
            let t = g.dst(e);
            if t == start && path.len() >= 2 {
                path.push(e);
                let m = path.len();
                let turns = (0..m).all(|j| turn_ok(g, path[j], path[(j + 1) % m], path[(j + 2) % m]));
                let ws: Vec<Weight> = path.iter().map(|&x| g.label(x)).collect();
                let convex = (0..m).all(|j| ws[j].cross(ws[(j + 1) % m]) > 0)
                    || (0..m).all(|j| ws[j].cross(ws[(j + 1) % m]) < 0);
                if turns && convex {
                    let o = if ws[0].cross(ws[1]) > 0 { 1 } else { -1 };
                    if winding_oracle(&ws, o) == 1 {
                        let mut key: Vec<usize> = path.iter().map(|&x| x.min(g.bar(x))).collect();
                        key.sort_unstable();
                        out.insert(key);
                    }
                }
                path.pop();
            } else if !seen[t] {
                seen[t] = true;
                path.push(e);
                dfs(g, start, path, seen, out);
                path.pop();
                seen[t] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in 0..g.vertex_count() {
        for &e in g.out_edges(s) {
            let mut seen = vec![false; g.vertex_count()];
            seen[s] = true;
            seen[g.dst(e)] = true;
            dfs(g, s, &mut vec![e], &mut seen, &mut out);
        }
    }
    out
}

#[test]
fn polytope_subgraphs_match_brute_force() {
    let b = budget();
    let mut graphs = vec![graph("kaehler_counterexample")];
    for name in ["flag", "tolman", "nonunit"] {
        let f = fibration(name);
        for s in structures(f.total()) {
            graphs.extend(s.members);
        }
    }
    for k in [[1, 1, 1, 1], [1, -1, 2, 1], [2, 1, -1, -1]] {
        for eta in 0..2 {
            graphs.push(build_total(&base("square"), &kv(&k, eta)).unwrap().lift_signed_default().unwrap());
        }
    }
    for g in graphs {
        let found: BTreeSet<Vec<usize>> = polytope_type_subgraphs(&g, &b)
            .unwrap()
            .into_iter()
            .map(|c| {
                let mut key: Vec<usize> = c.edges.iter().map(|&x| x.min(g.bar(x))).collect();
                key.sort_unstable();
                key
            })
            .collect();
        assert_eq!(found, polytope_subgraph_oracle(&g));
    }
}

#[test]
fn nonkaehler_report_examples() {
    let b = budget();
    let r = nonkaehler_report(&fibration("tolman"), &b).unwrap();
    assert!(r.no_invariant_kaehler_structure);
    assert_eq!(r.k_vector, "[1,-1,-1] eta=1");
    let case = |t: CaseTag| r.cases.iter().find(|c| c.tag == t).unwrap();
    assert!(matches!(case(CaseTag::CaseI).checks[..], [CaseCheck::Kaehler { obstructed: true, .. }]));
    assert!(matches!(case(CaseTag::CaseIII).checks[..], [CaseCheck::Cone { obstructed: true, .. }]));

    let square = build_total(&base("square"), &kv(&[1, 1, 1, 1], 1)).unwrap();
    assert!(matches!(nonkaehler_report(&square, &b), Err(Error::PreconditionUnmet(_))));
    let product = build_total(&base("cp2"), &kv(&[1, 1, 1], 0)).unwrap();
    assert!(matches!(nonkaehler_report(&product, &b), Err(Error::PreconditionUnmet(_))));

    let hex = build_total(&base("hexagon"), &kv(&[1; 6], 1)).unwrap();
    let r = nonkaehler_report(&hex, &b).unwrap();
    assert!(r.no_invariant_kaehler_structure);
    let two = r.cases.iter().find(|c| c.tag == CaseTag::CaseII).unwrap();
    match &two.checks[..] {
        [CaseCheck::ExteriorWinding(x)] => {
            assert_eq!(x.predicted_winding, 2);
            assert_eq!(x.min_convex_winding, Some(2));
        }
        other => panic!("unexpected checks {other:?}"),
    }
}

fn nondegenerate_cycle() -> impl Strategy<Value = Vec<Weight>> {
    proptest::collection::vec((-5i64..=5, -5i64..=5).prop_map(|(x, y)| Weight::new(x, y)), 2..10)
        .prop_filter("nondegenerate", |ws| (0..ws.len()).all(|i| ws[i].cross(ws[(i + 1) % ws.len()]) != 0))
}

// Sequences with every consecutive cross product positive.
fn convex_cycle() -> impl Strategy<Value = Vec<Weight>> {
    proptest::collection::vec((-5i64..=5, -5i64..=5).prop_map(|(x, y)| Weight::new(x, y)), 3..12)
        .prop_map(|mut ws| {
            for i in 1..ws.len() {
                if ws[i - 1].cross(ws[i]) < 0 {
                    ws[i] = -ws[i];
                }
            }
            ws
        })
        .prop_filter("locally convex", |ws| (0..ws.len()).all(|i| ws[i].cross(ws[(i + 1) % ws.len()]) > 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn winding_matches_oracle_and_is_invariant(ws in nondegenerate_cycle(), shift in 0usize..10, o in prop_oneof![Just(1i8), Just(-1i8)]) {
        let s = winding_number(&ws, o).unwrap();
        prop_assert!(s >= 1);
        prop_assert_eq!(s, winding_oracle(&ws, o));
        let mut rotated = ws.clone();
        rotated.rotate_left(shift % ws.len());
        prop_assert_eq!(winding_number(&rotated, o).unwrap(), s);
        let negated: Vec<Weight> = ws.iter().map(|&x| -x).collect();
        prop_assert_eq!(winding_number(&negated, o).unwrap(), s);
        // Both orientations together account for one full turn per step.
        prop_assert_eq!(s + winding_number(&ws, -o).unwrap(), ws.len() as u64);
    }

    #[test]
    fn skipping_every_second_keeps_winding(ws in convex_cycle()) {
        prop_assume!(ws.len() % 2 == 0);
        let odd: Vec<Weight> = ws.iter().step_by(2).copied().collect();
        prop_assume!((0..odd.len()).all(|i| odd[i].cross(odd[(i + 1) % odd.len()]) != 0));
        prop_assert_eq!(is_locally_convex(&ws).unwrap(), Some(1));
        prop_assert_eq!(winding_number(&odd, 1).unwrap(), winding_number(&ws, 1).unwrap());
    }

    #[test]
    fn enumerated_structures_revalidate(ks in proptest::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 3), eta in 0u8..=1) {
        let f = build_total(&base("cp2"), &kv(&ks, eta)).unwrap();
        for s in structures(f.total()) {
            prop_assert!(s.graph.validate().is_valid());
            prop_assert!(common::admits_connection(&s.graph));
            for m in &s.members {
                prop_assert!(common::admits_connection(m));
            }
        }
    }
}
