mod common;

use common::{fibration, graph, kv, w};
use gkm_fibrations::fibration::build_total;
use gkm_fibrations::graph::{Connection, GkmGraph, GraphBuilder, Issue, Mode};
use gkm_fibrations::lattice::{Mat2, Weight};
use gkm_fibrations::{Budget, Error};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn budget() -> Budget {
    Budget::new(1 << 24)
}

fn triangle(mode: Mode, labels: [Weight; 3]) -> GkmGraph {
    let mut b = GraphBuilder::new(mode);
    let v: Vec<usize> = (1..=3).map(|i| b.vertex(format!("v{i}"))).collect();
    for i in 0..3 {
        b.edge(v[i], v[(i + 1) % 3], labels[i], format!("e{}", i + 1));
    }
    b.build().unwrap()
}

fn cp2() -> GkmGraph {
    triangle(Mode::Signed, [w(1, 0), w(0, -1), w(-1, 1)])
}

// Oracle for the label congruence, written out coordinatewise.
fn congruent(g: &GkmGraph, target: Weight, source: Weight, modulus: Weight) -> bool {
    let signs: &[i64] = if g.is_signed() { &[1] } else { &[1, -1] };
    signs.iter().any(|&s| {
        let (dx, dy) = (target.x - s * source.x, target.y - s * source.y);
        // dx·m.y == dy·m.x with an integral quotient
        dx * modulus.y == dy * modulus.x
            && if modulus.x != 0 { dx % modulus.x == 0 } else { dy % modulus.y == 0 }
    })
}

// Independent re-check of every connection axiom.
fn connection_ok(g: &GkmGraph, c: &Connection) -> bool {
    (0..g.edge_count()).all(|e| {
        let from = g.out_edges(g.src(e));
        let to = g.out_edges(g.dst(e));
        let map = &c.maps[e];
        let image: BTreeSet<usize> = map.iter().copied().collect();
        let bijective = map.len() == from.len() && image == to.iter().copied().collect();
        let sends_e_to_bar = from.iter().zip(map).any(|(&f, &f2)| f == e && f2 == g.bar(e));
        let inverse = from.iter().zip(map).all(|(&f, &f2)| c.apply(g, g.bar(e), f2) == f);
        let labels = from.iter().zip(map).all(|(&f, &f2)| congruent(g, g.label(f2), g.label(f), g.label(e)));
        bijective && sends_e_to_bar && inverse && labels
    })
}

// Brute force: every choice of bijection per edge pair, filtered by the axioms.
fn brute_force_connections(g: &GkmGraph) -> BTreeSet<Vec<Vec<usize>>> {
    fn perms(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let reps: Vec<usize> = g.pair_representatives().collect();
    // Only bijections sending e to its reversal can pass, which keeps the product small.
    let options: Vec<Vec<Vec<usize>>> = reps
        .iter()
        .map(|&e| {
            let k = g.out_edges(g.src(e)).iter().position(|&x| x == e).unwrap();
            perms(g.out_edges(g.dst(e))).into_iter().filter(|p| p[k] == g.bar(e)).collect()
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut idx = vec![0usize; reps.len()];
    loop {
        let mut maps = vec![Vec::new(); g.edge_count()];
        for (r, &e) in reps.iter().enumerate() {
            let map = options[r][idx[r]].clone();
            let from = g.out_edges(g.src(e));
            let mut inv = vec![0; from.len()];
            for (k, &f2) in map.iter().enumerate() {
                let pos = g.out_edges(g.dst(e)).iter().position(|&x| x == f2).unwrap();
                inv[pos] = from[k];
            }
            maps[e] = map;
            maps[g.bar(e)] = inv;
        }
        let c = Connection { maps };
        if connection_ok(g, &c) {
            out.insert(c.maps);
        }
        let mut r = 0;
        loop {
            if r == reps.len() {
                return out;
            }
            idx[r] += 1;
            if idx[r] < options[r].len() {
                break;
            }
            idx[r] = 0;
            r += 1;
        }
    }
}

// Relabels vertices by a rotation, reverses the edge-pair order and applies `phi`.
fn transformed(g: &GkmGraph, shift: usize, phi: Mat2) -> GkmGraph {
    let nv = g.vertex_count();
    let new_id = |v: usize| (v + shift) % nv;
    let mut b = GraphBuilder::new(g.mode());
    let mut names = vec![String::new(); nv];
    for v in 0..nv {
        names[new_id(v)] = format!("x{}", g.vertex_name(v));
    }
    for n in &names {
        b.vertex(n.clone());
    }
    let reps: Vec<usize> = g.pair_representatives().collect();
    for &e in reps.iter().rev() {
        b.edge(new_id(g.src(e)), new_id(g.dst(e)), phi.apply(g.label(e)), g.edge_name(e));
    }
    b.build().unwrap()
}

#[test]
fn validate_examples() {
    assert!(cp2().validate().is_valid());
    let broken = triangle(Mode::Signed, [w(1, 0), w(0, -1), w(1, 1)]);
    let r = broken.validate();
    assert!(!r.is_valid());
    assert!(r.issues.contains(&Issue::NoCompatibleConnection));
    assert!(broken.find_connection().is_none());
    assert!(graph("s4").validate().is_valid());
}

#[test]
fn structural_issues_reported() {
    let mut b = GraphBuilder::new(Mode::Signed);
    let v = b.vertex("a");
    let u = b.vertex("b");
    b.edge(v, u, w(1, 0), "e1");
    b.edge(v, u, w(2, 0), "e2");
    let g = b.build().unwrap();
    let r = g.validate();
    assert!(r.issues.iter().any(|i| matches!(i, Issue::DependentLabels { .. })));
}

#[test]
fn connection_examples() {
    let g = cp2();
    let c = g.find_connection().unwrap();
    assert!(connection_ok(&g, &c));
    assert_eq!(g.all_connections(&budget()).unwrap(), vec![c]);
    assert!(graph("s4").find_connection().is_some());
    let tolman = fibration("tolman");
    let conns = tolman.total().all_connections(&budget()).unwrap();
    assert!(!conns.is_empty());
    assert_eq!(conns.len() as u128, tolman.total().count_connections());
    assert!(conns.contains(&tolman.total().find_connection().unwrap()));
}

#[test]
fn connections_match_brute_force() {
    for g in [cp2(), graph("s4"), graph("square"), fibration("tolman").total().clone(), fibration("flag").total().clone()]
    {
        let found: BTreeSet<_> = g.all_connections(&budget()).unwrap().into_iter().map(|c| c.maps).collect();
        assert_eq!(found, brute_force_connections(&g));
    }
}

#[test]
fn connection_search_respects_budget() {
    // A generic 2-vertex 4-valent unsigned graph: every bijection is compatible.
    let mut b = GraphBuilder::new(Mode::Unsigned);
    let (p, q) = (b.vertex("p"), b.vertex("q"));
    for (i, x) in [w(1, 0), w(0, 1), w(1, 1), w(1, -1)].into_iter().enumerate() {
        b.edge(p, q, x, format!("e{i}"));
    }
    let g = b.build().unwrap();
    assert!(g.count_connections() > 1);
    assert!(matches!(g.all_connections(&Budget::new(2)), Err(Error::SizeLimit { .. })));
}

#[test]
fn effectiveness_examples() {
    assert!(cp2().is_effective());
    assert!(graph("s4").is_effective());
    let mut b = GraphBuilder::new(Mode::Unsigned);
    let (p, q) = (b.vertex("p"), b.vertex("q"));
    b.edge(p, q, w(2, 0), "e1");
    b.edge(p, q, w(0, 1), "e2");
    assert!(!b.build().unwrap().is_effective());
}

#[test]
fn forget_signs_examples() {
    let u = cp2().forget_signs();
    assert_eq!(u.mode(), Mode::Unsigned);
    let canon: BTreeSet<Weight> = u.labels().iter().map(|l| l.canonical()).collect();
    assert_eq!(canon, BTreeSet::from([w(1, 0), w(0, 1), w(1, -1)]));
    let tolman = fibration("tolman");
    let signed = tolman.lift_signed_default().unwrap();
    let back = signed.forget_signs();
    assert!(back.isomorphic(tolman.total(), false, &budget()).unwrap().is_some());
}

#[test]
fn isomorphism_examples() {
    let b = budget();
    let g = cp2();
    let id = g.isomorphic(&g, false, &b).unwrap().unwrap();
    assert!(id.verify(&g, &g));
    assert_eq!(id.phi, Mat2::IDENTITY);

    let swap = Mat2::new(0, 1, 1, 0);
    let h = transformed(&g, 0, swap);
    let all = g.all_isomorphisms(&h, true, &b).unwrap();
    assert!(all.iter().all(|i| i.verify(&g, &h)));
    assert!(all.iter().any(|i| i.phi == swap));

    let flag = fibration("flag");
    let tolman = fibration("tolman");
    assert!(flag.total().isomorphic(tolman.total(), true, &b).unwrap().is_none());
}

fn unimodular() -> impl Strategy<Value = Mat2> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
        .prop_filter("unimodular", Mat2::is_unimodular)
}

fn small_weight() -> impl Strategy<Value = Weight> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| Weight::new(x, y)).prop_filter("nonzero", |w| !w.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_triangles_connection_consistency(a in small_weight(), b in small_weight(), c in small_weight()) {
        let g = triangle(Mode::Signed, [a, b, c]);
        let found = g.find_connection();
        if let Some(conn) = &found {
            prop_assert!(g.validate().is_valid());
            prop_assert!(connection_ok(&g, conn));
            prop_assert!(g.forget_signs().find_connection().is_some());
        }
        let all: BTreeSet<_> = g.all_connections(&budget()).unwrap().into_iter().map(|c| c.maps).collect();
        prop_assert_eq!(all.clone(), brute_force_connections(&g));
        if let Some(conn) = found {
            prop_assert!(all.contains(&conn.maps));
        }
        let u = g.forget_signs();
        let all_u: BTreeSet<_> = u.all_connections(&budget()).unwrap().into_iter().map(|c| c.maps).collect();
        prop_assert_eq!(all_u, brute_force_connections(&u));
    }

    #[test]
    fn isomorphic_to_transformed_copy(
        k in proptest::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 3),
        eta in 0u8..=1,
        shift in 0usize..6,
        phi in unimodular(),
        signed in any::<bool>(),
    ) {
        let bd = common::base("cp2");
        let f = build_total(&bd, &kv(&k, eta)).unwrap();
        let g = if signed { f.lift_signed_default().unwrap() } else { f.total().clone() };
        let h = transformed(&g, shift, phi);
        let b = budget();
        let iso = g.isomorphic(&h, true, &b).unwrap();
        prop_assert!(iso.is_some());
        prop_assert!(iso.unwrap().verify(&g, &h));
        prop_assert!(g.isomorphic(&g, false, &b).unwrap().is_some());
    }
}
