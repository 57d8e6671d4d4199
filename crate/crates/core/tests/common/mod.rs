//! Fixture loading and parameter grids shared by the integration tests.
#![allow(dead_code)]

use gkm_fibrations::cli::document::{load, GraphDocument};
use gkm_fibrations::fibration::{BaseData, Fibration, KVector};
use gkm_fibrations::graph::{GkmGraph, Mode};
use gkm_fibrations::Budget;
use gkm_fibrations::lattice::Weight;
use std::path::PathBuf;

pub const BASES: [&str; 5] = ["s4", "cp2", "square", "pentagon", "hexagon"];

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_path(name: &str) -> PathBuf {
    fixture_dir().join(format!("{name}.json"))
}

pub fn doc(name: &str) -> GraphDocument {
    load(&fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn graph(name: &str) -> GkmGraph {
    doc(name).graph().unwrap()
}

pub fn base(name: &str) -> BaseData {
    doc(name).base_data().unwrap()
}

pub fn fibration(name: &str) -> Fibration {
    doc(name).fibration(Some(&fixture_dir())).unwrap()
}

pub fn kv(ks: &[i64], eta: u8) -> KVector {
    KVector::new(ks.to_vec(), eta).unwrap()
}

pub fn w(x: i64, y: i64) -> Weight {
    Weight::new(x, y)
}

/// Every nonzero vector in `[-max, max]^n`, in a fixed order.
pub fn k_values(n: usize, max: i64) -> Vec<Vec<i64>> {
    let vals: Vec<i64> = (-max..=max).filter(|&v| v != 0).collect();
    let m = vals.len();
    (0..m.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let v = vals[idx % m];
                    idx /= m;
                    v
                })
                .collect()
        })
        .collect()
}

/// Every vector in `[-max, max]^n`, zero included.
pub fn int_vectors(n: usize, max: i64) -> Vec<Vec<i64>> {
    let m = (2 * max + 1) as usize;
    (0..m.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let v = (idx % m) as i64 - max;
                    idx /= m;
                    v
                })
                .collect()
        })
        .collect()
}

/// All K-vectors with `|k_i| <= max` and both values of eta.
pub fn k_grid(n: usize, max: i64) -> Vec<KVector> {
    let mut out = Vec::new();
    for eta in 0..2u8 {
        for ks in k_values(n, max) {
            out.push(KVector::new(ks, eta).unwrap());
        }
    }
    out
}

// Independent signed-connection test for 3-valent graphs: each edge pair
// must admit one of the two bijections of the remaining star edges.
pub fn admits_connection(g: &GkmGraph) -> bool {
    let congruent = |a: Weight, b: Weight, m: Weight| {
        let (dx, dy) = (a.x - b.x, a.y - b.y);
        dx * m.y == dy * m.x && if m.x != 0 { dx % m.x == 0 } else { dy % m.y == 0 }
    };
    g.pair_representatives().all(|e| {
        let from: Vec<usize> = g.out_edges(g.src(e)).iter().copied().filter(|&x| x != e).collect();
        let to: Vec<usize> = g.out_edges(g.dst(e)).iter().copied().filter(|&x| x != g.bar(e)).collect();
        let ok = |f: usize, t: usize| congruent(g.label(t), g.label(f), g.label(e));
        (ok(from[0], to[0]) && ok(from[1], to[1])) || (ok(from[0], to[1]) && ok(from[1], to[0]))
    })
}

// Brute force over every sign choice per edge pair, then grouping into
// isomorphism classes.
pub fn brute_force_census(g: &GkmGraph) -> (usize, usize) {
    let reps: Vec<usize> = g.pair_representatives().collect();
    let mut valid = Vec::new();
    for mask in 0u64..(1 << reps.len()) {
        let mut labels = g.labels().to_vec();
        for (i, &e) in reps.iter().enumerate() {
            let l = g.label(e).canonical();
            let l = if mask >> i & 1 == 1 { -l } else { l };
            labels[e] = l;
            labels[g.bar(e)] = -l;
        }
        let s = g.relabeled(Mode::Signed, labels);
        if admits_connection(&s) {
            valid.push(s);
        }
    }
    let mut classes: Vec<GkmGraph> = Vec::new();
    for s in &valid {
        if !classes.iter().any(|c| c.isomorphic(s, true, &Budget::new(1 << 24)).unwrap().is_some()) {
            classes.push(s.clone());
        }
    }
    (valid.len(), classes.len())
}
