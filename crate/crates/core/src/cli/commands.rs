use super::document::{load, serialize, GraphDocument};
use super::render::render_svg;
use super::Command;
use crate::budget::Budget;
use crate::cohomology::{
    chern_of_projectivization, delta_cp2_fibration, equivariant_chern_in_beta, equivariant_chern_raw,
    projectivization_ring, BaseRing, BetaQuadratic, ChernInBeta, Deg2, Deg4, ProjectiveRing,
};
use crate::error::{Error, Result};
use crate::fibration::{build_total, interior_vertices, total_isomorphic, BaseData, Fibration, KVector};
use crate::graph::GkmGraph;
use crate::realization::{
    connected_stabilizers, delzant_lift, disconnected_stabilizer_witness, group_diagrams, hirzebruch_square,
    resolve_coefficients, verify_gluing,
};
use crate::signed::{
    classify_cases, edge_labels, enumerate_signed_structures, kaehler_obstruction, nonkaehler_report, AdjacentPair,
    CaseCheck, KaehlerVerdict, NonKaehlerReport,
};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub(super) struct Reply {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Reply {
    fn ok(text: String, json: Value) -> Reply {
        Reply { text, json, code: 0 }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub(super) fn execute(cmd: &Command, budget: &Budget) -> Result<Reply> {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Classify { file } => classify(file),
        Command::Build(args) => build(&args.base, &args.k, args.eta, args.out.as_deref()),
        Command::SignedStructures { file } => signed_structures(file, budget),
        Command::KaehlerCheck { file } => kaehler_check(file, budget),
        Command::Cohomology { file, a } => cohomology(file, a.as_deref()),
        Command::Delta { file } => delta(file),
        Command::Realize { file, a, delzant_lift } => realize(file, a.as_deref(), *delzant_lift),
        Command::Render { file, out } => render(file, out),
        Command::Enumerate { base, max_k } => enumerate(base, *max_k, budget),
    }
}

fn dir_of(path: &Path) -> Option<&Path> {
    path.parent()
}

/// The fibration of a document together with its base document.
fn load_fibration(path: &Path) -> Result<(Fibration, GraphDocument)> {
    let doc = load(path)?;
    let st = doc.fibration.as_ref().ok_or_else(|| Error::Semantic("document has no fibration stanza".into()))?;
    let base_doc = match (&st.base, &st.base_path) {
        (Some(b), _) => (**b).clone(),
        (None, Some(p)) => load(&dir_of(path).map(|d| d.join(p)).unwrap_or_else(|| PathBuf::from(p)))?,
        (None, None) => return Err(Error::Semantic("fibration needs a base".into())),
    };
    Ok((doc.fibration(dir_of(path))?, base_doc))
}

fn k_json(kv: &KVector) -> Value {
    let n = kv.normalized();
    json!({ "k": n.ks(), "eta": n.eta() })
}

fn validate(file: &Path) -> Result<Reply> {
    let doc = load(file)?;
    let report = match doc.fibration {
        Some(_) => doc.fibration(dir_of(file))?.validate(),
        None => doc.graph()?.validate(),
    };
    let valid = report.is_valid();
    let mut text = String::new();
    if valid {
        text.push_str("valid\n");
    } else {
        text.push_str("invalid\n");
        for issue in &report.issues {
            writeln!(text, "  - {issue}").unwrap();
        }
    }
    let json = json!({ "valid": valid, "issues": report.issues, "connection_found": report.connection_found });
    Ok(Reply { text, json, code: if valid { 0 } else { 2 } })
}

fn classify(file: &Path) -> Result<Reply> {
    let (f, _) = load_fibration(file)?;
    let kv = f.classify()?;
    Ok(Reply::ok(format!("{kv}\n"), k_json(&kv)))
}

fn build(base: &Path, k: &[i64], eta: u8, out: Option<&Path>) -> Result<Reply> {
    let base_doc = load(base)?;
    let bd = base_doc.base_data()?;
    let kv = KVector::new(k.to_vec(), eta)?;
    let f = build_total(&bd, &kv)?;
    let doc = GraphDocument::from_fibration(&f, base_doc.positions().as_deref());
    let text = serialize(&doc);
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut json = k_json(&kv);
            json["written"] = json!(path.display().to_string());
            Ok(Reply::ok(format!("wrote {} for {kv}\n", path.display()), json))
        }
        None => Ok(Reply::ok(text, to_json(&doc))),
    }
}

fn signed_structures(file: &Path, budget: &Budget) -> Result<Reply> {
    let doc = load(file)?;
    let mut rows = Vec::new();
    if doc.fibration.is_some() {
        let (f, _) = load_fibration(file)?;
        let structures = enumerate_signed_structures(f.total(), budget)?;
        for c in classify_cases(&f, &structures, budget)? {
            rows.push((Some(c.tag), c.structure));
        }
    } else {
        let g = doc.graph()?;
        for s in enumerate_signed_structures(&g, budget)? {
            rows.push((None, s));
        }
    }
    let mut text = format!("{} signed structure(s) up to isomorphism\n", rows.len());
    let mut items = Vec::new();
    for (i, (tag, s)) in rows.iter().enumerate() {
        let g = &s.graph;
        let interior = interior_vertices(g).len();
        let tag_name = tag.map(|t| format!("{t:?}")).unwrap_or_else(|| "untagged".into());
        writeln!(
            text,
            "{}. {tag_name}: {} sign assignment(s), {} class(es) without lattice automorphisms, {interior} interior vertices",
            i + 1,
            s.members.len(),
            s.identity_classes
        )
        .unwrap();
        let edges = edge_labels(g);
        for e in &edges {
            writeln!(text, "   {} {} -> {} ({},{})", e.name, e.src, e.dst, e.weight[0], e.weight[1]).unwrap();
        }
        items.push(json!({
            "tag": tag,
            "sign_assignments": s.members.len(),
            "identity_classes": s.identity_classes,
            "interior_vertices": interior,
            "edges": edges,
        }));
    }
    Ok(Reply::ok(text, json!({ "structures": items })))
}

/// Replaces vertex and edge indices of failing adjacent pairs by their names.
fn name_pairs(g: &GkmGraph, v: &mut Value) {
    match v {
        Value::Object(map) => {
            if let Some(Value::Array(pairs)) = map.get_mut("pairs") {
                for p in pairs {
                    let idx = |key: &str| p[key].as_u64().map(|i| i as usize);
                    if let (Some(v), Some(a), Some(b)) = (idx("vertex"), idx("first"), idx("second")) {
                        *p = json!({ "vertex": g.vertex_name(v), "first": g.edge_name(a), "second": g.edge_name(b) });
                    }
                }
            }
            map.values_mut().for_each(|x| name_pairs(g, x));
        }
        Value::Array(items) => items.iter_mut().for_each(|x| name_pairs(g, x)),
        _ => {}
    }
}

fn pair_text(g: &GkmGraph, p: &AdjacentPair) -> String {
    format!("{}({}, {})", g.vertex_name(p.vertex), g.edge_name(p.first), g.edge_name(p.second))
}

fn kaehler_verdict_text(g: &GkmGraph, v: &KaehlerVerdict) -> String {
    match v {
        KaehlerVerdict::PassesCriterion => "every adjacent pair lies in a polytope-type subgraph".into(),
        KaehlerVerdict::FailsAt(pairs) => {
            let list: Vec<String> = pairs.iter().map(|p| pair_text(g, p)).collect();
            format!("{} adjacent pair(s) lie in no polytope-type subgraph: {}", pairs.len(), list.join(", "))
        }
    }
}

fn report_text(g: &GkmGraph, r: &NonKaehlerReport) -> String {
    let mut text = format!("K: {}\ninterior vertices: {}\n", r.k_vector, r.interior_vertices);
    for c in &r.cases {
        let state = if c.obstructed { "obstructed" } else { "not obstructed" };
        writeln!(text, "{:?} ({} identity class(es)): {state}", c.tag, c.identity_classes).unwrap();
        for check in &c.checks {
            let line = match check {
                CaseCheck::Kaehler { verdict, .. } => format!("kaehler: {}", kaehler_verdict_text(g, verdict)),
                CaseCheck::Cone { verdict, .. } => match verdict.exterior_witness {
                    None => "cone: every vertex is interior, no linear realization".into(),
                    Some(v) => format!("cone: {} is exterior", g.vertex_name(v)),
                },
                CaseCheck::ExteriorWinding(w) => format!(
                    "winding: {} exterior cycle(s), smallest convex winding {}, predicted {}",
                    w.cycles_found,
                    w.min_convex_winding.map(|m| m.to_string()).unwrap_or_else(|| "none".into()),
                    w.predicted_winding
                ),
            };
            writeln!(text, "  {line}").unwrap();
        }
    }
    let verdict = if r.no_invariant_kaehler_structure {
        "no invariant Kähler structure possible"
    } else {
        "not ruled out"
    };
    writeln!(text, "verdict: {verdict}").unwrap();
    text
}

fn kaehler_check(file: &Path, budget: &Budget) -> Result<Reply> {
    let doc = load(file)?;
    if doc.fibration.is_some() {
        let (f, _) = load_fibration(file)?;
        let r = nonkaehler_report(&f, budget)?;
        let mut json = to_json(&r);
        name_pairs(f.total(), &mut json);
        return Ok(Reply::ok(report_text(f.total(), &r), json));
    }
    let g = doc.graph()?;
    if !g.is_signed() {
        return Err(Error::PreconditionUnmet("needs a fibration stanza or a signed graph".into()));
    }
    let v = kaehler_obstruction(&g, budget)?;
    let text = format!("{}\n", kaehler_verdict_text(&g, &v));
    let mut json = json!({ "passes": v.passes(), "verdict": v });
    name_pairs(&g, &mut json);
    Ok(Reply::ok(text, json))
}

/// `3b1 - b2` style rendering of an integer combination.
fn combination(terms: impl IntoIterator<Item = (i128, String)>) -> String {
    let mut out = String::new();
    for (c, name) in terms {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let body = if mag == 1 { name } else { format!("{mag}{name}") };
        match (out.is_empty(), c < 0) {
            (true, false) => out.push_str(&body),
            (true, true) => write!(out, "-{body}").unwrap(),
            (false, false) => write!(out, " + {body}").unwrap(),
            (false, true) => write!(out, " - {body}").unwrap(),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn linear_text(coeffs: &[i128], x: Option<i128>) -> String {
    let mut terms: Vec<(i128, String)> = coeffs.iter().enumerate().map(|(i, &c)| (c, format!("b{}", i + 1))).collect();
    if let Some(x) = x {
        terms.push((x, "x".into()));
    }
    combination(terms)
}

fn quadratic_text(q: &BetaQuadratic) -> String {
    let mut terms = Vec::new();
    for (i, row) in q.matrix.iter().enumerate() {
        for (j, &c) in row.iter().enumerate().skip(i) {
            let name = if i == j { format!("b{}^2", i + 1) } else { format!("b{}b{}", i + 1, j + 1) };
            terms.push((i128::from(c), name));
        }
    }
    combination(terms)
}

fn deg2_text(d: &Deg2) -> String {
    linear_text(&d.base, Some(d.x))
}

fn deg4_text(d: &Deg4) -> String {
    let mut terms: Vec<(i128, String)> = vec![(d.point, "[pt]".into())];
    terms.extend(d.x.iter().enumerate().map(|(i, &c)| (c, format!("b{}x", i + 1))));
    combination(terms)
}

fn betti_text(b: &[usize]) -> String {
    b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cohomology(file: &Path, a: Option<&[i64]>) -> Result<Reply> {
    let (f, _) = load_fibration(file)?;
    let kv = f.classify()?;
    let bd = f.base_data();
    let a = a.map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; bd.n()]);
    let chern: ChernInBeta = equivariant_chern_in_beta(bd, &kv, &a)?;
    let (raw1, raw2) = equivariant_chern_raw(bd, &kv, &a)?;
    let (exp1, exp2) = chern.expand(bd);
    let agrees = raw1 == exp1 && raw2 == exp2;
    let base = BaseRing::from_base_data(bd)?;
    let ring: ProjectiveRing = projectivization_ring(&base, bd, &kv)?;
    let pc = chern_of_projectivization(&ring, bd)?;
    let cubic = ring.cubic_invariants();

    let c1_coeffs: Vec<i128> = chern.c1.iter().map(|&c| c.into()).collect();
    let mut text = format!("K: {kv}\na: {a:?}\n");
    writeln!(text, "c1^T(E) = {}", linear_text(&c1_coeffs, None)).unwrap();
    writeln!(text, "c2^T(E) = {}", quadratic_text(&chern.c2)).unwrap();
    writeln!(text, "expansion agrees with the fiber weights: {}", if agrees { "yes" } else { "no" }).unwrap();
    for ((v, p1), (_, p2)) in raw1.describe(bd).into_iter().zip(raw2.describe(bd)) {
        writeln!(text, "  at {v}: c1 = {p1}, c2 = {p2}").unwrap();
    }
    writeln!(text, "base Betti numbers (degrees 0,2,4,6): {}", betti_text(&base.betti())).unwrap();
    for r in &base.linear_relations {
        writeln!(text, "  relation: {} = 0", linear_text(r, None)).unwrap();
    }
    writeln!(text, "P(E): x^2 = -c1(E)x - c2(E), c1(E) = {}, integral of c2(E) = {}", linear_text(&ring.c1, None), ring.c2_integral)
        .unwrap();
    writeln!(text, "P(E) Betti numbers (degrees 0,2,4,6): {}", betti_text(&ring.betti())).unwrap();
    writeln!(text, "c1(P(E)) = {}", deg2_text(&pc.c1)).unwrap();
    writeln!(text, "c2(P(E)) = {}", deg4_text(&pc.c2)).unwrap();
    writeln!(text, "c1^3 = {}, c1 c2 = {}", pc.c1_cubed, pc.c1_c2).unwrap();
    writeln!(text, "Euler characteristic = {}", pc.c3).unwrap();
    if let Some((ns, disc)) = cubic {
        writeln!(text, "cubic form coefficients {ns:?}, discriminant {disc}").unwrap();
    }
    let json = json!({
        "k_vector": k_json(&kv),
        "a": a,
        "equivariant_chern": chern,
        "expansion_agrees": agrees,
        "base_ring": base,
        "projectivization": ring,
        "chern": pc,
        "euler_characteristic": pc.c3,
        "cubic": cubic.map(|(ns, d)| json!({ "coefficients": ns, "discriminant": d })),
    });
    Ok(Reply::ok(text, json))
}

fn delta(file: &Path) -> Result<Reply> {
    let (f, _) = load_fibration(file)?;
    let kv = f.classify()?;
    let d = delta_cp2_fibration(&kv)?;
    let bd = f.base_data();
    // The cubic form is reported alongside when the ring can be computed.
    let cubic = BaseRing::from_base_data(bd)
        .and_then(|b| projectivization_ring(&b, bd, &kv))
        .ok()
        .and_then(|r| r.cubic_invariants());
    let json = json!({
        "k_vector": k_json(&kv),
        "delta": d,
        "cubic": cubic.map(|(ns, disc)| json!({ "coefficients": ns, "discriminant": disc })),
    });
    Ok(Reply::ok(format!("{d}\n"), json))
}

/// Base vertex positions in the order `v_1, …, v_n`.
fn polygon(bd: &BaseData, base_doc: &GraphDocument) -> Result<Vec<[i64; 2]>> {
    let pos = base_doc
        .positions()
        .ok_or_else(|| Error::PreconditionUnmet("the base document has no vertex positions".into()))?;
    let g = base_doc.graph()?;
    bd.vertex_order()
        .iter()
        .map(|&v| {
            let name = bd.base().vertex_name(v);
            g.vertex_index(name).map(|i| pos[i]).ok_or_else(|| Error::Semantic(format!("unknown base vertex {name}")))
        })
        .collect()
}

fn realize(file: &Path, a: Option<&[i64]>, lift: bool) -> Result<Reply> {
    let (f, base_doc) = load_fibration(file)?;
    let kv = f.classify()?;
    let bd = f.base_data();
    let n = bd.n();
    let a = a.map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; n]);
    let chain = resolve_coefficients(&kv, &a, bd)?;
    let diagrams = group_diagrams(&kv, &a, bd)?;
    let failures = verify_gluing(&kv, bd, &diagrams);
    let squares = (1..=n).map(|i| hirzebruch_square(&kv, bd, i).map(|s| s.summary())).collect::<Result<Vec<_>>>()?;
    let connected = connected_stabilizers(&kv);
    let witness = disconnected_stabilizer_witness(f.total());
    let lifted = if lift { Some(delzant_lift(&polygon(bd, &base_doc)?, &kv, bd)?) } else { None };

    let mut text = format!("K: {kv}\nchain:\n  a = {:?}\n  b = {:?}\n  c = {:?}\ngroup diagrams:\n", chain.a, chain.b, chain.c);
    for d in &diagrams {
        writeln!(text, "  {d}").unwrap();
    }
    if failures.is_empty() {
        text.push_str("gluing: every identity holds\n");
    } else {
        writeln!(text, "gluing: {} failure(s): {failures:?}", failures.len()).unwrap();
    }
    text.push_str("squares:\n");
    for s in &squares {
        writeln!(text, "  e{}: horizontal {}, verticals {} and {}", s.index, s.base_weight, s.verticals.0, s.verticals.1)
            .unwrap();
    }
    writeln!(text, "connected stabilizers: {}", if connected { "yes" } else { "no" }).unwrap();
    if let Some(w) = &witness {
        writeln!(text, "  {} and {} at {} span a sublattice of index {}", w.first, w.second, w.vertex, w.index).unwrap();
    }
    if let Some(l) = &lifted {
        writeln!(text, "delzant lift: {}", if l.is_delzant { "Delzant" } else { "not Delzant" }).unwrap();
        for (v, p) in l.bottom.iter().chain(&l.top).zip(l.checks.iter()) {
            writeln!(text, "  {} = {:?}, determinant {}", p.vertex, v, p.determinant).unwrap();
        }
        writeln!(text, "  top edge multiples {:?}", l.top_edge_multiples).unwrap();
    }
    let json = json!({
        "k_vector": k_json(&kv),
        "chain": chain,
        "diagrams": diagrams,
        "gluing_failures": failures,
        "squares": squares,
        "connected_stabilizers": connected,
        "stabilizer_witness": witness,
        "delzant_lift": lifted,
    });
    Ok(Reply { text, json, code: if failures.is_empty() { 0 } else { 2 } })
}

fn render(file: &Path, out: &Path) -> Result<Reply> {
    let doc = load(file)?;
    let g = doc.graph()?;
    let pos = doc
        .positions()
        .ok_or_else(|| Error::PreconditionUnmet("every vertex needs a position to render".into()))?;
    let svg = render_svg(&g, &pos);
    std::fs::write(out, svg).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let json = json!({ "written": out.display().to_string(), "vertices": g.vertex_count(), "edge_pairs": g.edge_count() / 2 });
    Ok(Reply::ok(format!("wrote {}\n", out.display()), json))
}

/// Multiset of `|det|` over pairs of weights at each vertex; invariant
/// under isomorphisms of unsigned graphs with lattice automorphisms.
fn determinant_signature(g: &GkmGraph) -> Vec<Vec<u128>> {
    let mut sig: Vec<Vec<u128>> = (0..g.vertex_count())
        .map(|v| {
            let star = g.out_edges(v);
            let mut d = Vec::new();
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    d.push(g.label(a).cross(g.label(b)).unsigned_abs());
                }
            }
            d.sort_unstable();
            d
        })
        .collect();
    sig.sort();
    sig
}

struct SweepEntry {
    kv: KVector,
    fibration: Fibration,
    signature: Vec<Vec<u128>>,
    interior: Option<usize>,
    delta: Option<i128>,
    connected: bool,
    kaehler_ruled_out: Option<bool>,
}

fn sweep_entry(bd: &BaseData, kv: KVector, limit: u64) -> Result<SweepEntry> {
    let f = build_total(bd, &kv)?;
    let interior = match f.lift_signed_default() {
        Ok(g) => Some(interior_vertices(&g).len()),
        Err(Error::PreconditionUnmet(_)) => None,
        Err(e) => return Err(e),
    };
    let delta = if bd.n() == 3 { Some(delta_cp2_fibration(&kv)?) } else { None };
    let kaehler_ruled_out = match nonkaehler_report(&f, &Budget::new(limit)) {
        Ok(r) => Some(r.no_invariant_kaehler_structure),
        Err(Error::PreconditionUnmet(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(SweepEntry {
        signature: determinant_signature(f.total()),
        connected: connected_stabilizers(&kv),
        kv,
        fibration: f,
        interior,
        delta,
        kaehler_ruled_out,
    })
}

/// Every K-vector with entries in `±1..=±max` and `k_1 > 0`, for both `η`.
fn k_vectors(n: usize, max: i64) -> Vec<KVector> {
    let vals: Vec<i64> = (1..=max).flat_map(|m| [m, -m]).collect();
    let tail = vals.len().pow(n as u32 - 1);
    let mut out = Vec::new();
    for eta in 0..=1u8 {
        for k1 in 1..=max {
            for code in 0..tail {
                let mut x = code;
                let mut ks = vec![k1];
                for _ in 1..n {
                    ks.push(vals[x % vals.len()]);
                    x /= vals.len();
                }
                out.push(KVector::new(ks, eta).expect("nonzero entries"));
            }
        }
    }
    out
}

fn enumerate(base: &Path, max_k: u32, budget: &Budget) -> Result<Reply> {
    if max_k == 0 {
        return Err(Error::PreconditionUnmet("--max-k must be at least 1".into()));
    }
    let bd = load(base)?.base_data()?;
    let limit = budget.limit();
    let entries = k_vectors(bd.n(), i64::from(max_k))
        .into_par_iter()
        .map(|kv| sweep_entry(&bd, kv, limit))
        .collect::<Result<Vec<_>>>()?;
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let mut home = None;
        for (c, (rep, _)) in classes.iter().enumerate() {
            let r = &entries[*rep];
            if r.signature == e.signature && total_isomorphic(&r.fibration, &e.fibration, &Budget::new(limit))? {
                home = Some(c);
                break;
            }
        }
        match home {
            Some(c) => classes[c].1.push(i),
            None => classes.push((i, vec![i])),
        }
    }
    let opt = |x: Option<String>| x.unwrap_or_else(|| "n/a".into());
    let mut text = format!(
        "{} K-vectors in {} isomorphism classes\n{:<5} {:<24} {:>7} {:>8} {:>6} {:>9}  {}\n",
        entries.len(),
        classes.len(),
        "class",
        "K",
        "members",
        "interior",
        "delta",
        "connected",
        "kaehler"
    );
    let mut rows = Vec::new();
    for (c, (rep, members)) in classes.iter().enumerate() {
        let e = &entries[*rep];
        let kaehler = match e.kaehler_ruled_out {
            Some(true) => "ruled out",
            Some(false) => "not ruled out",
            None => "n/a",
        };
        writeln!(
            text,
            "{:<5} {:<24} {:>7} {:>8} {:>6} {:>9}  {kaehler}",
            c + 1,
            e.kv.to_string(),
            members.len(),
            opt(e.interior.map(|x| x.to_string())),
            opt(e.delta.map(|x| x.to_string())),
            if e.connected { "yes" } else { "no" },
        )
        .unwrap();
        rows.push(json!({
            "representative": k_json(&e.kv),
            "members": members.iter().map(|&m| k_json(&entries[m].kv)).collect::<Vec<_>>(),
            "interior_vertices": e.interior,
            "delta": e.delta,
            "connected_stabilizers": e.connected,
            "kaehler_ruled_out": e.kaehler_ruled_out,
        }));
    }
    let distinct: std::collections::BTreeSet<i128> = entries.iter().filter_map(|e| e.delta).collect();
    if !distinct.is_empty() {
        writeln!(text, "distinct delta values: {}", distinct.len()).unwrap();
    }
    let json = json!({ "k_vectors": entries.len(), "classes": rows, "distinct_deltas": distinct.len() });
    Ok(Reply::ok(text, json))
}
