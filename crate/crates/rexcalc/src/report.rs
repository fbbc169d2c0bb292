//! JSON and text renderings. Every JSON document carries a `schema` tag of
//! the form `rexcalc/<kind>@<version>`.

use serde_json::{json, Value};

use rexcalc_core::braidmor::MorphismMatrix;
use rexcalc_core::bsbimod::BsElement;
use rexcalc_core::fpc::{
    format_labels, Counterexample, CounterexampleReport, Equivalence, FamilyReport, FpcResult, FpcVerdict, SweepRow,
    Witness, ZamReport,
};
use rexcalc_core::rexgraph::{ConflatedGraph, EdgeKind, PathGraph, RexGraph};
use rexcalc_core::symgroup::Word;

pub const SCHEMA_VERSION: u32 = 1;

pub fn schema(kind: &str) -> String {
    format!("rexcalc/{kind}@{SCHEMA_VERSION}")
}

fn words(path: &[Word]) -> Vec<String> {
    path.iter().map(ToString::to_string).collect()
}

pub fn element_value(e: &BsElement) -> Value {
    let terms: Vec<Value> = e
        .coeffs()
        .iter()
        .map(|(m, c)| json!({ "mask": m.to_bits(e.factor_count()), "coeff": c.to_canonical_string() }))
        .collect();
    json!({ "word": e.word().to_string(), "rank": e.rank(), "terms": terms })
}

pub fn element_json(e: &BsElement) -> Value {
    let mut v = element_value(e);
    v["schema"] = json!(schema("element"));
    v
}

pub fn matrix_json(m: &MorphismMatrix) -> Value {
    let k = m.domain().len();
    let kk = m.codomain().len();
    let entries: Vec<Value> = m
        .entries()
        .into_iter()
        .map(|(r, c, p)| json!({ "row": r.to_bits(kk), "col": c.to_bits(k), "value": p.to_canonical_string() }))
        .collect();
    json!({
        "schema": schema("matrix"),
        "domain": m.domain().to_string(),
        "codomain": m.codomain().to_string(),
        "rank": m.rank(),
        "entries": entries,
    })
}

pub fn rex_graph_json(g: &RexGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            let kind = match e.kind {
                EdgeKind::Distant => "distant",
                EdgeKind::Adjacent => "adjacent",
            };
            json!({ "from": g.label(e.from).to_string(), "to": g.label(e.to).to_string(), "kind": kind })
        })
        .collect();
    json!({
        "schema": schema("graph"),
        "graph": "expanded",
        "rank": g.rank(),
        "vertices": words(g.vertices()),
        "edges": edges,
    })
}

pub fn conflated_graph_json(g: &ConflatedGraph) -> Value {
    let clouds: Vec<Value> = g
        .clouds()
        .iter()
        .map(|c| json!({ "representative": c.representative().to_string(), "members": words(c.members()) }))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({ "from": g.label(e.tail).to_string(), "to": g.label(e.head).to_string() }))
        .collect();
    let (source, sink) = match g.source_sink() {
        Ok((s, t)) => (json!(g.label(s).to_string()), json!(g.label(t).to_string())),
        Err(_) => (Value::Null, Value::Null),
    };
    json!({
        "schema": schema("graph"),
        "graph": "conflated",
        "rank": g.rex().rank(),
        "clouds": clouds,
        "edges": edges,
        "source": source,
        "sink": sink,
    })
}

pub fn rex_graph_text(g: &RexGraph) -> String {
    let mut s = format!("expanded graph: {} vertices, {} edges\n", g.vertex_count(), g.edges().len());
    for e in g.edges() {
        let arrow = match e.kind {
            EdgeKind::Distant => "--",
            EdgeKind::Adjacent => "->",
        };
        s.push_str(&format!("  {} {arrow} {}\n", g.label(e.from), g.label(e.to)));
    }
    s
}

pub fn conflated_graph_text(g: &ConflatedGraph) -> String {
    let mut s = format!("conflated graph: {} vertices, {} edges\n", g.vertex_count(), g.edges().len());
    for c in g.clouds() {
        s.push_str(&format!("  {} = {{{}}}\n", c.representative(), words(c.members()).join(", ")));
    }
    for e in g.edges() {
        s.push_str(&format!("  {} -> {}\n", g.label(e.tail), g.label(e.head)));
    }
    if let Ok((src, snk)) = g.source_sink() {
        s.push_str(&format!("  source {}, sink {}\n", g.label(src), g.label(snk)));
    }
    s
}

pub fn witness_value(w: &Witness) -> Value {
    json!({
        "input": element_value(&w.input),
        "first_image": element_value(&w.first_image),
        "second_image": element_value(&w.second_image),
        "row": w.row.to_bits(w.first_image.factor_count()),
        "col": w.col.to_bits(w.input.factor_count()),
    })
}

fn counterexample_value(c: &Counterexample) -> Value {
    json!({ "first": words(&c.first), "second": words(&c.second), "witness": witness_value(&c.witness) })
}

pub fn verdict_value(v: &FpcVerdict) -> Value {
    let (result, cx) = match &v.result {
        FpcResult::Holds => ("holds", Value::Null),
        FpcResult::CounterexampleFound(c) => ("counterexample", counterexample_value(c)),
    };
    json!({
        "element": v.element.to_string(),
        "bound": v.bound,
        "result": result,
        "counterexample": cx,
        "stats": {
            "states": v.stats.states,
            "morphisms": v.stats.morphisms,
            "paths": v.stats.paths,
            "groups": v.stats.groups,
        },
    })
}

pub fn verdict_text(v: &FpcVerdict) -> String {
    match &v.result {
        FpcResult::Holds => format!(
            "{}: holds up to {} vertices ({} paths, {} morphisms)",
            v.element, v.bound, v.stats.paths, v.stats.morphisms
        ),
        FpcResult::CounterexampleFound(c) => format!(
            "{}: counterexample {} vs {}; on {} the images are {} and {}",
            v.element,
            format_labels(&c.first),
            format_labels(&c.second),
            c.witness.input,
            c.witness.first_image,
            c.witness.second_image
        ),
    }
}

pub fn sweep_value(rows: &[SweepRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({ "element": r.element.to_string(), "shape": r.shape.to_string(), "vertices": r.vertices, "verdict": verdict_value(&r.verdict) }))
        .collect();
    json!(rows)
}

pub fn sweep_text(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let v = if r.verdict.holds() { "holds" } else { "COUNTEREXAMPLE" };
        s.push_str(&format!("{:<8} {:<8} {v}\n", r.element.to_string(), r.shape.to_string()));
    }
    s
}

pub fn zam_value(r: &ZamReport) -> Value {
    json!({
        "rank": r.rank,
        "source": r.source.to_string(),
        "sink": r.sink.to_string(),
        "oriented_paths": r.oriented_paths,
        "oriented_paths_agree": r.oriented_paths_agree,
        "z_zbar_z": r.z_zbar_z,
        "zbar_z_zbar": r.zbar_z_zbar,
        "idempotent": r.idempotent,
        "zbar_z_is_identity": r.zbar_z_is_identity,
    })
}

pub fn equivalence_value(e: &Equivalence) -> Value {
    json!({ "element": e.element.to_string(), "left": words(&e.left), "right": words(&e.right), "equal": e.equal })
}

pub fn family_value(r: &FamilyReport) -> Value {
    json!({
        "rank": r.rank,
        "element": r.element.to_string(),
        "line": words(&r.line),
        "p": words(&r.p),
        "q": words(&r.q),
        "differ": r.differ(),
        "witness": r.witness.as_ref().map(witness_value),
    })
}

pub fn counterexample_report_value(r: &CounterexampleReport) -> Value {
    json!({
        "v1": words(&r.v1),
        "v2": words(&r.v2),
        "input": element_value(&r.input),
        "image_v1": element_value(&r.image_v1),
        "image_v2": element_value(&r.image_v2),
        "reversed_image_v1": element_value(&r.reversed_image_v1),
        "reversed_image_v2": element_value(&r.reversed_image_v2),
        "matrices_equal": r.matrices_equal,
        "capped_v1": element_value(&r.capped_v1),
        "capped_v2": element_value(&r.capped_v2),
        "matches_printed": r.matches_printed(),
        "matches_printed_swapped": r.matches_printed_swapped(),
    })
}

pub fn wrap(kind: &str, ok: bool, body: Value) -> Value {
    json!({ "schema": schema("report"), "suite": kind, "ok": ok, "result": body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rexcalc_core::fpc::reproduce_counterexample;

    #[test]
    fn element_round_shape() {
        let r = reproduce_counterexample().unwrap();
        let v = element_json(&r.input);
        assert_eq!(v["schema"], "rexcalc/element@1");
        assert_eq!(v["word"], "13231");
        assert_eq!(v["terms"][0]["mask"], "00000");
        assert_eq!(v["terms"][0]["coeff"], "x1 + x2");
    }

    #[test]
    fn graph_json() {
        let g = ConflatedGraph::of_word(&"12321".parse().unwrap(), 4).unwrap();
        let v = conflated_graph_json(&g);
        assert_eq!(v["clouds"].as_array().unwrap().len(), 3);
        assert_eq!(v["source"], "12321");
        assert_eq!(v["sink"], "32123");
        let t = conflated_graph_text(&g);
        assert!(t.contains("13213 = {13213, 13231, 31213, 31231}"));
    }
}
