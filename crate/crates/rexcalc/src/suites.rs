//! Verification suites shared by the command line and the acceptance run.

use serde_json::{json, Value};

use rexcalc_core::bsbimod::BsElement;
use rexcalc_core::fpc::{
    check_all_dud_udu, check_equivalence_lemmas, check_family, check_fpc, check_fpc_on, check_refined_conjecture,
    check_s4_sweep, check_zam_identities, evaluate_pair, reproduce_counterexample, sweep_bound, FpcOptions,
    PathMorphisms,
};
use rexcalc_core::poly::Polynomial;
use rexcalc_core::rexgraph::PathGraph;
use rexcalc_core::symgroup::{longest_element, Word};
use rexcalc_core::Result;

use crate::report;

pub struct SuiteOutput {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

/// The elements of `S_4` with the shape of their conflated graphs.
pub const S4_TABLE: [(&str, &str); 24] = [
    ("e", "•"),
    ("1", "•"),
    ("2", "•"),
    ("21", "•"),
    ("12", "•"),
    ("121", "•→•"),
    ("3", "•"),
    ("31", "•"),
    ("32", "•"),
    ("321", "•"),
    ("312", "•"),
    ("3121", "•→•"),
    ("23", "•"),
    ("231", "•"),
    ("232", "•→•"),
    ("2321", "•→•"),
    ("2312", "•"),
    ("23121", "•→•→•"),
    ("123", "•"),
    ("1231", "•→•"),
    ("1232", "•→•"),
    ("12321", "•→•→•"),
    ("12312", "•→•→•"),
    ("123121", "Zam"),
];

/// The one element of `S_4` where complete paths disagree.
pub const S4_FAILING: &str = "12321";

fn finish(kind: &str, ok: bool, body: Value, text: String) -> SuiteOutput {
    SuiteOutput { ok, json: report::wrap(kind, ok, body), text }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "UNEXPECTED"
    }
}

pub fn fpc_s4(max_len: Option<usize>, budget: usize) -> Result<SuiteOutput> {
    let rows = check_s4_sweep(max_len, budget)?;
    let mut ok = rows.len() == S4_TABLE.len();
    let mut text = String::new();
    for (row, (word, shape)) in rows.iter().zip(S4_TABLE) {
        let expect_holds = word != S4_FAILING;
        let good =
            row.element.to_string() == word && row.shape.to_string() == shape && row.verdict.holds() == expect_holds;
        ok &= good;
        let v = if row.verdict.holds() { "holds" } else { "counterexample" };
        text.push_str(&format!("{:<8} {:<8} {:<15} {}\n", word, row.shape.to_string(), v, mark(good)));
    }
    Ok(finish("fpc-s4", ok, report::sweep_value(&rows), text))
}

pub fn fpc(word: &Word, rank: u8, max_len: Option<usize>, budget: usize) -> Result<SuiteOutput> {
    let pm = PathMorphisms::of_word(word, rank)?;
    let n = pm.graph().vertex_count();
    let opts = FpcOptions { max_len: max_len.unwrap_or_else(|| sweep_bound(n)), endpoints: None, budget };
    let v = check_fpc_on(&pm, &opts)?;
    // a single element has no expected verdict; the report is informational
    Ok(finish("fpc", true, report::verdict_value(&v), report::verdict_text(&v) + "\n"))
}

pub fn zam(rank: u8) -> Result<SuiteOutput> {
    let r = check_zam_identities(rank)?;
    let pm = PathMorphisms::of_word(&longest_element(rank)?, rank)?;
    let pairs = check_all_dud_udu(&pm)?;
    let dud_ok = pairs.iter().all(|p| p.2);
    let ok = r.all_hold() && !r.zbar_z_is_identity && dud_ok;
    let text = format!(
        "rank {}: source {}, sink {}\n  Z∘Z̄∘Z = Z: {}\n  Z̄∘Z∘Z̄ = Z̄: {}\n  (Z̄∘Z)² = Z̄∘Z: {}\n  Z̄∘Z = id: {}\n  oriented paths agree: {} ({} paths)\n  DUD = UDU: {}/{} pairs\n",
        rank,
        r.source,
        r.sink,
        r.z_zbar_z,
        r.zbar_z_zbar,
        r.idempotent,
        r.zbar_z_is_identity,
        r.oriented_paths_agree,
        r.oriented_paths,
        pairs.iter().filter(|p| p.2).count(),
        pairs.len()
    );
    let failing: Vec<Value> =
        pairs.iter().filter(|p| !p.2).map(|p| json!([p.0.to_string(), p.1.to_string()])).collect();
    let body =
        json!({ "identities": report::zam_value(&r), "dud_udu_pairs": pairs.len(), "dud_udu_failures": failing });
    Ok(finish("zam", ok, body, text))
}

pub fn lemmas(budget: usize) -> Result<SuiteOutput> {
    let eqs = check_equivalence_lemmas()?;
    let mut ok = eqs.iter().all(|e| e.equal);
    let mut text: String = eqs.iter().map(|e| format!("{e}\n")).collect();
    let mut verdicts = Vec::new();
    for w in ["23121", "12312"] {
        let v = check_fpc(&w.parse().expect("literal"), 4, &FpcOptions { max_len: 9, endpoints: None, budget })?;
        ok &= v.holds();
        text.push_str(&report::verdict_text(&v));
        text.push('\n');
        verdicts.push(report::verdict_value(&v));
    }
    let body =
        json!({ "equivalences": eqs.iter().map(report::equivalence_value).collect::<Vec<_>>(), "fpc": verdicts });
    Ok(finish("lemmas", ok, body, text))
}

/// `1 ⊗ x_2 ⊗ 1 ⊗ … ⊗ 1` on `12321`, where the paths through the source
/// `[s,c,t,c,s,c]` and `[s,c,t,c]` part ways.
pub fn extra_pair() -> Result<(BsElement, BsElement, BsElement)> {
    let w: Word = "12321".parse().expect("literal");
    let pm = PathMorphisms::of_word(&w, 4)?;
    let mut slots = vec![Polynomial::one(4); 6];
    slots[1] = Polynomial::var(4, 2);
    let input = BsElement::from_tensor(w, 4, &slots)?;
    let (a, b) = evaluate_pair(&pm, &["s", "c", "t", "c", "s", "c"], &["s", "c", "t", "c"], &input)?;
    Ok((input, a, b))
}

pub fn family(ranks: &[u8]) -> Result<SuiteOutput> {
    let mut ok = true;
    let mut text = String::new();
    let mut reports = Vec::new();
    for &n in ranks {
        let r = check_family(n)?;
        ok &= r.differ();
        text.push_str(&format!(
            "{}: p = {}, q = {}: {}\n",
            r.element,
            rexcalc_core::fpc::format_labels(&r.p),
            rexcalc_core::fpc::format_labels(&r.q),
            if r.differ() { "f(p) != f(q)" } else { "f(p) = f(q)" }
        ));
        if let Some(wit) = &r.witness {
            text.push_str(&format!("  on {}: {} vs {}\n", wit.input, wit.first_image, wit.second_image));
        }
        reports.push(report::family_value(&r));
    }
    let (input, a, b) = extra_pair()?;
    ok &= a != b;
    text.push_str(&format!("12321: [s,c,t,c,s,c] vs [s,c,t,c] on {input}: {a} vs {b}\n"));
    let body = json!({
        "family": reports,
        "extra_pair": { "input": report::element_value(&input), "left": report::element_value(&a), "right": report::element_value(&b), "differ": a != b },
    });
    Ok(finish("family", ok, body, text))
}

pub fn refined(rank: u8, max_len: usize, budget: usize) -> Result<SuiteOutput> {
    let v = check_refined_conjecture(rank, max_len, budget)?;
    let mut text = report::verdict_text(&v);
    if !v.holds() {
        text.push_str("\n*** the strengthened conjecture fails on this pair ***");
    }
    text.push('\n');
    Ok(finish("refined", v.holds(), report::verdict_value(&v), text))
}

pub fn counterexample() -> Result<SuiteOutput> {
    let r = reproduce_counterexample()?;
    let ok = !r.matrices_equal && r.caps_differ() && (r.matches_printed() || r.matches_printed_swapped());
    let text = format!(
        "v1 = {}\nv2 = {}\nx = {}\nf(v1)(x) = {}\nf(v2)(x) = {}\nread backwards: {} and {}\nmatrices equal: {}\ncapped: {} vs {}\n",
        rexcalc_core::fpc::format_labels(&r.v1),
        rexcalc_core::fpc::format_labels(&r.v2),
        r.input,
        r.image_v1,
        r.image_v2,
        r.reversed_image_v1,
        r.reversed_image_v2,
        r.matrices_equal,
        r.capped_v1,
        r.capped_v2
    );
    Ok(finish("counterexample", ok, report::counterexample_report_value(&r), text))
}
