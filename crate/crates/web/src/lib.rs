//! Browser bindings. Each export takes plain arguments and returns a JSON
//! string: the result on success, `{"error": "..."}` otherwise.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use tracelab::constructions::{partite_family, partite_size, table1_value, PartRule};
use tracelab::search::{self, ArrowQuery, SearchSettings};
use tracelab::transforms::downset_compress;
use tracelab::SetFamily;

/// Members listed in full only up to this many sets.
const LIST_LIMIT: usize = 512;

fn respond(r: tracelab::Result<Value>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn listing(fam: &SetFamily) -> Value {
    if fam.len() > LIST_LIMIT {
        Value::Null
    } else {
        json!(fam.iter().map(|w| w.to_one_indexed()).collect::<Vec<_>>())
    }
}

/// Balanced `l`-partite family on `[n]` and its largest trace on `a`-sets.
#[wasm_bindgen]
pub fn partite_explorer(n: usize, l: usize, a: usize, b: usize) -> String {
    respond((|| {
        let fam = partite_family(n, l, &PartRule::Balanced)?;
        let mt = fam.max_trace_over_ksets(a)?;
        Ok(json!({
            "n": n,
            "l": l,
            "size": fam.len(),
            "formula": partite_size(n, l).to_string(),
            "a": a,
            "b": b,
            "max": mt.max,
            "witness": mt.witness.to_one_indexed(),
            "arrow": mt.max >= b,
            "sets": listing(&fam),
        }))
    })())
}

/// Exact `m~(n,4,c) - 1` next to the table entry for `(c, n)`.
#[wasm_bindgen]
pub fn tilde_search(n: usize, c: usize, budget_nodes: f64) -> String {
    respond((|| {
        let settings = SearchSettings {
            budget_nodes: budget_nodes.max(1.0) as u64,
            threads: 1,
            ..SearchSettings::default()
        };
        let r = search::run(&ArrowQuery::tilde(n, c).with_settings(settings))?;
        let table = table1_value(c, n).ok();
        let mut v = serde_json::to_value(&r)?;
        v["n"] = json!(n);
        v["c"] = json!(c);
        v["table"] = json!(table);
        v["size"] = json!(r.witness.len());
        Ok(v)
    })())
}

/// Compress a family given in the text format into a down-set.
#[wasm_bindgen]
pub fn compress(text: &str, a: usize) -> String {
    respond((|| {
        let fam = SetFamily::from_text(text)?;
        let out = downset_compress(&fam);
        let before = fam.max_trace_over_ksets(a)?;
        let after = out.max_trace_over_ksets(a)?;
        Ok(json!({
            "n": fam.n(),
            "a": a,
            "input_size": fam.len(),
            "size": out.len(),
            "is_downset": out.is_downset(),
            "max_before": before.max,
            "max_after": after.max,
            "text": out.to_text(),
        }))
    })())
}
