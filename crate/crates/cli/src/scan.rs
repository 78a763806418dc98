//! Resumable search over weights and prime levels.

use std::path::{Path, PathBuf};

use clap::Args;
use periodpoly::congruence::scan_t1;
use serde_json::{json, Value};

use crate::output::{usage, Outcome, Report, SCHEMA_VERSION};

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 4)]
    pub k_min: u64,
    #[arg(long)]
    pub k_max: u64,
    #[arg(long, default_value_t = 2)]
    pub p_min: u64,
    #[arg(long)]
    pub p_max: u64,
    /// Largest ell tried.
    #[arg(long, default_value_t = 1000)]
    pub ell_bound: u64,
    /// Run the full verifier on every hit.
    #[arg(long)]
    pub verify: bool,
    /// Checkpoint file, rewritten after each weight.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: Option<PathBuf>,
    /// Continue from the checkpoint file.
    #[arg(long)]
    pub resume: bool,
}

fn params(a: &ScanArgs) -> Value {
    json!({
        "k_min": a.k_min,
        "k_max": a.k_max,
        "p_min": a.p_min,
        "p_max": a.p_max,
        "ell_bound": a.ell_bound,
        "verify": a.verify,
    })
}

struct State {
    done: Vec<u64>,
    rows: Vec<Value>,
}

fn load(path: &Path, expected: &Value) -> Result<State, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| usage(format!("bad checkpoint: {e}")))?;
    if doc.get("params") != Some(expected) {
        return Err(usage("checkpoint was written with different parameters"));
    }
    let done = doc["completed_k"].as_array().ok_or_else(|| usage("checkpoint lacks completed_k"))?;
    let rows = doc["rows"].as_array().ok_or_else(|| usage("checkpoint lacks rows"))?;
    Ok(State { done: done.iter().filter_map(Value::as_u64).collect(), rows: rows.clone() })
}

fn save(path: &Path, params: &Value, state: &State) -> Result<(), Outcome> {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "params": params,
        "completed_k": state.done,
        "rows": state.rows,
    });
    let tmp = path.with_extension("tmp");
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    std::fs::write(&tmp, text).and_then(|_| std::fs::rename(&tmp, path)).map_err(|e| usage(format!("cannot write checkpoint: {e}")))
}

pub fn run(a: &ScanArgs) -> Result<Report, Outcome> {
    if a.resume && a.checkpoint.is_none() {
        return Err(usage("--resume needs --checkpoint FILE"));
    }
    let p = params(a);
    let mut state = match (&a.checkpoint, a.resume) {
        (Some(path), true) if path.exists() => load(path, &p)?,
        _ => State { done: Vec::new(), rows: Vec::new() },
    };
    let ks: Vec<u64> = (a.k_min..=a.k_max).filter(|k| k % 2 == 0 && *k >= 4).collect();
    for &k in &ks {
        if state.done.contains(&k) {
            continue;
        }
        let rows = scan_t1([k], a.p_min..=a.p_max, a.ell_bound, a.verify)?;
        state.rows.extend(rows.iter().map(|r| serde_json::to_value(r).expect("serializable")));
        state.done.push(k);
        if let Some(path) = &a.checkpoint {
            save(path, &p, &state)?;
        }
    }
    let mut rows = state.rows;
    rows.sort_by_key(|r| {
        (r["k"].as_u64(), r["p"].as_u64(), r["eps"].as_i64(), r["ell"].as_u64())
    });
    let mut report = Report::new("scan-t1");
    for (key, v) in p.as_object().expect("object") {
        report = report.param(key, v.clone());
    }
    if a.verify {
        let failed: Vec<&Value> = rows.iter().filter(|r| r["verified"] != Value::Bool(true)).collect();
        report.check("all_hits_verified", failed.is_empty(), json!(failed));
    }
    report.result("count", rows.len() as u64);
    report.result("rows", Value::Array(rows));
    Ok(report)
}
