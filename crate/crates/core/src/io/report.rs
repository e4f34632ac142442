use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::complex::Chain;
use crate::error::{Error, Result};
use crate::filling::{FillResult, FillStatus};
use crate::profile::{
    EntryStatus, FitGrid, ProfileEntry, ProfileMeta, ProfileTable, ProfileValue, QuasiFitWitness,
};

use super::spec::format_grid;

const CSV_HEADER: [&str; 3] = ["n", "value", "status"];

pub fn emit_profile_csv(t: &ProfileTable) -> String {
    let mut out = String::from("n,value,status\n");
    for (n, e) in t.entries.iter().enumerate() {
        out.push_str(&format!("{n},{},{}\n", e.value, e.status));
    }
    out
}

pub fn parse_profile_csv(text: &str) -> Result<ProfileTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let csv_error = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line() as usize);
        Error::parse(line, 1, e.to_string())
    };
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.iter().ne(CSV_HEADER) {
        return Err(Error::parse(1, 1, "expected header `n,value,status`"));
    }
    let mut entries = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 3 {
            return Err(Error::parse(
                line,
                1,
                format!("expected 3 fields, found {}", record.len()),
            ));
        }
        let column = |k: usize| 1 + record.iter().take(k).map(|f| f.len() + 1).sum::<usize>();
        let n: usize = record[0]
            .parse()
            .map_err(|_| Error::parse(line, 1, format!("bad n `{}`", &record[0])))?;
        if n != entries.len() {
            return Err(Error::parse(
                line,
                1,
                format!("expected n = {}, found {n}", entries.len()),
            ));
        }
        let value = match &record[1] {
            "inf" => ProfileValue::Infinite,
            v => ProfileValue::Finite(
                v.parse::<BigUint>()
                    .map_err(|_| Error::parse(line, column(1), format!("bad value `{v}`")))?,
            ),
        };
        let status = match &record[2] {
            "Exact" => EntryStatus::Exact,
            "LowerBound" => EntryStatus::LowerBound,
            s => return Err(Error::parse(line, column(2), format!("bad status `{s}`"))),
        };
        entries.push(ProfileEntry { value, status });
    }
    if entries.is_empty() {
        return Err(Error::parse(2, 1, "profile has no rows"));
    }
    Ok(ProfileTable {
        entries,
        meta: ProfileMeta {
            kind: "csv".into(),
            ..ProfileMeta::default()
        },
    })
}

/// Everything a command reports besides its exit code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the length-prefixed input texts.
    pub inputs_digest: String,
    pub budgets: BTreeMap<String, String>,
    pub timings_ms: BTreeMap<String, u64>,
    pub result: Value,
    pub caveats: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, inputs: &[&[u8]]) -> Self {
        let mut h = Sha256::new();
        for input in inputs {
            h.update((input.len() as u64).to_le_bytes());
            h.update(input);
        }
        RunReport {
            command: command.into(),
            inputs_digest: hex::encode(h.finalize()),
            budgets: BTreeMap::new(),
            timings_ms: BTreeMap::new(),
            result: Value::Null,
            caveats: Vec::new(),
        }
    }
}

pub fn emit_report(r: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

fn chain_json(c: &Chain) -> Value {
    Value::Object(
        c.terms()
            .map(|(cell, x)| (cell.to_string(), Value::String(x.to_string())))
            .collect::<Map<_, _>>(),
    )
}

/// Result payload and caveats for a fill.
pub fn fill_payload(c: &Chain, r: &FillResult) -> (Value, Vec<String>) {
    let (status, value) = match &r.status {
        FillStatus::Exact(v) => ("Exact", Some(v.to_string())),
        FillStatus::LowerBound(v) => ("LowerBound", Some(v.to_string())),
        FillStatus::Infinite => ("Infinite", None),
    };
    let mut caveats = Vec::new();
    if let FillStatus::LowerBound(v) = &r.status {
        caveats.push(format!(
            "node budget exhausted after {} nodes: the filling volume is at least {v}, and the witness (if any) is only the best found",
            r.nodes
        ));
    }
    let payload = json!({
        "dim": c.dim(),
        "chain": chain_json(c),
        "status": status,
        "value": value,
        "witness": r.witness.as_ref().map(chain_json),
        "nodes": r.nodes,
    });
    (payload, caveats)
}

pub fn profile_payload(t: &ProfileTable) -> (Value, Vec<String>) {
    let entries: Vec<Value> = t
        .entries
        .iter()
        .enumerate()
        .map(|(n, e)| json!({ "n": n, "value": e.value.to_string(), "status": e.status.to_string() }))
        .collect();
    let budgets: Map<String, Value> = t
        .meta
        .budgets
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let payload = json!({
        "source": t.meta.source,
        "kind": t.meta.kind,
        "dim": t.meta.dim,
        "budgets": budgets,
        "entries": entries,
    });
    (payload, t.caveats())
}

fn witness_json(w: &QuasiFitWitness) -> Value {
    json!({
        "direction": w.direction,
        "A": w.a.to_string(),
        "B": w.b.to_string(),
        "C": w.c.to_string(),
        "D": w.d.to_string(),
        "samples": w.samples,
        "excluded": w.excluded,
    })
}

/// Payload for a two-sided fit; `None` means the grid has no witness.
pub fn witness_payload(
    fit: Option<&(QuasiFitWitness, QuasiFitWitness)>,
    grid: &FitGrid,
) -> (Value, Vec<String>) {
    let spec = format_grid(grid);
    match fit {
        Some((fg, gf)) => {
            let mut caveats = Vec::new();
            for w in [fg, gf] {
                if !w.excluded.is_empty() {
                    caveats.push(format!(
                        "{}: samples {:?} were not checked because B·x leaves the sampled range",
                        w.direction, w.excluded
                    ));
                }
            }
            let payload = json!({
                "grid": spec,
                "equivalent": true,
                "witnesses": [witness_json(fg), witness_json(gf)],
            });
            (payload, caveats)
        }
        None => (
            json!({ "grid": spec, "equivalent": false, "witnesses": [] }),
            vec![format!(
                "no witness on grid {spec}: this refutes only that grid on the sampled range"
            )],
        ),
    }
}
