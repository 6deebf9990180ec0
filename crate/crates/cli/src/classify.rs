//! `classify` and `invariants`.

use aristotle_core::orbits::{
    classify_with_tol, invariants_with_tol, orbit_dimension_with_tol, DEFAULT_CLASS_TOL,
};
use aristotle_core::{DualElement, InvariantSet, Scalar};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_table, pretty_json, scalar_json};

const INPUT_COLUMNS: [&str; 5] = ["p", "e", "f", "k", "y"];
const INVARIANT_COLUMNS: [&str; 8] = ["v", "q", "s", "tau", "U", "pi", "psi", "f"];

fn invariant_cells<S: Scalar>(inv: &InvariantSet<S>) -> [Option<&S>; 8] {
    [
        inv.v.as_ref(),
        inv.q.as_ref(),
        inv.s.as_ref(),
        inv.tau.as_ref(),
        inv.u.as_ref(),
        inv.pi.as_ref(),
        Some(&inv.psi),
        inv.f.as_ref(),
    ]
}

struct Record<S> {
    input: DualElement<S>,
    class: Option<(String, usize)>,
    invariants: InvariantSet<S>,
}

pub fn run<S: Scalar>(config: &RunConfig, points: &[DualElement<S>], with_class: bool) -> Result<String, CliError> {
    let tol = config.tol.unwrap_or(DEFAULT_CLASS_TOL);
    let records: Vec<Record<S>> = points
        .iter()
        .map(|mu| Record {
            input: mu.clone(),
            class: with_class.then(|| {
                (
                    classify_with_tol(mu, tol).name().to_string(),
                    orbit_dimension_with_tol(mu, tol),
                )
            }),
            invariants: invariants_with_tol(mu, tol),
        })
        .collect();
    match config.format {
        Format::Json => Ok(render_json(config, &records)),
        Format::Csv => render_csv(&records, with_class),
        Format::Text => Ok(render_text(&records)),
    }
}

fn render_json<S: Scalar>(config: &RunConfig, records: &[Record<S>]) -> String {
    let points: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut obj = Map::new();
            let input: Map<String, Value> = INPUT_COLUMNS
                .iter()
                .zip(r.input.to_array())
                .map(|(n, v)| (n.to_string(), scalar_json(&v)))
                .collect();
            obj.insert("input".into(), Value::Object(input));
            if let Some((class, dim)) = &r.class {
                obj.insert("class".into(), json!(class));
                obj.insert("dimension".into(), json!(dim));
            }
            let mut inv = Map::new();
            inv.insert("k".into(), scalar_json(&r.invariants.k));
            inv.insert("y".into(), scalar_json(&r.invariants.y));
            for (name, cell) in INVARIANT_COLUMNS.iter().zip(invariant_cells(&r.invariants)) {
                if let Some(v) = cell {
                    inv.insert(name.to_string(), scalar_json(v));
                }
            }
            obj.insert("invariants".into(), Value::Object(inv));
            Value::Object(obj)
        })
        .collect();
    pretty_json(&json!({
        "command": config.command.name(),
        "backend": config.backend.name(),
        "points": points,
    }))
}

fn render_csv<S: Scalar>(records: &[Record<S>], with_class: bool) -> Result<String, CliError> {
    let mut header: Vec<&str> = INPUT_COLUMNS.to_vec();
    if with_class {
        header.extend(["class", "dimension"]);
    }
    // The input already owns "f", so the force invariant gets a distinct name.
    header.extend(INVARIANT_COLUMNS.map(|c| if c == "f" { "f_invariant" } else { c }));
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let mut row: Vec<String> = r.input.to_array().iter().map(Scalar::render).collect();
            if let Some((class, dim)) = &r.class {
                row.push(class.clone());
                row.push(dim.to_string());
            }
            row.extend(
                invariant_cells(&r.invariants)
                    .iter()
                    .map(|c| c.map(Scalar::render).unwrap_or_default()),
            );
            row
        })
        .collect();
    csv_table(&header, &rows)
}

fn render_text<S: Scalar>(records: &[Record<S>]) -> String {
    let mut out = String::new();
    for r in records {
        let input: Vec<String> = r.input.to_array().iter().map(Scalar::render).collect();
        out.push_str(&format!("({})", input.join(", ")));
        if let Some((class, dim)) = &r.class {
            out.push_str(&format!("  {class}  dim={dim}"));
        }
        for (name, cell) in INVARIANT_COLUMNS.iter().zip(invariant_cells(&r.invariants)) {
            if let Some(v) = cell {
                out.push_str(&format!("  {name}={}", v.render()));
            }
        }
        out.push('\n');
    }
    out
}
