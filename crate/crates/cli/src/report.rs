//! Report rendering: every non-document verb emits either a `report`
//! document (JSON) or human-readable lines (text).

use affinet::algebra::Hom;
use affinet::{Failure, SuiteReport};
use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::docs::{envelope, hom_payload, to_canonical_string};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Print a report. JSON wraps the payload in a `report` envelope; text
/// prints the prepared lines.
pub fn emit(format: Format, payload: Value, text: &str) {
    match format {
        Format::Json => print!("{}", to_canonical_string(&envelope("report", payload))),
        Format::Text => println!("{text}"),
    }
}

/// Print a produced document. The document is the result in both formats;
/// text mode prefixes a one-line summary on stderr so pipes stay clean.
pub fn emit_document(format: Format, doc: &Value, summary: &str) {
    if format == Format::Text {
        eprintln!("{summary}");
    }
    print!("{}", to_canonical_string(doc));
}

pub fn homs_payload(op: &str, homs: &[Hom]) -> Value {
    let mut obj = Map::new();
    obj.insert("op".into(), Value::String(op.into()));
    obj.insert("count".into(), Value::Number(homs.len().into()));
    obj.insert(
        "homs".into(),
        Value::Array(homs.iter().map(hom_payload).collect()),
    );
    Value::Object(obj)
}

pub fn homs_text(what: &str, homs: &[Hom]) -> String {
    let mut lines = vec![format!("{} {}", homs.len(), what)];
    for (i, h) in homs.iter().enumerate() {
        let parts: Vec<String> = h
            .source
            .elems()
            .map(|a| format!("{}->{}", h.source.name(a), h.target.name(h.apply(a))))
            .collect();
        lines.push(format!("  {i}: {}", parts.join(", ")));
    }
    lines.join("\n")
}

pub fn suite_report_payload(r: &SuiteReport) -> Value {
    let mut obj = Map::new();
    obj.insert("op".into(), Value::String("verify".into()));
    obj.insert("suite".into(), Value::String(r.suite.as_str().into()));
    obj.insert(
        "variety".into(),
        Value::String(r.variety.tag().to_string()),
    );
    obj.insert("seed".into(), Value::Number(r.seed.into()));
    obj.insert("instances".into(), Value::Number(r.instances.into()));
    obj.insert("passes".into(), Value::Number(r.passes.into()));
    obj.insert(
        "failures".into(),
        Value::Array(r.failures.iter().map(failure_payload).collect()),
    );
    obj.insert(
        "budget_notes".into(),
        Value::Array(
            r.budget_notes
                .iter()
                .map(|s| Value::String(s.clone()))
                .collect(),
        ),
    );
    obj.insert(
        "notes".into(),
        Value::Array(r.notes.iter().map(|s| Value::String(s.clone())).collect()),
    );
    obj.insert(
        "negative_control_flagged".into(),
        Value::Bool(r.negative_control_flagged),
    );
    obj.insert("theorem_holds".into(), Value::Bool(r.theorem_holds));
    obj.insert(
        "witness".into(),
        match &r.witness {
            Some(w) => Value::String(w.clone()),
            None => Value::Null,
        },
    );
    obj.insert(
        "wall_ms".into(),
        Value::Number((r.wall_ms.min(u64::MAX as u128) as u64).into()),
    );
    Value::Object(obj)
}

fn failure_payload(f: &Failure) -> Value {
    let mut obj = Map::new();
    obj.insert("instance".into(), Value::Number(f.instance.into()));
    obj.insert("seed".into(), Value::Number(f.seed.into()));
    obj.insert("detail".into(), Value::String(f.detail.clone()));
    Value::Object(obj)
}

pub fn suite_report_text(r: &SuiteReport) -> String {
    let verdict = if !r.failures.is_empty() {
        "FAILED"
    } else if !r.negative_control_flagged {
        "CONTROL NOT FLAGGED"
    } else if !r.theorem_holds {
        "refuted (as expected)"
    } else {
        "passed"
    };
    let mut lines = vec![format!(
        "suite {} over {}: {} — {}/{} instances passed, control {} ({} ms)",
        r.suite.as_str(),
        r.variety.tag(),
        verdict,
        r.passes,
        r.instances,
        if r.negative_control_flagged {
            "flagged"
        } else {
            "NOT flagged"
        },
        r.wall_ms,
    )];
    if let Some(w) = &r.witness {
        lines.push(format!("  witness: {w}"));
    }
    for f in &r.failures {
        lines.push(format!(
            "  failure at instance {} (seed {}): {}",
            f.instance, f.seed, f.detail
        ));
    }
    for n in &r.budget_notes {
        lines.push(format!("  budget: {n}"));
    }
    for n in &r.notes {
        lines.push(format!("  note: {n}"));
    }
    lines.join("\n")
}
