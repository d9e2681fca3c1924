use serde_json::{json, Value};
use smi_core::bar::{NmViolation, TupleObject};
use smi_core::syntax::Notation;

pub fn tuple(t: &TupleObject, notation: Notation) -> String {
    let cells: Vec<String> = t.cells.iter().map(|c| c.render(notation)).collect();
    format!("({})", cells.join(", "))
}

pub fn tuple_json(t: &TupleObject, notation: Notation) -> Value {
    Value::from(
        t.cells
            .iter()
            .map(|c| c.render(notation))
            .collect::<Vec<_>>(),
    )
}

pub fn violation_json(v: &Option<NmViolation>) -> Value {
    match v {
        Some(v) => json!(v.to_string()),
        None => Value::Null,
    }
}

/// Multi-index of every cell, 1-based, as "(i,j,k)".
pub fn cell_labels(t: &TupleObject) -> Vec<String> {
    t.shape
        .indices()
        .iter()
        .map(|idx| {
            let parts: Vec<String> = idx.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect()
}
