//! Bit-stable table writers: CSV and JSON with deterministic column order
//! and fixed floating-point formatting (12 significant digits).

use crate::bell::{BellOutcome, Warning};
use crate::error::Result;
use crate::sweep::{ContourResult, SweepRow, SweepSpec};
use serde_json::{json, Value};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Float(f64),
    Int(i64),
    Bool(bool),
    Str(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub records: Vec<Vec<Field>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// 12 significant digits, scientific notation, stable across runs.
pub fn format_float(v: f64) -> String {
    format!("{v:.11e}")
}

fn field_to_csv(f: &Field) -> String {
    match f {
        Field::Float(v) => format_float(*v),
        Field::Int(v) => v.to_string(),
        Field::Bool(v) => v.to_string(),
        Field::Str(s) => s.clone(),
    }
}

fn field_to_json(f: &Field) -> Value {
    match f {
        Field::Float(v) => json!(v),
        Field::Int(v) => json!(v),
        Field::Bool(v) => json!(v),
        Field::Str(s) => json!(s),
    }
}

pub fn warnings_str(warnings: &[Warning]) -> String {
    warnings
        .iter()
        .map(|w| match w {
            Warning::PerturbativeValidity => "perturbative_validity",
            Warning::UnphysicalCm => "unphysical_cm",
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Table for a dense sweep: axis columns, then xx, zz, b_value, violates,
/// warnings.
pub fn sweep_table(spec: &SweepSpec, rows: &[SweepRow]) -> Table {
    let mut columns = vec![spec.axis1.param.column_name().to_string()];
    if let Some(axis2) = &spec.axis2 {
        columns.push(axis2.param.column_name().to_string());
    }
    columns.extend(["xx", "zz", "b_value", "violates", "warnings"].map(String::from));
    let records = rows
        .iter()
        .map(|row| {
            let mut rec = vec![Field::Float(axis_display(spec.axis1.param.column_name(), row.axis1))];
            if let (Some(axis2), Some(v2)) = (&spec.axis2, row.axis2) {
                rec.push(Field::Float(axis_display(axis2.param.column_name(), v2)));
            }
            rec.extend(outcome_fields(&row.outcome));
            rec
        })
        .collect();
    Table { columns, records }
}

/// Temperatures are swept in kelvin internally but reported in mK, matching
/// the column name.
fn axis_display(column: &str, value: f64) -> f64 {
    if column == "temperature_mK" {
        value * 1e3
    } else {
        value
    }
}

fn outcome_fields(o: &BellOutcome) -> Vec<Field> {
    vec![
        Field::Float(o.xx),
        Field::Float(o.zz),
        Field::Float(o.b_value),
        Field::Bool(o.violates),
        Field::Str(warnings_str(&o.warnings)),
    ]
}

/// Table for an extracted B = 2 contour: ordered points with a segment id
/// for disconnected branches.
pub fn contour_table(spec: &SweepSpec, contour: &ContourResult) -> Table {
    let axis2 = spec.axis2.as_ref().expect("contour spec has two axes");
    let c1 = spec.axis1.param.column_name();
    let c2 = axis2.param.column_name();
    let columns = vec![c1.to_string(), c2.to_string(), "segment".to_string()];
    let mut records = Vec::new();
    for (seg_id, segment) in contour.segments.iter().enumerate() {
        for &(x, y) in segment {
            records.push(vec![
                Field::Float(axis_display(c1, x)),
                Field::Float(axis_display(c2, y)),
                Field::Int(seg_id as i64),
            ]);
        }
    }
    Table { columns, records }
}

pub fn write_csv(table: &Table, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", table.columns.join(","))?;
    for rec in &table.records {
        let line = rec.iter().map(field_to_csv).collect::<Vec<_>>().join(",");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn write_json(table: &Table, meta: Value, out: &mut dyn Write) -> Result<()> {
    let rows: Vec<Value> = table
        .records
        .iter()
        .map(|rec| {
            let mut obj = serde_json::Map::new();
            for (col, field) in table.columns.iter().zip(rec) {
                obj.insert(col.clone(), field_to_json(field));
            }
            Value::Object(obj)
        })
        .collect();
    let doc = json!({ "meta": meta, "rows": rows });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

pub fn write_table(
    table: &Table,
    format: OutputFormat,
    meta: Value,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(table, out),
        OutputFormat::Json => write_json(table, meta, out),
    }
}
