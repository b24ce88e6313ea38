use std::io::{self, Write};
use std::path::Path;

use quon_su2::{OperatorMatrix, SymbolValue};
use serde::Serialize;

use crate::Format;

/// Writes `bytes` to `path` via a temporary file in the same directory and
/// a rename, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    let Some(path) = path else {
        let mut out = io::stdout().lock();
        out.write_all(bytes)?;
        return out.flush();
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(value).expect("serializable output");
    v.push(b'\n');
    v
}

#[derive(Serialize)]
struct Table<'a, P: Serialize> {
    command: &'a str,
    parameters: P,
    rows: &'a [SymbolValue],
}

fn csv_bytes(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in rows {
        w.write_record(&r).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn complex_cols(re: f64, im: f64) -> [String; 4] {
    let z = quon_su2::C64::new(re, im);
    let phase = if z.norm() == 0.0 { 0.0 } else { z.arg() };
    [num(re), num(im), num(z.norm()), num(phase)]
}

pub fn table<P: Serialize>(format: Format, command: &str, parameters: P, rows: &[SymbolValue]) -> Vec<u8> {
    match format {
        Format::Json => json(&Table {
            command,
            parameters,
            rows,
        }),
        Format::Csv => {
            let mut header: Vec<String> = rows
                .first()
                .map(|r| r.label_columns().into_iter().map(|(k, _)| k).collect())
                .unwrap_or_default();
            for h in ["re", "im", "magnitude", "phase", "scheme", "formula"] {
                header.push(h.to_string());
            }
            csv_bytes(
                &header,
                rows.iter().map(|r| {
                    let mut rec: Vec<String> = r.label_columns().into_iter().map(|(_, v)| v).collect();
                    rec.extend(complex_cols(r.value.re, r.value.im));
                    rec.push(format!("{:?}", r.scheme).to_lowercase());
                    rec.push(r.formula.to_string());
                    rec
                }),
            )
        }
    }
}

/// Long-format CSV of named operators: one line per matrix entry.
pub fn operators_csv(ops: &[(&str, &OperatorMatrix)]) -> Vec<u8> {
    let header: Vec<String> = ["operator", "row", "col", "row_label", "col_label", "re", "im", "magnitude", "phase"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    for (name, op) in ops {
        for i in 0..op.dim() {
            for j in 0..op.dim() {
                let z = op.get(i, j);
                let mut rec = vec![
                    name.to_string(),
                    i.to_string(),
                    j.to_string(),
                    op.basis()[i].to_string(),
                    op.basis()[j].to_string(),
                ];
                rec.extend(complex_cols(z.re, z.im));
                rows.push(rec);
            }
        }
    }
    csv_bytes(&header, rows.into_iter())
}

pub fn verify_csv(report: &quon_su2::VerifyReport) -> Vec<u8> {
    let header: Vec<String> = ["name", "parameters", "residual", "tolerance", "pass"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    csv_bytes(
        &header,
        report.checks.iter().map(|c| {
            let params: Vec<String> = c.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            vec![
                c.name.clone(),
                params.join(";"),
                num(c.residual),
                num(c.tolerance),
                c.pass.to_string(),
            ]
        }),
    )
}
