use std::io::{self, Write};

use serde::Serialize;

use crate::config::OutputFormat;

/// Writes a sequence of flat records in the chosen format.
///
/// `json` collects into one array; the other formats stream.
pub fn records<T: Serialize>(
    out: &mut impl Write,
    format: OutputFormat,
    rows: impl IntoIterator<Item = T>,
) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            let rows: Vec<T> = rows.into_iter().collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)
        }
        OutputFormat::Jsonl => {
            for row in rows {
                serde_json::to_writer(&mut *out, &row)?;
                writeln!(out)?;
            }
            Ok(())
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(io::Error::other)?;
            }
            w.flush()
        }
        OutputFormat::Table => table(out, rows),
    }
}

/// Space-aligned columns; buffers everything to size them.
fn table<T: Serialize>(out: &mut impl Write, rows: impl IntoIterator<Item = T>) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(io::Error::other)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io::Error::other(e.to_string()))?;
    let mut cells: Vec<Vec<String>> = Vec::new();
    for rec in csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(bytes.as_slice())
        .records()
    {
        cells.push(
            rec.map_err(io::Error::other)?
                .iter()
                .map(str::to_owned)
                .collect(),
        );
    }
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:>w$}"))
            .collect();
        writeln!(out, "{}", line.join("  "))?;
    }
    Ok(())
}

/// A single object, pretty-printed.
pub fn object<T: Serialize>(out: &mut impl Write, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}
