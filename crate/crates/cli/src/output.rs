use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// JSON: an array of objects. CSV: header row, then one row per record.
pub fn render<T: Serialize>(rows: &[T], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(rows)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            Ok(w.into_inner().context("flushing csv")?)
        }
    }
}

pub fn write_rows<T: Serialize>(rows: &[T], format: Format, path: Option<&Path>) -> Result<()> {
    let bytes = render(rows, format)?;
    match path {
        Some(p) => File::create(p)
            .and_then(|mut f| f.write_all(&bytes))
            .with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(&bytes)?;
            Ok(out.flush()?)
        }
    }
}
