use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `100 * (length - opt) / opt`.
pub fn percentage_error(length: f64, opt: f64) -> Result<f64> {
    if opt.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::NonPositiveOptimum(opt));
    }
    Ok(100.0 * (length - opt) / opt)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub instance: String,
    pub length: f64,
    pub optimum: f64,
    pub percentage_error: f64,
}

impl GapReport {
    pub fn new(instance: impl Into<String>, length: f64, optimum: f64) -> Result<Self> {
        Ok(Self {
            instance: instance.into(),
            length,
            optimum,
            percentage_error: percentage_error(length, optimum)?,
        })
    }
}

/// One line of the JSON-lines optima table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumRecord {
    pub name: String,
    pub optimum: f64,
}

/// Reads `{name, optimum}` records, one JSON object per line.
pub fn read_optima_table(reader: impl BufRead) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let rec: OptimumRecord = serde_json::from_str(line)?;
        out.insert(rec.name, rec.optimum);
    }
    Ok(out)
}

pub fn write_optima_table(mut writer: impl Write, table: &BTreeMap<String, f64>) -> Result<()> {
    for (name, &optimum) in table {
        let rec = OptimumRecord {
            name: name.clone(),
            optimum,
        };
        writeln!(writer, "{}", serde_json::to_string(&rec)?)?;
    }
    Ok(())
}
