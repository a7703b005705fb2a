//! Per-step training records and their CSV/JSONL persistence.
//!
//! The CSV column set is a stable contract for downstream plotting:
//! `step, epoch, gamma, paired_risk, unpaired_risk, total,
//! contribution_ratio, mu_t, sigma_t, delta_t, pseudo_win_fraction,
//! validation_loss`. Floats are written in Rust's shortest round-trip form,
//! so identical runs produce byte-identical files and parsing recovers the
//! exact values.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "step,epoch,gamma,paired_risk,unpaired_risk,total,\
contribution_ratio,mu_t,sigma_t,delta_t,pseudo_win_fraction,validation_loss";

/// One optimizer step of training telemetry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub step: u64,
    pub epoch: u64,
    pub gamma: f64,
    pub paired_risk: f64,
    pub unpaired_risk: f64,
    pub total: f64,
    pub contribution_ratio: f64,
    pub mu_t: f64,
    pub sigma_t: f64,
    pub delta_t: f64,
    pub pseudo_win_fraction: f64,
    /// Present on the last step of each epoch.
    pub validation_loss: Option<f64>,
}

impl MetricsRecord {
    fn to_csv_row(&self) -> String {
        let validation = match self.validation_loss {
            Some(v) => v.to_string(),
            None => String::new(),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.step,
            self.epoch,
            self.gamma,
            self.paired_risk,
            self.unpaired_risk,
            self.total,
            self.contribution_ratio,
            self.mu_t,
            self.sigma_t,
            self.delta_t,
            self.pseudo_win_fraction,
            validation
        )
    }

    fn from_csv_row(line: &str, number: usize) -> Result<Self> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 12 {
            return Err(Error::MalformedRecord {
                line: number,
                message: format!("expected 12 columns, got {}", fields.len()),
            });
        }
        let parse = |idx: usize| -> Result<f64> {
            fields[idx].parse().map_err(|_| Error::MalformedRecord {
                line: number,
                message: format!("column {} is not a number: {:?}", idx + 1, fields[idx]),
            })
        };
        let parse_int = |idx: usize| -> Result<u64> {
            fields[idx].parse().map_err(|_| Error::MalformedRecord {
                line: number,
                message: format!("column {} is not an integer: {:?}", idx + 1, fields[idx]),
            })
        };
        Ok(MetricsRecord {
            step: parse_int(0)?,
            epoch: parse_int(1)?,
            gamma: parse(2)?,
            paired_risk: parse(3)?,
            unpaired_risk: parse(4)?,
            total: parse(5)?,
            contribution_ratio: parse(6)?,
            mu_t: parse(7)?,
            sigma_t: parse(8)?,
            delta_t: parse(9)?,
            pseudo_win_fraction: parse(10)?,
            validation_loss: if fields[11].is_empty() { None } else { Some(parse(11)?) },
        })
    }
}

/// Writes the header row plus one row per record.
pub fn write_csv(path: &Path, records: &[MetricsRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{CSV_HEADER}")?;
    for record in records {
        writeln!(w, "{}", record.to_csv_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(path: &Path) -> Result<Vec<MetricsRecord>> {
    let mut lines = BufReader::new(File::open(path)?).lines();
    let header = lines.next().transpose()?;
    if header.as_deref() != Some(CSV_HEADER) {
        return Err(Error::MalformedRecord {
            line: 1,
            message: "missing or unexpected metrics header".into(),
        });
    }
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        out.push(MetricsRecord::from_csv_row(&line?, idx + 2)?);
    }
    Ok(out)
}

/// The same stream as JSON objects, one per line.
pub fn write_jsonl(path: &Path, records: &[MetricsRecord]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for record in records {
        writeln!(w, "{}", serde_json::to_string(record).expect("serializable record"))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(step: u64) -> MetricsRecord {
        MetricsRecord {
            step,
            epoch: step / 4,
            gamma: 0.5_f64.powi(step as i32 + 1),
            paired_risk: 0.1 * step as f64 + 0.30000000000000004,
            unpaired_risk: 0.25,
            total: 0.4,
            contribution_ratio: 0.625,
            mu_t: -33.1,
            sigma_t: 1.75,
            delta_t: 0.03,
            pseudo_win_fraction: 0.5,
            validation_loss: if step % 4 == 3 { Some(0.9) } else { None },
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("metrics.csv");
        let records: Vec<MetricsRecord> = (0..8).map(sample).collect();
        write_csv(&path, &records).unwrap();
        assert_eq!(read_csv(&path).unwrap(), records);
    }

    #[test]
    fn header_is_required() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("metrics.csv");
        std::fs::write(&path, "1,2,3\n").unwrap();
        assert!(matches!(
            read_csv(&path),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn identical_records_produce_identical_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        let records: Vec<MetricsRecord> = (0..5).map(sample).collect();
        write_csv(&a, &records).unwrap();
        write_csv(&b, &records).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
}
