//! CSV export and import of portfolio histories, plus a small table writer
//! for report series.
//!
//! A dataset file has one row per (security, day) with the header
//! `security_id,day,S,R,Q,B,L,I,H,delta` (columns may appear in any order).
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so export followed by import reproduces a dataset bit for bit.

use std::io::{Read, Write};

use seclend_core::sim::{Observation, PortfolioTimeSeries, SimError};
use thiserror::Error;

/// Dataset columns in export order.
pub const DATASET_COLUMNS: [&str; 10] = ["security_id", "day", "S", "R", "Q", "B", "L", "I", "H", "delta"];

#[derive(Debug, Error)]
pub enum CsvError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Malformed { line: u64, source: csv::Error },
    #[error("header is missing column {0}")]
    MissingColumn(&'static str),
    #[error("header has unknown or repeated column {0:?}")]
    UnexpectedColumn(String),
    #[error("line {line}, column {column}: cannot parse {value:?} as {expected}")]
    Field {
        line: u64,
        column: &'static str,
        value: String,
        expected: &'static str,
    },
    #[error("line {line}: {source}")]
    Record { line: u64, source: SimError },
    #[error("file has no data rows")]
    Empty,
    #[error(transparent)]
    Dataset(SimError),
}

fn malformed(e: csv::Error) -> CsvError {
    let line = e.position().map_or(0, |p| p.line());
    if e.is_io_error() {
        if let csv::ErrorKind::Io(io) = e.into_kind() {
            return CsvError::Io(io);
        }
        unreachable!("is_io_error implies an Io kind");
    }
    CsvError::Malformed { line, source: e }
}

/// Writes `ts` as CSV, securities in order and days in order within each.
pub fn write_dataset<W: Write>(ts: &PortfolioTimeSeries, out: W) -> Result<(), CsvError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DATASET_COLUMNS).map_err(malformed)?;
    for o in ts.observations() {
        w.write_record([
            o.security.to_string(),
            o.day.to_string(),
            o.price.to_string(),
            o.rate.to_string(),
            o.alt_rate.to_string(),
            o.borrow.to_string(),
            o.locates.to_string(),
            o.inventory.to_string(),
            o.holdings.to_string(),
            o.delta.to_string(),
        ])
        .map_err(malformed)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a dataset written by [`write_dataset`] or assembled by hand. The
/// shape is inferred from the largest security id and day; every
/// (security, day) pair must appear exactly once.
pub fn read_dataset<R: Read>(input: R) -> Result<PortfolioTimeSeries, CsvError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = rdr.headers().map_err(malformed)?.clone();
    let mut index = [usize::MAX; DATASET_COLUMNS.len()];
    for (pos, name) in header.iter().enumerate() {
        match DATASET_COLUMNS.iter().position(|c| *c == name) {
            Some(k) if index[k] == usize::MAX => index[k] = pos,
            _ => return Err(CsvError::UnexpectedColumn(name.to_string())),
        }
    }
    if let Some(k) = index.iter().position(|&i| i == usize::MAX) {
        return Err(CsvError::MissingColumn(DATASET_COLUMNS[k]));
    }

    let mut records: Vec<(u64, Observation)> = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(malformed)?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |k: usize| row.get(index[k]).unwrap_or("");
        let int = |k: usize| {
            field(k).parse::<usize>().map_err(|_| CsvError::Field {
                line,
                column: DATASET_COLUMNS[k],
                value: field(k).to_string(),
                expected: "a non-negative integer",
            })
        };
        let real = |k: usize| {
            field(k).parse::<f64>().map_err(|_| CsvError::Field {
                line,
                column: DATASET_COLUMNS[k],
                value: field(k).to_string(),
                expected: "a number",
            })
        };
        records.push((
            line,
            Observation {
                security: int(0)?,
                day: int(1)?,
                price: real(2)?,
                rate: real(3)?,
                alt_rate: real(4)?,
                borrow: real(5)?,
                locates: real(6)?,
                inventory: real(7)?,
                holdings: real(8)?,
                delta: real(9)?,
            },
        ));
    }
    if records.is_empty() {
        return Err(CsvError::Empty);
    }
    let n_securities = records.iter().map(|r| r.1.security).max().unwrap_or(0) + 1;
    let n_days = records.iter().map(|r| r.1.day).max().unwrap_or(0) + 1;
    PortfolioTimeSeries::from_observations(n_securities, n_days, records.iter().map(|r| r.1))
        .map_err(|e| locate_error(e, &records))
}

/// Attaches the offending line to record-level errors. Repeated records
/// point at the last occurrence.
fn locate_error(e: SimError, records: &[(u64, Observation)]) -> CsvError {
    let key = match &e {
        SimError::InvalidObservation { security, day, .. }
        | SimError::AltRateAboveRate { security, day }
        | SimError::DeltaChanges { security, day }
        | SimError::DuplicateObservation { security, day } => Some((*security, *day)),
        _ => None,
    };
    let line = key.and_then(|(s, d)| {
        records
            .iter()
            .rev()
            .find(|r| r.1.security == s && r.1.day == d)
            .map(|r| r.0)
    });
    match line {
        Some(line) => CsvError::Record { line, source: e },
        None => CsvError::Dataset(e),
    }
}

/// Writes a header and rows of pre-formatted cells.
pub fn write_table<W, I>(out: W, header: &[&str], rows: I) -> Result<(), CsvError>
where
    W: Write,
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(malformed)?;
    for row in rows {
        w.write_record(&row).map_err(malformed)?;
    }
    w.flush()?;
    Ok(())
}
