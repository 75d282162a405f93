//! CSV form of a [`SweepTable`].
//!
//! Floats are written in scientific notation with 17 significant digits, which
//! is enough for every f64 to parse back to the same bits.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::estimator::{OutageEstimate, SweepRow, SweepTable};

pub const HEADER: [&str; 10] = [
    "scheme",
    "n_relays",
    "secrecy_rate",
    "gamma_s_db",
    "trials",
    "outages",
    "estimate",
    "ci_low",
    "ci_high",
    "seed",
];

pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_table<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let io_err = |e: csv::Error| Error::io("<csv>", std::io::Error::other(e));
    w.write_record(HEADER).map_err(io_err)?;
    for r in &table.rows {
        let e = &r.estimate;
        w.write_record([
            r.scheme.tag().to_owned(),
            r.n_relays.to_string(),
            format_f64(r.secrecy_rate),
            format_f64(r.gamma_s_db),
            e.trials.to_string(),
            e.outages.to_string(),
            format_f64(e.estimate),
            format_f64(e.ci_low),
            format_f64(e.ci_high),
            e.seed.to_string(),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn table_to_string(table: &SweepTable) -> String {
    let mut buf = Vec::new();
    write_table(table, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("CSV is ASCII")
}

fn field(rec: &csv::StringRecord, i: usize, line: u64) -> Result<&str> {
    rec.get(i).ok_or_else(|| Error::Csv {
        line,
        message: format!("missing column `{}`", HEADER[i]),
    })
}

fn parse<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, line: u64) -> Result<T> {
    let raw = field(rec, i, line)?;
    raw.parse().map_err(|_| Error::Csv {
        line,
        message: format!("bad {} value `{raw}`", HEADER[i]),
    })
}

/// Parses a table written by [`write_table`]. Errors carry 1-based line
/// numbers.
pub fn read_table<R: Read>(input: R) -> Result<SweepTable> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = rdr.records();

    let csv_err = |e: csv::Error| Error::Csv {
        line: e.position().map_or(0, |p| p.line()),
        message: e.to_string(),
    };
    let header = match records.next() {
        Some(h) => h.map_err(csv_err)?,
        None => {
            return Err(Error::Csv {
                line: 1,
                message: "empty file".into(),
            })
        }
    };
    if header.iter().ne(HEADER) {
        return Err(Error::Csv {
            line: 1,
            message: format!("expected header `{}`", HEADER.join(",")),
        });
    }

    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != HEADER.len() {
            return Err(Error::Csv {
                line,
                message: format!("expected {} fields, found {}", HEADER.len(), rec.len()),
            });
        }
        let scheme = field(&rec, 0, line)?
            .parse()
            .map_err(|e: Error| Error::Csv {
                line,
                message: e.to_string(),
            })?;
        let estimate = OutageEstimate {
            trials: parse(&rec, 4, line)?,
            outages: parse(&rec, 5, line)?,
            estimate: parse(&rec, 6, line)?,
            ci_low: parse(&rec, 7, line)?,
            ci_high: parse(&rec, 8, line)?,
            seed: parse(&rec, 9, line)?,
        };
        rows.push(SweepRow {
            scheme,
            n_relays: parse(&rec, 1, line)?,
            secrecy_rate: parse(&rec, 2, line)?,
            gamma_s_db: parse(&rec, 3, line)?,
            estimate,
        });
    }
    if rows.is_empty() {
        return Err(Error::Csv {
            line: 2,
            message: "no data rows".into(),
        });
    }
    Ok(SweepTable { rows })
}
