//! Flat-file formats: zero CSV, claim report JSON/CSV and the report table.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use zetascope::convergence::{ClaimResult, VerificationReport};
use zetascope::zeros::ZeroRecord;
use zetascope::ComplexValue;

use crate::config::Format;
use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct ZeroRow {
    index: usize,
    t: f64,
    re_rho: f64,
    im_rho: f64,
    residual: f64,
    bracket_lo: f64,
    bracket_hi: f64,
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

pub fn write_zeros(path: &Path, zeros: &[ZeroRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(create(path)?);
    if zeros.is_empty() {
        w.write_record([
            "index",
            "t",
            "re_rho",
            "im_rho",
            "residual",
            "bracket_lo",
            "bracket_hi",
        ])
        .map_err(|e| csv_error(path, e))?;
    }
    for z in zeros {
        w.serialize(ZeroRow {
            index: z.index,
            t: z.t,
            re_rho: z.rho.re,
            im_rho: z.rho.im,
            residual: z.residual,
            bracket_lo: z.bracket.0,
            bracket_hi: z.bracket.1,
        })
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_zeros(path: &Path) -> Result<Vec<ZeroRecord>, CliError> {
    let mut r = csv::Reader::from_reader(open(path)?);
    r.deserialize::<ZeroRow>()
        .map(|row| {
            let row = row.map_err(|e| csv_error(path, e))?;
            Ok(ZeroRecord {
                index: row.index,
                t: row.t,
                rho: ComplexValue::new(row.re_rho, row.im_rho),
                bracket: (row.bracket_lo, row.bracket_hi),
                residual: row.residual,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct ClaimRow {
    zero_index: usize,
    claim: String,
    expected: String,
    measured: String,
    tolerance: f64,
    deviation: Option<f64>,
    pass: bool,
    error: String,
}

pub fn write_report(
    path: &Path,
    report: &VerificationReport,
    format: Format,
) -> Result<(), CliError> {
    let mut out = create(path)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, report)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            writeln!(out).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            for c in &report.claims {
                w.serialize(ClaimRow {
                    zero_index: c.zero_index,
                    claim: c.claim.to_string(),
                    expected: c.expected.to_string(),
                    measured: c.measured.map(|m| m.to_string()).unwrap_or_default(),
                    tolerance: c.tolerance,
                    deviation: c.deviation,
                    pass: c.pass,
                    error: c.error.clone().unwrap_or_default(),
                })
                .map_err(|e| csv_error(path, e))?;
            }
            w.flush()
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        }
    }
    out.flush()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_report(path: &Path) -> Result<VerificationReport, CliError> {
    serde_json::from_reader(open(path)?)
        .map_err(|e| CliError::Input(format!("{} is not a report: {e}", path.display())))
}

pub fn failure_line(c: &ClaimResult) -> String {
    match (&c.error, c.deviation) {
        (Some(e), _) => format!("zero {} {}: error: {e}", c.zero_index, c.claim),
        (None, Some(d)) => format!(
            "zero {} {}: deviation {d:.3e} exceeds tolerance {:.3e}",
            c.zero_index, c.claim, c.tolerance
        ),
        (None, None) => format!("zero {} {}: no measurement", c.zero_index, c.claim),
    }
}

pub fn render_table(report: &VerificationReport) -> String {
    let header = [
        "zero",
        "claim",
        "expected",
        "measured",
        "deviation",
        "tolerance",
        "status",
    ];
    let rows: Vec<[String; 7]> = report
        .claims
        .iter()
        .map(|c| {
            [
                c.zero_index.to_string(),
                c.claim.to_string(),
                c.expected.to_string(),
                c.measured
                    .map(|m| m.to_string())
                    .unwrap_or_else(|| "-".into()),
                c.deviation
                    .map(|d| format!("{d:.3e}"))
                    .unwrap_or_else(|| "-".into()),
                format!("{:.3e}", c.tolerance),
                if c.pass { "pass".into() } else { "FAIL".into() },
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = String::new();
    out.push_str(&line(&header.map(String::from)));
    out.push('\n');
    out.push_str(&line(&widths.map(|w| "-".repeat(w))));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    let passed = report.claims.iter().filter(|c| c.pass).count();
    out.push_str(&format!("{passed}/{} claims pass\n", report.claims.len()));
    for c in report.failures() {
        if let Some(e) = &c.error {
            out.push_str(&format!("zero {} {}: {e}\n", c.zero_index, c.claim));
        }
    }
    out
}
