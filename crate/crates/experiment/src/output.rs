//! CSV and long-format plot tables.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{ExperimentError, Result};
use crate::run::{ExperimentResult, Row};

pub const CSV_HEADER: [&str; 8] = [
    "snr_db",
    "mc_mean",
    "mc_stderr",
    "closed_form",
    "quadrature",
    "oneway_mean",
    "oneway_stderr",
    "gain",
];

pub const PLOT_HEADER: [&str; 3] = ["series", "snr_db", "value"];

/// Curve names in the order they are written.
pub const SERIES: [&str; 5] = [
    "mc_proposed",
    "analytic_proposed",
    "quadrature_proposed",
    "mc_oneway",
    "gain",
];

/// Rounds to 9 significant digits, the precision written to files.
pub fn round_sig9(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.8e}").parse().expect("formatted float parses")
}

/// Shortest decimal that reads back as `round_sig9(v)`.
pub fn format_sig9(v: f64) -> String {
    format!("{}", round_sig9(v))
}

fn cell(v: Option<f64>) -> String {
    v.map(format_sig9).unwrap_or_default()
}

impl Row {
    fn cells(&self) -> [Option<f64>; 8] {
        [
            Some(self.snr_db),
            self.mc_mean,
            self.mc_stderr,
            self.closed_form,
            self.quadrature,
            self.oneway_mean,
            self.oneway_stderr,
            self.gain,
        ]
    }

    /// The row as it reads back from a file.
    pub fn rounded(&self) -> Row {
        let r = |v: Option<f64>| v.map(round_sig9);
        Row {
            snr_db: round_sig9(self.snr_db),
            mc_mean: r(self.mc_mean),
            mc_stderr: r(self.mc_stderr),
            closed_form: r(self.closed_form),
            quadrature: r(self.quadrature),
            oneway_mean: r(self.oneway_mean),
            oneway_stderr: r(self.oneway_stderr),
            gain: r(self.gain),
        }
    }
}

/// A point of the long-format plot table.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotPoint {
    pub series: String,
    pub snr_db: f64,
    pub value: f64,
}

/// Long-format points: one series after another, each ascending in SNR.
/// Missing cells are skipped.
pub fn plot_points(result: &ExperimentResult) -> Vec<PlotPoint> {
    let pick: [fn(&Row) -> Option<f64>; 5] = [
        |r| r.mc_mean,
        |r| r.closed_form,
        |r| r.quadrature,
        |r| r.oneway_mean,
        |r| r.gain,
    ];
    let mut points = Vec::new();
    for (series, f) in SERIES.iter().zip(pick) {
        for row in &result.rows {
            if let Some(value) = f(row) {
                points.push(PlotPoint {
                    series: series.to_string(),
                    snr_db: row.snr_db,
                    value,
                });
            }
        }
    }
    points
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the result table. `path` only labels errors.
pub fn write_csv<W: Write>(result: &ExperimentResult, w: W, path: &Path) -> Result<()> {
    let mut out = writer(w);
    out.write_record(CSV_HEADER).map_err(csv_err(path))?;
    for row in &result.rows {
        out.write_record(row.cells().map(cell))
            .map_err(csv_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

pub fn emit_csv(result: &ExperimentResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    write_csv(result, BufWriter::new(file), path)
}

pub fn csv_string(result: &ExperimentResult) -> String {
    let mut buf = Vec::new();
    write_csv(result, &mut buf, Path::new("<memory>")).expect("writing to memory");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(true).from_reader(r)
}

fn parse_number(path: &Path, line: u64, text: &str) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| ExperimentError::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("`{text}` is not a finite number"),
        })
}

fn check_header<R: Read>(rd: &mut csv::Reader<R>, want: &[&str], path: &Path) -> Result<()> {
    let header = rd.headers().map_err(csv_err(path))?;
    if header.iter().ne(want.iter().copied()) {
        return Err(ExperimentError::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: format!("expected header `{}`", want.join(",")),
        });
    }
    Ok(())
}

/// Reads a table written by [`write_csv`]. Refusal reasons are not stored
/// in the file, so `unavailable` comes back empty.
pub fn read_csv<R: Read>(r: R, path: &Path) -> Result<ExperimentResult> {
    let mut rd = reader(r);
    check_header(&mut rd, &CSV_HEADER, path)?;
    let mut rows = Vec::new();
    for record in rd.records() {
        let record = record.map_err(csv_err(path))?;
        let line = record.position().map_or(0, |p| p.line());
        let mut cells = [None; 8];
        for (slot, text) in cells.iter_mut().zip(record.iter()) {
            if !text.is_empty() {
                *slot = Some(parse_number(path, line, text)?);
            }
        }
        let snr_db = cells[0].ok_or_else(|| ExperimentError::Parse {
            path: path.to_path_buf(),
            line,
            message: "missing snr_db".into(),
        })?;
        rows.push(Row {
            snr_db,
            mc_mean: cells[1],
            mc_stderr: cells[2],
            closed_form: cells[3],
            quadrature: cells[4],
            oneway_mean: cells[5],
            oneway_stderr: cells[6],
            gain: cells[7],
        });
    }
    Ok(ExperimentResult {
        rows,
        unavailable: Vec::new(),
    })
}

pub fn parse_csv(path: &Path) -> Result<ExperimentResult> {
    read_csv(File::open(path).map_err(io_err(path))?, path)
}

pub fn write_plotdata<W: Write>(result: &ExperimentResult, w: W, path: &Path) -> Result<()> {
    let mut out = writer(w);
    out.write_record(PLOT_HEADER).map_err(csv_err(path))?;
    for p in plot_points(result) {
        out.write_record([p.series, format_sig9(p.snr_db), format_sig9(p.value)])
            .map_err(csv_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

pub fn emit_plotdata(result: &ExperimentResult, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    write_plotdata(result, BufWriter::new(file), path)
}

pub fn read_plotdata<R: Read>(r: R, path: &Path) -> Result<Vec<PlotPoint>> {
    let mut rd = reader(r);
    check_header(&mut rd, &PLOT_HEADER, path)?;
    let mut points = Vec::new();
    for record in rd.records() {
        let record = record.map_err(csv_err(path))?;
        let line = record.position().map_or(0, |p| p.line());
        points.push(PlotPoint {
            series: record[0].to_string(),
            snr_db: parse_number(path, line, &record[1])?,
            value: parse_number(path, line, &record[2])?,
        });
    }
    Ok(points)
}

pub fn parse_plotdata(path: &Path) -> Result<Vec<PlotPoint>> {
    read_plotdata(File::open(path).map_err(io_err(path))?, path)
}
