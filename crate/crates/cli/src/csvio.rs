//! CSV artifacts: a `#` provenance line, a column-name line, then rows.
//! Floats are written in shortest round-trip form, so re-parsing yields the
//! exact in-memory values.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use fracsysid::noise::RNG_ALGORITHM;
use fracsysid::{RankedCandidate, SamplingGrid, Signal};

use crate::CliError;

/// Key/value pairs recorded in every artifact header.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    fields: Vec<(String, String)>,
}

impl Provenance {
    pub fn new(kind: &str, grid: &SamplingGrid, seed: u64, amplitude: f64) -> Self {
        let fields = vec![
            ("kind".to_string(), kind.to_string()),
            ("T".to_string(), grid.period().to_string()),
            ("L".to_string(), grid.memory().to_string()),
            ("seed".to_string(), seed.to_string()),
            ("amplitude".to_string(), amplitude.to_string()),
            ("rng".to_string(), RNG_ALGORITHM.to_string()),
        ];
        Self { fields }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn line(&self) -> String {
        let parts: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("{k}={}", v.replace(' ', "_")))
            .collect();
        format!("# fracsysid {}", parts.join(" "))
    }

    pub fn parse(line: &str) -> Option<Self> {
        let body = line.strip_prefix("# fracsysid")?;
        let fields = body
            .split_whitespace()
            .filter_map(|kv| kv.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        Some(Self { fields })
    }
}

/// Writes a header, column names, and rows of already-formatted cells.
pub fn write_rows(
    path: &Path,
    provenance: &Provenance,
    columns: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{}", provenance.line())?;
    writeln!(w, "{}", columns.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_signal(path: &Path, provenance: &Provenance, signal: &Signal) -> Result<(), CliError> {
    let grid = *signal.grid();
    let rows = signal
        .values()
        .iter()
        .enumerate()
        .map(|(k, v)| vec![grid.time(k).to_string(), v.to_string()]);
    write_rows(path, provenance, &["time", "value"], rows)
}

pub const RANKED_COLUMNS: [&str; 7] = ["rank", "alpha", "beta", "a1", "a2", "a3", "fitness"];

pub fn ranked_row(rank: usize, c: &RankedCandidate) -> Vec<String> {
    let [a1, a2, a3] = c.coefficients.unwrap_or([f64::NAN; 3]);
    vec![
        rank.to_string(),
        c.alpha.to_string(),
        c.beta.to_string(),
        a1.to_string(),
        a2.to_string(),
        a3.to_string(),
        c.fitness.to_string(),
    ]
}

pub fn write_ranked(
    path: &Path,
    provenance: &Provenance,
    candidates: &[RankedCandidate],
) -> Result<(), CliError> {
    let rows = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| ranked_row(i + 1, c));
    write_rows(path, provenance, &RANKED_COLUMNS, rows)
}

/// A parsed artifact: provenance, column names, numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub provenance: Option<Provenance>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

pub fn read_table(path: &Path) -> Result<Table, CliError> {
    let text = std::fs::read_to_string(path)?;
    let provenance = text.lines().next().and_then(Provenance::parse);
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let columns = reader
        .headers()
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>().map_err(|_| {
                    CliError::Config(format!("{}: row {}: bad number `{cell}`", path.display(), i + 1))
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    Ok(Table {
        provenance,
        columns,
        rows,
    })
}

/// Loads a `time,value` record and checks it lies on `grid`.
pub fn read_signal(path: &Path, grid: SamplingGrid) -> Result<Signal, CliError> {
    let table = read_table(path)?;
    if table.columns != ["time", "value"] {
        return Err(CliError::Config(format!(
            "{}: expected columns time,value",
            path.display()
        )));
    }
    let mut values = Vec::with_capacity(table.rows.len());
    for (k, row) in table.rows.iter().enumerate() {
        let expected = grid.time(k);
        if (row[0] - expected).abs() > 1e-9 * expected.abs().max(1.0) {
            return Err(CliError::Config(format!(
                "{}: row {} has time {} but the grid expects {expected}",
                path.display(),
                k + 1,
                row[0]
            )));
        }
        values.push(row[1]);
    }
    Signal::new(grid, values).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_line_round_trips() {
        let grid = SamplingGrid::new(0.001, 10.0).unwrap();
        let p = Provenance::new("response", &grid, 42, 0.05).with("variant", "clean");
        let parsed = Provenance::parse(&p.line()).unwrap();
        assert_eq!(parsed, p);
        assert_eq!(parsed.get("T"), Some("0.001"));
        assert_eq!(parsed.get("rng"), Some(RNG_ALGORITHM));
        assert!(Provenance::parse("time,value").is_none());
    }

    #[test]
    fn signal_file_round_trips_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let grid = SamplingGrid::new(0.01, 1.0).unwrap();
        let s = Signal::from_fn(grid, |t| (7.0 * t).sin() / 3.0 + 1e-300).unwrap();
        write_signal(&path, &Provenance::new("response", &grid, 0, 0.0), &s).unwrap();
        assert_eq!(read_signal(&path, grid).unwrap(), s);

        let other = SamplingGrid::new(0.02, 2.0).unwrap();
        assert!(read_signal(&path, other).is_err());
    }

    #[test]
    fn ranked_file_keeps_failed_candidates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.csv");
        let grid = SamplingGrid::new(0.01, 1.0).unwrap();
        let cell = fracsysid::PowerRange::standard().cell();
        let ok = RankedCandidate {
            alpha: 2.23,
            beta: 0.87,
            coefficients: Some([0.8039, 0.4979, 0.9975]),
            fitness: 0.4036,
            cell,
        };
        let failed = RankedCandidate {
            coefficients: None,
            fitness: f64::INFINITY,
            ..ok
        };
        write_ranked(&path, &Provenance::new("ranked", &grid, 1, 0.05), &[ok, failed]).unwrap();
        let table = read_table(&path).unwrap();
        assert_eq!(table.columns, RANKED_COLUMNS);
        assert_eq!(table.rows[0], vec![1.0, 2.23, 0.87, 0.8039, 0.4979, 0.9975, 0.4036]);
        assert!(table.rows[1][3].is_nan());
        assert_eq!(table.rows[1][6], f64::INFINITY);
    }
}
