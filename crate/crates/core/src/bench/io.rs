//! Dataset and partition CSV files.
//!
//! A dataset file has a header row, one numeric column per feature, and an
//! optional trailing integer column named `label`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::partition::CrispPartition;

const LABEL_COLUMN: &str = "label";

fn open(path: &Path) -> Result<csv::Reader<File>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file))
}

fn parse_error(path: &Path, line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        column,
        message: message.into(),
    }
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let mut reader = open(path)?;
    let header = reader.headers()?.clone();
    let width = header.len();
    let has_label = header
        .iter()
        .next_back()
        .is_some_and(|h| h.eq_ignore_ascii_case(LABEL_COLUMN));
    let d = if has_label { width - 1 } else { width };
    if d == 0 {
        return Err(parse_error(path, 1, 1, "no feature columns"));
    }
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        // header is line 1
        let line = record.position().map_or(row + 2, |p| p.line() as usize);
        if record.len() != width {
            return Err(Error::RaggedRow {
                path: path.to_path_buf(),
                line,
                expected: width,
                got: record.len(),
            });
        }
        for (col, field) in record.iter().take(d).enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| parse_error(path, line, col + 1, format!("`{field}` is not a number")))?;
            if !v.is_finite() {
                return Err(parse_error(path, line, col + 1, "non-finite value"));
            }
            points.push(v);
        }
        if has_label {
            let field = &record[d];
            let l: usize = field.parse().map_err(|_| {
                parse_error(path, line, d + 1, format!("`{field}` is not a label id"))
            })?;
            labels.push(l);
        }
    }
    if points.is_empty() {
        return Err(parse_error(path, 2, 1, "no data rows"));
    }
    let name = path
        .file_stem()
        .map_or_else(|| "dataset".to_string(), |s| s.to_string_lossy().into_owned());
    let ds = Dataset::new(name, points, d)?;
    if has_label {
        ds.with_labels(labels)
    } else {
        Ok(ds)
    }
}

/// Writes `ds` with full round-trip precision (shortest exact decimal).
pub fn save_csv(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write_dataset(ds, &mut out).map_err(|e| Error::io(path, e))?;
    out.flush().map_err(|e| Error::io(path, e))
}

fn write_dataset(ds: &Dataset, out: &mut impl Write) -> std::io::Result<()> {
    let mut header: Vec<String> = (0..ds.dim()).map(|j| format!("x{j}")).collect();
    if ds.labels().is_some() {
        header.push(LABEL_COLUMN.to_string());
    }
    writeln!(out, "{}", header.join(","))?;
    for (j, p) in ds.points().enumerate() {
        let mut fields: Vec<String> = p.iter().map(|v| format!("{v:?}")).collect();
        if let Some(labels) = ds.labels() {
            fields.push(labels[j].to_string());
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Reads a partition: the `label` column if present, otherwise the only column.
pub fn load_partition(path: impl AsRef<Path>) -> Result<CrispPartition> {
    let path = path.as_ref();
    let mut reader = open(path)?;
    let header = reader.headers()?.clone();
    let column = header
        .iter()
        .position(|h| h.eq_ignore_ascii_case(LABEL_COLUMN))
        .or(if header.len() == 1 { Some(0) } else { None })
        .ok_or_else(|| parse_error(path, 1, 1, "expected a `label` column"))?;
    let mut ids = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(row + 2, |p| p.line() as usize);
        if record.len() != header.len() {
            return Err(Error::RaggedRow {
                path: path.to_path_buf(),
                line,
                expected: header.len(),
                got: record.len(),
            });
        }
        let field = &record[column];
        let id: usize = field.parse().map_err(|_| {
            parse_error(path, line, column + 1, format!("`{field}` is not a cluster id"))
        })?;
        ids.push(id);
    }
    let k = ids.iter().max().map_or(1, |m| m + 1);
    CrispPartition::new(ids, k)
}

pub fn save_partition(p: &CrispPartition, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::from("label\n");
    for id in p.assignment() {
        text.push_str(&id.to_string());
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.csv");
        let ds = Dataset::new("d", vec![0.1, 1.0 / 3.0, -2.5e-17, 1e300, 7.0, f64::MIN_POSITIVE], 2)
            .unwrap()
            .with_labels(vec![0, 1, 0])
            .unwrap();
        save_csv(&ds, &path).unwrap();
        let back = load_csv(&path).unwrap();
        assert_eq!(back.as_slice(), ds.as_slice());
        assert_eq!(back.labels(), ds.labels());
    }

    #[test]
    fn ragged_row_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "x0,x1\n1,2\n3\n4,5\n").unwrap();
        match load_csv(&path) {
            Err(Error::RaggedRow { line, expected, got, .. }) => {
                assert_eq!((line, expected, got), (3, 2, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_error_names_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "a,b,label\n1,2,0\n1,abc,1\n").unwrap();
        match load_csv(&path) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unlabelled_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("u.csv");
        std::fs::write(&path, "a,b\n1,2\n3,4\n").unwrap();
        let ds = load_csv(&path).unwrap();
        assert_eq!((ds.n(), ds.dim()), (2, 2));
        assert!(ds.labels().is_none());
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(load_csv("/nonexistent/file.csv"), Err(Error::Io { .. })));
    }

    #[test]
    fn partition_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.csv");
        let p = CrispPartition::new(vec![2, 0, 1, 1], 3).unwrap();
        save_partition(&p, &path).unwrap();
        assert_eq!(load_partition(&path).unwrap(), p);
    }
}
