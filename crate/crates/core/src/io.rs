//! CSV formats: points (`x,y`) and edge lists (`u,v`, 0-based, `u < v`).
//!
//! Edge files carry no vertex count; it is taken as one past the largest
//! index, so trailing isolated vertices are not represented.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("expected header {expected:?}, found {found:?}")]
    Header { expected: &'static str, found: String },
    #[error("record {record}: {detail}")]
    Parse { record: usize, detail: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_header<R: Read>(reader: &mut csv::Reader<R>, expected: &'static str) -> Result<(), IoError> {
    let found = reader.headers()?.iter().map(str::trim).collect::<Vec<_>>().join(",");
    if found != expected {
        return Err(IoError::Header { expected, found });
    }
    Ok(())
}

fn field<T: std::str::FromStr>(record: &csv::StringRecord, i: usize, index: usize) -> Result<T, IoError>
where
    T::Err: std::fmt::Display,
{
    let raw = record.get(i).ok_or_else(|| IoError::Parse {
        record: index,
        detail: format!("missing column {i}"),
    })?;
    raw.trim().parse().map_err(|e| IoError::Parse {
        record: index,
        detail: format!("{raw:?}: {e}"),
    })
}

/// Writes points with 17 significant digits, enough to round-trip `f64`.
pub fn write_points<W: Write>(out: W, points: &[[f64; 2]]) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y"])?;
    for p in points {
        w.write_record([format!("{:.16e}", p[0]), format!("{:.16e}", p[1])])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points<R: Read>(input: R) -> Result<Vec<[f64; 2]>, IoError> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, "x,y")?;
    let mut points = Vec::new();
    for (index, record) in r.records().enumerate() {
        let record = record?;
        points.push([field(&record, 0, index)?, field(&record, 1, index)?]);
    }
    Ok(points)
}

pub fn write_edges<W: Write>(out: W, g: &Graph) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["u", "v"])?;
    for (u, v) in g.edges() {
        w.write_record([u.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_edges<R: Read>(input: R) -> Result<Graph, IoError> {
    let mut r = csv::Reader::from_reader(input);
    check_header(&mut r, "u,v")?;
    let mut edges = Vec::new();
    for (index, record) in r.records().enumerate() {
        let record = record?;
        edges.push((field::<usize>(&record, 0, index)?, field::<usize>(&record, 1, index)?));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Ok(Graph::from_edges(n, edges)?)
}

pub fn read_points_file(path: impl AsRef<Path>) -> Result<Vec<[f64; 2]>, IoError> {
    read_points(File::open(path)?)
}

pub fn write_points_file(path: impl AsRef<Path>, points: &[[f64; 2]]) -> Result<(), IoError> {
    write_points(File::create(path)?, points)
}

pub fn read_edges_file(path: impl AsRef<Path>) -> Result<Graph, IoError> {
    read_edges(File::open(path)?)
}

pub fn write_edges_file(path: impl AsRef<Path>, g: &Graph) -> Result<(), IoError> {
    write_edges(File::create(path)?, g)
}
