//! Region vertices as CSV for external plotting.

use std::io::Write;
use std::path::Path;

use crate::csed::CsedRegion;
use crate::decoding::DecodingRegion;
use crate::encoding::RegionFrontier;
use crate::error::{Error, Result};
use crate::hull::Point;
use crate::model::Model;
use crate::rational::{format_rational, format_significant};

pub const HEADER: [&str; 5] = ["L_exact", "D_exact", "L_float", "D_float", "scheme"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRow {
    pub point: Point,
    pub scheme: String,
}

/// `{UU,RR}`: the message chosen for each meaning.
pub fn encoder_label(model: &Model, indices: &[usize]) -> String {
    let msgs = model.language().messages();
    let parts: Vec<&str> = indices.iter().map(|&m| msgs[m].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `{A,A,B}`: the meaning chosen for each received message.
pub fn decoder_label(model: &Model, indices: &[usize]) -> String {
    let meanings = model.language().meanings();
    let parts: Vec<&str> = indices.iter().map(|&w| meanings[w].as_str()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Lower chain then upper chain, one row per scheme.
pub fn frontier_rows(model: &Model, frontier: &RegionFrontier) -> Vec<CsvRow> {
    frontier
        .lower
        .iter()
        .chain(&frontier.upper)
        .map(|v| CsvRow {
            point: v.point.clone(),
            scheme: encoder_label(model, &v.indices),
        })
        .collect()
}

pub fn decoding_rows(model: &Model, region: &DecodingRegion) -> Vec<CsvRow> {
    let [lo, hi] = region.endpoints();
    vec![
        CsvRow {
            point: lo,
            scheme: decoder_label(model, region.best.indices().expect("deterministic")),
        },
        CsvRow {
            point: hi,
            scheme: decoder_label(model, region.worst.indices().expect("deterministic")),
        },
    ]
}

/// Hull vertices, lower chain then upper chain, labelled by the first
/// frontier scheme landing on each vertex.
pub fn csed_rows(model: &Model, region: &CsedRegion) -> Vec<CsvRow> {
    region
        .hull
        .lower
        .iter()
        .chain(&region.hull.upper)
        .map(|p| CsvRow {
            point: p.clone(),
            scheme: region
                .points
                .iter()
                .find(|c| &c.point == p)
                .map(|c| encoder_label(model, &c.indices))
                .unwrap_or_default(),
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[CsvRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record(HEADER).map_err(io)?;
    for row in rows {
        w.write_record([
            format_rational(&row.point.cost),
            format_rational(&row.point.distortion),
            format_significant(&row.point.cost, 12),
            format_significant(&row.point.distortion, 12),
            row.scheme.clone(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_region_csv(rows: &[CsvRow], path: impl AsRef<Path>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(rows, file)
}

/// Reads rows written by [`write_csv`] back, using the exact columns.
pub fn read_csv<R: std::io::Read>(reader: R) -> Result<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut out = Vec::new();
    for record in r.records() {
        let record = record.map_err(io)?;
        let field = |i: usize| record.get(i).unwrap_or_default();
        out.push(CsvRow {
            point: Point::new(
                crate::rational::parse_rational(field(0))?,
                crate::rational::parse_rational(field(1))?,
            ),
            scheme: field(4).to_string(),
        });
    }
    Ok(out)
}
