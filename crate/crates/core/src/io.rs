//! Text curve files and CSV exports.
//!
//! A curve file has optional `#` comment lines, a `closed` or `open` line, then
//! one vertex per line as three whitespace-separated floats.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::distortion::Shadow;
use crate::error::{Error, Result};
use crate::geometry::{PolygonalCurve, Vec3};

const NAME_TAG: &str = "# name:";

/// Parses the curve file format. A `# name: ...` comment sets the curve name.
pub fn parse_curve(text: &str) -> Result<PolygonalCurve> {
    let mut closed = None;
    let mut name = None;
    let mut vertices = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(NAME_TAG) {
            name = Some(rest.trim().to_string());
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if closed.is_none() {
            closed = Some(match line {
                "closed" => true,
                "open" => false,
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected \"closed\" or \"open\", found {other:?}"),
                    })
                }
            });
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 coordinates, found {}", fields.len()),
            });
        }
        let mut xyz = [0.0; 3];
        for (slot, f) in xyz.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not a number: {f:?}"),
            })?;
        }
        vertices.push(Vec3::new(xyz[0], xyz[1], xyz[2]));
    }
    let closed = closed.ok_or(Error::Parse {
        line: 0,
        message: "missing \"closed\"/\"open\" line".into(),
    })?;
    let curve = PolygonalCurve::new(vertices, closed)?;
    Ok(match name {
        Some(n) => curve.with_name(n),
        None => curve,
    })
}

/// Formats a curve with 17 significant digits per coordinate.
pub fn format_curve(curve: &PolygonalCurve) -> String {
    let mut out = String::new();
    if let Some(n) = curve.name() {
        let _ = writeln!(out, "{NAME_TAG} {n}");
    }
    out.push_str(if curve.is_closed() { "closed\n" } else { "open\n" });
    for v in curve.vertices() {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
    }
    out
}

pub fn read_curve(path: impl AsRef<Path>) -> Result<PolygonalCurve> {
    parse_curve(&fs::read_to_string(path)?)
}

pub fn write_curve(path: impl AsRef<Path>, curve: &PolygonalCurve) -> Result<()> {
    fs::write(path, format_curve(curve))?;
    Ok(())
}

/// Shadow samples as CSV with columns `s,value`.
pub fn write_shadow_csv(path: impl AsRef<Path>, shadow: &Shadow) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["s", "value"]).map_err(csv_err)?;
    for (s, v) in shadow.samples() {
        w.write_record([s.to_string(), v.to_string()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
