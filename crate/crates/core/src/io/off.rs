//! ASCII OFF reader and writer.
//!
//! The writer emits `OFF`, then `V F E`, then one vertex per line with
//! every coordinate in `{:.16e}` form (17 significant digits, exact for
//! `f64`), then one face per line as `k i_1 ... i_k`. Lines end in LF.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::poly_core::PolyhedralComplex;
use crate::realization::{Realization, RealizationSource};

pub fn write_off(r: &Realization) -> Result<String> {
    write_off_parts(&r.coords, &r.complex)
}

pub fn write_off_parts(coords: &DMatrix<f64>, complex: &PolyhedralComplex) -> Result<String> {
    if coords.ncols() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            found: coords.ncols(),
        });
    }
    let mut out = String::new();
    out.push_str("OFF\n");
    let _ = writeln!(
        out,
        "{} {} {}",
        complex.vertex_count(),
        complex.face_count(),
        complex.edge_count()
    );
    for i in 0..coords.nrows() {
        let _ = writeln!(
            out,
            "{:.16e} {:.16e} {:.16e}",
            coords[(i, 0)],
            coords[(i, 1)],
            coords[(i, 2)]
        );
    }
    for face in complex.faces() {
        let _ = write!(out, "{}", face.len());
        for v in face {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    Ok(out)
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} '{tok}'")))
}

/// Parses an ASCII OFF mesh. The header may carry the counts on the same
/// line (`OFF V F E`). The edge count must be 0 or match the faces.
pub fn parse_off(text: &str) -> Result<Realization> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("OFF") {
        return Err(parse_err(hline, "missing OFF header"));
    }
    let mut rest: Vec<&str> = tokens.collect();
    let mut count_line = hline;
    if rest.is_empty() {
        let (l, body) = lines.next().ok_or_else(|| parse_err(hline + 1, "missing counts line"))?;
        rest = body.split_whitespace().collect();
        count_line = l;
    }
    if rest.len() != 3 {
        return Err(parse_err(count_line, "counts line must be 'V F E'"));
    }
    let v: usize = parse_num(rest[0], count_line, "vertex count")?;
    let f: usize = parse_num(rest[1], count_line, "face count")?;
    let e: usize = parse_num(rest[2], count_line, "edge count")?;

    let mut coords = DMatrix::zeros(v, 3);
    for i in 0..v {
        let (l, body) = lines
            .next()
            .ok_or_else(|| parse_err(count_line, format!("expected {v} vertices, found {i}")))?;
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(l, format!("vertex line needs 3 coordinates, found {}", toks.len())));
        }
        for (j, t) in toks.iter().enumerate() {
            let x: f64 = parse_num(t, l, "coordinate")?;
            if !x.is_finite() {
                return Err(parse_err(l, "non-finite coordinate"));
            }
            coords[(i, j)] = x;
        }
    }
    let mut faces = Vec::with_capacity(f);
    let mut last_line = count_line;
    for k in 0..f {
        let (l, body) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, format!("expected {f} faces, found {k}")))?;
        last_line = l;
        let toks: Vec<&str> = body.split_whitespace().collect();
        let len: usize = parse_num(toks[0], l, "face size")?;
        if toks.len() != len + 1 {
            return Err(parse_err(l, format!("face declares {len} vertices but lists {}", toks.len() - 1)));
        }
        let face = toks[1..]
            .iter()
            .map(|t| parse_num(t, l, "vertex index"))
            .collect::<Result<Vec<usize>>>()?;
        faces.push(face);
    }
    if let Some((l, _)) = lines.next() {
        return Err(parse_err(l, "trailing content after the last face"));
    }
    let complex = PolyhedralComplex::new(v, faces)?;
    if e != 0 && e != complex.edge_count() {
        return Err(parse_err(
            count_line,
            format!("edge count {e} does not match the {} edges of the faces", complex.edge_count()),
        ));
    }
    Realization::new(coords, RealizationSource::File { path: String::new() }, complex)
}
