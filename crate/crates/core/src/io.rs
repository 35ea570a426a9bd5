//! Reading and writing dense matrices as Matrix Market or headerless CSV.
//!
//! Matrix Market `array` files list entries in column-major order; the
//! `coordinate` form lists 1-based `(i, j, value)` triples and leaves every
//! other entry zero. Values are written in the shortest form that parses
//! back to the same `f64`, so save→load round trips are bit-exact.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    /// Pick by file extension, then by content.
    Auto,
    MatrixMarket,
    /// Matrix Market `coordinate` output (input is handled by `MatrixMarket`).
    MatrixMarketCoordinate,
    Csv,
}

impl FromStr for MatrixFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Self::Auto),
            "mtx" | "mm" | "matrix-market" | "array" => Ok(Self::MatrixMarket),
            "coordinate" | "mtx-coordinate" => Ok(Self::MatrixMarketCoordinate),
            "csv" => Ok(Self::Csv),
            other => Err(Error::invalid(format!("unknown matrix format {other:?}"))),
        }
    }
}

impl fmt::Display for MatrixFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Auto => "auto",
            Self::MatrixMarket => "matrix-market",
            Self::MatrixMarketCoordinate => "coordinate",
            Self::Csv => "csv",
        })
    }
}

/// Shortest decimal text that parses back to exactly `x`.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_value(tok: &str, line: usize, column: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, column, format!("cannot parse {tok:?} as a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, column, format!("non-finite value {tok:?}")));
    }
    Ok(v)
}

fn parse_index(tok: &str, bound: usize, line: usize, column: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| parse_err(line, column, format!("cannot parse {tok:?} as an index")))?;
    if v == 0 || v > bound {
        return Err(parse_err(line, column, format!("index {v} outside 1..={bound}")));
    }
    Ok(v - 1)
}

/// Parse Matrix Market text (`array` or `coordinate`, `real`/`integer`,
/// `general`/`symmetric`).
pub fn parse_matrix_market(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty file"))?;
    let head: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if head.len() != 5 || head[0] != "%%matrixmarket" || head[1] != "matrix" {
        return Err(parse_err(
            1,
            1,
            "expected header \"%%MatrixMarket matrix <array|coordinate> <field> <symmetry>\"",
        ));
    }
    let coordinate = match head[2].as_str() {
        "array" => false,
        "coordinate" => true,
        other => return Err(parse_err(1, 1, format!("unsupported layout {other:?}"))),
    };
    if !matches!(head[3].as_str(), "real" | "integer" | "double") {
        return Err(parse_err(1, 1, format!("unsupported field {:?}", head[3])));
    }
    let symmetric = match head[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(parse_err(1, 1, format!("unsupported symmetry {other:?}"))),
    };

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_err(2, 1, "missing size line"))?;
    let size_toks = tokens(size);
    let want = if coordinate { 3 } else { 2 };
    if size_toks.len() != want {
        return Err(parse_err(
            size_line,
            1,
            format!("size line needs {want} integers, found {}", size_toks.len()),
        ));
    }
    let dim = |idx: usize| -> Result<usize> {
        let (col, tok) = size_toks[idx];
        tok.parse::<usize>()
            .map_err(|_| parse_err(size_line, col, format!("cannot parse {tok:?} as a size")))
    };
    let (rows, cols) = (dim(0)?, dim(1)?);
    if rows == 0 || cols == 0 {
        return Err(parse_err(size_line, 1, "matrix dimensions must be positive"));
    }
    if symmetric && rows != cols {
        return Err(parse_err(size_line, 1, "symmetric matrix must be square"));
    }
    let mut m = DenseMatrix::zeros(rows, cols);

    if coordinate {
        let nnz = dim(2)?;
        let mut seen = 0usize;
        for (ln, line) in body {
            let toks = tokens(line);
            if toks.len() != 3 {
                return Err(parse_err(ln, 1, format!("expected \"i j value\", found {} fields", toks.len())));
            }
            if seen == nnz {
                return Err(parse_err(ln, 1, format!("more than the declared {nnz} entries")));
            }
            let i = parse_index(toks[0].1, rows, ln, toks[0].0)?;
            let j = parse_index(toks[1].1, cols, ln, toks[1].0)?;
            let v = parse_value(toks[2].1, ln, toks[2].0)?;
            if symmetric && j > i {
                return Err(parse_err(ln, toks[0].0, "symmetric files store the lower triangle only"));
            }
            m[(i, j)] = v;
            if symmetric {
                m[(j, i)] = v;
            }
            seen += 1;
        }
        if seen != nnz {
            return Err(parse_err(size_line, 1, format!("declared {nnz} entries, found {seen}")));
        }
    } else {
        // Column-major; symmetric arrays store the lower triangle column by column.
        let positions: Vec<(usize, usize)> = (0..cols)
            .flat_map(|j| (if symmetric { j } else { 0 }..rows).map(move |i| (i, j)))
            .collect();
        let mut next = 0usize;
        let mut last_line = size_line;
        for (ln, line) in body {
            last_line = ln;
            for (col, tok) in tokens(line) {
                let Some(&(i, j)) = positions.get(next) else {
                    return Err(parse_err(ln, col, format!("more than the {} expected values", positions.len())));
                };
                let v = parse_value(tok, ln, col)?;
                m[(i, j)] = v;
                if symmetric {
                    m[(j, i)] = v;
                }
                next += 1;
            }
        }
        if next != positions.len() {
            return Err(parse_err(
                last_line,
                1,
                format!("expected {} values, found {next}", positions.len()),
            ));
        }
    }
    Ok(m)
}

/// Parse headerless comma-separated rows.
pub fn parse_csv(text: &str) -> Result<DenseMatrix> {
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0usize;
    for (idx, line) in text.lines().enumerate() {
        let ln = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut offset = 0usize;
        let mut count = 0usize;
        for field in line.split(',') {
            let col = offset + 1 + (field.len() - field.trim_start().len());
            data.push(parse_value(field.trim(), ln, col)?);
            offset += field.len() + 1;
            count += 1;
        }
        match cols {
            None => cols = Some(count),
            Some(c) if c != count => {
                return Err(parse_err(ln, 1, format!("row has {count} fields, expected {c}")));
            }
            _ => {}
        }
        rows += 1;
    }
    let cols = cols.ok_or_else(|| parse_err(1, 1, "no data rows"))?;
    DenseMatrix::from_row_major(rows, cols, data)
}

fn detect(path: &Path, text: &str) -> MatrixFormat {
    match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
        Some("mtx") | Some("mm") => MatrixFormat::MatrixMarket,
        Some("csv") => MatrixFormat::Csv,
        _ if text.trim_start().starts_with("%%MatrixMarket") => MatrixFormat::MatrixMarket,
        _ => MatrixFormat::Csv,
    }
}

/// Parse matrix text in the given format.
pub fn parse_matrix(text: &str, format: MatrixFormat) -> Result<DenseMatrix> {
    match format {
        MatrixFormat::Csv => parse_csv(text),
        MatrixFormat::MatrixMarket | MatrixFormat::MatrixMarketCoordinate => parse_matrix_market(text),
        MatrixFormat::Auto => {
            if text.trim_start().starts_with("%%MatrixMarket") {
                parse_matrix_market(text)
            } else {
                parse_csv(text)
            }
        }
    }
}

pub fn load_matrix(path: impl AsRef<Path>, format: MatrixFormat) -> Result<DenseMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let format = match format {
        MatrixFormat::Auto => detect(path, &text),
        f => f,
    };
    parse_matrix(&text, format)
}

/// Matrix Market `array real general`, column-major.
pub fn write_matrix_market<W: Write>(m: &DenseMatrix, mut w: W) -> std::io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            writeln!(w, "{}", format_f64(m[(i, j)]))?;
        }
    }
    Ok(())
}

/// Matrix Market `coordinate real general` listing every entry other than
/// `+0.0` (`-0.0` is kept so reloading is bit-exact).
pub fn write_matrix_market_coordinate<W: Write>(m: &DenseMatrix, mut w: W) -> std::io::Result<()> {
    let nnz = m.as_slice().iter().filter(|v| v.to_bits() != 0).count();
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {nnz}", m.rows(), m.cols())?;
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let v = m[(i, j)];
            if v.to_bits() != 0 {
                writeln!(w, "{} {} {}", i + 1, j + 1, format_f64(v))?;
            }
        }
    }
    Ok(())
}

pub fn write_csv<W: Write>(m: &DenseMatrix, mut w: W) -> std::io::Result<()> {
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|&v| format_f64(v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Serialize to a string in the given format (`Auto` writes Matrix Market).
pub fn matrix_to_string(m: &DenseMatrix, format: MatrixFormat) -> String {
    let mut buf = Vec::new();
    match format {
        MatrixFormat::Csv => write_csv(m, &mut buf),
        MatrixFormat::MatrixMarketCoordinate => write_matrix_market_coordinate(m, &mut buf),
        MatrixFormat::Auto | MatrixFormat::MatrixMarket => write_matrix_market(m, &mut buf),
    }
    .expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ASCII output")
}

/// Write `m` to `path`; `Auto` picks CSV for a `.csv` extension and Matrix
/// Market otherwise.
pub fn save_matrix(m: &DenseMatrix, path: impl AsRef<Path>, format: MatrixFormat) -> Result<()> {
    let path = path.as_ref();
    let format = match format {
        MatrixFormat::Auto => match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => MatrixFormat::Csv,
            _ => MatrixFormat::MatrixMarket,
        },
        f => f,
    };
    fs::write(path, matrix_to_string(m, format))?;
    Ok(())
}
