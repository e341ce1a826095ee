//! Matrix file formats: Matrix Market array (canonical interchange) and CSV
//! with complex literals. Serialization uses 17 significant digits so write
//! followed by read reproduces every double bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkernel::Matrix;

/// Supported on-disk formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    /// `%%MatrixMarket matrix array {complex|real} general`, column-major.
    MatrixMarket,
    /// Rows of comma-separated complex literals (`a`, `bi`, `a+bi`, `a-bi`).
    Csv,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Reads a matrix, sniffing the format: a `%%MatrixMarket` header selects
/// Matrix Market, anything else parses as CSV.
pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text)
}

/// Parses matrix text with format sniffing.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    if text.trim_start().starts_with("%%MatrixMarket") {
        parse_matrix_market(text)
    } else {
        parse_csv(text)
    }
}

/// Writes `m` to `path` in the requested format.
pub fn write_matrix(m: &Matrix, path: &Path, format: MatrixFormat) -> Result<()> {
    std::fs::write(path, format_matrix(m, format))?;
    Ok(())
}

/// Renders `m` in the requested format.
pub fn format_matrix(m: &Matrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::MatrixMarket => format_matrix_market(m),
        MatrixFormat::Csv => format_csv(m),
    }
}

fn real_only(m: &Matrix) -> bool {
    m.entries().iter().all(|z| z.im == 0.0)
}

fn format_matrix_market(m: &Matrix) -> String {
    let real = real_only(m);
    let field = if real { "real" } else { "complex" };
    let mut out = String::new();
    let _ = writeln!(out, "%%MatrixMarket matrix array {field} general");
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    // Column-major per the format convention.
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m.get(i, j);
            if real {
                let _ = writeln!(out, "{:.16e}", z.re);
            } else {
                let _ = writeln!(out, "{:.16e} {:.16e}", z.re, z.im);
            }
        }
    }
    out
}

/// Parses the Matrix Market array format, real or complex, general symmetry.
pub fn parse_matrix_market(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate();

    let (header_idx, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5
        || !tokens[0].eq_ignore_ascii_case("%%MatrixMarket")
        || !tokens[1].eq_ignore_ascii_case("matrix")
    {
        return Err(parse_err(
            header_idx + 1,
            1,
            "expected '%%MatrixMarket matrix array <field> general'",
        ));
    }
    if !tokens[2].eq_ignore_ascii_case("array") {
        return Err(parse_err(
            header_idx + 1,
            3,
            "only the dense 'array' layout is supported",
        ));
    }
    let complex = match tokens[3].to_ascii_lowercase().as_str() {
        "complex" => true,
        "real" => false,
        other => {
            return Err(parse_err(
                header_idx + 1,
                4,
                format!("unsupported field '{other}', expected 'real' or 'complex'"),
            ))
        }
    };
    if !tokens[4].eq_ignore_ascii_case("general") {
        return Err(parse_err(
            header_idx + 1,
            5,
            "only 'general' symmetry is supported",
        ));
    }

    // Skip comments, read the dimension line.
    let mut dims: Option<(usize, usize, usize)> = None;
    for (idx, line) in lines.by_ref() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_err(
                idx + 1,
                1,
                format!(
                    "dimension line must hold two integers, got {} tokens",
                    parts.len()
                ),
            ));
        }
        let m: usize = parts[0]
            .parse()
            .map_err(|_| parse_err(idx + 1, 1, "invalid row count"))?;
        let n: usize = parts[1]
            .parse()
            .map_err(|_| parse_err(idx + 1, 2, "invalid column count"))?;
        dims = Some((m, n, idx + 1));
        break;
    }
    let (rows, cols, dim_line) = dims.ok_or_else(|| parse_err(1, 1, "missing dimension line"))?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(dim_line, 1, "dimensions must be positive"));
    }

    let mut entries = vec![Complex64::new(0.0, 0.0); rows * cols];
    let mut count = 0usize;
    for (idx, line) in lines {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if count >= rows * cols {
            return Err(parse_err(
                idx + 1,
                1,
                "more entries than the dimensions allow",
            ));
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let expected = if complex { 2 } else { 1 };
        if parts.len() != expected {
            return Err(parse_err(
                idx + 1,
                1,
                format!(
                    "expected {expected} number(s) per entry line, got {}",
                    parts.len()
                ),
            ));
        }
        let re: f64 = parts[0]
            .parse()
            .map_err(|_| parse_err(idx + 1, 1, format!("invalid number '{}'", parts[0])))?;
        let im: f64 = if complex {
            parts[1]
                .parse()
                .map_err(|_| parse_err(idx + 1, 2, format!("invalid number '{}'", parts[1])))?
        } else {
            0.0
        };
        // Entries arrive column-major.
        let col = count / rows;
        let row = count % rows;
        entries[row * cols + col] = Complex64::new(re, im);
        count += 1;
    }
    if count != rows * cols {
        return Err(parse_err(
            0,
            1,
            format!("expected {} entries, found {count}", rows * cols),
        ));
    }
    Matrix::new(rows, cols, entries).map_err(|e| parse_err(dim_line, 1, e.to_string()))
}

fn format_complex_literal(z: Complex64) -> String {
    let re = format!("{:.16e}", z.re);
    let im = format!("{:.16e}", z.im);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn format_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| format_complex_literal(m.get(i, j)))
            .collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

/// Parses one complex literal: `a`, `bi`, `a+bi`, or `a-bi`, each part in
/// ordinary float syntax (scientific notation allowed), optional spaces.
/// A bare `i`, `+i`, or `-i` means a unit imaginary part.
pub fn parse_complex_literal(text: &str) -> std::result::Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty literal".to_string());
    }
    if !s.ends_with('i') && !s.ends_with('I') {
        return s
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("invalid real literal '{text}'"));
    }
    let body = &s[..s.len() - 1];
    // Find the split between real and imaginary parts: the last '+'/'-' that
    // is not a leading sign and not part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part
            .parse::<f64>()
            .map_err(|_| format!("invalid real part in '{text}'"))?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_part
            .parse::<f64>()
            .map_err(|_| format!("invalid imaginary part in '{text}'"))?,
    };
    Ok(Complex64::new(re, im))
}

/// Parses CSV rows of complex literals; the shape must be rectangular.
pub fn parse_csv(text: &str) -> Result<Matrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for (col, field) in trimmed.split(',').enumerate() {
            let z = parse_complex_literal(field).map_err(|msg| parse_err(idx + 1, col + 1, msg))?;
            row.push(z);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_err(
                    idx + 1,
                    1,
                    format!("row has {} fields, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, 1, "no data rows"));
    }
    Matrix::from_rows(&rows).map_err(|e| parse_err(1, 1, e.to_string()))
}
