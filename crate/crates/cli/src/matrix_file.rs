//! Plain-text snapshot matrices.
//!
//! ```text
//! K,N
//! re,im,re,im,...      (K lines, 2N fields each, snapshot-major within a line)
//! ```
//!
//! Line and column numbers in errors are 1-based; the column points at the
//! first character of the offending field.

use num_complex::Complex64;
use spike_detect::spectrum::SnapshotMatrix;

use crate::CliError;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, column, message: message.into() }
}

/// Splits a line on commas, returning each trimmed field with the column where it starts.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for part in line.split(',') {
        let lead = part.len() - part.trim_start().len();
        out.push((start + lead + 1, part.trim()));
        start += part.len() + 1;
    }
    out
}

pub fn parse(text: &str) -> Result<SnapshotMatrix, CliError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_error(1, 1, "empty file; expected header \"K,N\""))?;
    let head = fields(header.trim_end_matches('\r'));
    if head.len() != 2 {
        return Err(parse_error(1, 1, format!("header must be \"K,N\", found {} fields", head.len())));
    }
    let dim = |(col, s): (usize, &str), name: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_error(1, col, format!("{name} must be a positive integer, found {s:?}")))
            .and_then(|v| if v == 0 { Err(parse_error(1, col, format!("{name} must be positive"))) } else { Ok(v) })
    };
    let k = dim(head[0], "K")?;
    let n = dim(head[1], "N")?;

    let mut data = Vec::with_capacity(k * n);
    let mut rows = 0;
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        if rows == k {
            return Err(parse_error(line_no, 1, format!("expected {k} data lines, found more")));
        }
        let parts = fields(line);
        if parts.len() != 2 * n {
            return Err(parse_error(line_no, 1, format!("expected {} fields (re,im for {n} snapshots), found {}", 2 * n, parts.len())));
        }
        let mut values = parts.iter().map(|&(col, s)| match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(parse_error(line_no, col, format!("expected a finite decimal, found {s:?}"))),
        });
        while let Some(re) = values.next() {
            let im = values.next().expect("field count is even");
            data.push(Complex64::new(re?, im?));
        }
        rows += 1;
    }
    if rows != k {
        return Err(parse_error(text.lines().count() + 1, 1, format!("expected {k} data lines, found {rows}")));
    }
    Ok(SnapshotMatrix::new(k, n, data)?)
}
