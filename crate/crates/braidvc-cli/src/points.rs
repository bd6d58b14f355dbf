//! Point-set file format: one `x y` pair per line, exact decimal or integer
//! literals, `#` comments. Decimals are scaled to exact integers per axis
//! (order and closed-interval membership are scale-invariant).

use braidvc_core::slabs::{Coord, PointSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointsError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for PointsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

fn err(line: usize, message: impl Into<String>) -> PointsError {
    PointsError {
        line,
        message: message.into(),
    }
}

/// Sign, integer digits, fractional digits.
#[derive(Debug, Clone)]
struct Decimal {
    neg: bool,
    digits: String,
    frac_len: usize,
}

fn parse_decimal(tok: &str, line: usize) -> Result<Decimal, PointsError> {
    let (neg, rest) = match tok.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, tok.strip_prefix('+').unwrap_or(tok)),
    };
    let bad = || {
        err(
            line,
            format!("`{}` is not an integer or decimal literal", tok),
        )
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    Ok(Decimal {
        neg,
        digits: format!("{}{}", int_part, frac_part),
        frac_len: frac_part.len(),
    })
}

fn scale_to_coord(d: &Decimal, extra_zeros: usize, line: usize) -> Result<Coord, PointsError> {
    let mut val: i128 = 0;
    for c in d
        .digits
        .chars()
        .chain(std::iter::repeat_n('0', extra_zeros))
    {
        val = val
            .checked_mul(10)
            .and_then(|v| v.checked_add((c as u8 - b'0') as i128))
            .ok_or_else(|| err(line, "coordinate overflows exact arithmetic"))?;
    }
    Ok(if d.neg { -val } else { val })
}

pub fn parse(input: &str) -> Result<PointSet, PointsError> {
    let mut rows: Vec<(usize, Decimal, Decimal)> = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(lineno, "expected `x y`"));
        }
        rows.push((
            lineno,
            parse_decimal(toks[0], lineno)?,
            parse_decimal(toks[1], lineno)?,
        ));
    }
    let x_scale = rows.iter().map(|(_, x, _)| x.frac_len).max().unwrap_or(0);
    let y_scale = rows.iter().map(|(_, _, y)| y.frac_len).max().unwrap_or(0);
    let mut points = Vec::with_capacity(rows.len());
    for (lineno, x, y) in &rows {
        points.push((
            scale_to_coord(x, x_scale - x.frac_len, *lineno)?,
            scale_to_coord(y, y_scale - y.frac_len, *lineno)?,
        ));
    }
    PointSet::new(points).map_err(|e| err(0, e.to_string()))
}

pub fn write(points: &PointSet) -> String {
    let mut out = String::new();
    for &(x, y) in points.points() {
        out.push_str(&format!("{} {}\n", x, y));
    }
    out
}
