//! TSPLIB `.tsp` and `.tour` text formats.

use std::fmt::Write as _;

use super::{EdgeWeightType, Instance};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatrixFormat {
    Full,
    UpperRow,
    LowerRow,
    UpperDiagRow,
    LowerDiagRow,
}

impl MatrixFormat {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "FULL_MATRIX" => Ok(Self::Full),
            "UPPER_ROW" => Ok(Self::UpperRow),
            "LOWER_ROW" => Ok(Self::LowerRow),
            "UPPER_DIAG_ROW" => Ok(Self::UpperDiagRow),
            "LOWER_DIAG_ROW" => Ok(Self::LowerDiagRow),
            other => Err(Error::UnsupportedEdgeWeightFormat(other.to_string())),
        }
    }

    fn entry_count(self, n: usize) -> usize {
        match self {
            Self::Full => n * n,
            Self::UpperRow | Self::LowerRow => n * (n - 1) / 2,
            Self::UpperDiagRow | Self::LowerDiagRow => n * (n + 1) / 2,
        }
    }

    /// Visits matrix cells in the order the format lists them.
    fn cells(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.entry_count(n));
        for i in 0..n {
            let range = match self {
                Self::Full => 0..n,
                Self::UpperRow => (i + 1)..n,
                Self::UpperDiagRow => i..n,
                Self::LowerRow => 0..i,
                Self::LowerDiagRow => 0..(i + 1),
            };
            out.extend(range.map(|j| (i, j)));
        }
        out
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn split_keyword(line: &str) -> (String, &str) {
    match line.split_once(':') {
        Some((k, v)) => (k.trim().to_ascii_uppercase(), v.trim()),
        None => (line.trim().to_ascii_uppercase(), ""),
    }
}

fn starts_numeric(line: &str) -> bool {
    line.trim_start()
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || c == '-' || c == '+' || c == '.')
}

/// Parses a symmetric TSPLIB problem file.
pub fn parse_tsplib(text: &str) -> Result<Instance> {
    let lines: Vec<&str> = text.lines().collect();
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut kind: Option<EdgeWeightType> = None;
    let mut format: Option<MatrixFormat> = None;
    let mut coords: Option<Vec<[f64; 2]>> = None;
    let mut display: Option<Vec<[f64; 2]>> = None;
    let mut weights: Option<Vec<f64>> = None;

    let mut idx = 0;
    while idx < lines.len() {
        let lineno = idx + 1;
        let raw = lines[idx].trim();
        idx += 1;
        if raw.is_empty() {
            continue;
        }
        let (key, value) = split_keyword(raw);
        match key.as_str() {
            "EOF" => break,
            "NAME" => name = value.to_string(),
            "TYPE" => {
                let t = value.to_ascii_uppercase();
                if !t.starts_with("TSP") {
                    return Err(Error::UnsupportedProblemType(value.to_string()));
                }
            }
            "DIMENSION" => {
                let d = value
                    .parse::<usize>()
                    .map_err(|_| parse_err(lineno, format!("bad DIMENSION {value:?}")))?;
                dimension = Some(d);
            }
            "EDGE_WEIGHT_TYPE" => kind = Some(value.parse()?),
            "EDGE_WEIGHT_FORMAT" => format = Some(MatrixFormat::parse(value)?),
            "NODE_COORD_SECTION" | "DISPLAY_DATA_SECTION" => {
                let n = dimension.ok_or(Error::MissingDimension)?;
                let (pts, next) = read_coordinates(&lines, idx, n)?;
                idx = next;
                if key == "NODE_COORD_SECTION" {
                    coords = Some(pts);
                } else {
                    display = Some(pts);
                }
            }
            "EDGE_WEIGHT_SECTION" => {
                let n = dimension.ok_or(Error::MissingDimension)?;
                let fmt = format.unwrap_or(MatrixFormat::Full);
                let (vals, next) = read_numbers(&lines, idx, fmt.entry_count(n))?;
                idx = next;
                let mut m = vec![0.0; n * n];
                for ((i, j), v) in fmt.cells(n).into_iter().zip(vals) {
                    m[i * n + j] = v;
                    m[j * n + i] = v;
                }
                weights = Some(m);
            }
            // COMMENT, NODE_COORD_TYPE, DISPLAY_DATA_TYPE, CAPACITY, ...
            _ => {}
        }
    }

    let n = dimension.ok_or(Error::MissingDimension)?;
    let kind = kind.unwrap_or(EdgeWeightType::Euc2d);
    match kind {
        EdgeWeightType::Explicit => {
            let m = weights.ok_or_else(|| parse_err(0, "EXPLICIT instance without EDGE_WEIGHT_SECTION"))?;
            Instance::explicit(name, n, m, display)
        }
        _ => {
            let c = coords.ok_or_else(|| parse_err(0, "missing NODE_COORD_SECTION"))?;
            Instance::new(name, kind, c)
        }
    }
}

/// Reads exactly `n` coordinate lines `id x y` starting at `start`.
fn read_coordinates(lines: &[&str], start: usize, n: usize) -> Result<(Vec<[f64; 2]>, usize)> {
    let mut pts: Vec<Option<[f64; 2]>> = vec![None; n];
    let mut found = 0;
    let mut idx = start;
    while idx < lines.len() && starts_numeric(lines[idx]) {
        let lineno = idx + 1;
        let mut it = lines[idx].split_whitespace();
        idx += 1;
        let id: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(lineno, "bad node id"))?;
        let mut num = || -> Result<f64> {
            it.next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(lineno, "bad coordinate"))
        };
        let x = num()?;
        let y = num()?;
        if id == 0 || id > n {
            return Err(Error::CoordinateCountMismatch {
                expected: n,
                found: found + 1,
            });
        }
        if pts[id - 1].replace([x, y]).is_some() {
            return Err(parse_err(lineno, format!("node {id} listed twice")));
        }
        found += 1;
    }
    if found != n {
        return Err(Error::CoordinateCountMismatch { expected: n, found });
    }
    Ok((pts.into_iter().map(|p| p.expect("all ids seen")).collect(), idx))
}

fn read_numbers(lines: &[&str], start: usize, count: usize) -> Result<(Vec<f64>, usize)> {
    let mut vals = Vec::with_capacity(count);
    let mut idx = start;
    while vals.len() < count && idx < lines.len() && starts_numeric(lines[idx]) {
        for tok in lines[idx].split_whitespace() {
            vals.push(tok.parse().map_err(|_| parse_err(idx + 1, format!("bad weight {tok:?}")))?);
        }
        idx += 1;
    }
    if vals.len() != count {
        return Err(Error::CoordinateCountMismatch {
            expected: count,
            found: vals.len(),
        });
    }
    Ok((vals, idx))
}

/// Serializes an instance to TSPLIB text. Coordinates are written with the
/// shortest round-tripping representation, so re-parsing is lossless.
pub fn write_tsplib(inst: &Instance) -> String {
    let mut s = String::new();
    let n = inst.n();
    let _ = writeln!(s, "NAME : {}", inst.name());
    let _ = writeln!(s, "TYPE : TSP");
    let _ = writeln!(s, "DIMENSION : {n}");
    let _ = writeln!(s, "EDGE_WEIGHT_TYPE : {}", inst.edge_weight_type());
    if inst.edge_weight_type() == EdgeWeightType::Explicit {
        let _ = writeln!(s, "EDGE_WEIGHT_FORMAT : FULL_MATRIX");
        let _ = writeln!(s, "EDGE_WEIGHT_SECTION");
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| if i == j { "0".into() } else { inst.checked_cost(i, j).unwrap().to_string() })
                .collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        if !inst.coords().is_empty() {
            let _ = writeln!(s, "DISPLAY_DATA_SECTION");
            for (i, [x, y]) in inst.coords().iter().enumerate() {
                let _ = writeln!(s, "{} {} {}", i + 1, x, y);
            }
        }
    } else {
        let _ = writeln!(s, "NODE_COORD_SECTION");
        for (i, [x, y]) in inst.coords().iter().enumerate() {
            let _ = writeln!(s, "{} {} {}", i + 1, x, y);
        }
    }
    s.push_str("EOF\n");
    s
}

/// Parses a TSPLIB `.tour` file into 0-based vertex order. The entries must
/// be a permutation of `0..len`.
pub fn parse_tour(text: &str) -> Result<Vec<usize>> {
    let mut dimension = None;
    let mut order = Vec::new();
    let mut in_section = false;
    'lines: for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !in_section {
            let (key, value) = split_keyword(line);
            match key.as_str() {
                "DIMENSION" => {
                    dimension = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| parse_err(idx + 1, format!("bad DIMENSION {value:?}")))?,
                    )
                }
                "TOUR_SECTION" => in_section = true,
                "EOF" => break,
                _ => {}
            }
            continue;
        }
        for tok in line.split_whitespace() {
            if tok == "EOF" {
                break 'lines;
            }
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(idx + 1, format!("bad tour entry {tok:?}")))?;
            if v == -1 {
                break 'lines;
            }
            if v < 1 {
                return Err(parse_err(idx + 1, format!("tour entry {v} is not a 1-based vertex")));
            }
            order.push(v as usize - 1);
        }
    }
    if !in_section {
        return Err(parse_err(0, "missing TOUR_SECTION"));
    }
    if let Some(d) = dimension {
        if d != order.len() {
            return Err(Error::CoordinateCountMismatch {
                expected: d,
                found: order.len(),
            });
        }
    }
    super::tour::check_permutation(order.len(), &order)?;
    Ok(order)
}

/// Writes a TSPLIB `.tour` file (1-based indices, `-1` terminator).
pub fn write_tour(name: &str, comment: &str, order: &[usize]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "NAME : {name}");
    let _ = writeln!(s, "COMMENT : {comment}");
    let _ = writeln!(s, "TYPE : TOUR");
    let _ = writeln!(s, "DIMENSION : {}", order.len());
    let _ = writeln!(s, "TOUR_SECTION");
    for v in order {
        let _ = writeln!(s, "{}", v + 1);
    }
    s.push_str("-1\nEOF\n");
    s
}
