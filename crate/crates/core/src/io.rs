//! Text file formats: edge lists, partition files, attribute-value
//! matrices, fuzzy vector CSVs, and dense matrix CSVs. All parse errors
//! carry the file path and 1-based line number.
//!
//! Formats:
//!
//! - Edge list: whitespace-separated `u v [w]` per line, 0-based node ids,
//!   default weight 1; `#` starts a comment. The writer emits a
//!   `# nodes N` comment so graphs with trailing isolated nodes round-trip;
//!   the reader honors it when present and otherwise infers the node count
//!   from the largest id.
//! - Partition: `node community` per line, every node 0..n-1 exactly once.
//! - Attribute values: one CSV row of n values per characteristic, no
//!   header.
//! - Fuzzy vector: either a direct table with header `node,a,b,c,d`, or a
//!   label dictionary with header `label,a,b,c,d` followed by a
//!   `node,label` header and node rows.
//! - Dense matrix: header row of node ids, then one row of n values per
//!   node; must be symmetric and nonnegative.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyVector, TrapezoidalFuzzySet};
use crate::graph::{Partition, WeightedGraph};

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        msg: msg.into(),
    }
}

fn format_err(path: &Path, msg: impl Into<String>) -> Error {
    Error::Format {
        path: path.display().to_string(),
        msg: msg.into(),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_string(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| io_err(path, e))
}

fn parse_f64(path: &Path, line: usize, token: &str, what: &str) -> Result<f64> {
    token
        .parse::<f64>()
        .map_err(|_| parse_err(path, line, format!("invalid {what} '{token}'")))
}

fn parse_usize(path: &Path, line: usize, token: &str, what: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_err(path, line, format!("invalid {what} '{token}'")))
}

/// Lines with content, paired with their 1-based line numbers; `#`
/// comments and blank lines are skipped (the special `# nodes N` header is
/// handled by the edge-list reader before this filter).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn read_edge_list(path: &Path) -> Result<WeightedGraph> {
    let text = read_to_string(path)?;
    let mut declared_n: Option<usize> = None;
    for (lineno, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        if let Some(rest) = line.strip_prefix('#') {
            let mut parts = rest.split_whitespace();
            if parts.next() == Some("nodes") {
                if let Some(tok) = parts.next() {
                    declared_n = Some(parse_usize(path, lineno, tok, "node count")?);
                }
            }
        }
    }
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut max_id = 0usize;
    for (lineno, line) in content_lines(&text) {
        let mut parts = line.split_whitespace();
        let u = parse_usize(path, lineno, parts.next().unwrap(), "node id")?;
        let v = match parts.next() {
            Some(tok) => parse_usize(path, lineno, tok, "node id")?,
            None => return Err(parse_err(path, lineno, "expected 'u v [w]'")),
        };
        let w = match parts.next() {
            Some(tok) => parse_f64(path, lineno, tok, "weight")?,
            None => 1.0,
        };
        if parts.next().is_some() {
            return Err(parse_err(path, lineno, "expected 'u v [w]', got extra tokens"));
        }
        if !w.is_finite() || w < 0.0 {
            return Err(parse_err(path, lineno, format!("negative weight {w}")));
        }
        max_id = max_id.max(u).max(v);
        edges.push((u, v, w));
    }
    let inferred = if edges.is_empty() { 0 } else { max_id + 1 };
    let n = declared_n.unwrap_or(inferred).max(inferred);
    WeightedGraph::from_edges(n, &edges)
}

/// Writes the upper triangle (`i < j`) of nonzero weights, plus self-loops,
/// omitting weight tokens equal to 1 for compact binary graphs.
pub fn write_edge_list(path: &Path, g: &WeightedGraph) -> Result<()> {
    let mut out = String::new();
    let _ = writeln!(out, "# nodes {}", g.n());
    for i in 0..g.n() {
        for j in i..g.n() {
            let w = g.weight(i, j);
            if w > 0.0 {
                if w == 1.0 {
                    let _ = writeln!(out, "{i} {j}");
                } else {
                    let _ = writeln!(out, "{i} {j} {w}");
                }
            }
        }
    }
    write_string(path, &out)
}

pub fn read_partition(path: &Path) -> Result<Partition> {
    let text = read_to_string(path)?;
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (lineno, line) in content_lines(&text) {
        let mut parts = line.split_whitespace();
        let node = parse_usize(path, lineno, parts.next().unwrap(), "node id")?;
        let community = match parts.next() {
            Some(tok) => parse_usize(path, lineno, tok, "community id")?,
            None => return Err(parse_err(path, lineno, "expected 'node community'")),
        };
        if parts.next().is_some() {
            return Err(parse_err(path, lineno, "expected 'node community', got extra tokens"));
        }
        pairs.push((lineno, node, community));
    }
    let n = pairs.len();
    let mut raw = vec![usize::MAX; n];
    for &(lineno, node, community) in &pairs {
        if node >= n {
            return Err(parse_err(
                path,
                lineno,
                format!("node {node} out of range for {n} lines"),
            ));
        }
        if raw[node] != usize::MAX {
            return Err(parse_err(path, lineno, format!("duplicate node {node}")));
        }
        raw[node] = community;
    }
    // Every slot filled: n lines, ids < n, no duplicates.
    Ok(Partition::from_assignment(&raw))
}

pub fn write_partition(path: &Path, p: &Partition) -> Result<()> {
    let mut out = String::new();
    for (node, &c) in p.assignment().iter().enumerate() {
        let _ = writeln!(out, "{node} {c}");
    }
    write_string(path, &out)
}

/// Reads the `r x n` attribute-value matrix: one comma-separated row per
/// characteristic, no header, all rows the same length.
pub fn read_vectors_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in content_lines(&text) {
        let row: Vec<f64> = line
            .split(',')
            .map(|tok| parse_f64(path, lineno, tok.trim(), "value"))
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(parse_err(
                    path,
                    lineno,
                    format!("row has {} values, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(format_err(path, "no attribute rows"));
    }
    Ok(rows)
}

pub fn write_vectors_csv(path: &Path, rows: &[Vec<f64>]) -> Result<()> {
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(","));
    }
    write_string(path, &out)
}

/// Reads a fuzzy vector in either format (see module docs). Node ids must
/// cover `0..n-1` exactly once.
pub fn read_fuzzy_csv(path: &Path) -> Result<FuzzyVector> {
    let text = read_to_string(path)?;
    let mut lines = content_lines(&text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| format_err(path, "empty fuzzy vector file"))?;
    let header_cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let mut entries: Vec<(usize, usize, TrapezoidalFuzzySet)> = Vec::new();
    if header_cols == ["node", "a", "b", "c", "d"] {
        for (lineno, line) in lines {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 5 {
                return Err(parse_err(path, lineno, "expected 'node,a,b,c,d'"));
            }
            let node = parse_usize(path, lineno, cols[0], "node id")?;
            let fs = parse_trapezoid(path, lineno, &cols[1..])?;
            entries.push((lineno, node, fs));
        }
    } else if header_cols == ["label", "a", "b", "c", "d"] {
        let mut dict: Vec<(String, TrapezoidalFuzzySet)> = Vec::new();
        let mut in_nodes = false;
        for (lineno, line) in lines {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if !in_nodes {
                if cols == ["node", "label"] {
                    in_nodes = true;
                    continue;
                }
                if cols.len() != 5 {
                    return Err(parse_err(
                        path,
                        lineno,
                        "expected 'label,a,b,c,d' or the 'node,label' header",
                    ));
                }
                let fs = parse_trapezoid(path, lineno, &cols[1..])?;
                dict.push((cols[0].to_string(), fs));
            } else {
                if cols.len() != 2 {
                    return Err(parse_err(path, lineno, "expected 'node,label'"));
                }
                let node = parse_usize(path, lineno, cols[0], "node id")?;
                let fs = dict
                    .iter()
                    .find(|(l, _)| l == cols[1])
                    .map(|(_, fs)| *fs)
                    .ok_or_else(|| {
                        parse_err(path, lineno, format!("undefined label '{}'", cols[1]))
                    })?;
                entries.push((lineno, node, fs));
            }
        }
        if !in_nodes {
            return Err(format_err(path, "missing 'node,label' section"));
        }
    } else {
        return Err(parse_err(
            path,
            header_line,
            "expected header 'node,a,b,c,d' or 'label,a,b,c,d'",
        ));
    }
    if entries.is_empty() {
        return Err(format_err(path, "no node rows"));
    }
    let n = entries.len();
    let mut slots: Vec<Option<TrapezoidalFuzzySet>> = vec![None; n];
    for (lineno, node, fs) in entries {
        if node >= n {
            return Err(parse_err(
                path,
                lineno,
                format!("node {node} out of range for {n} rows"),
            ));
        }
        if slots[node].is_some() {
            return Err(parse_err(path, lineno, format!("duplicate node {node}")));
        }
        slots[node] = Some(fs);
    }
    Ok(FuzzyVector::new(slots.into_iter().map(|s| s.unwrap()).collect()))
}

fn parse_trapezoid(path: &Path, lineno: usize, cols: &[&str]) -> Result<TrapezoidalFuzzySet> {
    let a = parse_f64(path, lineno, cols[0], "breakpoint a")?;
    let b = parse_f64(path, lineno, cols[1], "breakpoint b")?;
    let c = parse_f64(path, lineno, cols[2], "breakpoint c")?;
    let d = parse_f64(path, lineno, cols[3], "breakpoint d")?;
    TrapezoidalFuzzySet::new(a, b, c, d)
        .map_err(|e| parse_err(path, lineno, e.to_string()))
}

/// Writes the dense matrix with a header row of node ids.
pub fn write_matrix_csv(path: &Path, g: &WeightedGraph) -> Result<()> {
    let mut out = String::new();
    let header: Vec<String> = (0..g.n()).map(|i| i.to_string()).collect();
    let _ = writeln!(out, "{}", header.join(","));
    for i in 0..g.n() {
        let row: Vec<String> = g.row(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    write_string(path, &out)
}

pub fn read_matrix_csv(path: &Path) -> Result<WeightedGraph> {
    let text = read_to_string(path)?;
    let mut lines = content_lines(&text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| format_err(path, "empty matrix file"))?;
    let n = header.split(',').count();
    for (idx, tok) in header.split(',').enumerate() {
        let id = parse_usize(path, header_line, tok.trim(), "header node id")?;
        if id != idx {
            return Err(parse_err(
                path,
                header_line,
                format!("header id {id} at column {idx}, expected {idx}"),
            ));
        }
    }
    let mut w = Vec::with_capacity(n * n);
    let mut row_count = 0usize;
    for (lineno, line) in lines {
        let row: Vec<f64> = line
            .split(',')
            .map(|tok| parse_f64(path, lineno, tok.trim(), "weight"))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(
                path,
                lineno,
                format!("row has {} values, expected {n}", row.len()),
            ));
        }
        w.extend(row);
        row_count += 1;
    }
    if row_count != n {
        return Err(format_err(
            path,
            format!("matrix has {row_count} rows, expected {n}"),
        ));
    }
    WeightedGraph::from_flat(n, w)
}
