//! graph6 encoding and DIMACS edge-list reading.
//!
//! graph6 layout: a size field `N(n)` followed by the upper triangle of the
//! adjacency matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed six bits per byte, each byte offset by 63. `N(n)` is one byte for
//! `n <= 62`, `~` plus three bytes for `n <= 258047`, and `~~` plus six bytes
//! otherwise.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;
const LONG_MAX: usize = (1 << 36) - 1;
/// Guards allocation on hostile headers.
pub const MAX_GRAPH6_VERTICES: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("byte {offset}: empty input")]
    Empty { offset: usize },
    #[error("byte {offset}: 0x{byte:02x} is not a graph6 character")]
    BadByte { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated input, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: {n} vertices exceeds the supported maximum")]
    TooLarge { offset: usize, n: usize },
    #[error("byte {offset}: unexpected trailing data")]
    Trailing { offset: usize },
    #[error("line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, ParseError> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(ParseError::BadByte { offset, byte: b }),
        None => Err(ParseError::Truncated {
            offset,
            expected: offset + 1,
        }),
    }
}

fn read_size(bytes: &[u8]) -> Result<(usize, usize), ParseError> {
    let first = *bytes.first().ok_or(ParseError::Empty { offset: 0 })?;
    if first != b'~' {
        return Ok((sextet(bytes, 0)? as usize, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&b'~') { (2, 6) } else { (1, 3) };
    let mut n = 0u64;
    for i in 0..width {
        n = (n << 6) | sextet(bytes, start + i)?;
    }
    Ok((n as usize, start + width))
}

/// Decodes one graph6 line; a `>>graph6<<` header and trailing newline are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = bytes.strip_prefix(b">>graph6<<") {
        bytes = rest;
        base = 10;
    }
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    let (n, mut pos) = read_size(bytes).map_err(|e| shift(e, base))?;
    if n > MAX_GRAPH6_VERTICES {
        return Err(ParseError::TooLarge { offset: base, n });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let nbytes = bits.div_ceil(6);
    if bytes.len() < pos + nbytes {
        return Err(ParseError::Truncated {
            offset: base + bytes.len(),
            expected: base + pos + nbytes,
        });
    }
    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0;
    while k < bits {
        let chunk = sextet(bytes, pos).map_err(|e| shift(e, base))?;
        for b in (0..6).rev() {
            if k == bits {
                break;
            }
            if chunk >> b & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
        pos += 1;
    }
    if pos != bytes.len() {
        return Err(ParseError::Trailing { offset: base + pos });
    }
    Ok(Graph::new(n, &edges)?)
}

fn shift(e: ParseError, base: usize) -> ParseError {
    match e {
        ParseError::Empty { offset } => ParseError::Empty { offset: offset + base },
        ParseError::BadByte { offset, byte } => ParseError::BadByte {
            offset: offset + base,
            byte,
        },
        ParseError::Truncated { offset, expected } => ParseError::Truncated {
            offset: offset + base,
            expected: expected + base,
        },
        other => other,
    }
}

/// Encodes a graph as a graph6 line without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
        out.push(b'~');
        for s in (0..3).rev() {
            out.push(((n >> (6 * s)) & 63) as u8 + 63);
        }
    } else {
        assert!(n <= LONG_MAX);
        out.extend_from_slice(b"~~");
        for s in (0..6).rev() {
            out.push(((n >> (6 * s)) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Reads every non-blank graph6 line of a stream.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, (usize, ParseError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim_end()).map_err(|e| (i + 1, e)))
        .collect()
}

/// Parses a DIMACS edge list (`p edge n m`, `e u v` with 1-based ids, `c` comments).
pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    let err = |line: usize, msg: &str| ParseError::Dimacs {
        line,
        msg: msg.to_string(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(err(line, "duplicate problem line"));
                }
                match tok.next() {
                    Some("edge") | Some("col") => {}
                    _ => return Err(err(line, "expected `p edge <n> <m>`")),
                }
                let count: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(line, "bad vertex count"))?;
                if count > MAX_GRAPH6_VERTICES {
                    return Err(err(line, "vertex count too large"));
                }
                n = Some(count);
            }
            Some("e") => {
                let nv = n.ok_or_else(|| err(line, "edge before problem line"))?;
                let mut end = || {
                    tok.next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .filter(|&x| (1..=nv).contains(&x))
                        .ok_or_else(|| err(line, "bad edge endpoint"))
                };
                let u = end()?;
                let v = end()?;
                if u == v {
                    return Err(err(line, "loop edge"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(_) => return Err(err(line, "unknown line type")),
        }
    }
    let n = n.ok_or_else(|| err(0, "missing problem line"))?;
    Ok(Graph::new(n, &edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_star() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(write_graph6(&g), "D?{");
    }

    #[test]
    fn k1_and_empty() {
        assert_eq!(write_graph6(&Graph::empty(1)), "@");
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6(">>graph6<<@\n").unwrap().n(), 1);
    }

    #[test]
    fn medium_form_round_trip() {
        let g = Graph::cycle(100);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_graph6(""), Err(ParseError::Empty { offset: 0 }));
        assert_eq!(
            parse_graph6("D?"),
            Err(ParseError::Truncated { offset: 2, expected: 3 })
        );
        assert_eq!(parse_graph6("D? "), Err(ParseError::BadByte { offset: 2, byte: b' ' }));
        assert_eq!(parse_graph6("D?{?"), Err(ParseError::Trailing { offset: 3 }));
        assert!(matches!(parse_graph6("~~~~~~~~"), Err(ParseError::TooLarge { .. })));
    }

    #[test]
    fn dimacs() {
        let g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
    }
}
