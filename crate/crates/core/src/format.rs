//! graph6 and plain edge-list text formats.
//!
//! graph6: one header byte `63 + n` for `n <= 62`, otherwise `126` followed by
//! three 6-bit bytes; the body packs the upper triangle column by column
//! (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) into 6-bit groups offset by 63,
//! zero-padded at the end.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n) / 12 + 1);
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    out.extend(pack_upper_triangle(g));
    String::from_utf8(out).expect("graph6 bytes are printable ascii")
}

/// Upper-triangle bits in graph6 order, 6 per byte, each offset by 63.
pub(crate) fn pack_upper_triangle(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut body = Vec::with_capacity((n * n.saturating_sub(1) / 2).div_ceil(6));
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = (acc << 1) | ((row >> i) & 1) as u8;
            filled += 1;
            if filled == 6 {
                body.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        body.push(63 + (acc << (6 - filled)));
    }
    body
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let bad = |message: String| Error::Parse { line: 1, message };
    if bytes.is_empty() {
        return Err(bad("empty graph6 string".into()));
    }
    if let Some(&c) = bytes.iter().find(|&&c| !(63..=126).contains(&c)) {
        return Err(bad(format!("byte {c} outside graph6 range")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(bad("unsupported or truncated large-order header".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Error::Capacity { requested: n, capacity: MAX_ORDER });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(bad(format!("expected {expected} body bytes for n={n}, found {}", body.len())));
    }
    let mut rows = vec![0u128; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - 63;
            if (chunk >> (5 - k % 6)) & 1 == 1 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 && (body[expected - 1] - 63) & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(bad("nonzero padding bits".into()));
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Parses every non-blank line as graph6; errors carry the 1-based line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            from_graph6(l.trim()).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse { line: i + 1, message },
                other => other,
            })
        })
        .collect()
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Parses one or more edge-list graphs: a header `n m` followed by `m` lines
/// `u v` (0-indexed). Blank lines and `#` comments are skipped.
pub fn parse_edge_lists(text: &str) -> Result<Vec<Graph>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut graphs = Vec::new();
    while let Some((line, header)) = lines.next() {
        let (n, m) = parse_pair(header, line)?;
        let mut g = Graph::empty(n).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        for _ in 0..m {
            let (line, text) = lines.next().ok_or_else(|| Error::Parse {
                line,
                message: format!("expected {m} edge lines"),
            })?;
            let (u, v) = parse_pair(text, line)?;
            g.add_edge(u, v).map_err(|e| Error::Parse { line, message: e.to_string() })?;
        }
        if g.edge_count() != m {
            return Err(Error::Parse { line, message: "duplicate edges in edge list".into() });
        }
        graphs.push(g);
    }
    Ok(graphs)
}

fn parse_pair(text: &str, line: usize) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse { line, message: format!("expected two non-negative integers, got {text:?}") }),
    }
}

/// Sniffs the format: edge lists start with a line of two integers.
pub fn parse_graphs(text: &str) -> Result<Vec<Graph>> {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(l) if l.split_whitespace().count() == 2 => parse_edge_lists(text),
        Some(_) => parse_graph6_lines(text),
        None => Ok(Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::petersen()), "IheA@GUAo");
        assert_eq!(to_graph6(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn large_header() {
        let g = Graph::path(100).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("DQ").is_err());
        assert!(from_graph6("DQcc").is_err());
        assert!(from_graph6("D Q").is_err());
        // n = 2 has one bit; the five padding bits must be zero.
        assert!(from_graph6("A@").is_err());
        assert!(from_graph6("A_").is_ok());
    }

    #[test]
    fn edge_list_roundtrip_and_errors() {
        let g = Graph::petersen();
        let text = to_edge_list(&g);
        assert_eq!(parse_edge_lists(&text).unwrap(), vec![g.clone()]);
        assert_eq!(parse_graphs(&text).unwrap(), vec![g]);
        let err = parse_edge_lists("3 2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(parse_edge_lists("3 1\n0 0\n").is_err());
        assert!(parse_edge_lists("3 2\n0 1\n").is_err());
    }

    #[test]
    fn graph6_line_numbers() {
        let err = parse_graph6_lines("DQc\n\nD!c\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    proptest! {
        #[test]
        fn graph6_roundtrip(n in 0usize..70, seed in any::<u64>()) {
            let mut g = Graph::empty(n).unwrap();
            let mut s = seed | 1;
            for u in 0..n {
                for v in u + 1..n {
                    s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                    if s & 3 == 0 { g.add_edge(u, v).unwrap(); }
                }
            }
            prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
}
