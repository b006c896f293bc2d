//! The graph6 interchange format.
//!
//! A graph6 string is the vertex count `N(n)` followed by the upper triangle
//! of the adjacency matrix, column by column (`x(0,1), x(0,2), x(1,2),
//! x(0,3), ...`), packed big-endian into 6-bit groups and offset by 63.
//! The optional `>>graph6<<` header and a trailing newline are tolerated.

use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

const HEADER: &str = ">>graph6<<";
const MAX_GRAPH6_VERTICES: u64 = (1 << 36) - 1;

/// Decodes one graph6 string.
///
/// Errors carry the byte offset (into `text`, header included) of the first
/// offending byte.
pub fn parse_graph6(text: &str) -> Result<FiniteGraph> {
    let body_start = if text.starts_with(HEADER) { HEADER.len() } else { 0 };
    let body = text[body_start..].trim_end_matches(['\n', '\r']);
    let bytes = body.as_bytes();
    let at = |i: usize| body_start + i;

    if bytes.is_empty() {
        return Err(Error::parse(at(0), "empty graph6 string"));
    }
    if let Some(i) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(at(i), format!("byte {:#04x} outside 63..=126", bytes[i])));
    }

    let (n, mut pos) = decode_size(bytes).map_err(|(i, reason)| Error::parse(at(i), reason))?;
    let n = usize::try_from(n).map_err(|_| Error::parse(at(0), "vertex count does not fit in memory"))?;

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[pos..];
    if data.len() != expected {
        let offset = at(pos + data.len().min(expected));
        return Err(Error::parse(
            offset,
            format!(
                "expected {expected} adjacency bytes for {n} vertices, found {}",
                data.len()
            ),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = data[k / 6] - 63;
            if byte & (0b10_0000 >> (k % 6)) != 0 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Error::parse(at(pos + expected - 1), "non-zero padding bits"));
        }
    }
    pos += expected;
    debug_assert_eq!(pos, bytes.len());

    FiniteGraph::new(n, edges)
}

fn decode_size(bytes: &[u8]) -> std::result::Result<(u64, usize), (usize, String)> {
    let sixes = |from: usize, count: usize| -> std::result::Result<u64, (usize, String)> {
        if bytes.len() < from + count {
            return Err((bytes.len(), "truncated vertex count".into()));
        }
        Ok(bytes[from..from + count]
            .iter()
            .fold(0u64, |acc, &b| (acc << 6) | u64::from(b - 63)))
    };
    if bytes[0] != 126 {
        return Ok((u64::from(bytes[0] - 63), 1));
    }
    if bytes.get(1) == Some(&126) {
        let n = sixes(2, 6)?;
        if n <= 258_047 {
            return Err((0, format!("non-canonical 8-byte vertex count {n}")));
        }
        Ok((n, 8))
    } else {
        let n = sixes(1, 3)?;
        if n <= 62 {
            return Err((0, format!("non-canonical 4-byte vertex count {n}")));
        }
        Ok((n, 4))
    }
}

/// Encodes a graph as graph6 (no header, no newline).
pub fn emit_graph6(g: &FiniteGraph) -> String {
    let n = g.vertex_count() as u64;
    assert!(n <= MAX_GRAPH6_VERTICES, "graph too large for graph6");
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|i| ((n >> (6 * i)) & 63) as u8 + 63));
    }

    let n = g.vertex_count();
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete_graph;

    #[test]
    fn small_examples() {
        assert_eq!(parse_graph6("A_").unwrap(), complete_graph(2));
        assert_eq!(parse_graph6("@").unwrap(), FiniteGraph::edgeless(1));
        assert_eq!(parse_graph6("Bw").unwrap(), complete_graph(3));
        assert_eq!(parse_graph6("?").unwrap(), FiniteGraph::edgeless(0));
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), complete_graph(3));
        assert_eq!(emit_graph6(&complete_graph(3)), "Bw");
        assert_eq!(emit_graph6(&FiniteGraph::edgeless(2)), "A?");
    }

    #[test]
    fn known_encoding() {
        // Edges {0,2}, {0,4}, {1,3}, {3,4} on five vertices.
        let g = FiniteGraph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn errors_carry_offsets() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        // Too few data bytes for three vertices.
        assert!(matches!(parse_graph6("B"), Err(Error::Parse { offset: 1, .. })));
        // Trailing garbage.
        assert!(matches!(parse_graph6("Bw?"), Err(Error::Parse { offset: 2, .. })));
        // Invalid byte.
        assert!(matches!(parse_graph6("B "), Err(Error::Parse { offset: 1, .. })));
        // Padding bits set: 'x' = 57 = 111001, but only three bits are used.
        assert!(matches!(parse_graph6("Bx"), Err(Error::Parse { offset: 1, .. })));
        // Header offsets count the header bytes.
        assert!(matches!(parse_graph6(">>graph6<<Bx"), Err(Error::Parse { offset: 11, .. })));
        // 3 vertices written in the long form.
        assert!(matches!(parse_graph6("~??B"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn long_size_form() {
        let g = FiniteGraph::path(70);
        let s = emit_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
