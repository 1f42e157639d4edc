//! graph6 encoding: 6-bit big-endian groups offset by 63, upper-triangle edge
//! bits in column-major order, zero padding.

use super::{Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

/// Encode `g` as graph6 under its current labeling. No header is emitted.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = group << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decode one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let trimmed_start = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = trimmed_start;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(base, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(
                base + i,
                format!("byte {b:#04x} outside graph6 range 63..=126"),
            ));
        }
    }
    let (n, header_len) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(parse_err(base + bytes.len(), "truncated long-form size field"));
        }
        if bytes[1] == 126 {
            return Err(GraphError::TooManyVertices(usize::MAX));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= 62 {
            return Err(parse_err(base, format!("long-form size field used for n = {n}")));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() != expected {
        return Err(parse_err(
            base + header_len + data.len().min(expected),
            format!("expected {expected} edge bytes for n = {n}, found {}", data.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bit_count % 6 != 0 {
        let last = data[data.len() - 1] - 63;
        let pad = 6 - bit_count % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + header_len + data.len() - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Parse a newline-separated list of graph6 strings, skipping blank lines.
/// Errors carry the 1-based line number in the message.
pub fn parse_graph6_list(text: &str) -> Result<Vec<Graph>, (usize, GraphError)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| parse_graph6(line).map_err(|e| (i + 1, e)))
        .collect()
}
