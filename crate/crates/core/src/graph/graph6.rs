use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Decodes one graph6 record. A leading `>>graph6<<` header and trailing
/// whitespace are tolerated; byte offsets in errors refer to the input text.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r', ' ', '\t']);
    let (base, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, format!("byte {b:#04x} outside the printable range 63..=126")));
        }
    }
    let (n, header_len) = decode_n(body).map_err(|(off, r)| err(base + off, r))?;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let data = &body[header_len..];
    let bytes_needed = bits_needed.div_ceil(6);
    if data.len() != bytes_needed {
        return Err(err(
            base + header_len + data.len().min(bytes_needed),
            format!("expected {bytes_needed} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bytes_needed > 0 {
        let last = data[bytes_needed - 1] - 63;
        let pad = bytes_needed * 6 - bits_needed;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(err(base + header_len + bytes_needed - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn decode_n(body: &[u8]) -> std::result::Result<(usize, usize), (usize, String)> {
    let six = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    match body {
        [] => Err((0, "missing vertex count".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err((body.len(), "truncated 36-bit vertex count".into()));
            }
            let n = six(&rest[..6]);
            if n <= 258_047 {
                return Err((2, "non-canonical 36-bit vertex count".into()));
            }
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err((body.len(), "truncated 18-bit vertex count".into()));
            }
            let n = six(&rest[..3]);
            if n <= 62 {
                return Err((1, "non-canonical 18-bit vertex count".into()));
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

/// Encodes a graph as header-free graph6.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push6 = |out: &mut Vec<u8>, value: usize, groups: u32| {
        for s in (0..groups).rev() {
            out.push(((value >> (6 * s)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push6(&mut out, n, 3);
    } else {
        out.push(126);
        out.push(126);
        push6(&mut out, n, 6);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.is_adjacent(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses a multi-graph graph6 file. Blank lines are skipped; malformed lines
/// are reported with their 1-based line number without aborting the rest.
pub fn parse_graph6_lines(text: &str) -> Vec<(usize, Result<Graph>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, parse_graph6(l.trim())))
        .collect()
}
