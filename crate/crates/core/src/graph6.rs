//! graph6 text encoding: a size header followed by the upper triangle in
//! column order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(8 + n * n / 12);
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

fn sixbits(bytes: &[u8], at: usize) -> Result<u64> {
    match bytes.get(at) {
        None => Err(err(at, "unexpected end of input")),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(err(at, format!("byte {b:#04x} outside graph6 range"))),
    }
}

/// Decodes one graph6 line; an optional `>>graph6<<` header and trailing
/// line break are accepted.
pub fn decode(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (bytes, base) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (trimmed.as_bytes(), 0),
    };
    let at = |i: usize| base + i;
    if bytes.is_empty() {
        return Err(err(at(0), "missing size header"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (sixbits(bytes, 0).map_err(|_| err(at(0), "bad size byte"))? as usize, 1)
    } else if bytes.get(1) == Some(&126) {
        let mut n = 0u64;
        for i in 2..8 {
            n = n << 6 | sixbits(bytes, i).map_err(|e| relocate(e, base))?;
        }
        (n as usize, 8)
    } else {
        let mut n = 0u64;
        for i in 1..4 {
            n = n << 6 | sixbits(bytes, i).map_err(|e| relocate(e, base))?;
        }
        (n as usize, 4)
    };
    let total_bits = n * n.saturating_sub(1) / 2;
    let body_len = total_bits.div_ceil(6);
    if bytes.len() < pos + body_len {
        return Err(err(at(bytes.len()), format!("truncated body: expected {body_len} bytes")));
    }
    if bytes.len() > pos + body_len {
        return Err(err(at(pos + body_len), "trailing bytes after body"));
    }
    let mut g = Graph::empty(n);
    let mut word = 0u64;
    let mut left = 0;
    for j in 1..n {
        for i in 0..j {
            if left == 0 {
                word = sixbits(bytes, pos).map_err(|e| relocate(e, base))?;
                pos += 1;
                left = 6;
            }
            left -= 1;
            if word >> left & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

fn relocate(e: Error, base: usize) -> Error {
    match e {
        Error::Graph6 { offset, message } => Error::Graph6 {
            offset: offset + base,
            message,
        },
        other => other,
    }
}
