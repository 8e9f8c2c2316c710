//! graph6 encoding (vertex order = label order) and a decoder used for
//! round-trip checks.

use crate::error::{usage, Result};
use crate::graph::LabeledGraph;

const BIAS: u8 = 63;
const SMALL: usize = 62;
const MEDIUM: usize = 258_047;
const LARGE: usize = (1 << 36) - 1;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= SMALL {
        out.push(n as u8 + BIAS);
    } else if n <= MEDIUM {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        assert!(n <= LARGE, "graph6 cannot encode {n} vertices");
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn encode(g: &LabeledGraph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(8 + n * n.saturating_sub(1) / 12);
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn sextet(b: u8) -> Result<usize> {
    if (BIAS..=BIAS + 63).contains(&b) {
        Ok((b - BIAS) as usize)
    } else {
        Err(usage(format!("byte {b} is outside the graph6 range")))
    }
}

/// Decodes a graph6 string into a graph on labels `0..n`.
pub fn decode(text: &str) -> Result<LabeledGraph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (n, body) = match bytes {
        [126, 126, rest @ ..] if rest.len() >= 6 => {
            let mut n = 0;
            for &b in &rest[..6] {
                n = n << 6 | sextet(b)?;
            }
            (n, &rest[6..])
        }
        [126, rest @ ..] if rest.len() >= 3 => {
            let mut n = 0;
            for &b in &rest[..3] {
                n = n << 6 | sextet(b)?;
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => (sextet(*b)?, rest),
        [] => return Err(usage("empty graph6 string")),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(usage(format!(
            "graph6 body has {} bytes, expected {} for {n} vertices",
            body.len(),
            bits.div_ceil(6)
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = sextet(body[k / 6])?;
            if b >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    LabeledGraph::from_edges(n, &edges)
}

/// Adjacency equality with `g` after decoding, ignoring labels.
pub fn round_trips(g: &LabeledGraph) -> bool {
    match decode(&encode(g)) {
        Ok(h) => h.n() == g.n() && (0..g.n()).all(|i| h.row(i) == g.row(i)),
        Err(_) => false,
    }
}
