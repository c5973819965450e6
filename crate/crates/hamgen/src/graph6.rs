//! graph6 encoding and decoding.
//!
//! The format packs the upper adjacency triangle column by column, bits
//! x(0,1), x(0,2), x(1,2), x(0,3) and so on, into 6-bit groups, each offset by 63
//! into the printable ASCII range. Orders up to 62 use a single header byte
//! of value `n + 63`; larger orders use the long header `~` followed by three
//! 6-bit digits.

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed header")]
    BadHeader,
    #[error("byte {0:#04x} outside the graph6 alphabet")]
    BadByte(u8),
    #[error("input shorter than the {0} bytes required for order {1}")]
    Truncated(usize, usize),
    #[error("trailing garbage after {0} bytes")]
    TrailingGarbage(usize),
    #[error("padding bits not zero")]
    BadPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encode a graph as printable graph6 bytes (no trailing newline).
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut used = 0;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | g.has_edge(row, col) as u8;
            used += 1;
            if used == 6 {
                out.push(63 + acc);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push(63 + (acc << (6 - used)));
    }
    out
}

pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 bytes are printable ASCII")
}

/// Decode one graph6 value; the input must contain exactly one graph.
pub fn decode(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    let bytes = match bytes {
        [rest @ .., b'\n'] => rest,
        other => other,
    };
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, header_len) = if bytes[0] == b'~' {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        if bytes[1] == b'~' {
            // 8-byte header for n >= 258048: far beyond this crate's range.
            return Err(Graph6Error::BadHeader);
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = n << 6 | sixbits(b)? as usize;
        }
        (n, 4)
    } else {
        (sixbits(bytes[0])? as usize, 1)
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(GraphError::OrderOutOfRange(n, 1, MAX_VERTICES).into());
    }
    let need = header_len + body_len(n);
    if bytes.len() < need {
        return Err(Graph6Error::Truncated(need, n));
    }
    if bytes.len() > need {
        return Err(Graph6Error::TrailingGarbage(need));
    }
    let mut g = Graph::new_empty(n)?;
    let mut cur = 0u8;
    let mut left = 0u8;
    let mut body = bytes[header_len..].iter();
    for col in 1..n {
        for row in 0..col {
            if left == 0 {
                cur = sixbits(*body.next().expect("length checked"))?;
                left = 6;
            }
            if cur >> (left - 1) & 1 == 1 {
                g.add_edge_unchecked(row, col);
            }
            left -= 1;
        }
    }
    if left > 0 && cur & ((1 << left) - 1) != 0 {
        return Err(Graph6Error::BadPadding);
    }
    Ok(g)
}

fn sixbits(b: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Graph6Error::BadByte(b))
    }
}
