//! Strict graph6 codec.
//!
//! Implements the printable interchange format for undirected graphs: an
//! order field `N(n)` (one byte `n+63` for `n ≤ 62`, or `~` followed by 18
//! bits in three bytes for larger orders), then the upper-triangle adjacency
//! bits in column-major order, packed into 6-bit groups (most significant bit
//! first), each group offset by 63.
//!
//! The decoder is strict: the order field must use the shortest form, the
//! record length must match the order exactly, and padding bits must be zero.
//! This makes `emit(parse(s)) == s` for every accepted record.

use crate::graph::{GraphError, HostGraph, HOST_MAX_ORDER};
use thiserror::Error;

/// Optional prefix some tools place before a graph6 record.
pub const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at position {pos} outside the graph6 range [63,126]")]
    BadChar { pos: usize, byte: u8 },
    #[error("missing or non-minimal order field")]
    BadOrderField,
    #[error("record carries {actual} body bytes but order {order} requires {expected}")]
    BadLength {
        order: usize,
        expected: usize,
        actual: usize,
    },
    #[error("nonzero padding bits after the upper triangle")]
    TrailingBits,
    #[error("order {0} outside the supported range [1,{HOST_MAX_ORDER}]")]
    OrderOutOfRange(usize),
}

impl From<GraphError> for Graph6Error {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::OrderOutOfRange(n, _) => Graph6Error::OrderOutOfRange(n),
            // decode only produces in-range, loop-free edges
            other => unreachable!("graph6 decode produced {other}"),
        }
    }
}

/// Number of 6-bit body groups for a graph of the given order.
fn body_len(order: usize) -> usize {
    (order * (order - 1) / 2).div_ceil(6)
}

/// Encodes a graph as a canonical (shortest-form) graph6 record.
pub fn emit_graph6(g: &HostGraph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("all bytes are printable ascii")
}

/// Decodes one graph6 record. Leading/trailing ascii whitespace and the
/// optional `>>graph6<<` header are ignored; everything else is validated
/// byte-for-byte.
pub fn parse_graph6(line: &str) -> Result<HostGraph, Graph6Error> {
    let record = line.trim_matches(|c: char| c.is_ascii_whitespace());
    let record = record.strip_prefix(GRAPH6_HEADER).unwrap_or(record);
    let bytes = record.as_bytes();
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Graph6Error::BadChar {
            pos,
            byte: bytes[pos],
        });
    }
    let (order, header) = parse_order(bytes)?;
    if order == 0 || order > HOST_MAX_ORDER {
        return Err(Graph6Error::OrderOutOfRange(order));
    }
    let expected = body_len(order);
    let actual = bytes.len() - header;
    if actual != expected {
        return Err(Graph6Error::BadLength {
            order,
            expected,
            actual,
        });
    }

    let mut g = HostGraph::empty(order)?;
    let mut group = 0usize;
    let mut bit = 0u32; // bits consumed within the current group, msb first
    for j in 1..order {
        for i in 0..j {
            let six = bytes[header + group] - 63;
            if (six >> (5 - bit)) & 1 != 0 {
                g.add_edge(i, j)?;
            }
            bit += 1;
            if bit == 6 {
                bit = 0;
                group += 1;
            }
        }
    }
    if bit != 0 {
        let six = bytes[header + group] - 63;
        if six & ((1 << (6 - bit)) - 1) != 0 {
            return Err(Graph6Error::TrailingBits);
        }
    }
    Ok(g)
}

/// Parses the order field; returns (order, bytes consumed). All bytes are
/// already known to be in range.
fn parse_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    match bytes {
        [] => Err(Graph6Error::BadOrderField),
        [126, 126, rest @ ..] => {
            // 36-bit form: orders from 258048 up, always beyond our cap
            if rest.len() < 6 {
                return Err(Graph6Error::BadOrderField);
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n < 258_048 {
                return Err(Graph6Error::BadOrderField);
            }
            Err(Graph6Error::OrderOutOfRange(n))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::BadOrderField);
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n <= 62 {
                // must have used the one-byte form
                return Err(Graph6Error::BadOrderField);
            }
            Ok((n, 4))
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}
