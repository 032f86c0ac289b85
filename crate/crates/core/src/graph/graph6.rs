//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order, packed six bits per byte with offset 63.

use thiserror::Error;

use super::{pair_count, Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid byte 0x{byte:02x} at byte offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("malformed header at byte offset {offset}: {reason}")]
    BadHeader { offset: usize, reason: &'static str },
    #[error("graph order {0} is not supported (1..=64)")]
    UnsupportedOrder(usize),
    #[error("truncated payload at byte offset {offset}: expected {expected} payload bytes, found {found}")]
    Truncated {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("trailing data at byte offset {offset}")]
    TrailingData { offset: usize },
    #[error("non-zero padding bits in final byte at offset {offset}")]
    NonZeroPadding { offset: usize },
}

const BIAS: u8 = 63;

pub(super) fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + pair_count(n).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + BIAS));
    }
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
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub(super) fn decode(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(BIAS..=126).contains(&b))
    {
        return Err(Graph6Error::InvalidByte { offset, byte });
    }
    let (n, header_len) = if bytes[0] < 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader {
                offset: bytes.len(),
                reason: "extended header needs three size bytes",
            });
        }
        if bytes[1] == 126 {
            // 8-byte header, only used for n >= 258048
            return Err(Graph6Error::UnsupportedOrder(usize::MAX));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
        if n <= 62 {
            return Err(Graph6Error::BadHeader {
                offset: 0,
                reason: "extended header used for order below 63",
            });
        }
        (n, 4)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let pairs = pair_count(n);
    let expected = pairs.div_ceil(6);
    let payload = &bytes[header_len..];
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: bytes.len(),
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingData {
            offset: header_len + expected,
        });
    }
    let pad = expected * 6 - pairs;
    if pad > 0 {
        let last = payload[expected - 1] - BIAS;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding {
                offset: header_len + expected - 1,
            });
        }
    }

    let mut g = Graph::empty(n).map_err(|_| Graph6Error::UnsupportedOrder(n))?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.rows[i] |= 1 << j;
                g.rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(g)
}
