//! graph6 encoding (<https://users.cecs.anu.edu.au/~bdm/data/formats.txt>).
//!
//! Short form (n < 63) and the 4-byte long form (63 <= n <= 64 here, limited
//! by [`MAX_VERTICES`]) are both handled. The upper triangle is written
//! column by column: (0,1), (0,2), (1,2), (0,3), ...

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const HEADER_LINE: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 token")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { byte: u8, offset: usize },
    #[error("malformed size header")]
    BadHeader,
    #[error("expected {expected} payload bytes, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("nonzero padding bits in final byte")]
    NonzeroPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn sixes(token: &[u8]) -> Result<Vec<u8>, Graph6Error> {
    token
        .iter()
        .enumerate()
        .map(
            |(offset, &byte)| {
                if (63..=126).contains(&byte) {
                    Ok(byte - 63)
                } else {
                    Err(Graph6Error::BadByte { byte, offset })
                }
            },
        )
        .collect()
}

/// Parses one graph6 token (surrounding whitespace is ignored).
pub fn decode_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let token = text.trim().as_bytes();
    if token.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let data = sixes(token)?;
    let (n, header_len) = if data[0] != 63 {
        (data[0] as usize, 1)
    } else if data.len() >= 4 && data[1] != 63 {
        let n = (data[1] as usize) << 12 | (data[2] as usize) << 6 | data[3] as usize;
        if n < 63 {
            return Err(Graph6Error::BadHeader);
        }
        (n, 4)
    } else {
        return Err(Graph6Error::BadHeader);
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n).into());
    }

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &data[header_len..];
    if payload.len() != expected {
        return Err(Graph6Error::LengthMismatch { expected, found: payload.len() });
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if payload[expected - 1] & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if payload[k / 6] >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.extend([126, (n >> 12) as u8 + 63, (n >> 6 & 63) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
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

/// One line of a graph6 corpus.
#[derive(Debug)]
pub struct CorpusEntry {
    /// 1-based line number in the source.
    pub line: usize,
    pub token: String,
    pub graph: Result<Graph, Graph6Error>,
}

/// Iterates over the graphs in a graph6 corpus, one token per line. Blank
/// lines and a leading `>>graph6<<` header are skipped; malformed tokens are
/// yielded as errors so the caller can report the line and carry on.
pub fn read_corpus<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<CorpusEntry>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line = match line {
            Ok(line) => line,
            Err(e) => return Some(Err(e)),
        };
        let mut token = line.trim();
        if let Some(rest) = token.strip_prefix(HEADER_LINE) {
            token = rest.trim();
        }
        if token.is_empty() {
            return None;
        }
        Some(Ok(CorpusEntry { line: i + 1, token: token.to_string(), graph: decode_graph6(token) }))
    })
}
