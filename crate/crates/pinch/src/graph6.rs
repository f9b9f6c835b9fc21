//! graph6 encoding (vertices are taken in increasing id order).

use crate::error::{Error, Result};
use crate::graph::Graph;

fn parse_err(column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column,
        message: message.into(),
    }
}

pub fn encode(g: &Graph) -> String {
    let (h, _) = g.compact();
    let n = h.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(h.has_edge(i as u32, j as u32));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ascii")
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(i + 1, format!("byte {b:#04x} outside the graph6 range")));
        }
    }
    let (n, mut pos) = match bytes {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(3, "truncated vertex count"));
            }
            (rest[..6].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize), 8)
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(2, "truncated vertex count"));
            }
            (rest[..3].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize), 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() - pos != needed {
        return Err(parse_err(
            pos + 1,
            format!("expected {needed} adjacency bytes, found {}", bytes.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = bytes[pos] - 63;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i as u32, j as u32);
            }
            k += 1;
        }
    }
    if k % 6 != 0 && cur & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(parse_err(bytes.len(), "nonzero padding bits"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        assert_eq!(encode(&Graph::complete(4)), "C~");
        assert_eq!(encode(&Graph::petersen()).len(), 1 + 8);
        assert_eq!(decode("C~").unwrap(), Graph::complete(4));
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(decode("?").unwrap().n(), 0);
        // Reference value produced by common graph6 tools.
        assert_eq!(encode(&Graph::path(3)), "Bg");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decode("C~~").is_err());
        assert!(decode("C").is_err());
        assert!(decode("C\x01").is_err());
    }

    #[test]
    fn large_counts_round_trip() {
        let g = Graph::cycle(100);
        assert_eq!(decode(&encode(&g)).unwrap(), g);
    }
}
