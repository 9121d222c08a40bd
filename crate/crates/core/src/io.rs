//! Graph serialization: edge-list text and the standard graph6 encoding.
//!
//! Edge-list format: first line `n m`, then `m` lines `u v` with 0-based
//! indices; `#` starts a comment.
//!
//! graph6: upper-triangle adjacency bits x(0,1), x(0,2), x(1,2), x(0,3), ...
//! packed big-endian into 6-bit groups, each offset by 63; the header byte(s)
//! encode n. Read and write are bit-exact against the published format.

use crate::error::Error;
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph, Error> {
    let mut numbers = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split_whitespace() {
            numbers.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad token {tok:?} in edge list")))?,
            );
        }
    }
    if numbers.len() < 2 {
        return Err(Error::parse("edge list needs a leading `n m` header"));
    }
    let (n, m) = (numbers[0], numbers[1]);
    let rest = &numbers[2..];
    if rest.len() != 2 * m {
        return Err(Error::parse(format!(
            "edge list declares {m} edges but provides {} endpoints",
            rest.len()
        )));
    }
    let edges = rest.chunks_exact(2).map(|c| (c[0], c[1]));
    Graph::from_edges(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            nbits += 1;
            if nbits == 6 {
                out.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(63 + (acc << (6 - nbits)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn parse_graph6(line: &str) -> Result<Graph, Error> {
    let line = line.trim_end();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse("empty graph6 line"));
    }
    let (n, pos): (usize, usize) = if bytes[0] != 126 {
        let n = bytes[0]
            .checked_sub(63)
            .ok_or_else(|| Error::parse("graph6 byte below offset 63"))? as usize;
        (n, 1)
    } else if bytes.len() > 1 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::parse("truncated graph6 size header"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b as usize - 63);
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(Error::parse("truncated graph6 size header"));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b as usize - 63);
        }
        (n, 8)
    };
    let bit_count = n * (n.saturating_sub(1)) / 2;
    let needed = bit_count.div_ceil(6);
    if bytes.len() - pos < needed {
        return Err(Error::parse(format!(
            "graph6 body too short: need {needed} bytes, have {}",
            bytes.len() - pos
        )));
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    'outer: for v in 1..n {
        for u in 0..v {
            let byte = bytes[pos + bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(Error::parse(format!("invalid graph6 byte {byte}")));
            }
            let group = byte - 63;
            if group >> (5 - bit % 6) & 1 == 1 {
                g.add_edge_unchecked(u, v);
            }
            bit += 1;
            if bit >= bit_count {
                break 'outer;
            }
        }
    }
    Ok(g)
}
