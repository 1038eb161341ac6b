//! graph6 and digraph6 text encodings.
//!
//! Layout follows the formats shipped with nauty: a size header `N(n)` and
//! a bit vector packed six bits per printable byte (value + 63). graph6
//! stores the upper triangle column by column; digraph6 is prefixed by `&`
//! and stores the full matrix row by row.

use crate::digraph::BitDigraph;
use crate::error::{Error, Result};
use crate::graph::UGraph;

const MAX_ORDER: usize = 68_719_476_735;

fn encode_size(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    } else {
        assert!(n <= MAX_ORDER);
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
}

fn push_bits<I: Iterator<Item = bool>>(bits: I, out: &mut String) {
    let mut acc = 0u8;
    let mut k = 0;
    for b in bits {
        acc = acc << 1 | b as u8;
        k += 1;
        if k == 6 {
            out.push((acc + 63) as char);
            acc = 0;
            k = 0;
        }
    }
    if k > 0 {
        out.push(((acc << (6 - k)) + 63) as char);
    }
}

fn sixes(bytes: &[u8]) -> Result<Vec<u8>> {
    bytes
        .iter()
        .map(|&b| {
            if (63..=126).contains(&b) {
                Ok(b - 63)
            } else {
                Err(Error::MalformedInput(format!("byte {b:#04x} outside 63..=126")))
            }
        })
        .collect()
}

fn decode_size(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let short = || Error::MalformedInput("truncated size header".into());
    match bytes.first() {
        None => Err(short()),
        Some(b'~') => {
            if bytes.get(1) == Some(&b'~') {
                let h = bytes.get(2..8).ok_or_else(short)?;
                let n = sixes(h)?.iter().fold(0usize, |a, &x| a << 6 | x as usize);
                Ok((n, &bytes[8..]))
            } else {
                let h = bytes.get(1..4).ok_or_else(short)?;
                let n = sixes(h)?.iter().fold(0usize, |a, &x| a << 6 | x as usize);
                Ok((n, &bytes[4..]))
            }
        }
        Some(&b) => {
            let n = sixes(&[b])?[0] as usize;
            Ok((n, &bytes[1..]))
        }
    }
}

fn unpack(body: &[u8], nbits: usize) -> Result<Vec<bool>> {
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::MalformedInput(format!(
            "expected {need} data bytes, found {}",
            body.len()
        )));
    }
    let vals = sixes(body)?;
    let mut bits = Vec::with_capacity(need * 6);
    for v in vals {
        for s in (0..6).rev() {
            bits.push(v >> s & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::MalformedInput("nonzero padding bits".into()));
    }
    bits.truncate(nbits);
    Ok(bits)
}

fn strip(line: &str, header: &str) -> String {
    let t = line.trim();
    t.strip_prefix(header).unwrap_or(t).to_string()
}

pub fn encode_graph6(g: &UGraph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_size(n, &mut out);
    push_bits(
        (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| g.has_edge(i, j)),
        &mut out,
    );
    out
}

pub fn decode_graph6(line: &str) -> Result<UGraph> {
    let s = strip(line, ">>graph6<<");
    let bytes = s.as_bytes();
    if bytes.first() == Some(&b'&') || bytes.first() == Some(&b':') {
        return Err(Error::MalformedInput("not a graph6 line".into()));
    }
    let (n, body) = decode_size(bytes)?;
    let bits = unpack(body, n * n.saturating_sub(1) / 2)?;
    let mut g = UGraph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn encode_digraph6(d: &BitDigraph) -> String {
    let n = d.order();
    let mut out = String::from("&");
    encode_size(n, &mut out);
    push_bits(
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| d.has_arc(i, j)),
        &mut out,
    );
    out
}

pub fn decode_digraph6(line: &str) -> Result<BitDigraph> {
    let s = strip(line, ">>digraph6<<");
    let rest = s
        .strip_prefix('&')
        .ok_or_else(|| Error::MalformedInput("digraph6 line must start with '&'".into()))?;
    let (n, body) = decode_size(rest.as_bytes())?;
    let mut d = BitDigraph::try_new(n)
        .map_err(|_| Error::MalformedInput(format!("digraph order {n} above 128")))?;
    let bits = unpack(body, n * n)?;
    for i in 0..n {
        for j in 0..n {
            if bits[i * n + j] {
                if i == j {
                    return Err(Error::MalformedInput(format!("loop at vertex {i}")));
                }
                d.add_arc(i, j);
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // petgraph's reference case
        let g = UGraph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(decode_graph6("DQc").unwrap(), g);
        assert_eq!(encode_graph6(&UGraph::new(0)), "?");
        assert_eq!(decode_graph6("?").unwrap().order(), 0);
        assert_eq!(encode_graph6(&UGraph::cycle(5)), "Dhc");
        assert_eq!(encode_graph6(&UGraph::complete(4)), "C~");
    }

    #[test]
    fn known_digraph6_strings() {
        // from the nauty format notes: 5 vertices, arcs 0->2 0->4 3->1 3->4
        let d = BitDigraph::from_arcs(5, &[(0, 2), (0, 4), (3, 1), (3, 4)]);
        assert_eq!(encode_digraph6(&d), "&DI?AO?");
        assert_eq!(decode_digraph6("&DI?AO?").unwrap(), d);
        assert_eq!(encode_digraph6(&BitDigraph::new(0)), "&?");
    }

    #[test]
    fn long_size_header() {
        let g = UGraph::new(63);
        let s = encode_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode_graph6(&s).unwrap().order(), 63);
        let big = UGraph::cycle(300);
        assert_eq!(decode_graph6(&encode_graph6(&big)).unwrap(), big);
    }

    #[test]
    fn malformed_lines() {
        assert!(matches!(decode_graph6(""), Err(Error::MalformedInput(_))));
        assert!(matches!(decode_graph6("Dh"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode_graph6("Dh\x07c"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode_digraph6("DI?AO?"), Err(Error::MalformedInput(_))));
        assert!(matches!(decode_digraph6("&DI?AO"), Err(Error::MalformedInput(_))));
        // loop bit set on vertex 0
        assert!(matches!(decode_digraph6("&@_"), Err(Error::MalformedInput(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn digraph6_round_trip(n in 0usize..=30, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut d = BitDigraph::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.gen_bool(0.3) {
                        d.add_arc(u, v);
                    }
                }
            }
            let line = encode_digraph6(&d);
            prop_assert_eq!(decode_digraph6(&line).unwrap(), d);
        }

        #[test]
        fn graph6_round_trip(n in 0usize..=70, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = UGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            prop_assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
        }
    }
}
