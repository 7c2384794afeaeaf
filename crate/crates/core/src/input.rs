//! Text inputs: an edge list with an `n <order>` header, or a Cayley spec string.

use crate::cayley::CayleySpec;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses an input document. Undirected digraphs are rejected unless
/// `allow_undirected` is set.
pub fn parse_input(text: &str, allow_undirected: bool) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((first_no, first)) = lines.next() else {
        return Err(parse_err(0, "empty input"));
    };

    if first.starts_with("cay:") {
        if let Some((no, _)) = lines.next() {
            return Err(parse_err(no, "unexpected content after Cayley spec"));
        }
        let spec: CayleySpec = first
            .parse()
            .map_err(|e: Error| parse_err(first_no, e.to_string()))?;
        let d = spec.digraph();
        if !allow_undirected && d.is_undirected() {
            return Err(Error::Undirected);
        }
        return Ok(d);
    }

    let mut header = first.split_whitespace();
    let order = match (header.next(), header.next(), header.next()) {
        (Some("n"), Some(n), None) => n
            .parse::<usize>()
            .map_err(|_| parse_err(first_no, format!("bad order {n:?}")))?,
        _ => {
            return Err(parse_err(
                first_no,
                "expected header `n <order>` or a `cay:` spec",
            ))
        }
    };

    let mut arcs = Vec::new();
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(parse_err(no, format!("expected `<u> <v>`, got {line:?}")));
        };
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(no, format!("bad vertex {s:?}")))
        };
        arcs.push((num(u)?, num(v)?));
    }
    Digraph::new(order, &arcs, !allow_undirected)
}
