//! Graph and society text formats: graph6, edge lists and a DOT subset.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use pinch::{graph6, Error, Graph, Result, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
    Dot,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edge-list" | "edges" => Ok(Format::EdgeList),
            "dot" | "dot-subset" => Ok(Format::Dot),
            _ => Err(format!("unknown graph format {s:?} (graph6, edge-list, dot)")),
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Guesses the format: a `.g6`/`.dot` extension wins, then content
/// (`graph`/`strict` keyword for DOT, a single token line for graph6).
pub fn detect(path: Option<&str>, text: &str) -> Format {
    if let Some(p) = path {
        if p.ends_with(".g6") || p.ends_with(".graph6") {
            return Format::Graph6;
        }
        if p.ends_with(".dot") || p.ends_with(".gv") {
            return Format::Dot;
        }
    }
    let body: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let first = body.first().copied().unwrap_or("");
    if first.starts_with("graph") || first.starts_with("strict") {
        Format::Dot
    } else if body.len() == 1
        && !first.contains(char::is_whitespace)
        && !first.starts_with("n=")
        && first.parse::<u64>().is_err()
    {
        Format::Graph6
    } else {
        Format::EdgeList
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => {
            let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).collect();
            match lines.as_slice() {
                [(i, l)] => graph6::decode(l.trim()).map_err(|e| match e {
                    Error::Parse { column, message, .. } => parse_err(i + 1, column, message),
                    other => other,
                }),
                [] => Err(parse_err(1, 1, "no graph6 line")),
                [_, (i, _), ..] => Err(parse_err(i + 1, 1, "expected exactly one graph6 line")),
            }
        }
        Format::EdgeList => parse_edge_list(text),
        Format::Dot => parse_dot(text),
    }
}

/// One `u v` pair per line; a lone id adds an isolated vertex; `#` starts
/// a comment; an optional leading `n=<count>` declares vertices `0..count`
/// and restricts ids to that range.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    let mut declared: Option<usize> = None;
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix("n=").or_else(|| trimmed.strip_prefix("n =")) {
            if seen_content {
                return Err(parse_err(i + 1, lead + 1, "the n= header must come first"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| parse_err(i + 1, lead + 3, format!("bad vertex count {rest:?}")))?;
            for v in 0..n {
                g.add_vertex(v as Vertex);
            }
            declared = Some(n);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut ids = Vec::new();
        for (col, tok) in tokens(line) {
            let v: Vertex = tok
                .parse()
                .map_err(|_| parse_err(i + 1, col, format!("expected a vertex id, found {tok:?}")))?;
            if declared.is_some_and(|n| v as usize >= n) {
                return Err(parse_err(i + 1, col, format!("vertex {v} exceeds the declared count")));
            }
            ids.push((col, v));
        }
        match ids.as_slice() {
            [(_, v)] => {
                g.add_vertex(*v);
            }
            [(_, u), (col, v)] => {
                if u == v {
                    return Err(parse_err(i + 1, *col, format!("self-loop at {u}")));
                }
                g.add_edge(*u, *v);
            }
            _ => return Err(parse_err(i + 1, ids[2].0, "expected at most two ids per line")),
        }
    }
    Ok(g)
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out.into_iter()
}

/// Undirected DOT subset: `[strict] graph [name] { ... }` with statements
/// `a;` and `a -- b -- c;` over numeric ids (optionally quoted); attribute
/// lists and `//` comments are ignored.
pub fn parse_dot(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    let mut opened = false;
    let mut closed = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split("//").next().unwrap_or("");
        let mut rest = line.trim();
        if rest.is_empty() || rest.starts_with('#') {
            continue;
        }
        if closed {
            return Err(parse_err(i + 1, 1, "content after the closing brace"));
        }
        if !opened {
            let header = rest.strip_prefix("strict").map(str::trim_start).unwrap_or(rest);
            if header.starts_with("digraph") {
                return Err(parse_err(i + 1, 1, "directed graphs are not supported"));
            }
            let Some(after) = header.strip_prefix("graph") else {
                return Err(parse_err(i + 1, 1, "expected `graph {`"));
            };
            let Some(brace) = after.find('{') else {
                return Err(parse_err(i + 1, 1, "expected `{` on the header line"));
            };
            opened = true;
            rest = after[brace + 1..].trim();
        }
        let base = raw.len() - raw.trim_start().len();
        for stmt in rest.split(';') {
            let mut stmt = stmt.trim();
            if let Some(p) = stmt.find('}') {
                closed = true;
                stmt = stmt[..p].trim();
            }
            let stmt = stmt.split('[').next().unwrap_or("").trim();
            if stmt.is_empty() || stmt.contains('=') {
                continue;
            }
            if stmt.contains("->") {
                return Err(parse_err(i + 1, base + 1, "directed edges are not supported"));
            }
            let ids = stmt
                .split("--")
                .map(|t| {
                    let t = t.trim().trim_matches('"');
                    t.parse::<Vertex>()
                        .map_err(|_| parse_err(i + 1, base + 1, format!("expected a numeric node id, found {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &v in &ids {
                g.add_vertex(v);
            }
            for w in ids.windows(2) {
                if w[0] == w[1] {
                    return Err(parse_err(i + 1, base + 1, format!("self-loop at {}", w[0])));
                }
                g.add_edge(w[0], w[1]);
            }
        }
    }
    if !opened {
        return Err(parse_err(1, 1, "missing `graph {` header"));
    }
    if !closed {
        return Err(parse_err(text.lines().count().max(1), 1, "missing closing brace"));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => graph6::encode(g) + "\n",
        Format::EdgeList => {
            let mut out = String::new();
            let dense = g.vertices().enumerate().all(|(i, v)| i as Vertex == v);
            if dense {
                writeln!(out, "n={}", g.n()).expect("string write");
            }
            for v in g.vertices().filter(|&v| !dense && g.degree(v) == 0) {
                writeln!(out, "{v}").expect("string write");
            }
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}").expect("string write");
            }
            out
        }
        Format::Dot => {
            let mut out = String::from("graph G {\n");
            for v in g.vertices().filter(|&v| g.degree(v) == 0) {
                writeln!(out, "  {v};").expect("string write");
            }
            for (u, v) in g.edges() {
                writeln!(out, "  {u} -- {v};").expect("string write");
            }
            out.push_str("}\n");
            out
        }
    }
}

/// A graph plus a boundary line `omega: v1 v2 ...`.
pub fn parse_society(text: &str, format: Option<Format>) -> Result<pinch::societies::Society> {
    let mut omega: Option<Vec<Vertex>> = None;
    let mut rest = String::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if let Some(list) = t.strip_prefix("omega:") {
            if omega.is_some() {
                return Err(parse_err(i + 1, 1, "duplicate omega line"));
            }
            let offset = line.len() - list.len();
            let ids = tokens(list)
                .map(|(col, tok)| {
                    tok.parse::<Vertex>()
                        .map_err(|_| parse_err(i + 1, offset + col, format!("bad vertex id {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            omega = Some(ids);
            rest.push('\n');
        } else {
            rest.push_str(line);
            rest.push('\n');
        }
    }
    let Some(omega) = omega else {
        return Err(parse_err(1, 1, "missing `omega:` line"));
    };
    let format = format.unwrap_or_else(|| detect(None, &rest));
    let g = parse_graph(&rest, format)?;
    pinch::societies::Society::new(g, omega)
}

/// Parses `1,2,3` or `1 2 3` into vertex ids.
pub fn parse_vertex_list(s: &str) -> Result<Vec<Vertex>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Vertex>()
                .map_err(|_| Error::InvalidArgument(format!("bad vertex id {t:?}")))
        })
        .collect()
}

/// Relabels to `0..n` preserving order, as graph6 does.
pub fn compact_ids(g: &Graph) -> (Graph, BTreeMap<Vertex, Vertex>) {
    let (h, ids) = g.compact();
    (h, ids.into_iter().enumerate().map(|(i, v)| (v, i as Vertex)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(parse_graph("C~", Format::Graph6).unwrap(), Graph::complete(4));
        assert_eq!(
            parse_graph("1 2\n2 3", Format::EdgeList).unwrap(),
            Graph::from_edges(0, &[(1, 2), (2, 3)])
        );
        let g = parse_graph("n=3\n", Format::EdgeList).unwrap();
        assert_eq!((g.n(), g.m()), (3, 0));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_edge_list("0 1\n1 x\n") {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_edge_list("n=2\n0 2\n") {
            Err(Error::Parse { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_graph("\nC!", Format::Graph6) {
            Err(Error::Parse { line: 2, column: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_dot("digraph { 0 -> 1 }").is_err());
        assert!(parse_dot("graph { 0 -- 1").is_err());
    }

    #[test]
    fn round_trips() {
        let graphs = [
            Graph::petersen(),
            Graph::complete(5),
            Graph::empty(3),
            Graph::from_edges(6, &[(0, 5), (2, 3)]),
        ];
        for g in graphs {
            for f in [Format::Graph6, Format::EdgeList, Format::Dot] {
                let text = write_graph(&g, f);
                assert_eq!(detect(None, &text), f, "{text}");
                assert_eq!(parse_graph(&text, f).unwrap(), g, "{f:?}");
            }
        }
        let sparse = Graph::from_edges(0, &[(3, 7), (7, 9)]);
        for f in [Format::EdgeList, Format::Dot] {
            assert_eq!(parse_graph(&write_graph(&sparse, f), f).unwrap(), sparse);
        }
    }

    #[test]
    fn dot_subset() {
        let g = parse_dot("strict graph G {\n  0 -- 1 -- \"2\" [color=red];\n  5; // lone\n}\n").unwrap();
        assert_eq!(g, {
            let mut h = Graph::from_edges(0, &[(0, 1), (1, 2)]);
            h.add_vertex(5);
            h
        });
    }

    #[test]
    fn societies() {
        let s = parse_society("n=4\n0 1\n1 2\n2 3\n3 0\nomega: 0 1 2 3\n", None).unwrap();
        assert_eq!(s.omega, vec![0, 1, 2, 3]);
        assert!(parse_society("0 1\n", None).is_err());
    }
}
