//! The bundled minor-obstruction list for the projective plane.
//!
//! File format: one graph6 string per line, `#` comments, and a final
//! `# sha256:<hex>` line hashing the graph6 lines (each followed by `\n`).

use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::canon::{canonical_form, CanonForm};
use crate::embed::is_planar_graph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6;

pub const OBSTRUCTION_DATA: &str = include_str!("../data/projective_obstructions.g6");

pub struct Obstruction {
    pub graph: Graph,
    pub form: CanonForm,
    pub graph6: String,
}

/// Hex SHA-256 of the graph6 lines.
pub fn checksum<'a>(lines: impl IntoIterator<Item = &'a str>) -> String {
    let mut h = Sha256::new();
    for l in lines {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn data_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: message.into(),
    }
}

/// Parses and validates an obstruction file: graph6 syntax, checksum, and
/// nonplanarity of every entry.
pub fn load_projective_obstructions(text: &str) -> Result<Vec<Graph>> {
    let mut entries: Vec<(usize, &str)> = Vec::new();
    let mut declared: Option<(usize, &str)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            if let Some(hex) = c.trim().strip_prefix("sha256:") {
                declared = Some((i + 1, hex.trim()));
            }
            continue;
        }
        if declared.is_some() {
            return Err(data_err(i + 1, "graph after the checksum line"));
        }
        entries.push((i + 1, line));
    }
    let Some((cline, hex)) = declared else {
        return Err(data_err(text.lines().count().max(1), "missing checksum line"));
    };
    let actual = checksum(entries.iter().map(|e| e.1));
    if actual != hex {
        return Err(data_err(
            cline,
            format!("checksum mismatch: file says {hex}, content hashes to {actual}"),
        ));
    }
    let mut out = Vec::with_capacity(entries.len());
    for (line, s) in entries {
        let g = graph6::decode(s).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse { line, column, message },
            other => other,
        })?;
        if is_planar_graph(&g) {
            return Err(data_err(line, "obstruction entry is planar"));
        }
        out.push(g);
    }
    Ok(out)
}

/// The bundled list, parsed once. Panics if the bundled file is corrupt.
pub fn projective_obstructions() -> &'static [Obstruction] {
    static LIST: OnceLock<Vec<Obstruction>> = OnceLock::new();
    LIST.get_or_init(|| {
        let graphs = load_projective_obstructions(OBSTRUCTION_DATA).expect("bundled obstruction file is valid");
        graphs
            .into_iter()
            .map(|g| Obstruction {
                form: canonical_form(&g),
                graph6: graph6::encode(&g),
                graph: g,
            })
            .collect()
    })
}

/// Index of `K7` minus a 4-cycle (the entry keyed D17) in the bundled list.
pub fn d17_index() -> usize {
    let mut d17 = Graph::complete(7);
    for i in 0..4 {
        d17.remove_edge(i, (i + 1) % 4);
    }
    let form = canonical_form(&d17);
    projective_obstructions()
        .iter()
        .position(|o| o.form == form)
        .expect("bundled list contains K7 minus a 4-cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::embed::is_minimal_nonprojective;

    #[test]
    fn bundled_list_is_valid() {
        let list = projective_obstructions();
        assert_eq!(list.len(), 35);
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                assert!(!are_isomorphic(&a.graph, &b.graph));
            }
        }
        assert_eq!(list[d17_index()].graph.m(), 17);
    }

    #[test]
    fn every_entry_is_minor_minimal() {
        for o in projective_obstructions() {
            assert!(is_minimal_nonprojective(&o.graph), "{}", o.graph6);
        }
    }

    #[test]
    fn corrupt_files_are_rejected() {
        let good = OBSTRUCTION_DATA;
        let tampered = good.replacen("FQ~~w", "FQ~~o", 1);
        match load_projective_obstructions(&tampered) {
            Err(Error::Parse { message, .. }) => assert!(message.contains("checksum")),
            other => panic!("unexpected {other:?}"),
        }
        // K5 is nonplanar and accepted; a planar entry is rejected with its line.
        let k5 = format!("D~{{\n# sha256:{}\n", checksum(["D~{"]));
        assert!(load_projective_obstructions(&k5).is_ok());
        let k4 = format!("C~\n# sha256:{}\n", checksum(["C~"]));
        match load_projective_obstructions(&k4) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        let bad = format!("D~{{\n!!\n# sha256:{}\n", checksum(["D~{", "!!"]));
        match load_projective_obstructions(&bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(load_projective_obstructions("C~\n").is_err());
    }
}
