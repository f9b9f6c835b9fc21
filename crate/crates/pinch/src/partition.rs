//! Vertex partitions and restricted-growth-string enumeration.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{Vertex, VertexSet};

/// Partition of a ground set into nonempty disjoint parts.
/// Invariant: parts are nonempty, pairwise disjoint, and sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexPartition {
    parts: Vec<VertexSet>,
}

impl VertexPartition {
    pub fn new(parts: Vec<VertexSet>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &parts {
            if p.is_empty() {
                return invalid("empty part in partition");
            }
            for &v in p {
                if !seen.insert(v) {
                    return invalid(format!("vertex {v} occurs in two parts"));
                }
            }
        }
        let mut parts = parts;
        parts.sort_by_key(|p| *p.iter().next().expect("nonempty"));
        Ok(VertexPartition { parts })
    }

    pub fn singletons(xs: &VertexSet) -> Self {
        VertexPartition {
            parts: xs.iter().map(|&x| VertexSet::from([x])).collect(),
        }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn ground(&self) -> VertexSet {
        self.parts.iter().flatten().copied().collect()
    }

    /// Parts with at least two vertices.
    pub fn nontrivial(&self) -> impl Iterator<Item = &VertexSet> {
        self.parts.iter().filter(|p| p.len() >= 2)
    }

    /// Builds the partition of `ground` (in increasing order) named by an RGS.
    pub fn from_rgs(ground: &[Vertex], rgs: &[usize]) -> Self {
        let k = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts = vec![VertexSet::new(); k];
        for (&v, &b) in ground.iter().zip(rgs) {
            parts[b].insert(v);
        }
        VertexPartition { parts }
    }
}

/// Visits all restricted growth strings of length `n` in lexicographic order.
/// Each corresponds to one set partition of `0..n`.
pub fn for_each_rgs<B>(n: usize, mut f: impl FnMut(&[usize]) -> ControlFlow<B>) -> ControlFlow<B> {
    let mut a = vec![0usize; n];
    // max_prefix[i] = max(a[0..i]), with max_prefix[0] unused.
    let mut max_prefix = vec![0usize; n + 1];
    loop {
        f(&a)?;
        // Rightmost position that can be incremented.
        let mut i = n;
        loop {
            if i <= 1 {
                return ControlFlow::Continue(());
            }
            i -= 1;
            let m = if i == 0 { 0 } else { max_prefix[i] };
            if a[i] <= m {
                break;
            }
        }
        a[i] += 1;
        a[i + 1..n].fill(0);
        for j in 1..=n {
            max_prefix[j] = if j == 1 { a[0] } else { max_prefix[j - 1].max(a[j - 1]) };
        }
    }
}

/// Bell number B(n).
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let y = *next.last().expect("nonempty") + x;
            next.push(y);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rgs_counts_match_bell_numbers() {
        for n in 0..8 {
            let mut count = 0u64;
            let _ = for_each_rgs::<()>(n, |_| {
                count += 1;
                ControlFlow::Continue(())
            });
            assert_eq!(count, bell(n), "n = {n}");
        }
    }

    #[test]
    fn rgs_order_is_lexicographic() {
        let mut seen = Vec::new();
        let _ = for_each_rgs::<()>(3, |a| {
            seen.push(a.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(
            seen,
            vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 1, 0],
                vec![0, 1, 1],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn rejects_overlap_and_empty() {
        assert!(VertexPartition::new(vec![VertexSet::from([1, 2]), VertexSet::from([2])]).is_err());
        assert!(VertexPartition::new(vec![VertexSet::new()]).is_err());
    }
}
