//! Generators for small graph universes, deduplicated up to isomorphism.

use std::collections::HashSet;

use crate::bisplit::BisplitPartition;
use crate::canon::{canonical_form, DEFAULT_CANON_BOUND};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

pub const MAX_ALL_CONNECTED: usize = 7;

fn check_range(n: usize, max: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("n = {n}, need at least 2")));
    }
    if n > max {
        return Err(Error::TooLarge { n, max });
    }
    Ok(())
}

/// One representative per isomorphism class of connected bisplit graphs on
/// `n` vertices, each with the partition it was built from.
///
/// Vertices `0..p` form `Y`, `p..p+q` form `Z` and the rest form `X`. The
/// `Y`–`Z` block is complete; each vertex of `X` picks a nonempty set of
/// neighbours in `Y ∪ Z`, so every graph built is connected. Vertices of
/// `X` are interchangeable, so only nondecreasing neighbourhood sequences
/// are built, and `p <= q` by the `Y`/`Z` symmetry.
pub fn gen_bisplit_with_partitions(n: usize) -> Result<Vec<(Graph, BisplitPartition)>> {
    check_range(n, DEFAULT_CANON_BOUND)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in 1..n {
        for q in p..=n - p {
            let m = p + q;
            let k = n - m;
            let y = VertexSet::full(p);
            let z = VertexSet::full(m).difference(y);
            let x = VertexSet::full(n).difference(y).difference(z);
            let mut base = vec![VertexSet::EMPTY; n];
            for u in y.iter() {
                base[u] = z;
            }
            for u in z.iter() {
                base[u] = y;
            }
            let mut masks = Vec::with_capacity(k);
            for_each_multiset(k, 1, (1u64 << m) - 1, &mut masks, &mut |masks| {
                let mut adj = base.clone();
                for (i, &mask) in masks.iter().enumerate() {
                    let xv = m + i;
                    adj[xv] = VertexSet::from_bits(mask);
                    for u in VertexSet::from_bits(mask).iter() {
                        adj[u].insert(xv);
                    }
                }
                let g = Graph::from_adjacency(adj).expect("symmetric by construction");
                let form = canonical_form(&g).expect("n within bound");
                if seen.insert(form) {
                    out.push((g, BisplitPartition::new(x, y, z)));
                }
            });
        }
    }
    Ok(out)
}

pub fn gen_bisplit_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(gen_bisplit_with_partitions(n)?
        .into_iter()
        .map(|(g, _)| g)
        .collect())
}

/// Calls `f` on every nondecreasing sequence of `k` values in `lo..=hi`.
fn for_each_multiset(
    k: usize,
    lo: u64,
    hi: u64,
    acc: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]),
) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for v in lo..=hi {
        acc.push(v);
        for_each_multiset(k, v, hi, acc, f);
        acc.pop();
    }
}

/// One representative per isomorphism class of connected graphs on `n`
/// vertices.
pub fn gen_all_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    check_range(n, MAX_ALL_CONNECTED)?;
    Ok(extend_hereditary(n, |_| true))
}

/// One representative per isomorphism class of connected bipartite graphs.
pub fn gen_connected_bipartite_graphs(n: usize) -> Result<Vec<Graph>> {
    check_range(n, DEFAULT_CANON_BOUND)?;
    Ok(extend_hereditary(n, Graph::is_bipartite))
}

/// Connected graphs satisfying a property closed under deleting a vertex
/// that keeps the graph connected. Such a vertex always exists (a leaf of a
/// spanning tree), so every class on `k + 1` vertices is reached by adding
/// one vertex to a class on `k` vertices.
fn extend_hereditary(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    for k in 1..n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 1..(1u64 << k) {
                let mut adj: Vec<VertexSet> = (0..k).map(|v| g.neighbors(v)).collect();
                adj.push(VertexSet::from_bits(mask));
                for u in VertexSet::from_bits(mask).iter() {
                    adj[u].insert(k);
                }
                let h = Graph::from_adjacency(adj).expect("symmetric by construction");
                if !keep(&h) {
                    continue;
                }
                if seen.insert(canonical_form(&h).expect("n within bound")) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}
