//! The shortest-path metric of a connected graph.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

/// All-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn max(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Vertices of `within` at distance exactly `k` from `v`.
    pub fn sphere(&self, v: usize, k: u32, within: VertexSet) -> VertexSet {
        within.iter().filter(|&w| self.get(v, w) == k).collect()
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }
}

/// Breadth-first search from every vertex.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.n();
    let mut d = vec![0u32; n * n];
    for s in 0..n {
        let mut seen = VertexSet::singleton(s);
        let mut frontier = seen;
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let next = g.neighborhood(frontier).difference(seen);
            for v in next.iter() {
                d[s * n + v] = depth;
            }
            seen = seen.union(next);
            frontier = next;
        }
        if seen != g.vertices() {
            return Err(Error::NotConnected);
        }
    }
    Ok(DistanceMatrix { n, d })
}

pub fn diameter(g: &Graph) -> Result<u32> {
    Ok(all_pairs_distances(g)?.max())
}
