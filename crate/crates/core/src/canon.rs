//! Canonical forms for isomorphism rejection on small graphs.
//!
//! Vertices are first split into cells by colour refinement (starting from
//! degrees), which is invariant under relabelling. The canonical form is then
//! the lexicographically smallest upper-triangle adjacency string over all
//! vertex orders that list the cells in refinement order. A branch is cut as
//! soon as its partial string exceeds the best one found so far.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vset::VertexSet;

pub const DEFAULT_CANON_BOUND: usize = 10;

/// Canonical form with the default vertex bound.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    canonical_form_bounded(g, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded(g: &Graph, max_n: usize) -> Result<Vec<u8>> {
    let n = g.n();
    if n > max_n {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let order = canonical_order(g);
    let mut out = Vec::with_capacity(1 + (n * n).div_ceil(16));
    out.push(n as u8);
    let mut acc = 0u8;
    let mut filled = 0;
    for i in 1..n {
        for j in 0..i {
            acc = acc << 1 | g.has_edge(order[j], order[i]) as u8;
            filled += 1;
            if filled == 8 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    Ok(out)
}

/// The canonical relabelling of `g` (vertex at position `i` becomes `i`).
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    if g.n() > DEFAULT_CANON_BOUND {
        return Err(Error::TooLarge {
            n: g.n(),
            max: DEFAULT_CANON_BOUND,
        });
    }
    let order = canonical_order(g);
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.permuted(&perm))
}

/// Stable colouring by iterated neighbourhood-colour refinement.
fn refine_colors(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let mut colors: Vec<u32> = g.degrees().into_iter().map(|d| d as u32).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        colors = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present") as u32)
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a Graph,
    cells: Vec<VertexSet>,
    cell_at: Vec<usize>,
    current: Vec<usize>,
    columns: Vec<u64>,
    best: Vec<u64>,
    best_order: Vec<usize>,
}

impl Search<'_> {
    fn column(&self, depth: usize, v: usize) -> u64 {
        self.current[..depth]
            .iter()
            .fold(0u64, |acc, &u| acc << 1 | self.g.has_edge(u, v) as u64)
    }

    /// Returns true when the best string was replaced inside this subtree.
    fn run(&mut self, depth: usize, mut tight: bool, used: VertexSet) -> bool {
        let n = self.g.n();
        if depth == n {
            if self.best_order.is_empty() || !tight {
                self.best.clone_from(&self.columns);
                self.best_order.clone_from(&self.current);
                return true;
            }
            return false;
        }
        let mut updated = false;
        let candidates = self.cells[self.cell_at[depth]].difference(used);
        for v in candidates.iter() {
            let col = self.column(depth, v);
            let child_tight = if self.best_order.is_empty() || !tight {
                false
            } else {
                match col.cmp(&self.best[depth]) {
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Equal => true,
                    std::cmp::Ordering::Less => false,
                }
            };
            self.current.push(v);
            self.columns.push(col);
            let mut next_used = used;
            next_used.insert(v);
            if self.run(depth + 1, child_tight, next_used) {
                updated = true;
                tight = true;
            }
            self.current.pop();
            self.columns.pop();
        }
        updated
    }
}

fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let colors = refine_colors(g);
    let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut cells = vec![VertexSet::EMPTY; k];
    for (v, &c) in colors.iter().enumerate() {
        cells[c as usize].insert(v);
    }
    let cell_at: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len()))
        .collect();
    let mut search = Search {
        g,
        cells,
        cell_at,
        current: Vec::with_capacity(n),
        columns: Vec::with_capacity(n),
        best: Vec::new(),
        best_order: Vec::new(),
    };
    search.run(0, false, VertexSet::EMPTY);
    search.best_order
}
