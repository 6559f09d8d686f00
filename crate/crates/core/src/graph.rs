//! Simple undirected graphs on at most 64 vertices, with edge-list and
//! graph6 input/output.

use std::fmt;

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Largest vertex count representable with word-sized adjacency rows.
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count whose graph6 header is a single byte.
pub const GRAPH6_MAX_VERTICES: usize = 62;

/// A simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { n, max: MAX_VERTICES });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows; rows must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n);
        for (u, row) in adj.iter().enumerate() {
            if !row.is_subset(full) {
                return Err(Error::VertexOutOfRange(row.difference(full).min().unwrap_or(n)));
            }
            if row.contains(u) {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            for v in row.iter() {
                if !adj[v].contains(u) {
                    return Err(Error::InvalidGraph(format!(
                        "adjacency not symmetric at ({u},{v})"
                    )));
                }
            }
        }
        g.adj = adj;
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n {
            return Err(Error::VertexOutOfRange(u));
        }
        if v >= self.n {
            return Err(Error::VertexOutOfRange(v));
        }
        if u == v {
            return Err(Error::RepeatedVertex);
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Union of the neighbourhoods of `set`.
    pub fn neighborhood(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
    }

    /// True when no two vertices of `set` are adjacent.
    pub fn is_stable(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Vertices reachable from `start`, ignoring the edge `skip` if given.
    fn component(&self, start: usize, skip: Option<(usize, usize)>) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                let mut row = self.adj[v];
                if let Some((a, b)) = skip {
                    if v == a {
                        row.remove(b);
                    } else if v == b {
                        row.remove(a);
                    }
                }
                next = next.union(row);
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component(0, None) == self.vertices()
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// A proper 2-colouring as the set of vertices coloured 1, if one exists.
    /// The lowest vertex of every component gets colour 0.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut color = vec![None::<bool>; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let cv = color[v].expect("coloured before push");
                for w in self.adj[v].iter() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            stack.push(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(
            (0..self.n)
                .filter(|&v| color[v] == Some(true))
                .collect(),
        )
    }

    /// Edges whose removal disconnects their endpoints.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .filter(|&(u, v)| !self.component(u, Some((u, v))).contains(v))
            .collect()
    }

    pub fn has_bridge(&self) -> bool {
        self.edges()
            .any(|(u, v)| !self.component(u, Some((u, v))).contains(v))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph { n: self.n, adj }
    }

    /// Parses the edge-list format: an `n m` header followed by `m` lines
    /// `u v`. Lines starting with `#` and blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing \"n m\" header".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;
        if n == 0 {
            return Err(Error::Parse {
                line: header_line,
                message: "vertex count must be at least 1".into(),
            });
        }
        if n > MAX_VERTICES {
            return Err(Error::Parse {
                line: header_line,
                message: format!("{n} vertices, at most {MAX_VERTICES} supported"),
            });
        }
        let mut g = Graph::empty(n)?;
        let mut seen = 0;
        for (line, text) in lines {
            if seen == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the {m} declared edges"),
                });
            }
            let (u, v) = parse_pair(line, text)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex index out of range 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            g.add_edge(u, v)?;
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("expected {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Decodes a graph6 string (an optional `>>graph6<<` header and
    /// surrounding whitespace are accepted).
    pub fn parse_graph6(text: &str) -> Result<Graph> {
        let text = text.trim();
        let body = text.strip_prefix(">>graph6<<").unwrap_or(text).as_bytes();
        let Some((&first, rest)) = body.split_first() else {
            return Err(Error::Graph6("empty input".into()));
        };
        if let Some(&bad) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(Error::Graph6(format!("byte {bad} outside 63..=126")));
        }
        if first == 126 {
            return Err(Error::Graph6(format!(
                "multi-byte size header: only n <= {GRAPH6_MAX_VERTICES} is supported"
            )));
        }
        let n = (first - 63) as usize;
        if n == 0 {
            return Err(Error::Graph6("graph has no vertices".into()));
        }
        let nbits = n * (n - 1) / 2;
        let expected = nbits.div_ceil(6);
        if rest.len() != expected {
            return Err(Error::Graph6(format!(
                "n = {n} needs {expected} data bytes, found {}",
                rest.len()
            )));
        }
        let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    g.add_edge(i, j)?;
                }
                k += 1;
            }
        }
        for pad in k..expected * 6 {
            if bit(pad) {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
        }
        Ok(g)
    }

    /// Encodes as graph6. Panics if `n > 62`.
    pub fn to_graph6(&self) -> String {
        assert!(
            self.n <= GRAPH6_MAX_VERTICES,
            "graph6 encoding supports n <= {GRAPH6_MAX_VERTICES}"
        );
        let mut out = vec![self.n as u8 + 63];
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 is ASCII")
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let f = fields.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?;
        f.parse().map_err(|_| Error::Parse {
            line,
            message: format!("{what} {f:?} is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "])")
    }
}

/// Small named graphs used throughout the tests and the CLI.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("valid clique")
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("valid star")
    }

    /// Vertex labels of the two seven-vertex fixtures below.
    pub const SUSPECT_LABELS: [&str; 7] = ["a", "b", "c", "y_a", "y_b", "z_a", "z_b"];

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const YA: usize = 3;
    const YB: usize = 4;
    const ZA: usize = 5;
    const ZB: usize = 6;

    const HEXAGON: [(usize, usize); 6] = [(A, ZA), (ZA, YB), (YB, B), (B, ZB), (ZB, YA), (YA, A)];

    /// The denser of the two seven-vertex bisplit graphs with three
    /// vertices in `X` and no universal line: `c` sees all of `Y` and `Z`.
    pub fn suspect_left() -> Graph {
        let mut edges = HEXAGON.to_vec();
        edges.extend([(C, ZA), (ZA, YA), (YA, C), (C, ZB), (ZB, YB), (YB, C)]);
        Graph::from_edges(7, &edges).expect("valid fixture")
    }

    /// The sparser one: `c` sees only `y_a` and `z_b`.
    pub fn suspect_right() -> Graph {
        let mut edges = HEXAGON.to_vec();
        edges.extend([(ZA, YA), (YA, C), (C, ZB), (ZB, YB)]);
        Graph::from_edges(7, &edges).expect("valid fixture")
    }
}
