//! Betweenness, lines and the de Bruijn–Erdős property in graph metrics.
//!
//! A vertex `b` is between `a` and `c` when `d(a,b) + d(b,c) = d(a,c)`; three
//! vertices are collinear when one is between the other two. The line
//! generated by `a` and `b` is `{a, b}` together with every vertex collinear
//! with them. Lines are compared as vertex sets; the generating pair is kept
//! only as a witness.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{all_pairs_distances, DistanceMatrix};
use crate::vset::VertexSet;

fn check_vertex(d: &DistanceMatrix, v: usize) -> Result<()> {
    if v >= d.n() {
        Err(Error::VertexOutOfRange(v))
    } else {
        Ok(())
    }
}

fn check_triple(d: &DistanceMatrix, a: usize, b: usize, c: usize) -> Result<()> {
    for v in [a, b, c] {
        check_vertex(d, v)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::RepeatedVertex);
    }
    Ok(())
}

/// Whether `b` lies between `a` and `c`.
pub fn is_between(d: &DistanceMatrix, a: usize, b: usize, c: usize) -> Result<bool> {
    check_triple(d, a, b, c)?;
    Ok(d.get(a, b) + d.get(b, c) == d.get(a, c))
}

pub fn are_collinear(d: &DistanceMatrix, a: usize, b: usize, c: usize) -> Result<bool> {
    check_triple(d, a, b, c)?;
    Ok(collinear_unchecked(d, a, b, c))
}

#[inline]
fn collinear_unchecked(d: &DistanceMatrix, a: usize, b: usize, c: usize) -> bool {
    let (ab, bc, ac) = (d.get(a, b), d.get(b, c), d.get(a, c));
    ab + bc == ac || ab + ac == bc || ac + bc == ab
}

/// A line with the pair that generated it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub generators: (usize, usize),
    pub members: VertexSet,
}

pub fn line(d: &DistanceMatrix, a: usize, b: usize) -> Result<Line> {
    check_vertex(d, a)?;
    check_vertex(d, b)?;
    if a == b {
        return Err(Error::RepeatedVertex);
    }
    Ok(Line {
        generators: (a.min(b), a.max(b)),
        members: line_members(d, a, b),
    })
}

/// Members of the line through `a != b`, without argument checks.
pub(crate) fn line_members(d: &DistanceMatrix, a: usize, b: usize) -> VertexSet {
    let mut members = VertexSet::pair(a, b);
    for v in 0..d.n() {
        if v != a && v != b && collinear_unchecked(d, v, a, b) {
            members.insert(v);
        }
    }
    members
}

/// Every line of a graph, indexed by generating pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineSet {
    n: usize,
    /// Distinct member sets, sorted.
    lines: Vec<VertexSet>,
    /// For each pair `(a, b)` with `a < b`, the index of its line in `lines`.
    generator_index: BTreeMap<(usize, usize), usize>,
}

impl LineSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distinct_count(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[VertexSet] {
        &self.lines
    }

    pub fn generator_index(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.generator_index
    }

    pub fn line_of(&self, a: usize, b: usize) -> Option<VertexSet> {
        self.generator_index
            .get(&(a.min(b), a.max(b)))
            .map(|&i| self.lines[i])
    }

    /// Generating pairs of each distinct line, in the order of `lines()`.
    pub fn generators_by_line(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.lines.len()];
        for (&pair, &i) in &self.generator_index {
            out[i].push(pair);
        }
        out
    }

    /// The smallest pair generating a universal line.
    pub fn universal_pair(&self) -> Option<(usize, usize)> {
        let full = VertexSet::full(self.n);
        self.generator_index
            .iter()
            .find(|(_, &i)| self.lines[i] == full)
            .map(|(&pair, _)| pair)
    }
}

pub fn all_lines(g: &Graph) -> Result<LineSet> {
    let d = all_pairs_distances(g)?;
    Ok(lines_from_distances(&d))
}

pub fn lines_from_distances(d: &DistanceMatrix) -> LineSet {
    let n = d.n();
    let mut by_pair = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            by_pair.push(((a, b), line_members(d, a, b)));
        }
    }
    let distinct: BTreeSet<VertexSet> = by_pair.iter().map(|&(_, m)| m).collect();
    let lines: Vec<VertexSet> = distinct.into_iter().collect();
    let generator_index = by_pair
        .into_iter()
        .map(|(pair, m)| (pair, lines.binary_search(&m).expect("collected above")))
        .collect();
    LineSet {
        n,
        lines,
        generator_index,
    }
}

pub fn has_universal_line(g: &Graph) -> Result<Option<(usize, usize)>> {
    let d = all_pairs_distances(g)?;
    Ok(universal_pair(&d))
}

pub(crate) fn universal_pair(d: &DistanceMatrix) -> Option<(usize, usize)> {
    let full = VertexSet::full(d.n());
    (0..d.n())
        .flat_map(|a| (a + 1..d.n()).map(move |b| (a, b)))
        .find(|&(a, b)| line_members(d, a, b) == full)
}

/// Outcome of the de Bruijn–Erdős test, with its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DbeVerdict {
    Universal { pair: (usize, usize) },
    EnoughLines { count: usize },
    Fails { count: usize },
}

impl DbeVerdict {
    pub fn holds(self) -> bool {
        !matches!(self, DbeVerdict::Fails { .. })
    }
}

impl std::fmt::Display for DbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DbeVerdict::Universal { pair: (a, b) } => write!(f, "universal({a},{b})"),
            DbeVerdict::EnoughLines { count } => write!(f, "enough_lines({count})"),
            DbeVerdict::Fails { count } => write!(f, "fails({count})"),
        }
    }
}

pub fn has_dbe_property(g: &Graph) -> Result<DbeVerdict> {
    if g.n() < 2 {
        return Err(Error::InvalidGraph("need at least two vertices".into()));
    }
    let d = all_pairs_distances(g)?;
    Ok(dbe_from_lines(&lines_from_distances(&d)))
}

pub fn dbe_from_lines(lines: &LineSet) -> DbeVerdict {
    if let Some(pair) = lines.universal_pair() {
        DbeVerdict::Universal { pair }
    } else if lines.distinct_count() >= lines.n() {
        DbeVerdict::EnoughLines {
            count: lines.distinct_count(),
        }
    } else {
        DbeVerdict::Fails {
            count: lines.distinct_count(),
        }
    }
}

/// Distance triples `p <= q <= r <= max_d` on which the triangle inequality
/// is tight, i.e. `p + q = r`.
pub fn tight_triples(max_d: u32) -> BTreeSet<(u32, u32, u32)> {
    let mut out = BTreeSet::new();
    for p in 1..=max_d {
        for q in p..=max_d {
            if p + q <= max_d {
                out.insert((p, q, p + q));
            }
        }
    }
    out
}
