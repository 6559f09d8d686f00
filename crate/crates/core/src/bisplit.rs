//! Bisplit partitions: three stable sets `X`, `Y`, `Z` with `Y`–`Z` inducing
//! a complete bipartite graph, plus the finer split of `X`, `Y` and `Z` by
//! where the vertices of `X` have their neighbours.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metric::{all_pairs_distances, DistanceMatrix};
use crate::vset::VertexSet;

pub const DEFAULT_PARTITION_BOUND: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BisplitPartition {
    #[serde(rename = "X")]
    pub x: VertexSet,
    #[serde(rename = "Y")]
    pub y: VertexSet,
    #[serde(rename = "Z")]
    pub z: VertexSet,
}

impl BisplitPartition {
    pub fn new(x: VertexSet, y: VertexSet, z: VertexSet) -> Self {
        BisplitPartition { x, y, z }
    }

    pub fn from_lists(x: &[usize], y: &[usize], z: &[usize]) -> Self {
        BisplitPartition {
            x: x.iter().copied().collect(),
            y: y.iter().copied().collect(),
            z: z.iter().copied().collect(),
        }
    }

    pub fn has_empty_side(&self) -> bool {
        self.y.is_empty() || self.z.is_empty()
    }

    pub fn swapped(&self) -> Self {
        BisplitPartition {
            x: self.x,
            y: self.z,
            z: self.y,
        }
    }

    fn check_covers(&self, g: &Graph) -> Result<()> {
        let all = g.vertices();
        let parts = [self.x, self.y, self.z];
        for (i, a) in parts.iter().enumerate() {
            if !a.is_subset(all) {
                return Err(Error::NotAPartition(format!(
                    "vertex {} out of range",
                    a.difference(all).min().expect("nonempty")
                )));
            }
            for b in &parts[i + 1..] {
                if let Some(v) = a.intersection(*b).min() {
                    return Err(Error::NotAPartition(format!("vertex {v} in two classes")));
                }
            }
        }
        let covered = self.x.union(self.y).union(self.z);
        if let Some(v) = all.difference(covered).min() {
            return Err(Error::NotAPartition(format!("vertex {v} in no class")));
        }
        Ok(())
    }
}

/// Checks stability of the three classes and completeness between `Y` and
/// `Z`. Empty `Y` or `Z` is accepted.
pub fn validate_partition(g: &Graph, p: &BisplitPartition) -> Result<bool> {
    p.check_covers(g)?;
    Ok(partition_defect(g, p).is_none())
}

fn partition_defect(g: &Graph, p: &BisplitPartition) -> Option<String> {
    for (name, set) in [("X", p.x), ("Y", p.y), ("Z", p.z)] {
        if !g.is_stable(set) {
            return Some(format!("{name} is not stable"));
        }
    }
    for y in p.y.iter() {
        if !p.z.is_subset(g.neighbors(y)) {
            return Some(format!("vertex {y} of Y is not complete to Z"));
        }
    }
    None
}

/// Exhaustive search for a partition maximising `|Y ∪ Z|`.
///
/// Among maximisers, partitions with both `Y` and `Z` nonempty come first,
/// then the one whose `Y` (then `Z`) has the lexicographically smallest
/// sorted member list.
pub fn find_max_partition(g: &Graph) -> Result<Option<BisplitPartition>> {
    find_max_partition_bounded(g, DEFAULT_PARTITION_BOUND)
}

pub fn find_max_partition_bounded(g: &Graph, max_n: usize) -> Result<Option<BisplitPartition>> {
    if g.n() > max_n {
        return Err(Error::TooLarge { n: g.n(), max: max_n });
    }
    Ok(PartitionSearch::run(g, false))
}

/// Whether some valid partition has both `Y` and `Z` nonempty.
pub fn has_two_sided_partition(g: &Graph) -> Result<bool> {
    if g.n() > DEFAULT_PARTITION_BOUND {
        return Err(Error::TooLarge {
            n: g.n(),
            max: DEFAULT_PARTITION_BOUND,
        });
    }
    Ok(PartitionSearch::run(g, true).is_some())
}

fn preference(a: &BisplitPartition, b: &BisplitPartition) -> Ordering {
    let size = |p: &BisplitPartition| p.y.len() + p.z.len();
    size(b)
        .cmp(&size(a))
        .then_with(|| a.has_empty_side().cmp(&b.has_empty_side()))
        .then_with(|| a.y.lex_cmp(b.y))
        .then_with(|| a.z.lex_cmp(b.z))
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    two_sided_only: bool,
    best: Option<BisplitPartition>,
}

impl PartitionSearch<'_> {
    fn run(g: &Graph, two_sided_only: bool) -> Option<BisplitPartition> {
        let mut s = PartitionSearch {
            g,
            two_sided_only,
            best: None,
        };
        s.assign(0, BisplitPartition::new(VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY));
        s.best
    }

    fn assign(&mut self, v: usize, p: BisplitPartition) {
        let n = self.g.n();
        if let Some(best) = &self.best {
            if p.y.len() + p.z.len() + (n - v) < best.y.len() + best.z.len() {
                return;
            }
        }
        if v == n {
            if self.two_sided_only && p.has_empty_side() {
                return;
            }
            if self
                .best
                .as_ref()
                .is_none_or(|b| preference(&p, b) == Ordering::Less)
            {
                self.best = Some(p);
            }
            return;
        }
        let nb = self.g.neighbors(v);
        if nb.is_disjoint(p.y) && p.z.is_subset(nb) {
            let mut q = p;
            q.y.insert(v);
            self.assign(v + 1, q);
        }
        if nb.is_disjoint(p.z) && p.y.is_subset(nb) {
            let mut q = p;
            q.z.insert(v);
            self.assign(v + 1, q);
        }
        if nb.is_disjoint(p.x) {
            let mut q = p;
            q.x.insert(v);
            self.assign(v + 1, q);
        }
    }
}

/// Classes of the refined partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Class {
    Xp,
    XY,
    XZ,
    Y1,
    Y2,
    Z1,
    Z2,
}

impl Class {
    pub const ALL: [Class; 7] = [
        Class::Xp,
        Class::XY,
        Class::XZ,
        Class::Y1,
        Class::Y2,
        Class::Z1,
        Class::Z2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Xp => "X'",
            Class::XY => "X_Y",
            Class::XZ => "X_Z",
            Class::Y1 => "Y1",
            Class::Y2 => "Y2",
            Class::Z1 => "Z1",
            Class::Z2 => "Z2",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `X` split into `X'` (neighbours on both sides), `X_Y` and `X_Z`
/// (neighbours on one side only); `Y` split into `Y1` (vertices with a
/// neighbour in `X_Y`) and `Y2`; `Z` likewise with `X_Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedPartition {
    #[serde(rename = "Xp")]
    pub xp: VertexSet,
    #[serde(rename = "XY")]
    pub xy: VertexSet,
    #[serde(rename = "XZ")]
    pub xz: VertexSet,
    #[serde(rename = "Y1")]
    pub y1: VertexSet,
    #[serde(rename = "Y2")]
    pub y2: VertexSet,
    #[serde(rename = "Z1")]
    pub z1: VertexSet,
    #[serde(rename = "Z2")]
    pub z2: VertexSet,
}

impl RefinedPartition {
    pub fn x(&self) -> VertexSet {
        self.xp.union(self.xy).union(self.xz)
    }

    pub fn y(&self) -> VertexSet {
        self.y1.union(self.y2)
    }

    pub fn z(&self) -> VertexSet {
        self.z1.union(self.z2)
    }

    /// The partition this refines.
    pub fn base(&self) -> BisplitPartition {
        BisplitPartition::new(self.x(), self.y(), self.z())
    }

    pub fn class(&self, c: Class) -> VertexSet {
        match c {
            Class::Xp => self.xp,
            Class::XY => self.xy,
            Class::XZ => self.xz,
            Class::Y1 => self.y1,
            Class::Y2 => self.y2,
            Class::Z1 => self.z1,
            Class::Z2 => self.z2,
        }
    }

    pub fn class_of(&self, v: usize) -> Option<Class> {
        Class::ALL.into_iter().find(|&c| self.class(c).contains(v))
    }

    /// The same refinement with the roles of `Y` and `Z` exchanged.
    pub fn mirrored(&self) -> RefinedPartition {
        RefinedPartition {
            xp: self.xp,
            xy: self.xz,
            xz: self.xy,
            y1: self.z1,
            y2: self.z2,
            z1: self.y1,
            z2: self.y2,
        }
    }

    /// Orients the refinement so that `X_Y` is nonempty whenever `X_Y` or
    /// `X_Z` is. The flag reports whether `Y` and `Z` were exchanged.
    pub fn oriented(&self) -> (RefinedPartition, bool) {
        if self.xy.is_empty() && !self.xz.is_empty() {
            (self.mirrored(), true)
        } else {
            (*self, false)
        }
    }
}

pub fn refine(g: &Graph, p: &BisplitPartition) -> Result<RefinedPartition> {
    p.check_covers(g)?;
    if let Some(defect) = partition_defect(g, p) {
        return Err(Error::InvalidPartition(defect));
    }
    let (mut xp, mut xy, mut xz) = (VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY);
    for x in p.x.iter() {
        let nb = g.neighbors(x);
        match (nb.is_disjoint(p.y), nb.is_disjoint(p.z)) {
            (false, false) => xp.insert(x),
            (false, true) => xy.insert(x),
            (true, false) => xz.insert(x),
            (true, true) => {
                return Err(Error::Hypothesis(format!("vertex {x} of X has no neighbours")))
            }
        }
    }
    let y1 = p.y.intersection(g.neighborhood(xy));
    let z1 = p.z.intersection(g.neighborhood(xz));
    Ok(RefinedPartition {
        xp,
        xy,
        xz,
        y1,
        y2: p.y.difference(y1),
        z1,
        z2: p.z.difference(z1),
    })
}

/// True when no vertex of `X_Y` is adjacent to every vertex of `Y`.
pub fn check_nofull(g: &Graph, r: &RefinedPartition) -> bool {
    r.xy.iter().all(|x| !r.y().is_subset(g.neighbors(x)))
}

/// Permitted distances between (or within) refined classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistancePattern {
    pub allowed: BTreeMap<(Class, Class), Vec<u32>>,
}

impl DistancePattern {
    /// The distance table that holds in every connected bisplit graph with
    /// `Y` and `Z` nonempty.
    pub fn standard() -> Self {
        use Class::*;
        let mut allowed = BTreeMap::new();
        let mut put = |a: Class, b: Class, ds: &[u32]| {
            allowed.insert((a.min(b), a.max(b)), ds.to_vec());
        };
        put(Xp, Xp, &[2, 3]);
        put(XY, XY, &[2, 4]);
        put(XZ, XZ, &[2, 4]);
        for a in [Y1, Y2] {
            for b in [Y1, Y2] {
                put(a, b, &[2]);
            }
            for b in [Z1, Z2] {
                put(a, b, &[1]);
            }
            put(Xp, a, &[1, 2]);
            put(XZ, a, &[2]);
        }
        for a in [Z1, Z2] {
            for b in [Z1, Z2] {
                put(a, b, &[2]);
            }
            put(Xp, a, &[1, 2]);
            put(XY, a, &[2]);
        }
        put(Xp, XY, &[2, 3]);
        put(Xp, XZ, &[2, 3]);
        put(XY, Y1, &[1, 3]);
        put(XY, Y2, &[3]);
        put(XZ, Z1, &[1, 3]);
        put(XZ, Z2, &[3]);
        put(XY, XZ, &[3]);
        DistancePattern { allowed }
    }

    pub fn allowed(&self, a: Class, b: Class) -> &[u32] {
        &self.allowed[&(a.min(b), a.max(b))]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternViolation {
    pub u: usize,
    pub v: usize,
    pub classes: (Class, Class),
    pub distance: u32,
    pub allowed: Vec<u32>,
}

impl fmt::Display for PatternViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d({}, {}) = {} between {} and {}, allowed {:?}",
            self.u, self.v, self.distance, self.classes.0, self.classes.1, self.allowed
        )
    }
}

/// Every vertex pair whose distance is outside the standard pattern.
///
/// Each allowed distance is derived through the complete `Y`–`Z` block, so
/// when `Y` or `Z` is empty every row is vacuous and the report is empty.
pub fn check_distance_pattern(g: &Graph, r: &RefinedPartition) -> Result<Vec<PatternViolation>> {
    let d = all_pairs_distances(g)?;
    distance_pattern_violations(&d, r)
}

pub(crate) fn distance_pattern_violations(
    d: &DistanceMatrix,
    r: &RefinedPartition,
) -> Result<Vec<PatternViolation>> {
    let pattern = DistancePattern::standard();
    let classes: Vec<Class> = (0..d.n())
        .map(|v| {
            r.class_of(v)
                .ok_or_else(|| Error::NotAPartition(format!("vertex {v} in no refined class")))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    if r.y().is_empty() || r.z().is_empty() {
        return Ok(out);
    }
    for u in 0..d.n() {
        for v in u + 1..d.n() {
            let allowed = pattern.allowed(classes[u], classes[v]);
            let dist = d.get(u, v);
            if !allowed.contains(&dist) {
                out.push(PatternViolation {
                    u,
                    v,
                    classes: (classes[u], classes[v]),
                    distance: dist,
                    allowed: allowed.to_vec(),
                });
            }
        }
    }
    Ok(out)
}
