//! Uniform hypergraphs, vertex sets, and the structural predicates shared by
//! every other module.
//!
//! Vertices are dense ids `0..n`. A [`Hypergraph`] is immutable once built and
//! its edge list is always canonical: each edge strictly ascending, the list
//! sorted lexicographically with no repeats.

mod format;
mod structure;

pub use format::{parse_hg, write_hg};
pub use structure::{
    degree_of_set, delete_vertices, find_triangles, first_triangle, has_independent_neighborhoods, induced,
    intersection_profile, is_independent, is_linear, max_r_degree, max_set_degree, IntersectionProfile, Triangle,
};
pub(crate) use structure::{first_overlapping_pair, independent_under_mask};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    uniformity: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// First invariant a candidate edge list breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UniformityTooSmall(usize),
    WrongEdgeSize { edge: usize, len: usize },
    VertexOutOfRange { edge: usize, vertex: usize },
    NonAscendingEdge { edge: usize },
    DuplicateEdge { edge: usize },
    UnsortedEdgeList { edge: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UniformityTooSmall(u) => write!(f, "uniformity {u} is below 2"),
            Violation::WrongEdgeSize { edge, len } => {
                write!(f, "edge {edge} has {len} vertices, expected the uniformity")
            }
            Violation::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} contains vertex {vertex} outside [0, n)")
            }
            Violation::NonAscendingEdge { edge } => write!(f, "non-ascending edge {edge}"),
            Violation::DuplicateEdge { edge } => write!(f, "duplicate edge {edge}"),
            Violation::UnsortedEdgeList { edge } => {
                write!(f, "edge list not in lexicographic order at edge {edge}")
            }
        }
    }
}

/// Checks every hypergraph invariant on raw parts, reporting the first
/// violation in edge order.
pub fn validate(uniformity: usize, n: usize, edges: &[Vec<usize>]) -> std::result::Result<(), Violation> {
    if uniformity < 2 {
        return Err(Violation::UniformityTooSmall(uniformity));
    }
    for (i, e) in edges.iter().enumerate() {
        if e.len() != uniformity {
            return Err(Violation::WrongEdgeSize { edge: i, len: e.len() });
        }
        if let Some(&v) = e.iter().find(|&&v| v >= n) {
            return Err(Violation::VertexOutOfRange { edge: i, vertex: v });
        }
        if e.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Violation::NonAscendingEdge { edge: i });
        }
        if i > 0 {
            match edges[i - 1].cmp(e) {
                std::cmp::Ordering::Equal => return Err(Violation::DuplicateEdge { edge: i }),
                std::cmp::Ordering::Greater => return Err(Violation::UnsortedEdgeList { edge: i }),
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Ok(())
}

impl Hypergraph {
    /// Builds from an edge list that must already be canonical.
    pub fn new(uniformity: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        validate(uniformity, n, &edges).map_err(|v| invalid(v.to_string()))?;
        Ok(Hypergraph { uniformity, n, edges })
    }

    /// Builds from arbitrary edges, sorting each edge and the list and
    /// dropping repeats. Edges with a repeated vertex are rejected.
    pub fn from_edges<I, E>(uniformity: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<usize>>,
    {
        let mut edges: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|e| {
                let mut e = e.into();
                e.sort_unstable();
                e
            })
            .collect();
        edges.sort();
        edges.dedup();
        Self::new(uniformity, n, edges)
    }

    pub fn edgeless(uniformity: usize, n: usize) -> Result<Self> {
        Self::new(uniformity, n, Vec::new())
    }

    pub(crate) fn from_canonical_unchecked(uniformity: usize, n: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert_eq!(validate(uniformity, n, &edges), Ok(()));
        Hypergraph { uniformity, n, edges }
    }

    /// Edge size; the `r + 1` of an `(r+1)`-graph.
    pub fn uniformity(&self) -> usize {
        self.uniformity
    }

    /// The `r` of an `(r+1)`-graph.
    pub fn rank(&self) -> usize {
        self.uniformity - 1
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &[usize] {
        &self.edges[index]
    }

    pub fn contains_edge(&self, edge: &[usize]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).is_ok()
    }

    /// For every vertex, the ascending indices of the edges through it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Number of edges through each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet((0..self.n).collect())
    }
}

/// Strictly ascending list of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: Vec<usize>) -> Result<Self> {
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("vertex set members must be strictly ascending"));
        }
        Ok(VertexSet(members))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_sorted_unchecked(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&v| !other.contains(v)).collect())
    }

    /// Vertices of `0..n` outside this set.
    pub fn complement(&self, n: usize) -> VertexSet {
        VertexSet((0..n).filter(|&v| !self.contains(v)).collect())
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(invalid(format!("vertex {v} outside [0, {n})"))),
            _ => Ok(()),
        }
    }

    /// Membership mask over `0..n`; members must already be in range.
    pub(crate) fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = crate::Error;

    fn try_from(value: Vec<usize>) -> Result<Self> {
        VertexSet::new(value)
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(value: VertexSet) -> Self {
        value.0
    }
}
