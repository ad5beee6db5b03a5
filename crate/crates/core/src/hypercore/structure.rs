use std::collections::{BTreeSet, HashMap};
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{Hypergraph, VertexSet};
use crate::error::{invalid, Result};

/// Number of unordered edge pairs by intersection size; `counts[i]` is the
/// number of pairs meeting in exactly `i` vertices, for `i < uniformity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionProfile {
    pub counts: Vec<u64>,
}

impl IntersectionProfile {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }
}

/// Three edges pairwise meeting in single, distinct vertices with no common
/// vertex. `pivots` are `e∩f`, `f∩g`, `g∩e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub edges: [usize; 3],
    pub pivots: [usize; 3],
}

/// Number of edges containing `set`.
pub fn degree_of_set(h: &Hypergraph, set: &VertexSet) -> Result<usize> {
    if set.len() >= h.uniformity() {
        return Err(invalid(format!(
            "set of size {} must be smaller than the uniformity {}",
            set.len(),
            h.uniformity()
        )));
    }
    set.check_within(h.n())?;
    Ok(h.edges().iter().filter(|e| is_sorted_subset(set.as_slice(), e)).count())
}

/// Largest number of edges through any `size`-set of vertices, tallied over
/// the `size`-subsets of each edge.
pub fn max_set_degree(h: &Hypergraph, size: usize) -> Result<usize> {
    if size >= h.uniformity() {
        return Err(invalid(format!(
            "subset size {size} must be smaller than the uniformity {}",
            h.uniformity()
        )));
    }
    let mut tally: HashMap<Vec<usize>, usize> = HashMap::new();
    for e in h.edges() {
        for sub in e.iter().copied().combinations(size) {
            *tally.entry(sub).or_insert(0) += 1;
        }
    }
    Ok(tally.into_values().max().unwrap_or(0))
}

/// Maximum codegree over `(uniformity − 1)`-sets; 0 when edgeless.
pub fn max_r_degree(h: &Hypergraph) -> usize {
    let mut tally: HashMap<Vec<usize>, usize> = HashMap::new();
    for e in h.edges() {
        for skip in 0..e.len() {
            let sub: Vec<usize> = e
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (i != skip).then_some(v))
                .collect();
            *tally.entry(sub).or_insert(0) += 1;
        }
    }
    tally.into_values().max().unwrap_or(0)
}

pub fn is_independent(h: &Hypergraph, set: &VertexSet) -> Result<bool> {
    set.check_within(h.n())?;
    let mask = set.mask(h.n());
    Ok(independent_under_mask(h, &mask))
}

pub(crate) fn independent_under_mask(h: &Hypergraph, mask: &[bool]) -> bool {
    !h.edges().iter().any(|e| e.iter().all(|&v| mask[v]))
}

pub fn is_linear(h: &Hypergraph) -> bool {
    first_overlapping_pair(h).is_none()
}

/// Lexicographically first pair of edge indices `(e, f)` with `|e ∩ f| ≥ 2`.
pub(crate) fn first_overlapping_pair(h: &Hypergraph) -> Option<(usize, usize)> {
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        for (a, b) in e.iter().copied().tuple_combinations() {
            by_pair.entry((a, b)).or_default().push(i);
        }
    }
    for (i, e) in h.edges().iter().enumerate() {
        let partner = e
            .iter()
            .copied()
            .tuple_combinations()
            .filter_map(|(a, b)| by_pair[&(a, b)].iter().copied().find(|&j| j > i))
            .min();
        if let Some(j) = partner {
            return Some((i, j));
        }
    }
    None
}

pub fn intersection_profile(h: &Hypergraph) -> IntersectionProfile {
    let m = h.edge_count();
    let inc = h.incidence();
    let mut counts = vec![0u64; h.uniformity()];
    let mut shared = vec![0usize; m];
    let mut touched = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            for &j in inc[v].iter().filter(|&&j| j > i) {
                if shared[j] == 0 {
                    touched.push(j);
                }
                shared[j] += 1;
            }
        }
        counts[0] += (m - 1 - i - touched.len()) as u64;
        for &j in &touched {
            counts[shared[j]] += 1;
            shared[j] = 0;
        }
        touched.clear();
    }
    IntersectionProfile { counts }
}

/// All triangles, ordered lexicographically by edge indices.
pub fn find_triangles(h: &Hypergraph) -> Vec<Triangle> {
    let mut out = Vec::new();
    let _ = visit_triangles(h, |t| {
        out.push(t);
        ControlFlow::<()>::Continue(())
    });
    out
}

pub fn first_triangle(h: &Hypergraph) -> Option<Triangle> {
    match visit_triangles(h, ControlFlow::Break) {
        ControlFlow::Break(t) => Some(t),
        ControlFlow::Continue(()) => None,
    }
}

fn single_common(a: &[usize], b: &[usize]) -> Option<usize> {
    let mut found = None;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if found.is_some() {
                    return None;
                }
                found = Some(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    found
}

fn visit_triangles<B>(h: &Hypergraph, mut visit: impl FnMut(Triangle) -> ControlFlow<B>) -> ControlFlow<B> {
    let edges = h.edges();
    let inc = h.incidence();
    for (ei, e) in edges.iter().enumerate() {
        let partners: BTreeSet<usize> = e
            .iter()
            .flat_map(|&v| inc[v].iter().copied())
            .filter(|&j| j > ei)
            .collect();
        for &fi in &partners {
            let f = &edges[fi];
            let Some(x) = single_common(e, f) else { continue };
            let candidates: BTreeSet<usize> = e
                .iter()
                .filter(|&&y| y != x)
                .flat_map(|&y| inc[y].iter().copied())
                .filter(|&g| g > fi)
                .collect();
            for gi in candidates {
                let g = &edges[gi];
                if g.binary_search(&x).is_ok() {
                    continue;
                }
                let (Some(y), Some(z)) = (single_common(f, g), single_common(g, e)) else {
                    continue;
                };
                if y != z {
                    visit(Triangle {
                        edges: [ei, fi, gi],
                        pivots: [x, y, z],
                    })?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// True iff every link `{e ∖ R : R ⊂ e}` of a `(uniformity − 1)`-set `R` is
/// independent, i.e. the hypergraph contains no `T_r` configuration.
pub fn has_independent_neighborhoods(h: &Hypergraph) -> bool {
    let mut links: HashMap<Vec<usize>, BTreeSet<usize>> = HashMap::new();
    for e in h.edges() {
        for (skip, &outside) in e.iter().enumerate() {
            let core: Vec<usize> = e
                .iter()
                .enumerate()
                .filter_map(|(i, &v)| (i != skip).then_some(v))
                .collect();
            links.entry(core).or_default().insert(outside);
        }
    }
    links.values().all(|link| {
        let mut mask = vec![false; h.n()];
        for &v in link {
            mask[v] = true;
        }
        independent_under_mask(h, &mask)
    })
}

/// `H[X]` relabeled to `0..|X|` in ascending original order, with
/// `labels[new] = old`.
pub fn induced(h: &Hypergraph, keep: &VertexSet) -> Result<(Hypergraph, Vec<usize>)> {
    keep.check_within(h.n())?;
    let mut relabel = vec![usize::MAX; h.n()];
    for (new, old) in keep.iter().enumerate() {
        relabel[old] = new;
    }
    let edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| relabel[v] != usize::MAX))
        .map(|e| e.iter().map(|&v| relabel[v]).collect())
        .collect();
    let sub = Hypergraph::from_canonical_unchecked(h.uniformity(), keep.len(), edges);
    Ok((sub, keep.as_slice().to_vec()))
}

pub fn delete_vertices(h: &Hypergraph, removed: &VertexSet) -> Result<(Hypergraph, Vec<usize>)> {
    removed.check_within(h.n())?;
    induced(h, &removed.complement(h.n()))
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}
