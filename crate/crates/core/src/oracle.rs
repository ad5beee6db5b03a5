//! Exhaustive ground truth for small instances: exact independence number,
//! enumeration and uniform sampling of independent sets, and direct averages
//! over the star gadget.
//!
//! Everything here is exponential and guarded by an [`EnumerationBudget`];
//! exceeding it is an error rather than a silent truncation.

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::generators::gen_star_gadget;
use crate::hypercore::{Hypergraph, VertexSet};
use crate::rng::Seed;

/// Hard ceiling from the 64-bit vertex masks used below.
pub const MASK_VERTEX_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_vertices: usize,
    pub max_sets: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_vertices: 26,
            max_sets: 1 << 26,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_vertices: usize, max_sets: u64) -> Result<Self> {
        if max_vertices == 0 || max_sets == 0 {
            return Err(invalid("enumeration budgets must be positive"));
        }
        Ok(EnumerationBudget { max_vertices, max_sets })
    }

    fn check_vertices(&self, n: usize) -> Result<()> {
        let limit = self.max_vertices.min(MASK_VERTEX_LIMIT);
        if n > limit {
            return Err(Error::Budget {
                limit: "max_vertices",
                value: limit as u64,
                requested: n as u64,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaMethod {
    Exact,
    GreedyLowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCertificate {
    pub alpha: usize,
    pub witness: VertexSet,
    pub method: AlphaMethod,
}

/// Edge masks grouped by vertex, for O(deg) "can v join this set" checks.
struct MaskedGraph {
    n: usize,
    edges_at: Vec<Vec<u64>>,
}

impl MaskedGraph {
    fn new(h: &Hypergraph) -> Self {
        let mut edges_at = vec![Vec::new(); h.n()];
        for e in h.edges() {
            let mask = e.iter().fold(0u64, |m, &v| m | 1 << v);
            for &v in e {
                edges_at[v].push(mask);
            }
        }
        MaskedGraph { n: h.n(), edges_at }
    }

    /// Adding `v` to `set` completes no edge.
    fn can_add(&self, set: u64, v: usize) -> bool {
        let with_v = set | 1 << v;
        self.edges_at[v].iter().all(|&e| e & with_v != e)
    }
}

fn mask_to_set(mask: u64) -> VertexSet {
    VertexSet::from_sorted_unchecked((0..64).filter(|v| mask >> v & 1 == 1).collect())
}

/// Maximum independent set by branch and bound over vertices in descending
/// degree order (ties by id), cutting when `current + remaining <= best`.
pub fn alpha_exact(h: &Hypergraph, budget: &EnumerationBudget) -> Result<AlphaCertificate> {
    budget.check_vertices(h.n())?;
    let graph = MaskedGraph::new(h);
    let degrees = h.vertex_degrees();
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));

    struct Search<'a> {
        graph: &'a MaskedGraph,
        order: &'a [usize],
        best: usize,
        best_mask: u64,
    }

    impl Search<'_> {
        fn go(&mut self, depth: usize, set: u64, size: usize) {
            if size + (self.order.len() - depth) <= self.best {
                return;
            }
            if depth == self.order.len() {
                self.best = size;
                self.best_mask = set;
                return;
            }
            let v = self.order[depth];
            if self.graph.can_add(set, v) {
                self.go(depth + 1, set | 1 << v, size + 1);
            }
            self.go(depth + 1, set, size);
        }
    }

    let mut search = Search {
        graph: &graph,
        order: &order,
        best: 0,
        best_mask: 0,
    };
    search.go(0, 0, 0);
    Ok(AlphaCertificate {
        alpha: search.best,
        witness: mask_to_set(search.best_mask),
        method: AlphaMethod::Exact,
    })
}

/// Every independent set, `∅` first, in lexicographic order of the sorted
/// member lists.
pub fn enumerate_independent_sets(h: &Hypergraph, budget: &EnumerationBudget) -> Result<Vec<VertexSet>> {
    Ok(enumerate_masks(h, budget)?.into_iter().map(mask_to_set).collect())
}

fn enumerate_masks(h: &Hypergraph, budget: &EnumerationBudget) -> Result<Vec<u64>> {
    budget.check_vertices(h.n())?;
    let graph = MaskedGraph::new(h);
    let mut out = Vec::new();

    fn go(graph: &MaskedGraph, set: u64, next: usize, out: &mut Vec<u64>, cap: u64) -> Result<()> {
        if out.len() as u64 >= cap {
            return Err(Error::Budget {
                limit: "max_sets",
                value: cap,
                requested: cap + 1,
            });
        }
        out.push(set);
        for v in next..graph.n {
            if graph.can_add(set, v) {
                go(graph, set | 1 << v, v + 1, out, cap)?;
            }
        }
        Ok(())
    }

    go(&graph, 0, 0, &mut out, budget.max_sets)?;
    Ok(out)
}

/// `2^l (2^{rk} + (2^r − 1)^k)`: independent sets of the star gadget, split
/// into those avoiding the centre and those containing it.
pub fn count_independent_sets_star(r: usize, k: usize, l: usize) -> Result<BigUint> {
    if r < 2 {
        return Err(invalid("star gadget needs r >= 2"));
    }
    let two = BigUint::from(2u8);
    let without_centre = two.pow((r * k) as u32);
    let with_centre = (two.pow(r as u32) - 1u8).pow(k as u32);
    Ok(two.pow(l as u32) * (without_centre + with_centre))
}

/// Exact uniform sampler over the independent sets of a small hypergraph.
pub struct UniformIndependentSampler {
    sets: Vec<u64>,
}

impl UniformIndependentSampler {
    pub fn new(h: &Hypergraph, budget: &EnumerationBudget) -> Result<Self> {
        Ok(UniformIndependentSampler {
            sets: enumerate_masks(h, budget)?,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Index into the lexicographic enumeration of the drawn set.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(0..self.sets.len())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> VertexSet {
        mask_to_set(self.sets[self.sample_index(rng)])
    }
}

pub fn sample_uniform_independent_set(h: &Hypergraph, seed: Seed, budget: &EnumerationBudget) -> Result<VertexSet> {
    let sampler = UniformIndependentSampler::new(h, budget)?;
    Ok(sampler.sample(&mut seed.stream("uniform-independent-set")))
}

/// Average of `W_v` over all independent sets of the star gadget: `e^b` when
/// the centre is in the set, otherwise `min(b, #gadget r-sets inside the set)`.
pub fn brute_conditional_weight(r: usize, k: usize, l: usize, b: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(invalid("b must be positive"));
    }
    let (h, centre) = gen_star_gadget(r, k, l)?;
    let sets = enumerate_masks(&h, &EnumerationBudget::new(MASK_VERTEX_LIMIT, u64::MAX)?)?;
    let blocks: Vec<u64> = (0..k)
        .map(|i| (1 + i * r..1 + (i + 1) * r).fold(0u64, |m, v| m | 1 << v))
        .collect();
    let mut with_centre = 0u64;
    let mut rest = 0.0;
    for &set in &sets {
        if set >> centre & 1 == 1 {
            with_centre += 1;
        } else {
            let full = blocks.iter().filter(|&&blk| set & blk == blk).count() as f64;
            rest += full.min(b);
        }
    }
    Ok((with_centre as f64 * b.exp() + rest) / sets.len() as f64)
}
