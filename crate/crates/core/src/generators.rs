//! Instance families: greedy partial Steiner systems, blowups, binomial random
//! hypergraphs, the star gadget, and the `T_r` configuration.

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::index;
use rand::Rng;
use rand_distr::{Binomial, Distribution, Normal};

use crate::error::{invalid, Result};
use crate::hypercore::{max_r_degree, Hypergraph};
use crate::numeric::{binomial_u128, ln_binomial};
use crate::rng::Seed;

/// Largest `C(n, u)` for which [`gen_random`] flips a coin per candidate edge.
pub const DIRECT_ENUMERATION_LIMIT: u128 = 1 << 22;

/// Consecutive rejected candidates per vertex before the greedy Steiner
/// builder stops.
pub const STEINER_FAILURES_PER_VERTEX: usize = 50;

/// Randomized greedy partial Steiner `(n, r+1, r)`-system.
pub fn gen_partial_steiner(n: usize, r: usize, seed: Seed) -> Result<Hypergraph> {
    gen_partial_steiner_with(n, r, seed, STEINER_FAILURES_PER_VERTEX * n)
}

pub fn gen_partial_steiner_with(n: usize, r: usize, seed: Seed, max_failures: usize) -> Result<Hypergraph> {
    if r < 2 || n < r + 1 {
        return Err(invalid(format!(
            "partial Steiner system needs n >= r + 1 >= 3 (n = {n}, r = {r})"
        )));
    }
    let mut rng = seed.stream("gen-partial-steiner");
    let mut used: HashSet<Vec<usize>> = HashSet::new();
    let mut edges = Vec::new();
    let mut failures = 0;
    while failures < max_failures {
        let mut cand = index::sample(&mut rng, n, r + 1).into_vec();
        cand.sort_unstable();
        let subsets: Vec<Vec<usize>> = cand.iter().copied().combinations(r).collect();
        if subsets.iter().any(|s| used.contains(s)) {
            failures += 1;
            continue;
        }
        used.extend(subsets);
        edges.push(cand);
        failures = 0;
    }
    Hypergraph::from_edges(r + 1, n, edges)
}

/// A partial Steiner system to blow up, each vertex replaced by `d` copies.
#[derive(Debug, Clone)]
pub struct BlowupSpec {
    base: Hypergraph,
    d: usize,
}

impl BlowupSpec {
    pub fn new(base: Hypergraph, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(invalid("blowup part size must be at least 1"));
        }
        if max_r_degree(&base) > 1 {
            return Err(invalid(
                "blowup base must be a partial Steiner system (max r-degree <= 1)",
            ));
        }
        Ok(BlowupSpec { base, d })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

/// Part `i` occupies ids `i·d .. (i+1)·d`. Edges are every `(r+1)`-subset of
/// a part plus, for each base edge, every transversal taking one vertex from
/// each of its parts.
pub fn gen_blowup(spec: &BlowupSpec) -> Hypergraph {
    let (base, d) = (&spec.base, spec.d);
    let u = base.uniformity();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for part in 0..base.n() {
        edges.extend((part * d..(part + 1) * d).combinations(u));
    }
    for e in base.edges() {
        edges.extend(e.iter().map(|&p| p * d..(p + 1) * d).multi_cartesian_product());
    }
    Hypergraph::from_edges(u, base.n() * d, edges).expect("blowup edges are well formed")
}

/// Binomial random `uniformity`-graph: each candidate edge kept with
/// probability `p`.
pub fn gen_random(n: usize, uniformity: usize, p: f64, seed: Seed) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("edge probability {p} outside [0, 1]")));
    }
    if uniformity < 2 {
        return Err(invalid("uniformity must be at least 2"));
    }
    match binomial_u128(n as u64, uniformity as u64) {
        Some(total) if total <= DIRECT_ENUMERATION_LIMIT => Ok(gen_random_direct(n, uniformity, p, seed)),
        _ => gen_random_sampled(n, uniformity, p, seed),
    }
}

fn gen_random_direct(n: usize, uniformity: usize, p: f64, seed: Seed) -> Hypergraph {
    let mut rng = seed.stream("gen-random");
    let edges: Vec<Vec<usize>> = (0..n).combinations(uniformity).filter(|_| rng.random_bool(p)).collect();
    Hypergraph::from_canonical_unchecked(uniformity, n, edges)
}

/// Draws the edge count, then that many distinct uniform edges.
pub(crate) fn gen_random_sampled(n: usize, uniformity: usize, p: f64, seed: Seed) -> Result<Hypergraph> {
    let mut rng = seed.stream("gen-random");
    let m: u64 = match binomial_u128(n as u64, uniformity as u64).and_then(|t| u64::try_from(t).ok()) {
        Some(total) => Binomial::new(total, p)
            .map_err(|e| invalid(e.to_string()))?
            .sample(&mut rng),
        None => {
            // C(n, u) beyond 64 bits: normal approximation to the binomial
            let total = ln_binomial(n as u64, uniformity as u64).exp();
            let normal = Normal::new(total * p, (total * p * (1.0 - p)).sqrt()).map_err(|e| invalid(e.to_string()))?;
            normal.sample(&mut rng).round().clamp(0.0, total) as u64
        }
    };
    let m = usize::try_from(m).map_err(|_| invalid("edge count does not fit in memory"))?;
    let mut chosen: HashSet<Vec<usize>> = HashSet::with_capacity(m);
    while chosen.len() < m {
        let mut e = index::sample(&mut rng, n, uniformity).into_vec();
        e.sort_unstable();
        chosen.insert(e);
    }
    let mut edges: Vec<Vec<usize>> = chosen.into_iter().collect();
    edges.sort_unstable();
    Ok(Hypergraph::from_canonical_unchecked(uniformity, n, edges))
}

/// The local structure around a vertex in a linear triangle-free graph:
/// centre `0`, `k` disjoint `r`-sets each completing an edge with the centre,
/// and `l` free vertices. Returns the graph and its centre.
pub fn gen_star_gadget(r: usize, k: usize, l: usize) -> Result<(Hypergraph, usize)> {
    if r < 2 {
        return Err(invalid("star gadget needs r >= 2"));
    }
    let n = 1 + r * k + l;
    let edges: Vec<Vec<usize>> = (0..k)
        .map(|i| std::iter::once(0).chain(1 + i * r..1 + (i + 1) * r).collect())
        .collect();
    Ok((Hypergraph::new(r + 1, n, edges)?, 0))
}

/// `T_r` as an `r`-graph: `S = {0..r-2}`, `R = {r-1..2r-2}`, edges `S ∪ {v}`
/// for `v ∈ R` plus `R` itself.
pub fn gen_t_r(r: usize) -> Result<Hypergraph> {
    if r < 2 {
        return Err(invalid("T_r needs r >= 2"));
    }
    let core: Vec<usize> = (0..r - 1).collect();
    let outer: Vec<usize> = (r - 1..2 * r - 1).collect();
    let mut edges: Vec<Vec<usize>> = outer
        .iter()
        .map(|&v| core.iter().copied().chain(std::iter::once(v)).collect())
        .collect();
    edges.push(outer);
    Hypergraph::from_edges(r, 2 * r - 1, edges)
}
