//! The randomized machinery behind the lower bound: parameter choice, random
//! vertex subsets with cleanup to a linear triangle-free subgraph, the weight
//! statistics `ω`, `h`, `W`, and an end-to-end pipeline that turns all of it
//! into a reportable independent set.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{c_r_constant, lemma3_sum};
use crate::error::{invalid, Error, Result};
use crate::hypercore::{
    first_overlapping_pair, first_triangle, independent_under_mask, induced, Hypergraph, VertexSet,
};
use crate::numeric::ln_add_exp;
use crate::oracle::{enumerate_independent_sets, AlphaCertificate, AlphaMethod, EnumerationBudget};
use crate::rng::Seed;

/// Smallest integer `n` with `log log log n >= 1`. Below it the triple log
/// is replaced by 1 and the choice is flagged.
pub const TRIPLE_LOG_THRESHOLD: u64 = 3_814_280;

/// Smallest integer `n` with `log log log n > 0`.
pub const MIN_PARAMETER_N: u64 = 16;

/// Default ratio at or below which a `≪` comparison counts as satisfied.
pub const ADVISORY_THRESHOLD: f64 = 0.1;

/// Largest `|Y|` for which pipeline expectations are computed exactly.
pub const EXACT_EXPECTATION_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub n: u64,
    pub d: f64,
    pub r: usize,
    pub p: f64,
    pub b: f64,
    pub seed: Seed,
}

impl PipelineParams {
    pub fn new(n: u64, d: f64, r: usize, p: f64, b: f64, seed: Seed) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(invalid(format!("p = {p} outside (0, 1]")));
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(invalid(format!("b = {b} must be positive and finite")));
        }
        if !(d >= 1.0) {
            return Err(invalid(format!("d = {d} must be at least 1")));
        }
        if r < 2 {
            return Err(invalid(format!("r = {r} must be at least 2")));
        }
        Ok(PipelineParams { n, d, r, p, b, seed })
    }

    /// `1 − 2^{−r}`.
    pub fn q(&self) -> f64 {
        1.0 - 2f64.powi(-(self.r as i32))
    }

    pub fn pn(&self) -> f64 {
        self.p * self.n as f64
    }
}

/// Output of [`choose_parameters`]; attach a seed with [`Self::with_seed`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParameterChoice {
    pub n: u64,
    pub d: f64,
    pub r: usize,
    pub p: f64,
    pub b: f64,
    pub pn: f64,
    /// The value used for `log log log n`.
    pub triple_log: f64,
    pub triple_log_substituted: bool,
    pub p_clamped: bool,
    /// `d >= n / (log n)^{3r²}`: outside the lower bound's hypothesis.
    pub density_violation: bool,
}

impl ParameterChoice {
    pub fn with_seed(&self, seed: Seed) -> PipelineParams {
        PipelineParams {
            n: self.n,
            d: self.d,
            r: self.r,
            p: self.p,
            b: self.b,
            seed,
        }
    }
}

/// `pn = (n / (d log log log n))^{3/(3r−1)}`, `b = log(n/d) / (r(3r−1))`.
pub fn choose_parameters(n: u64, d: f64, r: usize) -> Result<ParameterChoice> {
    if r < 2 {
        return Err(Error::Parameter(format!("r = {r} must be at least 2")));
    }
    if !(d >= 1.0) {
        return Err(Error::Parameter(format!("d = {d} must be at least 1")));
    }
    if n < MIN_PARAMETER_N {
        return Err(Error::Parameter(format!(
            "n = {n} too small for log log log n to be positive; use n >= {MIN_PARAMETER_N}"
        )));
    }
    let nf = n as f64;
    if d >= nf {
        return Err(Error::Parameter(format!("d = {d} must be below n = {n}")));
    }
    let rf = r as f64;
    let lll = nf.ln().ln().ln();
    let triple_log_substituted = n < TRIPLE_LOG_THRESHOLD;
    let triple_log = if triple_log_substituted { 1.0 } else { lll };
    let pn_raw = (nf / (d * triple_log)).powf(3.0 / (3.0 * rf - 1.0));
    let p_raw = pn_raw / nf;
    let p_clamped = p_raw > 1.0;
    let p = p_raw.min(1.0);
    let b = (nf / d).ln() / (rf * (3.0 * rf - 1.0));
    let density_violation = d.ln() >= nf.ln() - 3.0 * rf * rf * nf.ln().ln();
    Ok(ParameterChoice {
        n,
        d,
        r,
        p,
        b,
        pn: p * nf,
        triple_log,
        triple_log_substituted,
        p_clamped,
        density_violation,
    })
}

/// One `small ≪ large` comparison, reported as the ratio `small / large`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub name: String,
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    pub ratio: f64,
    pub satisfied_at_threshold: bool,
    pub degenerate: bool,
}

impl ConditionEntry {
    fn new(name: &str, ln_lhs: f64, ln_rhs: f64, threshold: f64) -> Self {
        let ratio = (ln_lhs - ln_rhs).exp();
        let degenerate = !(ratio.is_finite() && ratio > 0.0);
        ConditionEntry {
            name: name.to_string(),
            ln_lhs,
            ln_rhs,
            ratio,
            satisfied_at_threshold: !degenerate && ratio <= threshold,
            degenerate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub alpha: f64,
    pub alpha_supplied: bool,
    pub threshold: f64,
    pub degenerate: bool,
    /// `first`, `second`, `third`, and `overlap`, in that order.
    pub entries: Vec<ConditionEntry>,
}

impl ConditionReport {
    pub fn entry(&self, name: &str) -> Option<&ConditionEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn ratio(&self, name: &str) -> f64 {
        self.entry(name).map_or(f64::NAN, |e| e.ratio)
    }
}

/// Evaluates both sides of each asymptotic hypothesis at the given
/// parameters. `first` and `second` are the two halves of the random-subset
/// hypothesis; `third` compares `e^b α` with `p d α^r`; `overlap` is the
/// expected count of edge pairs sharing two or more vertices against `pn`.
/// `alpha` defaults to the lower bound `c_r ((n/d) log(n/d))^{1/r}`.
pub fn check_conditions(params: &PipelineParams, alpha: Option<f64>) -> ConditionReport {
    check_conditions_with(params, alpha, ADVISORY_THRESHOLD)
}

pub fn check_conditions_with(params: &PipelineParams, alpha: Option<f64>, threshold: f64) -> ConditionReport {
    let (n, d, r, p, b) = (params.n as f64, params.d, params.r as f64, params.p, params.b);
    let alpha_supplied = alpha.is_some();
    let alpha = alpha.unwrap_or_else(|| {
        let c = c_r_constant(params.r).map(|c| c.c_r).unwrap_or(f64::NAN);
        let x = n / d;
        if x > 1.0 {
            c * (x * x.ln()).powf(1.0 / r)
        } else {
            0.0
        }
    });
    let (ln_n, ln_d, ln_p, ln_b, ln_a) = (n.ln(), d.ln(), p.ln(), b.ln(), alpha.ln());

    let first = ConditionEntry::new(
        "first",
        ln_a + ln_n.ln(),
        ln_p + 2.0 * ln_d + 2.0 * r * ln_a - ln_add_exp(ln_n + 2.0 * ln_b, ln_d + ln_b + r * ln_a),
        threshold,
    );
    let second = ConditionEntry::new(
        "second",
        3.0 * ln_d + (3.0 * r - 3.0) * ln_n + 3.0 * r * ln_p,
        ln_p + ln_n,
        threshold,
    );
    let third = ConditionEntry::new("third", b + ln_a, ln_p + ln_d + r * ln_a, threshold);
    let overlap = ConditionEntry::new(
        "overlap",
        2.0 * ln_d + 2.0 * r * ln_p + (2.0 * r - 2.0) * ln_n,
        ln_p + ln_n,
        threshold,
    );
    let entries = vec![first, second, third, overlap];
    let degenerate = d >= n || entries.iter().any(|e| e.degenerate);
    ConditionReport {
        alpha,
        alpha_supplied,
        threshold,
        degenerate,
        entries,
    }
}

/// Each vertex kept independently with probability `p`.
pub fn random_subset(h: &Hypergraph, p: f64, seed: Seed) -> Result<VertexSet> {
    random_subset_of(h.n(), p, seed)
}

pub fn random_subset_of(n: usize, p: f64, seed: Seed) -> Result<VertexSet> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = seed.stream("random-subset");
    Ok(VertexSet::from_sorted_unchecked(
        (0..n).filter(|_| rng.random_bool(p)).collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanupReport {
    pub sampled: VertexSet,
    pub deleted: VertexSet,
    pub kept: VertexSet,
    /// Triangles resolved by a deletion.
    pub triangles_found: usize,
    /// Edge pairs sharing two or more vertices resolved by a deletion.
    pub overlap_pairs_found: usize,
}

/// Deletes vertices of `sampled` until the induced subgraph is linear and
/// triangle-free. Each round finds the first overlapping edge pair (else the
/// first triangle) and deletes the smallest vertex of its shared set (else of
/// the triangle's three pivots).
pub fn cleanup(h: &Hypergraph, sampled: &VertexSet) -> Result<CleanupReport> {
    sampled.check_within(h.n())?;
    let mut kept = sampled.clone();
    let mut deleted = Vec::new();
    let (mut triangles_found, mut overlap_pairs_found) = (0, 0);
    loop {
        let (sub, labels) = induced(h, &kept)?;
        let victim = if let Some((e, f)) = first_overlapping_pair(&sub) {
            overlap_pairs_found += 1;
            let f_edge = sub.edge(f);
            sub.edge(e).iter().copied().find(|v| f_edge.contains(v))
        } else if let Some(t) = first_triangle(&sub) {
            triangles_found += 1;
            t.pivots.iter().copied().min()
        } else {
            break;
        };
        let victim = labels[victim.expect("violating structure has a shared vertex")];
        deleted.push(victim);
        kept = VertexSet::from_sorted_unchecked(kept.iter().filter(|&v| v != victim).collect());
    }
    Ok(CleanupReport {
        sampled: sampled.clone(),
        deleted: deleted.into_iter().collect(),
        kept,
        triangles_found,
        overlap_pairs_found,
    })
}

/// For each vertex, the number of edges through it whose other vertices all
/// lie in `z`. Errors if `z` contains an edge.
fn completions(h: &Hypergraph, z: &VertexSet) -> Result<Vec<usize>> {
    z.check_within(h.n())?;
    let mask = z.mask(h.n());
    let mut counts = vec![0usize; h.n()];
    for e in h.edges() {
        let mut outside = e.iter().filter(|&&v| !mask[v]);
        match (outside.next(), outside.next()) {
            (None, _) => return Err(invalid(format!("set is not independent: contains edge {e:?}"))),
            (Some(&v), None) => counts[v] += 1,
            _ => {}
        }
    }
    Ok(counts)
}

/// `ω_Z(v, b)`: `min(b, #{r-sets e ⊆ Z : e ∪ {v} ∈ E})`.
pub fn omega(h: &Hypergraph, z: &VertexSet, v: usize, b: f64) -> Result<f64> {
    if v >= h.n() {
        return Err(invalid(format!("vertex {v} outside [0, {})", h.n())));
    }
    if z.contains(v) {
        return Err(invalid(format!("vertex {v} lies in Z")));
    }
    Ok((completions(h, z)?[v] as f64).min(b))
}

/// `h(Z, b) = Σ_{v ∉ Z} ω_Z(v, b)`. `b` may be infinite.
pub fn h_statistic(h: &Hypergraph, z: &VertexSet, b: f64) -> Result<f64> {
    Ok(completions(h, z)?.into_iter().map(|c| (c as f64).min(b)).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexOmega {
    pub vertex: usize,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightReport {
    pub z_size: usize,
    pub h_value: f64,
    /// `e^b |Z| + h(Z, b)`.
    pub w_value: f64,
    /// `ω_Z(v, b)` for every `v ∉ Z`.
    pub omegas: Vec<VertexOmega>,
}

pub fn weight_statistic(h: &Hypergraph, z: &VertexSet, b: f64) -> Result<WeightReport> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(invalid("b must be positive and finite"));
    }
    let counts = completions(h, z)?;
    let omegas: Vec<VertexOmega> = (0..h.n())
        .filter(|&v| !z.contains(v))
        .map(|v| VertexOmega {
            vertex: v,
            omega: (counts[v] as f64).min(b),
        })
        .collect();
    let h_value: f64 = omegas.iter().map(|o| o.omega).sum();
    Ok(WeightReport {
        z_size: z.len(),
        h_value,
        w_value: b.exp() * z.len() as f64 + h_value,
        omegas,
    })
}

/// `E(W_v | Z_v)` for a vertex whose link holds `k` disjoint `r`-sets:
/// `(e^b q^k + E min(Bin(k, 1−q), b)) / (1 + q^k)` with `q = 1 − 2^{−r}`.
/// Equal to `e^b q^k/(1+q^k) + Σ_j C(k,j)(2^r−1)^{k−j} min(j,b) / (2^{rk} + (2^r−1)^k)`.
pub fn closed_conditional_weight(r: usize, k: u64, b: f64) -> Result<f64> {
    if r < 2 {
        return Err(invalid("r must be at least 2"));
    }
    if !(b > 0.0) {
        return Err(invalid("b must be positive"));
    }
    let ln_q = (-(2f64.powi(-(r as i32)))).ln_1p();
    let ln_qk = k as f64 * ln_q;
    let ln_denominator = ln_qk.exp().ln_1p();
    let centre = (b + ln_qk - ln_denominator).exp();
    let rest = lemma3_sum(k, 2f64.powi(-(r as i32)), b)?.exact;
    Ok(centre + rest * (-ln_denominator).exp())
}

/// The right-hand side of the expectation inequality:
/// `b m / (−2^r log(1 − 2^{−r}))`.
pub fn lemma4_target(r: usize, m: usize, b: f64) -> f64 {
    let ln_q = (-(2f64.powi(-(r as i32)))).ln_1p();
    b * m as f64 / (-(2f64.powi(r as i32)) * ln_q)
}

/// Best of `restarts` random-order greedy passes; each pass adds a vertex
/// whenever it completes no edge.
pub fn greedy_alpha(h: &Hypergraph, seed: Seed, restarts: usize) -> AlphaCertificate {
    let mut rng = seed.stream("greedy-alpha");
    let inc = h.incidence();
    let mut order: Vec<usize> = (0..h.n()).collect();
    let mut best: Vec<usize> = Vec::new();
    let mut in_set = vec![false; h.n()];
    for _ in 0..restarts.max(1) {
        order.shuffle(&mut rng);
        in_set.iter_mut().for_each(|x| *x = false);
        let mut chosen = Vec::new();
        for &v in &order {
            let blocked = inc[v].iter().any(|&e| h.edge(e).iter().all(|&u| u == v || in_set[u]));
            if !blocked {
                in_set[v] = true;
                chosen.push(v);
            }
        }
        if chosen.len() > best.len() {
            best = chosen;
        }
    }
    let witness: VertexSet = best.into_iter().collect();
    AlphaCertificate {
        alpha: witness.len(),
        witness,
        method: AlphaMethod::GreedyLowerBound,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectationMethod {
    Exact,
    MonteCarlo,
}

/// Both sides of `E h(Z,b) + e^b E|Z| ≳ b m / (−2^r log(1−2^{−r}))` for a
/// uniform independent set `Z` of the cleaned subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma4Report {
    pub lhs: f64,
    pub rhs: f64,
    pub expected_h: f64,
    pub expected_size: f64,
    pub method: ExpectationMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub greedy_restarts: usize,
    pub budget: EnumerationBudget,
    /// Accepted rejection samples wanted when `|Y|` is too large to enumerate.
    pub monte_carlo_samples: u64,
    /// Proposals allowed per wanted sample before giving up.
    pub monte_carlo_attempts_per_sample: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            greedy_restarts: 50,
            budget: EnumerationBudget::default(),
            monte_carlo_samples: 2000,
            monte_carlo_attempts_per_sample: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineOutcome {
    pub params: PipelineParams,
    pub cleanup: CleanupReport,
    /// Independent in the cleaned subgraph, in original vertex ids.
    pub witness: AlphaCertificate,
    pub lemma4: Option<Lemma4Report>,
    pub conditions: ConditionReport,
}

/// Random subset, cleanup, greedy witness on `H[Y]`, and the expectation
/// inequality on `H[Y]` (exact when `|Y| <= 24`, else rejection sampling).
pub fn run_pipeline(h: &Hypergraph, params: &PipelineParams, options: &PipelineOptions) -> Result<PipelineOutcome> {
    if h.uniformity() != params.r + 1 {
        return Err(invalid(format!(
            "pipeline with r = {} needs a {}-uniform hypergraph, got {}",
            params.r,
            params.r + 1,
            h.uniformity()
        )));
    }
    let sampled = random_subset(h, params.p, params.seed)?;
    let cleaned = cleanup(h, &sampled)?;
    let (sub, labels) = induced(h, &cleaned.kept)?;

    let local = greedy_alpha(&sub, params.seed, options.greedy_restarts);
    let witness = AlphaCertificate {
        alpha: local.alpha,
        witness: local.witness.iter().map(|v| labels[v]).collect(),
        method: AlphaMethod::GreedyLowerBound,
    };

    let lemma4 = if sub.n() <= EXACT_EXPECTATION_LIMIT {
        Some(exact_lemma4(&sub, params, &options.budget)?)
    } else {
        monte_carlo_lemma4(&sub, params, options)?
    };

    Ok(PipelineOutcome {
        params: *params,
        cleanup: cleaned,
        witness,
        lemma4,
        conditions: check_conditions(params, None),
    })
}

fn exact_lemma4(sub: &Hypergraph, params: &PipelineParams, budget: &EnumerationBudget) -> Result<Lemma4Report> {
    let sets = enumerate_independent_sets(sub, budget)?;
    let count = sets.len() as f64;
    let mut sum_h = 0.0;
    let mut sum_size = 0.0;
    for z in &sets {
        sum_h += h_statistic(sub, z, params.b)?;
        sum_size += z.len() as f64;
    }
    let (expected_h, expected_size) = (sum_h / count, sum_size / count);
    Ok(Lemma4Report {
        lhs: expected_h + params.b.exp() * expected_size,
        rhs: lemma4_target(params.r, sub.n(), params.b),
        expected_h,
        expected_size,
        method: ExpectationMethod::Exact,
        stderr: None,
        samples: sets.len() as u64,
    })
}

/// Uniform subsets of `V(sub)` conditioned on independence are uniform
/// independent sets, so plain rejection sampling is exact.
fn monte_carlo_lemma4(
    sub: &Hypergraph,
    params: &PipelineParams,
    options: &PipelineOptions,
) -> Result<Option<Lemma4Report>> {
    let mut rng = params.seed.stream("lemma4-monte-carlo");
    let wanted = options.monte_carlo_samples.max(2);
    let max_attempts = wanted.saturating_mul(options.monte_carlo_attempts_per_sample);
    let eb = params.b.exp();
    let (mut accepted, mut attempts) = (0u64, 0u64);
    let (mut sum_w, mut sum_w2, mut sum_h, mut sum_size) = (0.0, 0.0, 0.0, 0.0);
    let mut mask = vec![false; sub.n()];
    while accepted < wanted && attempts < max_attempts {
        attempts += 1;
        mask.iter_mut().for_each(|x| *x = rng.random_bool(0.5));
        if !independent_under_mask(sub, &mask) {
            continue;
        }
        let z = VertexSet::from_sorted_unchecked((0..sub.n()).filter(|&v| mask[v]).collect());
        let hv = h_statistic(sub, &z, params.b)?;
        let w = hv + eb * z.len() as f64;
        accepted += 1;
        sum_w += w;
        sum_w2 += w * w;
        sum_h += hv;
        sum_size += z.len() as f64;
    }
    if accepted < 2 {
        return Ok(None);
    }
    let k = accepted as f64;
    let mean = sum_w / k;
    let variance = ((sum_w2 - k * mean * mean) / (k - 1.0)).max(0.0);
    Ok(Some(Lemma4Report {
        lhs: mean,
        rhs: lemma4_target(params.r, sub.n(), params.b),
        expected_h: sum_h / k,
        expected_size: sum_size / k,
        method: ExpectationMethod::MonteCarlo,
        stderr: Some((variance / k).sqrt()),
        samples: accepted,
    }))
}
