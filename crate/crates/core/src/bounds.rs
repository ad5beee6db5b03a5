//! Closed-form constants and bound calculators.
//!
//! Everything is evaluated in log space where magnitudes can blow up
//! (`r!`, `2^r`, `C(n, x)`), so valid inputs never produce NaN or infinity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric::{binomial_big, binomial_f64, ln_binomial, ln_factorial};

/// Raw inputs of the constant, logged where they outgrow `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantInputs {
    pub ln_r_factorial: f64,
    pub r_times_3r_minus_1: f64,
    pub ln_two_pow_r: f64,
    pub ln_one_minus_two_pow_neg_r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantReport {
    pub r: usize,
    pub c_r: f64,
    /// `c_r · e / r`, which tends to 1.
    pub c_r_asymptote_ratio: f64,
    /// `(r+1)!^{1/r}`, the random-construction upper constant.
    pub upper_constant: f64,
    pub formula_inputs: ConstantInputs,
}

fn ln_constant(index: usize) -> (f64, ConstantInputs) {
    let r = index as f64;
    let inputs = ConstantInputs {
        ln_r_factorial: ln_factorial(index as u64),
        r_times_3r_minus_1: r * (3.0 * r - 1.0),
        ln_two_pow_r: r * std::f64::consts::LN_2,
        ln_one_minus_two_pow_neg_r: (-(2f64.powi(-(index as i32)))).ln_1p(),
    };
    let ln_c_pow_r = inputs.ln_r_factorial
        - inputs.r_times_3r_minus_1.ln()
        - inputs.ln_two_pow_r
        - (-inputs.ln_one_minus_two_pow_neg_r).ln();
    (ln_c_pow_r / r, inputs)
}

/// `c_r = (r! / (−r(3r−1) 2^r log(1 − 2^{−r})))^{1/r}`.
pub fn c_r_constant(r: usize) -> Result<ConstantReport> {
    if r < 2 {
        return Err(invalid(format!("c_r is defined for r >= 2, got {r}")));
    }
    let (ln_c, inputs) = ln_constant(r);
    let c_r = ln_c.exp();
    Ok(ConstantReport {
        r,
        c_r,
        c_r_asymptote_ratio: c_r * std::f64::consts::E / r as f64,
        upper_constant: upper_constant(r),
        formula_inputs: inputs,
    })
}

/// `|c_r^r · (−r(3r−1) 2^r log(1 − 2^{−r})) / r! − 1|`, recomputed from the
/// returned `c_r` in plain arithmetic while `r!` fits in `f64`.
pub fn constant_round_trip_residual(r: usize) -> Result<f64> {
    let c = c_r_constant(r)?.c_r;
    let rf = r as f64;
    let ln_q = (-(2f64.powi(-(r as i32)))).ln_1p();
    if r <= 150 {
        let factorial: f64 = (1..=r).map(|i| i as f64).product();
        let denom = rf * (3.0 * rf - 1.0) * 2f64.powi(r as i32) * -ln_q;
        return Ok((c.powi(r as i32) * denom - factorial).abs() / factorial);
    }
    let ln_lhs = rf * c.ln() + (rf * (3.0 * rf - 1.0)).ln() + rf * std::f64::consts::LN_2 + (-ln_q).ln();
    Ok((ln_lhs - ln_factorial(r as u64)).exp_m1().abs())
}

/// `(r+1)!^{1/r}`.
pub fn upper_constant(r: usize) -> f64 {
    (ln_factorial(r as u64 + 1) / r as f64).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    /// Set when `log(n/d) <= 1`, where the bound is reported as 0.
    pub flagged: bool,
}

/// `c_r ((n/d) log(n/d))^{1/r}`.
pub fn main_lower_bound(n: f64, d: f64, r: usize) -> Result<LowerBound> {
    if !(n > 0.0 && d > 0.0) {
        return Err(invalid("n and d must be positive"));
    }
    if d >= n {
        return Err(invalid(format!("need d < n, got d = {d}, n = {n}")));
    }
    let ratio = n / d;
    if ratio.ln() <= 1.0 {
        return Ok(LowerBound {
            value: 0.0,
            flagged: true,
        });
    }
    let c = c_r_constant(r)?.c_r;
    Ok(LowerBound {
        value: c * (ratio * ratio.ln()).powf(1.0 / r as f64),
        flagged: false,
    })
}

/// `P(U ≥ μ + λ) ≤ exp(−λ² / (2V + bλ))` for sums of independent terms each
/// at most `b` above its mean.
pub fn chernoff_general(variance: f64, cap: f64, lambda: f64) -> Result<f64> {
    if !(variance >= 0.0) || !(lambda >= 0.0) {
        return Err(invalid("variance and lambda must be non-negative"));
    }
    if !(cap > 0.0) {
        return Err(invalid("per-term cap b must be positive"));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    Ok((-(lambda * lambda) / (2.0 * variance + cap * lambda)).exp())
}

/// `P(|U − μ| ≥ εμ) ≤ 2 exp(−ε²μ/2)` for binomial `U`, capped at 1.
pub fn chernoff_binomial(mu: f64, epsilon: f64) -> Result<f64> {
    if !(mu >= 0.0) || !(epsilon >= 0.0) {
        return Err(invalid("mu and epsilon must be non-negative"));
    }
    Ok((2.0 * (-(epsilon * epsilon) * mu / 2.0).exp()).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma3Sum {
    pub exact: f64,
    pub asymptote: f64,
}

/// `S = Σ_j C(k,j) q^j (1−q)^{k−j} min(j, b) = E min(Bin(k, q), b)` and its
/// limit `min(qk, b)`.
pub fn lemma3_sum(k: u64, q: f64, b: f64) -> Result<Lemma3Sum> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(invalid(format!("q = {q} outside (0, 1]")));
    }
    if !(b > 0.0) {
        return Err(invalid("b must be positive"));
    }
    let asymptote = (q * k as f64).min(b);
    let kf = k as f64;
    if b >= kf {
        // min(j, b) = j throughout: the binomial mean
        return Ok(Lemma3Sum {
            exact: q * kf,
            asymptote,
        });
    }
    if q == 1.0 {
        return Ok(Lemma3Sum {
            exact: kf.min(b),
            asymptote,
        });
    }
    let (ln_q, ln_p) = (q.ln(), (-q).ln_1p());
    let exact = (0..=k)
        .map(|j| {
            let ln_pmf = ln_binomial(k, j) + j as f64 * ln_q + (k - j) as f64 * ln_p;
            ln_pmf.exp() * (j as f64).min(b)
        })
        .sum();
    Ok(Lemma3Sum { exact, asymptote })
}

/// [`lemma3_sum`] in exact rational arithmetic.
pub fn lemma3_sum_rational(k: u64, q: &BigRational, b: &BigRational) -> Result<BigRational> {
    if !(q > &BigRational::zero() && q <= &BigRational::one()) {
        return Err(invalid("q outside (0, 1]"));
    }
    if !(b > &BigRational::zero()) {
        return Err(invalid("b must be positive"));
    }
    let p = BigRational::one() - q;
    let mut total = BigRational::zero();
    for j in 0..=k {
        let weight = BigRational::from_integer(BigInt::from(j)).min(b.clone());
        let coeff = BigRational::from_integer(BigInt::from(binomial_big(k, j)));
        total += coeff * pow(q, j) * pow(&p, k - j) * weight;
    }
    Ok(total)
}

fn pow(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstMomentReport {
    pub n: u64,
    pub r: usize,
    pub d: f64,
    pub epsilon: f64,
    /// Edge probability `d / (n − r)`.
    pub p: f64,
    /// Threshold size `⌈(1+ε)(r+1)!^{1/r}((n/d) log n)^{1/r}⌉`.
    pub x: u64,
    /// `log C(n, x) + C(x, r+1) log(1 − p)`; `-inf` when `p = 1`.
    pub log_e: f64,
    /// `(d/n)(x − r)^{r+1}/(r+1)!`, to be compared with `x log n`.
    pub comparison_lhs: f64,
    pub comparison_rhs: f64,
    /// The threshold exceeds `n`; the construction does not apply.
    pub x_exceeds_n: bool,
}

/// Log expected number of independent `x`-sets in the binomial random
/// `(r+1)`-graph with expected codegree `d`.
pub fn first_moment(n: u64, r: usize, d: f64, epsilon: f64) -> Result<FirstMomentReport> {
    if n <= r as u64 || r < 1 {
        return Err(invalid(format!("need n > r >= 1, got n = {n}, r = {r}")));
    }
    if !(d >= 1.0) || !(epsilon > 0.0) {
        return Err(invalid("need d >= 1 and epsilon > 0"));
    }
    let p = d / (n - r as u64) as f64;
    if p > 1.0 {
        return Err(invalid(format!("d = {d} exceeds n − r, edge probability {p} > 1")));
    }
    let nf = n as f64;
    let rf = r as f64;
    let x_real = (1.0 + epsilon) * upper_constant(r) * ((nf / d) * nf.ln()).powf(1.0 / rf);
    let x = x_real.ceil() as u64;
    let x_exceeds_n = x > n;
    let log_e = if x_exceeds_n {
        f64::NEG_INFINITY
    } else {
        let pairs = binomial_f64(x, r as u64 + 1);
        let ln_miss = (-p).ln_1p();
        let tail = if pairs == 0.0 { 0.0 } else { pairs * ln_miss };
        ln_binomial(n, x) + tail
    };
    let xr = (x as f64 - rf).max(0.0);
    let comparison_lhs = (d / nf) * (xr.ln() * (rf + 1.0) - ln_factorial(r as u64 + 1)).exp();
    Ok(FirstMomentReport {
        n,
        r,
        d,
        epsilon,
        p,
        x,
        log_e,
        comparison_lhs,
        comparison_rhs: x as f64 * nf.ln(),
        x_exceeds_n,
    })
}

/// Below this `t`, `log log t < 1` and the asymptotic order is not meaningful.
pub const RAMSEY_SMALL_T: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RamseyReport {
    pub r: usize,
    pub t: u64,
    /// Constant from the lower bound for `r`-graphs (codegree index `r − 1`).
    pub c: f64,
    /// Smallest `n` with `c (n log n / t)^{1/(r−1)} >= t`.
    pub n: f64,
    /// `t^r / log t`.
    pub scaling: f64,
    pub small_t: bool,
    /// `t (log n)^{3(r−1)²} / n`; the lower-bound hypothesis needs this below 1.
    pub density_ratio: f64,
}

/// Upper bound on `R(T_r, K_t^{(r)})` from the two-case argument: codegree at
/// least `t` gives an independent link of size `t`; otherwise the lower bound
/// with `d < t` applies. Pass `c` to override the default constant.
pub fn ramsey_upper(r: usize, t: u64, c: Option<f64>) -> Result<RamseyReport> {
    if r < 2 || t < 3 {
        return Err(invalid(format!("need r >= 2 and t >= 3, got r = {r}, t = {t}")));
    }
    let c = match c {
        Some(c) if c > 0.0 => c,
        Some(c) => return Err(invalid(format!("constant must be positive, got {c}"))),
        None => ln_constant(r - 1).0.exp(),
    };
    let (rf, tf) = (r as f64, t as f64);
    // c (n log n / t)^{1/(r−1)} >= t  <=>  ln n + ln ln n >= r ln t − (r−1) ln c
    let ln_target = rf * tf.ln() - (rf - 1.0) * c.ln();
    let satisfied = |n: f64| n > 1.0 && n.ln() + n.ln().ln() >= ln_target;
    let mut hi = 2.0f64;
    while !satisfied(hi) {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    if lo < 2.0 || satisfied(lo) {
        lo = 1.0;
    }
    // invariant: !satisfied(lo), satisfied(hi)
    while hi - lo > 1.0 && hi - lo > hi * 1e-15 {
        let mid = ((lo + hi) / 2.0).floor();
        if mid <= lo || mid >= hi {
            break;
        }
        if satisfied(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let n = hi.ceil();
    let exponent = 3.0 * (rf - 1.0) * (rf - 1.0);
    Ok(RamseyReport {
        r,
        t,
        c,
        n,
        scaling: tf.powf(rf) / tf.ln(),
        small_t: t < RAMSEY_SMALL_T,
        density_ratio: (tf.ln() + exponent * n.ln().ln() - n.ln()).exp(),
    })
}
