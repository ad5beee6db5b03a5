use std::io::Write;

use clap::Subcommand;
use serde::Serialize;
use serde_json::{json, Value};

use super::{emit_json, CliError, CliResult};
use crate::bounds::{c_r_constant, constant_round_trip_residual, first_moment, lemma3_sum};
use crate::oracle::brute_conditional_weight;
use crate::rng::Seed;
use crate::shearer::{check_conditions_with, choose_parameters, closed_conditional_weight};

#[derive(Debug, Subcommand)]
pub(super) enum Target {
    /// E min(Bin(k, q), b) against its limit min(qk, b)
    Lemma3 {
        #[arg(long)]
        k: u64,

        #[arg(long)]
        q: f64,

        #[arg(long)]
        b: f64,

        #[arg(long, default_value_t = 0.02)]
        tol: f64,
    },

    /// Closed-form conditional weight against star-gadget enumeration
    Weights {
        #[arg(long, default_value_t = 2)]
        r: usize,

        #[arg(long, default_value_t = 4)]
        kmax: usize,

        #[arg(long, default_value_t = 3)]
        lmax: usize,

        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        b: Vec<f64>,

        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },

    /// Asymptotic hypotheses at the chosen parameters, each ratio against a threshold
    Conditions {
        #[arg(long)]
        n: u64,

        #[arg(long)]
        d: f64,

        #[arg(long)]
        r: usize,

        #[arg(long)]
        alpha: Option<f64>,

        #[arg(long, default_value_t = crate::shearer::ADVISORY_THRESHOLD)]
        threshold: f64,
    },

    /// Negative log expectation and its monotonicity in epsilon
    FirstMoment {
        #[arg(long)]
        n: u64,

        #[arg(long)]
        r: usize,

        #[arg(long)]
        d: f64,

        #[arg(long)]
        eps: f64,
    },

    /// Formula round trip for c_r; all of r = 2..64 unless --r is given
    Constants {
        #[arg(long)]
        r: Option<usize>,

        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// A checked quantity; passes when `value <= limit`.
#[derive(Debug, Serialize)]
struct Margin {
    name: String,
    value: f64,
    limit: f64,
    passed: bool,
}

impl Margin {
    fn new(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Margin {
            name: name.into(),
            value,
            limit,
            passed: value <= limit,
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    target: &'static str,
    passed: bool,
    first_failure: Option<String>,
    margins: Vec<Margin>,
    details: Value,
}

pub(super) fn run(target: Target, out: &mut dyn Write) -> CliResult<()> {
    let (name, margins, details) = match target {
        Target::Lemma3 { k, q, b, tol } => {
            let s = lemma3_sum(k, q, b)?;
            let rel = (s.exact - s.asymptote).abs() / s.asymptote;
            ("lemma3", vec![Margin::new("relative_error", rel, tol)], json!(s))
        }
        Target::Weights { r, kmax, lmax, b, tol } => {
            let mut margins = Vec::new();
            for k in 0..=kmax {
                for l in 0..=lmax {
                    for &bv in &b {
                        let brute = brute_conditional_weight(r, k, l, bv)?;
                        let closed = closed_conditional_weight(r, k as u64, bv)?;
                        let rel = (brute - closed).abs() / brute;
                        margins.push(Margin::new(format!("r={r},k={k},l={l},b={bv}"), rel, tol));
                    }
                }
            }
            (
                "weights",
                margins,
                json!({ "r": r, "kmax": kmax, "lmax": lmax, "b": b }),
            )
        }
        Target::Conditions {
            n,
            d,
            r,
            alpha,
            threshold,
        } => {
            let choice = choose_parameters(n, d, r)?;
            let rep = check_conditions_with(&choice.with_seed(Seed(0)), alpha, threshold);
            let mut margins: Vec<Margin> = rep
                .entries
                .iter()
                .map(|e| Margin::new(e.name.clone(), e.ratio, threshold))
                .collect();
            if rep.degenerate {
                margins.push(Margin::new("degenerate", 1.0, 0.0));
            }
            ("conditions", margins, json!({ "parameters": choice, "report": rep }))
        }
        Target::FirstMoment { n, r, d, eps } => {
            let rep = first_moment(n, r, d, eps)?;
            let grid = (1..=10)
                .map(|i| first_moment(n, r, d, eps * i as f64 / 10.0).map(|f| f.log_e))
                .collect::<Result<Vec<_>, _>>()?;
            let worst_step = grid.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
            let margins = vec![
                Margin::new("log_e", rep.log_e, 0.0),
                // strictly decreasing: every step must be negative
                Margin::new("epsilon_step", worst_step, -f64::MIN_POSITIVE),
            ];
            (
                "first-moment",
                margins,
                json!({ "report": rep, "epsilon_grid_log_e": grid }),
            )
        }
        Target::Constants { r, tol } => {
            let rs: Vec<usize> = match r {
                Some(r) => vec![r],
                None => (2..=64).collect(),
            };
            let mut margins = Vec::new();
            let mut constants = Vec::new();
            for r in rs {
                margins.push(Margin::new(
                    format!("round_trip_r={r}"),
                    constant_round_trip_residual(r)?,
                    tol,
                ));
                constants.push(c_r_constant(r)?);
            }
            ("constants", margins, json!(constants))
        }
    };
    let first_failure = margins.iter().find(|m| !m.passed).map(|m| m.name.clone());
    let report = VerifyReport {
        target: name,
        passed: first_failure.is_none(),
        first_failure,
        margins,
        details,
    };
    emit_json(out, &report)?;
    match report.margins.iter().find(|m| !m.passed) {
        None => Ok(()),
        Some(m) => Err(CliError::Assertion(format!(
            "{} = {} exceeds {}",
            m.name, m.value, m.limit
        ))),
    }
}
