//! The `hyperind` command line. [`run`] parses arguments, dispatches, writes
//! the report to `out`, and returns the process exit code.

mod report;
mod verify;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{c_r_constant, first_moment, ramsey_upper};
use crate::error::Error;
use crate::fixtures;
use crate::generators::{gen_blowup, gen_partial_steiner, gen_random, gen_star_gadget, gen_t_r, BlowupSpec};
use crate::hypercore::{
    find_triangles, has_independent_neighborhoods, intersection_profile, is_linear, max_r_degree, parse_hg, write_hg,
    Hypergraph,
};
use crate::oracle::{alpha_exact, EnumerationBudget};
use crate::rng::Seed;
use crate::shearer::{
    choose_parameters, cleanup, greedy_alpha, random_subset, run_pipeline, PipelineOptions, PipelineParams,
};

pub use report::{ReportV1, REPORT_SCHEMA, REPORT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Budget { .. })
            | CliError::Input {
                source: Error::Budget { .. },
                ..
            } => EXIT_BUDGET,
            CliError::Core(Error::Parse { .. }) | CliError::Input { .. } | CliError::Io { .. } => EXIT_IO,
            CliError::Core(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Assertion(_) => EXIT_ASSERTION,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "hyperind", version)]
#[command(about = "Independent sets in uniform hypergraphs with bounded codegree")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "HYPERIND_SEED", default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance and write it as a .hg file
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },

    /// Structural summary of a .hg file
    Stats { file: PathBuf },

    /// Random vertex subset followed by cleanup to a linear triangle-free subgraph
    Clean {
        file: PathBuf,

        #[arg(long)]
        p: f64,
    },

    /// Independence number: exact, greedy lower bound, or the full pipeline report
    Alpha {
        file: PathBuf,

        #[arg(long, value_enum, default_value = "exact")]
        mode: AlphaMode,

        #[arg(long, default_value_t = 50)]
        restarts: usize,

        /// Pipeline sampling probability; derived from n, d, r when omitted.
        #[arg(long)]
        p: Option<f64>,

        /// Pipeline weight cap; derived from n, d, r when omitted.
        #[arg(long)]
        b: Option<f64>,

        /// Codegree bound for the pipeline; defaults to the instance's max r-degree.
        #[arg(long)]
        d: Option<f64>,

        #[command(flatten)]
        budget: BudgetArgs,
    },

    /// Run an invariant suite; exits 1 naming the first failing margin
    Verify {
        #[command(subcommand)]
        target: verify::Target,
    },

    /// Table of c_r against r/e and (r+1)!^{1/r}
    Constants {
        #[arg(long, default_value_t = 2)]
        r_min: usize,

        #[arg(long, default_value_t = 64)]
        r_max: usize,

        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },

    /// Smallest n for which the lower bound forces an independent t-set
    Ramsey {
        #[arg(long)]
        r: usize,

        #[arg(long)]
        t: u64,

        /// Constant in place of the default c_{r-1}.
        #[arg(long)]
        c: Option<f64>,
    },

    /// Log expected count of independent sets above the upper-bound threshold
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
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Greedy partial Steiner (n, r+1, r)-system, or a bundled Steiner system
    Steiner {
        #[arg(long, required_unless_present = "fixture", conflicts_with = "fixture")]
        n: Option<usize>,

        #[arg(long, default_value_t = 2)]
        r: usize,

        #[arg(long, value_enum)]
        fixture: Option<Fixture>,

        #[command(flatten)]
        out: OutArg,
    },

    /// Each vertex of a partial Steiner system replaced by d copies
    Blowup {
        #[arg(long)]
        base: PathBuf,

        #[arg(long)]
        d: usize,

        #[command(flatten)]
        out: OutArg,
    },

    /// Binomial random u-uniform hypergraph
    Random {
        #[arg(long)]
        n: usize,

        #[arg(long)]
        u: usize,

        #[arg(long)]
        p: f64,

        #[command(flatten)]
        out: OutArg,
    },

    /// k edges through a centre plus l isolated vertices
    Star {
        #[arg(long)]
        r: usize,

        #[arg(long)]
        k: usize,

        #[arg(long, default_value_t = 0)]
        l: usize,

        #[command(flatten)]
        out: OutArg,
    },

    /// The r-graph T_r
    #[command(name = "t-r")]
    TR {
        #[arg(long)]
        r: usize,

        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Args)]
struct OutArg {
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = EnumerationBudget::default().max_vertices)]
    max_vertices: usize,

    #[arg(long, default_value_t = EnumerationBudget::default().max_sets)]
    max_sets: u64,
}

impl BudgetArgs {
    fn budget(&self) -> CliResult<EnumerationBudget> {
        Ok(EnumerationBudget::new(self.max_vertices, self.max_sets)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fixture {
    Fano,
    Sts9,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlphaMode {
    Exact,
    Greedy,
    Pipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

/// Runs one invocation. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let seed = Seed(cli.seed);
    match cli.command {
        Command::Gen { kind } => cmd_gen(kind, seed, out),
        Command::Stats { file } => {
            let h = read_hg(&file)?;
            emit_json(out, &stats(&h))
        }
        Command::Clean { file, p } => {
            let h = read_hg(&file)?;
            let sampled = random_subset(&h, p, seed)?;
            let rep = cleanup(&h, &sampled)?;
            emit_json(
                out,
                &json!({
                    "p": p,
                    "seed": seed,
                    "sampled": rep.sampled.len(),
                    "kept": rep.kept.len(),
                    "triangles": rep.triangles_found,
                    "overlaps": rep.overlap_pairs_found,
                    "deleted_vertices": rep.deleted,
                    "kept_vertices": rep.kept,
                }),
            )
        }
        Command::Alpha {
            file,
            mode,
            restarts,
            p,
            b,
            d,
            budget,
        } => {
            let h = read_hg(&file)?;
            let budget = budget.budget()?;
            match mode {
                AlphaMode::Exact => emit_json(out, &alpha_exact(&h, &budget)?),
                AlphaMode::Greedy => emit_json(out, &greedy_alpha(&h, seed, restarts)),
                AlphaMode::Pipeline => {
                    let params = pipeline_params(&h, p, b, d, seed)?;
                    let options = PipelineOptions {
                        greedy_restarts: restarts,
                        budget,
                        ..PipelineOptions::default()
                    };
                    let outcome = run_pipeline(&h, &params, &options)?;
                    emit_json(out, &ReportV1::from_outcome(&outcome))
                }
            }
        }
        Command::Verify { target } => verify::run(target, out),
        Command::Constants { r_min, r_max, format } => cmd_constants(r_min, r_max, format, out),
        Command::Ramsey { r, t, c } => emit_json(out, &ramsey_upper(r, t, c)?),
        Command::FirstMoment { n, r, d, eps } => emit_json(out, &first_moment(n, r, d, eps)?),
    }
}

fn cmd_gen(kind: GenKind, seed: Seed, out: &mut dyn Write) -> CliResult<()> {
    let (h, path) = match kind {
        GenKind::Steiner { n, r, fixture, out } => {
            let h = match (fixture, n) {
                (Some(Fixture::Fano), _) => fixtures::fano(),
                (Some(Fixture::Sts9), _) => fixtures::sts9(),
                (None, Some(n)) => gen_partial_steiner(n, r, seed)?,
                (None, None) => return Err(CliError::Usage("steiner needs --n or --fixture".into())),
            };
            (h, out.out)
        }
        GenKind::Blowup { base, d, out } => {
            let spec = BlowupSpec::new(read_hg(&base)?, d)?;
            (gen_blowup(&spec), out.out)
        }
        GenKind::Random { n, u, p, out } => (gen_random(n, u, p, seed)?, out.out),
        GenKind::Star { r, k, l, out } => (gen_star_gadget(r, k, l)?.0, out.out),
        GenKind::TR { r, out } => (gen_t_r(r)?, out.out),
    };
    write_atomic(&path, write_hg(&h).as_bytes())?;
    emit_json(
        out,
        &GenSummary {
            uniformity: h.uniformity(),
            n: h.n(),
            m: h.edge_count(),
            max_r_degree: max_r_degree(&h),
        },
    )
}

#[derive(Debug, Serialize)]
struct GenSummary {
    uniformity: usize,
    n: usize,
    m: usize,
    max_r_degree: usize,
}

#[derive(Debug, Serialize)]
struct Stats {
    uniformity: usize,
    n: usize,
    m: usize,
    max_r_degree: usize,
    linear: bool,
    triangles: usize,
    /// Entry `i` counts unordered edge pairs meeting in exactly `i` vertices.
    intersection_profile: Vec<u64>,
    independent_neighborhoods: bool,
}

fn stats(h: &Hypergraph) -> Stats {
    Stats {
        uniformity: h.uniformity(),
        n: h.n(),
        m: h.edge_count(),
        max_r_degree: max_r_degree(h),
        linear: is_linear(h),
        triangles: find_triangles(h).len(),
        intersection_profile: intersection_profile(h).counts,
        independent_neighborhoods: has_independent_neighborhoods(h),
    }
}

fn pipeline_params(
    h: &Hypergraph,
    p: Option<f64>,
    b: Option<f64>,
    d: Option<f64>,
    seed: Seed,
) -> CliResult<PipelineParams> {
    let r = h.uniformity() - 1;
    let d = d.unwrap_or_else(|| max_r_degree(h).max(1) as f64);
    let (p, b) = match (p, b) {
        (Some(p), Some(b)) => (p, b),
        _ => {
            let choice = choose_parameters(h.n() as u64, d, r)?;
            (p.unwrap_or(choice.p), b.unwrap_or(choice.b))
        }
    };
    Ok(PipelineParams::new(h.n() as u64, d, r, p, b, seed)?)
}

fn cmd_constants(r_min: usize, r_max: usize, format: TableFormat, out: &mut dyn Write) -> CliResult<()> {
    if r_min < 2 || r_max < r_min {
        return Err(CliError::Usage(format!(
            "need 2 <= r-min <= r-max, got {r_min}..{r_max}"
        )));
    }
    let reports = (r_min..=r_max).map(c_r_constant).collect::<Result<Vec<_>, _>>()?;
    match format {
        TableFormat::Json => emit_json(out, &reports),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for rep in &reports {
                w.serialize(ConstantRow {
                    r: rep.r,
                    c_r: rep.c_r,
                    c_r_e_over_r: rep.c_r_asymptote_ratio,
                    upper_constant: rep.upper_constant,
                    ratio: rep.upper_constant / rep.c_r,
                })
                .expect("constant rows serialize");
            }
            let bytes = w.into_inner().expect("in-memory csv flush");
            emit(out, &String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

/// One row of the constants table; `ratio` is `upper_constant / c_r`.
#[derive(Debug, Serialize)]
struct ConstantRow {
    r: usize,
    c_r: f64,
    c_r_e_over_r: f64,
    upper_constant: f64,
    ratio: f64,
}

fn read_hg(path: &Path) -> CliResult<Hypergraph> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_hg(&text).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary file in the target directory, so a failed run
/// never leaves a partial file behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    emit(out, &text)
}
