#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use hyperind::cli::run;

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs one command line in `dir`, substituting `{dir}` in arguments, and
/// returns stdout followed by the contents of any `--out` file.
pub fn capture(dir: &Path, args: &[&str]) -> String {
    let argv: Vec<String> = std::iter::once("hyperind".to_string())
        .chain(args.iter().map(|a| a.replace("{dir}", dir.to_str().unwrap())))
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    let mut text = format!("exit {code}\n");
    text.push_str(&String::from_utf8(out).unwrap());
    if let Some(i) = argv.iter().position(|a| a == "--out") {
        text.push_str("--- file\n");
        text.push_str(&fs::read_to_string(&argv[i + 1]).unwrap());
    }
    text
}

pub const CASES: &[(&str, &[&str])] = &[
    (
        "gen_fano",
        &["gen", "steiner", "--fixture", "fano", "--out", "{dir}/fano.hg"],
    ),
    (
        "gen_sts9",
        &["gen", "steiner", "--fixture", "sts9", "--out", "{dir}/sts9.hg"],
    ),
    (
        "gen_steiner",
        &[
            "gen",
            "steiner",
            "--n",
            "20",
            "--r",
            "2",
            "--seed",
            "5",
            "--out",
            "{dir}/steiner.hg",
        ],
    ),
    (
        "gen_blowup",
        &[
            "gen",
            "blowup",
            "--base",
            "{dir}/fano.hg",
            "--d",
            "2",
            "--out",
            "{dir}/blow.hg",
        ],
    ),
    (
        "gen_random",
        &[
            "gen",
            "random",
            "--n",
            "15",
            "--u",
            "3",
            "--p",
            "0.05",
            "--seed",
            "11",
            "--out",
            "{dir}/random.hg",
        ],
    ),
    (
        "gen_star",
        &[
            "gen",
            "star",
            "--r",
            "2",
            "--k",
            "3",
            "--l",
            "1",
            "--out",
            "{dir}/star.hg",
        ],
    ),
    ("gen_t_r", &["gen", "t-r", "--r", "3", "--out", "{dir}/t3.hg"]),
    ("stats_fano", &["stats", "{dir}/fano.hg"]),
    ("stats_random", &["stats", "{dir}/random.hg"]),
    ("clean_blowup", &["clean", "{dir}/blow.hg", "--p", "0.7", "--seed", "3"]),
    ("alpha_exact", &["alpha", "{dir}/blow.hg", "--mode", "exact"]),
    (
        "alpha_greedy",
        &[
            "alpha",
            "{dir}/steiner.hg",
            "--mode",
            "greedy",
            "--seed",
            "2",
            "--restarts",
            "10",
        ],
    ),
    (
        "alpha_pipeline",
        &[
            "alpha",
            "{dir}/steiner.hg",
            "--mode",
            "pipeline",
            "--p",
            "0.8",
            "--b",
            "2",
            "--seed",
            "6",
        ],
    ),
    (
        "alpha_pipeline_derived",
        &["alpha", "{dir}/steiner.hg", "--mode", "pipeline", "--seed", "6"],
    ),
    (
        "verify_lemma3",
        &["verify", "lemma3", "--k", "400", "--q", "0.25", "--b", "5"],
    ),
    (
        "verify_weights",
        &[
            "verify", "weights", "--r", "3", "--kmax", "2", "--lmax", "1", "--b", "1,8",
        ],
    ),
    (
        "verify_conditions",
        &["verify", "conditions", "--n", "1000000000000", "--d", "1", "--r", "2"],
    ),
    (
        "verify_first_moment",
        &[
            "verify",
            "first-moment",
            "--n",
            "1000000",
            "--r",
            "2",
            "--d",
            "100",
            "--eps",
            "0.1",
        ],
    ),
    ("verify_constants", &["verify", "constants", "--r", "2"]),
    ("constants_csv", &["constants", "--r-min", "2", "--r-max", "10"]),
    (
        "constants_json",
        &["constants", "--r-min", "2", "--r-max", "3", "--format", "json"],
    ),
    ("ramsey", &["ramsey", "--r", "3", "--t", "100"]),
    (
        "first_moment",
        &[
            "first-moment",
            "--n",
            "1000000",
            "--r",
            "2",
            "--d",
            "100",
            "--eps",
            "0.1",
        ],
    ),
];
