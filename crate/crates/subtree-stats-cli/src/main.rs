//! `subtree-stats`: exact subtree statistics, extremal searches and
//! corpus verification for trees in edge-list format.
//!
//! Exit codes: 0 success, 1 verification found violations, 2 tree-file
//! parse error, 3 invalid argument.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use report::Report;
use subtree_stats::counting::rational_str;
use subtree_stats::density::{local_density, max_density_subtree_with_limit, DENSITY_GUARD};
use subtree_stats::extremal::{k_extremal_with_limit, EXTREMAL_GUARD};
use subtree_stats::verify::{run_all, run_suite, SuiteConfig, SuiteReport};
use subtree_stats::{
    classify_leaves, core_decomposition, families, global_stats, local_mean, subtree_stats,
    Direction, Subtree, Tree,
};

/// Environment variable overriding the enumeration guards of `extremal`
/// and `density-max`.
const GUARD_ENV: &str = "SUBTREE_MAX_ENUM";

#[derive(Parser)]
#[command(
    name = "subtree-stats",
    version,
    about = "Exact subtree counts, local means, indices and local densities of trees"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Subtree counts, mean and density (global, or local at --subtree).
    Stats {
        /// Tree file in edge-list format.
        tree: PathBuf,
        /// Comma-separated vertex ids of a connected subtree.
        #[arg(long)]
        subtree: Option<String>,
    },
    /// All order-k subtrees of extremal local mean, with leaf classes.
    #[command(group(ArgGroup::new("dir").required(true).args(["max", "min"])))]
    Extremal {
        tree: PathBuf,
        /// Subtree order to search.
        #[arg(long)]
        k: usize,
        /// Search for the maximal local mean.
        #[arg(long)]
        max: bool,
        /// Search for the minimal local mean.
        #[arg(long)]
        min: bool,
    },
    /// Core, limbs, joint vertices and core-paths of a tree.
    Core { tree: PathBuf },
    /// All proper subtrees of maximal local density, with structure classes.
    DensityMax { tree: PathBuf },
    /// Run theorem-verification suites over the labeled-tree corpus.
    #[command(group(ArgGroup::new("which").required(true).args(["theorem", "all"])))]
    Verify {
        /// Suite name (the README lists the full set; an unknown name
        /// prints all of them).
        #[arg(long)]
        theorem: Option<String>,
        /// Run every suite.
        #[arg(long)]
        all: bool,
        /// Largest tree order (exhaustive through 8, sampled beyond).
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Seed for sampled trees and sampled subtrees.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Trees sampled per order beyond 8.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Generate a named tree family as an edge-list file.
    Gen {
        /// Family: path, star, two-stars, caterpillar, double-spider, broom.
        #[arg(long)]
        family: String,
        /// Comma-separated integer parameters.
        #[arg(long)]
        params: String,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(3)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Stats { tree, subtree } => cmd_stats(&tree, subtree.as_deref(), cli.json),
        Cmd::Extremal { tree, k, max, min } => {
            let direction = if max { Direction::Max } else { Direction::Min };
            debug_assert!(max != min);
            cmd_extremal(&tree, k, direction, cli.json)
        }
        Cmd::Core { tree } => cmd_core(&tree, cli.json),
        Cmd::DensityMax { tree } => cmd_density_max(&tree, cli.json),
        Cmd::Verify {
            theorem,
            all,
            max_n,
            seed,
            samples,
        } => cmd_verify(theorem.as_deref(), all, max_n, seed, samples, cli.json),
        Cmd::Gen {
            family,
            params,
            out,
        } => cmd_gen(&family, &params, out.as_deref()),
    }
}

fn load_tree(path: &Path) -> Result<Tree, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
    Tree::parse(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn parse_vertex_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Failure::invalid(format!("bad vertex id {part:?}")))
        })
        .collect()
}

fn parse_subtree<'t>(tree: &'t Tree, text: &str) -> Result<Subtree<'t>, Failure> {
    let vs = parse_vertex_list(text)?;
    Subtree::of_vertices(tree, vs).map_err(|e| Failure::invalid(format!("invalid subtree: {e}")))
}

fn guard_override(default: usize) -> usize {
    match std::env::var(GUARD_ENV) {
        Ok(v) => v.parse().unwrap_or(default),
        Err(_) => default,
    }
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.render_json());
    } else {
        print!("{}", report.render_text());
    }
}

fn cmd_stats(path: &Path, subtree: Option<&str>, json: bool) -> Result<u8, Failure> {
    let tree = load_tree(path)?;
    let mut report = Report::new("stats", Some(&tree));
    match subtree {
        Some(spec) => {
            let s = parse_subtree(&tree, spec)?;
            let stats = subtree_stats(&s);
            report.set_str("subtree", s.vertices().to_string());
            report.set_str("count", stats.count.to_string());
            report.set_str("total_order", stats.total_order.to_string());
            report.set_str("mean", rational_str(&local_mean(&s)));
            match local_density(&s) {
                Ok(d) => report.set_str("density", rational_str(&d)),
                Err(_) => report.set_str("density", "undefined (subtree is the whole tree)"),
            }
        }
        None => {
            let g = global_stats(&tree);
            report.set_str("count", g.stats.count.to_string());
            report.set_str("total_order", g.stats.total_order.to_string());
            report.set_str("mean", rational_str(&g.mean));
            report.set_str("density", rational_str(&g.density));
        }
    }
    emit(&report, json);
    Ok(0)
}

fn cmd_extremal(
    path: &Path,
    k: usize,
    direction: Direction,
    json: bool,
) -> Result<u8, Failure> {
    let tree = load_tree(path)?;
    let limit = guard_override(EXTREMAL_GUARD);
    let result = k_extremal_with_limit(&tree, k, direction, limit)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let mut report = Report::new("extremal", Some(&tree));
    report.set_str(
        "direction",
        match direction {
            Direction::Max => "max",
            Direction::Min => "min",
        },
    );
    report.set("k", json!(k));
    report.set_str("value", rational_str(&result.value));
    let optima: Vec<serde_json::Value> = result
        .optima
        .iter()
        .map(|&s| {
            let sub = Subtree::new(&tree, s).expect("optima are subtrees");
            let cfg = classify_leaves(&sub);
            json!({
                "vertices": s.to_vec(),
                "leaf_case": format!("{:?}", cfg.case),
            })
        })
        .collect();
    report.set("optima", json!(optima));
    emit(&report, json);
    Ok(0)
}

fn cmd_core(path: &Path, json: bool) -> Result<u8, Failure> {
    let tree = load_tree(path)?;
    let d = core_decomposition(&tree);
    let mut report = Report::new("core", Some(&tree));
    report.set("core", json!(d.core.to_vec()));
    report.set("limbs", json!(d.limbs));
    report.set("joint_vertices", json!(d.joint_vertices.to_vec()));
    report.set("core_paths", json!(d.core_paths));
    report.set("degenerate_path", json!(d.degenerate_path));
    emit(&report, json);
    Ok(0)
}

fn cmd_density_max(path: &Path, json: bool) -> Result<u8, Failure> {
    let tree = load_tree(path)?;
    let limit = guard_override(DENSITY_GUARD);
    let result = max_density_subtree_with_limit(&tree, limit)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let mut report = Report::new("density-max", Some(&tree));
    report.set_str("value", rational_str(&result.value));
    let optima: Vec<serde_json::Value> = result
        .optima
        .iter()
        .map(|(s, class)| {
            json!({
                "vertices": s.to_vec(),
                "structure": format!("{class:?}"),
            })
        })
        .collect();
    report.set("optima", json!(optima));
    if !result.violations.is_empty() {
        report.set("cross_check_failures", json!(result.violations));
    }
    emit(&report, json);
    Ok(0)
}

fn cmd_verify(
    theorem: Option<&str>,
    all: bool,
    max_n: usize,
    seed: u64,
    samples: usize,
    json: bool,
) -> Result<u8, Failure> {
    let cfg = SuiteConfig {
        max_n,
        seed,
        samples,
    };
    let suites: Vec<SuiteReport> = if all {
        run_all(&cfg)
    } else {
        let name = theorem.expect("clap group guarantees one of --theorem/--all");
        vec![run_suite(name, &cfg).map_err(|e| Failure::invalid(e.to_string()))?]
    };
    let mut report = Report::new("verify", None);
    report.set("max_n", json!(cfg.max_n));
    report.set("seed", json!(cfg.seed));
    report.set("samples", json!(cfg.samples));
    let mut all_passed = true;
    for suite in &suites {
        report.absorb_suite(suite);
        all_passed &= suite.passed();
    }
    if json {
        println!("{}", report.render_json());
    } else {
        for suite in &suites {
            println!(
                "{}: {} ({} trees, {} checks{})",
                suite.suite,
                if suite.passed() { "PASS" } else { "FAIL" },
                suite.trees_checked,
                suite.checks,
                if suite.notes.is_empty() {
                    String::new()
                } else {
                    format!("; {}", suite.notes.join("; "))
                }
            );
        }
        for v in &report.violations {
            println!(
                "violation [{}] tree {}{}: expected {}, got {}",
                v.suite,
                v.tree,
                v.subtree
                    .as_deref()
                    .map(|s| format!(" subtree {s}"))
                    .unwrap_or_default(),
                v.expected,
                v.actual
            );
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_gen(family: &str, params: &str, out: Option<&Path>) -> Result<u8, Failure> {
    let params: Vec<usize> = if params.trim().is_empty() {
        Vec::new()
    } else {
        parse_vertex_list(params)?
    };
    let tree =
        families::generate(family, &params).map_err(|e| Failure::invalid(e.to_string()))?;
    let text = tree.to_edge_list();
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::parse(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}
