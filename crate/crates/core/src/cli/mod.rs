//! The `ntst` command line. [`run`] takes the arguments and returns the exit
//! code with everything that would be printed, so it can be driven from tests.
//!
//! Exit codes: 0 solved (feasible or not), 1 `check` rejected the tree,
//! 2 usage or input error, 3 solvers disagreed during `bench`.

mod bench;
mod document;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::counting::solve_by_inclusion_exclusion;
use crate::error::{Error, Result};
use crate::format::{parse_instance, parse_tree, render_instance, resolve_tree};
use crate::graph::{is_spanning_tree, Instance};
use crate::kernel::{kernelize, KernelRule, Verdict};
use crate::oracle::{false_twin_ham_instance, random_instance, WeightMode};
use crate::solve::{solve, solve_with_kernel, Algorithm, SolveOptions};

pub use bench::{minimize_reproducer, Suite};
pub use document::{KernelSummary, ResultDocument, StatsDocument, Status};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ntst", version, about = "Spanning trees whose designated non-terminal vertices are all internal")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgoArg {
    Auto,
    Ie,
    Matroid,
    Brute,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Auto => Algorithm::Auto,
            AlgoArg::Ie => Algorithm::InclusionExclusion,
            AlgoArg::Matroid => Algorithm::Matroid,
            AlgoArg::Brute => Algorithm::Brute,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum KernelArg {
    None,
    K,
    Vc,
    Ml,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RuleArg {
    K,
    Vc,
    Ml,
}

impl From<RuleArg> for KernelRule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::K => KernelRule::K,
            RuleArg::Vc => KernelRule::Vc,
            RuleArg::Ml => KernelRule::Ml,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a minimum-weight admissible spanning tree.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        algo: AlgoArg,
        #[arg(long, value_enum, default_value = "none")]
        kernel: KernelArg,
        /// Include an optimal tree in the output.
        #[arg(long)]
        witness: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Weight bound for inclusion-exclusion (default: the largest edge weight).
        #[arg(long)]
        max_weight: Option<u64>,
    },
    /// Count admissible spanning trees by total weight.
    Count {
        file: PathBuf,
        #[arg(long)]
        max_weight: Option<u64>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Reduce an instance to a kernel and print it with its reduction trace.
    Kernelize {
        file: PathBuf,
        #[arg(long, value_enum)]
        rule: RuleArg,
        /// Write the kernel instance here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the reduction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Exit 0 iff the tree is an admissible spanning tree of the instance.
    Check { file: PathBuf, tree: PathBuf },
    /// Generate a random instance, or a Hamiltonicity instance from a graph.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        /// Number of non-terminals.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// `unit`, `int:MAX` or `rat:MAXNUM/MAXDEN`.
        #[arg(long, default_value = "unit")]
        weights: String,
        /// Build the false-twin instance of this file's graph instead.
        #[arg(long)]
        ham_from: Option<PathBuf>,
        /// 1-based vertex that receives the twin.
        #[arg(long, default_value_t = 1)]
        vertex: usize,
    },
    /// Run a benchmark suite over every `.ntst` file in a directory.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Also write the table as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Where reproducers go (default: the benchmark directory).
        #[arg(long)]
        repro_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Solve { file, algo, kernel, witness, threads, max_weight } => {
            cmd_solve(&file, algo.into(), kernel, SolveOptions { threads, witness, max_weight })
        }
        Command::Count { file, max_weight, threads } => cmd_count(&file, max_weight, threads),
        Command::Kernelize { file, rule, out, trace } => cmd_kernelize(&file, rule.into(), out.as_deref(), trace.as_deref()),
        Command::Check { file, tree } => cmd_check(&file, &tree),
        Command::Gen { seed, n, p, k, weights, ham_from, vertex } => cmd_gen(seed, n, p, k, &weights, ham_from.as_deref(), vertex),
        Command::Bench { dir, suite, json, repro_dir, threads } => bench::cmd_bench(&dir, suite, json.as_deref(), repro_dir.as_deref(), threads),
    };
    result.unwrap_or_else(Outcome::input_error)
}

pub(crate) fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| match e {
        Error::Parse { line, message } => Error::Precondition(format!("{}:{line}: {message}", path.display())),
        other => other,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn cmd_solve(file: &Path, algorithm: Algorithm, kernel: KernelArg, options: SolveOptions) -> Result<Outcome> {
    let inst = read_instance(file)?;
    let start = Instant::now();
    let doc = match kernel {
        KernelArg::None => {
            let (result, used) = solve(&inst, algorithm, &options)?;
            ResultDocument::from_result(&inst, &result, used.name(), start.elapsed().as_millis() as u64)
        }
        rule => {
            let rule = match rule {
                KernelArg::K => KernelRule::K,
                KernelArg::Vc => KernelRule::Vc,
                _ => KernelRule::Ml,
            };
            let solved = solve_with_kernel(&inst, rule, algorithm, &options)?;
            let mut doc = ResultDocument::from_result(&inst, &solved.result, solved.algorithm.name(), start.elapsed().as_millis() as u64);
            doc.kernel = Some(KernelSummary::new(rule, &inst, &solved.kernel));
            doc
        }
    };
    Ok(Outcome::ok(to_json(&doc)))
}

fn cmd_count(file: &Path, max_weight: Option<u64>, threads: usize) -> Result<Outcome> {
    let inst = read_instance(file)?;
    let start = Instant::now();
    let options = SolveOptions { threads, witness: false, max_weight };
    let result = solve_by_inclusion_exclusion(&inst, &options)?;
    let doc = ResultDocument::from_result(&inst, &result, "ie", start.elapsed().as_millis() as u64);
    let mut out = Outcome::ok(to_json(&doc));
    if !inst.graph().is_connected() {
        out.stderr = "note: graph is disconnected, so it has no spanning tree\n".into();
    }
    Ok(out)
}

fn cmd_kernelize(file: &Path, rule: KernelRule, out: Option<&Path>, trace_path: Option<&Path>) -> Result<Outcome> {
    let inst = read_instance(file)?;
    if !inst.has_uniform_weights() {
        return Err(Error::Precondition("kernels need unweighted or uniformly weighted instances".into()));
    }
    let res = kernelize(&inst, rule)?;
    let infeasible = res.verdict == Verdict::Infeasible;
    let kernel_text = (!infeasible).then(|| render_instance(&res.kernel));
    if let (Some(path), Some(text)) = (out, &kernel_text) {
        write_file(path, text)?;
    }
    if let Some(path) = trace_path {
        write_file(path, &to_json(&res.trace))?;
    }
    let doc = json!({
        "status": if infeasible { "infeasible" } else { "unknown" },
        "verdict": res.verdict,
        "rule": rule,
        "verticesBefore": inst.n(),
        "verticesAfter": res.kernel.n(),
        "ntBefore": inst.nt_count(),
        "ntAfter": res.kernel.nt_count(),
        "cover": res.cover_size.map(|(input, last)| json!({"input": input, "final": last})),
        "kernel": kernel_text,
        "trace": res.trace,
    });
    Ok(Outcome::ok(to_json(&doc)))
}

fn cmd_check(file: &Path, tree_path: &Path) -> Result<Outcome> {
    let inst = read_instance(file)?;
    let text = std::fs::read_to_string(tree_path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", tree_path.display())))?;
    let listed = parse_tree(&text, inst.n())?;
    let fail = |reason: String| Ok(Outcome { code: 1, stdout: format!("fail: {reason}\n"), stderr: String::new() });
    let tree = match resolve_tree(&inst, &listed) {
        Ok(tree) => tree,
        Err(i) => {
            let (u, v, _) = &listed[i];
            return fail(format!("edge {} {} is not in the graph (or listed too often)", u + 1, v + 1));
        }
    };
    if !is_spanning_tree(inst.graph(), &tree)? {
        return fail(format!("{} edges do not form a spanning tree of {} vertices", tree.len(), inst.n()));
    }
    let mut degree = vec![0usize; inst.n()];
    for &e in &tree {
        let (u, v) = inst.graph().edge(e);
        degree[u] += 1;
        degree[v] += 1;
    }
    if let Some(v) = inst.nt_vertices().into_iter().find(|&v| degree[v] < 2) {
        return fail(format!("non-terminal {} has degree {}", v + 1, degree[v]));
    }
    let weight: crate::graph::Weight = tree.iter().map(|&e| inst.weight(e)).sum();
    Ok(Outcome::ok(format!("pass: weight {weight}\n")))
}

fn parse_weight_mode(text: &str) -> Result<WeightMode> {
    let bad = || Error::Precondition(format!("bad --weights {text:?} (expected unit, int:MAX or rat:NUM/DEN)"));
    if text == "unit" {
        return Ok(WeightMode::Unit);
    }
    if let Some(max) = text.strip_prefix("int:") {
        return Ok(WeightMode::Integer { max: max.parse().map_err(|_| bad())? });
    }
    if let Some((num, den)) = text.strip_prefix("rat:").and_then(|r| r.split_once('/')) {
        return Ok(WeightMode::Rational { max_num: num.parse().map_err(|_| bad())?, max_den: den.parse().map_err(|_| bad())? });
    }
    Err(bad())
}

fn cmd_gen(seed: u64, n: usize, p: f64, k: usize, weights: &str, ham_from: Option<&Path>, vertex: usize) -> Result<Outcome> {
    let (inst, comment) = match ham_from {
        Some(path) => {
            let source = read_instance(path)?;
            if vertex == 0 || vertex > source.n() {
                return Err(Error::Precondition(format!("--vertex {vertex} outside 1..={}", source.n())));
            }
            let inst = false_twin_ham_instance(source.graph(), vertex - 1)?;
            (inst, format!("c false twin of vertex {vertex} in {}\n", path.display()))
        }
        None => {
            let inst = random_instance(seed, n, p, k, parse_weight_mode(weights)?)?;
            (inst, format!("c gen --seed {seed} --n {n} --p {p} --k {k} --weights {weights}\n"))
        }
    };
    Ok(Outcome::ok(comment + &render_instance(&inst)))
}
