use serde::{Deserialize, Serialize};

use crate::counting::{solve_by_inclusion_exclusion, WeightCountVector, MAX_IE_NON_TERMINALS};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Instance, Weight};
use crate::kernel::{kernelize, lift_solution, KernelResult, KernelRule, Verdict};
use crate::matroid::solve_by_matroid_intersection;
use crate::oracle::brute_force_solve;

/// Outcome of one exact solver run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub feasible: bool,
    /// Optimal total weight when feasible.
    pub weight: Option<Weight>,
    /// Edge ids of an optimal admissible spanning tree, when one was requested.
    pub tree: Option<EdgeSet>,
    /// Per-weight admissible tree counts (inclusion-exclusion only).
    pub counts: Option<WeightCountVector>,
    pub stats: SolveStats,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Inclusion-exclusion terms evaluated for the optimum (always `2^k`).
    pub subsets_evaluated: u64,
    /// Acyclic non-terminal edge subsets handed to matroid intersection.
    pub branches_evaluated: u64,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Worker threads for the subset / branch loops; 1 runs sequentially.
    pub threads: usize,
    /// Reconstruct a witness tree (inclusion-exclusion only; the matroid
    /// solver always produces one).
    pub witness: bool,
    /// Upper weight bound for inclusion-exclusion; defaults to the largest edge weight.
    pub max_weight: Option<u64>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { threads: 1, witness: true, max_weight: None }
    }
}

impl SolveResult {
    pub fn infeasible(stats: SolveStats) -> Self {
        SolveResult { feasible: false, weight: None, tree: None, counts: None, stats }
    }
}

/// Runs `f` on a dedicated pool of `threads` workers, or inline when `threads <= 1`.
pub(crate) fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    if threads <= 1 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Which exact solver to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Algorithm {
    Auto,
    InclusionExclusion,
    Matroid,
    Brute,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Algorithm::Auto),
            "ie" => Ok(Algorithm::InclusionExclusion),
            "matroid" => Ok(Algorithm::Matroid),
            "brute" => Ok(Algorithm::Brute),
            _ => Err(Error::Precondition(format!("unknown algorithm {s:?} (expected auto, ie, matroid or brute)"))),
        }
    }
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::InclusionExclusion => "ie",
            Algorithm::Matroid => "matroid",
            Algorithm::Brute => "brute",
        }
    }
}

/// Largest `(n - 1) * max_weight` for which `Auto` still picks inclusion-exclusion.
const AUTO_IE_MAX_SPAN: u64 = 1 << 20;

/// Matroid intersection when weights are not integers or there are at most
/// 16 edges between non-terminals; otherwise inclusion-exclusion if it has
/// fewer subsets to try (`k < ℓ`) and the weight range is modest.
pub fn choose_algorithm(inst: &Instance) -> Algorithm {
    let ell = inst.nt_edges().len();
    let Some(weights) = inst.integer_weights() else { return Algorithm::Matroid };
    if ell <= 16 {
        return Algorithm::Matroid;
    }
    let span = weights.iter().copied().max().unwrap_or(1).saturating_mul(inst.n().saturating_sub(1) as u64);
    let k = inst.nt_count();
    if k < ell && k <= MAX_IE_NON_TERMINALS && span <= AUTO_IE_MAX_SPAN {
        Algorithm::InclusionExclusion
    } else {
        Algorithm::Matroid
    }
}

/// Runs `algorithm` (resolving `Auto` first) and reports which one ran.
pub fn solve(inst: &Instance, algorithm: Algorithm, options: &SolveOptions) -> Result<(SolveResult, Algorithm)> {
    let algorithm = match algorithm {
        Algorithm::Auto => choose_algorithm(inst),
        other => other,
    };
    let result = match algorithm {
        Algorithm::InclusionExclusion => solve_by_inclusion_exclusion(inst, options)?,
        Algorithm::Matroid => solve_by_matroid_intersection(inst, options)?,
        Algorithm::Brute => {
            let oracle = brute_force_solve(inst)?;
            SolveResult {
                feasible: oracle.feasible,
                weight: oracle.opt_weight,
                tree: oracle.witness,
                counts: oracle.histogram,
                stats: SolveStats::default(),
            }
        }
        Algorithm::Auto => unreachable!("resolved above"),
    };
    Ok((result, algorithm))
}

/// Result of solving through a kernel.
#[derive(Clone, Debug)]
pub struct KernelSolve {
    pub result: SolveResult,
    pub kernel: KernelResult,
    pub algorithm: Algorithm,
}

/// Kernelizes, solves the kernel and lifts the witness. Kernels are for the
/// unweighted problem, so weights must be absent or all equal; every spanning
/// tree then costs `(n - 1)` times the common weight.
pub fn solve_with_kernel(inst: &Instance, rule: KernelRule, algorithm: Algorithm, options: &SolveOptions) -> Result<KernelSolve> {
    if !inst.has_uniform_weights() {
        return Err(Error::Precondition("kernels need unweighted or uniformly weighted instances".into()));
    }
    let kernel = kernelize(inst, rule)?;
    if kernel.verdict == Verdict::Infeasible {
        return Ok(KernelSolve { result: SolveResult::infeasible(SolveStats::default()), kernel, algorithm: choose_or(algorithm, inst) });
    }
    let (inner, algorithm) = solve(&kernel.kernel, algorithm, &SolveOptions { witness: options.witness, ..options.clone() })?;
    let mut result = SolveResult { counts: None, tree: None, weight: None, ..inner.clone() };
    if inner.feasible {
        let unit = if inst.graph().m() > 0 { inst.weight(0) } else { Weight::one() };
        result.weight = Some((0..inst.n().saturating_sub(1)).map(|_| unit.clone()).sum());
        if options.witness {
            if let Some(tree) = &inner.tree {
                result.tree = Some(lift_solution(inst, &kernel.trace, tree)?);
            }
        }
    }
    Ok(KernelSolve { result, kernel, algorithm })
}

fn choose_or(algorithm: Algorithm, inst: &Instance) -> Algorithm {
    match algorithm {
        Algorithm::Auto => choose_algorithm(inst),
        other => other,
    }
}
