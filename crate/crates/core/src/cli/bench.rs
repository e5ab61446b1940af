use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use super::{read_instance, to_json, write_file, Outcome};
use crate::error::{Error, Result};
use crate::format::render_instance;
use crate::graph::{is_admissible_spanning_tree, Instance, MultiGraph, Weight};
use crate::kernel::{has_reducible_degree_pattern, kernelize, lift_solution, KernelRule, Verdict};
use crate::oracle::{brute_force_solve_with_cap, oracle_cap};
use crate::solve::{solve, solve_with_kernel, Algorithm, SolveOptions};

/// Inclusion-exclusion is skipped above this many non-terminals in benchmarks.
const BENCH_IE_MAX_NT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    Kernel,
    Ie,
    Matroid,
    Cross,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Row {
    file: String,
    n: usize,
    k: usize,
    ell: usize,
    method: String,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<String>,
    wall_millis: f64,
    subsets_evaluated: u64,
    branches_evaluated: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vertices_per_nt: Option<f64>,
    ok: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    note: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Report {
    suite: Suite,
    instances: usize,
    disagreements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_vertices_per_nt: Option<f64>,
    reproducers: Vec<String>,
    rows: Vec<Row>,
}

/// `(feasible, optimum)` as reported by one method.
type Answer = (bool, Option<Weight>);

fn row(file: &str, inst: &Instance, method: &str) -> Row {
    Row {
        file: file.to_string(),
        n: inst.n(),
        k: inst.nt_count(),
        ell: inst.nt_edges().len(),
        method: method.to_string(),
        status: String::new(),
        weight: None,
        wall_millis: 0.0,
        subsets_evaluated: 0,
        branches_evaluated: 0,
        kernel_vertices: None,
        vertices_per_nt: None,
        ok: true,
        note: String::new(),
    }
}

fn status(feasible: bool) -> String {
    if feasible { "feasible" } else { "infeasible" }.to_string()
}

fn ie_applicable(inst: &Instance) -> bool {
    inst.nt_count() <= BENCH_IE_MAX_NT && inst.integer_weights().is_some_and(|w| w.iter().all(|&x| x > 0))
}

fn is_refusal(e: &Error) -> bool {
    matches!(e, Error::Precondition(_) | Error::OracleCapExceeded { .. })
}

/// Every applicable method's answer. Methods whose preconditions fail are left out.
fn answers(inst: &Instance, threads: usize) -> Result<Vec<(String, Answer, Row)>> {
    let options = SolveOptions { threads, witness: true, max_weight: None };
    let mut out = Vec::new();
    let mut methods = vec![("matroid".to_string(), Algorithm::Matroid, None)];
    if ie_applicable(inst) {
        methods.push(("ie".into(), Algorithm::InclusionExclusion, None));
    }
    if inst.n() <= oracle_cap() {
        methods.push(("brute".into(), Algorithm::Brute, None));
    }
    if inst.has_uniform_weights() {
        for (name, rule) in [("k", KernelRule::K), ("vc", KernelRule::Vc), ("ml", KernelRule::Ml)] {
            methods.push((format!("kernel-{name}+matroid"), Algorithm::Matroid, Some(rule)));
        }
    }
    for (name, algorithm, rule) in methods {
        let mut r = row("", inst, &name);
        let start = Instant::now();
        let run = match rule {
            None => solve(inst, algorithm, &options).map(|(res, _)| res),
            Some(rule) => solve_with_kernel(inst, rule, algorithm, &options).map(|k| k.result),
        };
        r.wall_millis = start.elapsed().as_secs_f64() * 1e3;
        let res = match run {
            Ok(res) => res,
            Err(e) if is_refusal(&e) && name != "matroid" => continue,
            Err(e) => return Err(e),
        };
        if let Some(tree) = &res.tree {
            if !is_admissible_spanning_tree(inst, tree)? {
                r.ok = false;
                r.note = "witness is not admissible".into();
            }
        }
        r.status = status(res.feasible);
        r.weight = res.weight.as_ref().map(|w| w.to_string());
        r.subsets_evaluated = res.stats.subsets_evaluated;
        r.branches_evaluated = res.stats.branches_evaluated;
        out.push((name, (res.feasible, res.weight), r));
    }
    Ok(out)
}

/// True when some two methods disagree or a witness is bad.
fn disagrees(inst: &Instance, threads: usize) -> bool {
    match answers(inst, threads) {
        Ok(all) => all.iter().any(|(_, a, r)| !r.ok || *a != all[0].1),
        Err(_) => true,
    }
}

/// Problems with one kernel: size bound, forbidden patterns, and answer
/// against the oracle when small enough.
fn kernel_problems(inst: &Instance, rule: KernelRule) -> Result<(Row, Vec<String>)> {
    let plain = inst.without_weights();
    let name = match rule {
        KernelRule::K => "k",
        KernelRule::Vc => "vc",
        KernelRule::Ml => "ml",
    };
    let mut r = row("", inst, &format!("kernel-{name}"));
    let start = Instant::now();
    let res = kernelize(&plain, rule)?;
    r.wall_millis = start.elapsed().as_secs_f64() * 1e3;
    let infeasible = res.verdict == Verdict::Infeasible;
    r.status = match res.verdict {
        Verdict::Reduced => "reduced",
        Verdict::Infeasible => "infeasible",
        Verdict::Unchanged => "unchanged",
    }
    .into();
    r.kernel_vertices = (!infeasible).then_some(res.kernel.n());
    let k = plain.nt_count();
    if k > 0 && !infeasible {
        r.vertices_per_nt = Some(res.kernel.n() as f64 / k as f64);
    }
    let mut problems = Vec::new();
    if !infeasible {
        match rule {
            KernelRule::K if res.kernel.n() > (3 * k).max(1) => problems.push(format!("{} vertices > 3k", res.kernel.n())),
            KernelRule::Vc => {
                let (s, _) = res.cover_size.unwrap_or((0, 0));
                if res.kernel.n() > 4 * s + 2 {
                    problems.push(format!("{} vertices > 4|S|+2 = {}", res.kernel.n(), 4 * s + 2));
                }
            }
            KernelRule::Ml if has_reducible_degree_pattern(&res.kernel) => problems.push("reducible degree pattern left".into()),
            _ => {}
        }
    }
    if plain.n() <= oracle_cap() {
        let expected = brute_force_solve_with_cap(&plain, oracle_cap())?.feasible;
        let got = if infeasible { None } else { Some(brute_force_solve_with_cap(&res.kernel, oracle_cap().max(res.kernel.n()))?) };
        if got.as_ref().is_some_and(|o| o.feasible) != expected {
            problems.push(format!("kernel answer differs from the original ({expected})"));
        }
        if let Some(tree) = got.and_then(|o| o.witness) {
            let lifted = lift_solution(&plain, &res.trace, &tree)?;
            if !is_admissible_spanning_tree(&plain, &lifted)? {
                problems.push("lifted witness is not admissible".into());
            }
        }
    }
    r.ok = problems.is_empty();
    r.note = problems.join("; ");
    Ok((r, problems))
}

fn kernel_fails(inst: &Instance) -> bool {
    [KernelRule::K, KernelRule::Vc, KernelRule::Ml]
        .into_iter()
        .any(|rule| kernel_problems(inst, rule).map_or(true, |(_, p)| !p.is_empty()))
}

fn without_vertex(inst: &Instance, v: usize) -> Option<Instance> {
    let keep: Vec<bool> = (0..inst.n()).map(|u| u != v).collect();
    let sub = inst.graph().induced_subgraph(&keep);
    let weights = inst.weights().map(|w| sub.edge_origin.iter().map(|&e| w[e].clone()).collect());
    let nt = inst.nt_vertices().into_iter().filter(|&u| u != v).map(|u| sub.vertex_map[u].expect("kept"));
    Instance::new(sub.graph, nt, weights).ok()
}

fn without_edge(inst: &Instance, e: usize) -> Option<Instance> {
    let edges: Vec<_> = inst.graph().edges().iter().enumerate().filter(|&(i, _)| i != e).map(|(_, &uv)| uv).collect();
    let weights = inst.weights().map(|w| w.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, x)| x.clone()).collect());
    Instance::new(MultiGraph::new(inst.n(), edges).ok()?, inst.nt_vertices(), weights).ok()
}

/// Greedily deletes vertices, then edges, then non-terminal marks, then
/// weights, keeping each change while `still_fails` holds.
pub fn minimize_reproducer(inst: &Instance, still_fails: impl Fn(&Instance) -> bool) -> Instance {
    let mut cur = inst.clone();
    loop {
        let mut shrunk = false;
        let mut v = 0;
        while v < cur.n() {
            match without_vertex(&cur, v).filter(|c| c.n() > 0 && still_fails(c)) {
                Some(c) => {
                    cur = c;
                    shrunk = true;
                }
                None => v += 1,
            }
        }
        let mut e = 0;
        while e < cur.graph().m() {
            match without_edge(&cur, e).filter(|c| still_fails(c)) {
                Some(c) => {
                    cur = c;
                    shrunk = true;
                }
                None => e += 1,
            }
        }
        for v in cur.nt_vertices() {
            let nt: Vec<usize> = cur.nt_vertices().into_iter().filter(|&u| u != v).collect();
            if let Some(c) = cur.with_nt(nt).ok().filter(|c| still_fails(c)) {
                cur = c;
                shrunk = true;
            }
        }
        if cur.is_weighted() {
            let c = cur.without_weights();
            if still_fails(&c) {
                cur = c;
                shrunk = true;
            }
        }
        if !shrunk {
            return cur;
        }
    }
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ntst"))
        .filter(|p| !p.file_name().is_some_and(|f| f.to_string_lossy().starts_with("repro-")))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Precondition(format!("no .ntst files in {}", dir.display())));
    }
    Ok(files)
}

pub(super) fn cmd_bench(dir: &Path, suite: Suite, json: Option<&Path>, repro_dir: Option<&Path>, threads: usize) -> Result<Outcome> {
    let files = instance_files(dir)?;
    let repro_dir = repro_dir.unwrap_or(dir);
    let mut rows = Vec::new();
    let mut reproducers = Vec::new();
    let mut disagreements = 0;
    for path in &files {
        let name = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        let stem = path.file_stem().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        let inst = read_instance(path)?;
        let mut file_rows = Vec::new();
        let mut failed: Option<Box<dyn Fn(&Instance) -> bool>> = None;
        match suite {
            Suite::Kernel => {
                for rule in [KernelRule::K, KernelRule::Vc, KernelRule::Ml] {
                    let (r, problems) = kernel_problems(&inst, rule)?;
                    file_rows.push(r);
                    if !problems.is_empty() {
                        failed = Some(Box::new(kernel_fails));
                    }
                }
            }
            Suite::Ie | Suite::Matroid => {
                let (algorithm, method) = if suite == Suite::Ie { (Algorithm::InclusionExclusion, "ie") } else { (Algorithm::Matroid, "matroid") };
                let mut r = row(&name, &inst, method);
                if suite == Suite::Ie && !ie_applicable(&inst) {
                    r.status = "skipped".into();
                    r.note = "needs positive integer weights and few non-terminals".into();
                } else {
                    let start = Instant::now();
                    let (res, _) = solve(&inst, algorithm, &SolveOptions { threads, witness: false, max_weight: None })?;
                    r.wall_millis = start.elapsed().as_secs_f64() * 1e3;
                    r.status = status(res.feasible);
                    r.weight = res.weight.map(|w| w.to_string());
                    r.subsets_evaluated = res.stats.subsets_evaluated;
                    r.branches_evaluated = res.stats.branches_evaluated;
                }
                file_rows.push(r);
            }
            Suite::Cross => {
                let all = answers(&inst, threads)?;
                let reference = all[0].1.clone();
                for (_, answer, mut r) in all {
                    if answer != reference {
                        r.ok = false;
                        r.note = "disagrees with matroid".into();
                    }
                    if !r.ok {
                        failed = Some(Box::new(move |c: &Instance| disagrees(c, 1)));
                    }
                    file_rows.push(r);
                }
            }
        }
        for r in &mut file_rows {
            r.file = name.clone();
        }
        if let Some(predicate) = failed {
            disagreements += 1;
            let small = minimize_reproducer(&inst, predicate);
            let out = repro_dir.join(format!("repro-{stem}.ntst"));
            write_file(&out, &format!("c reproducer minimized from {name}\n{}", render_instance(&small)))?;
            reproducers.push(out.display().to_string());
        }
        rows.extend(file_rows);
    }
    let max_vertices_per_nt = (suite == Suite::Kernel)
        .then(|| rows.iter().filter(|r| r.method == "kernel-k").filter_map(|r| r.vertices_per_nt).fold(0.0, f64::max));
    let report = Report { suite, instances: files.len(), disagreements, max_vertices_per_nt, reproducers, rows };
    if let Some(path) = json {
        write_file(path, &to_json(&report))?;
    }
    let mut text = format!("{:<28} {:>4} {:>3} {:>4} {:<22} {:<10} {:>10} {:>10} {:>9} {:>8}  note\n", "file", "n", "k", "ell", "method", "status", "weight", "ms", "subsets", "branches");
    for r in &report.rows {
        writeln!(
            text,
            "{:<28} {:>4} {:>3} {:>4} {:<22} {:<10} {:>10} {:>10.2} {:>9} {:>8}  {}",
            r.file,
            r.n,
            r.k,
            r.ell,
            r.method,
            r.status,
            r.weight.as_deref().unwrap_or("-"),
            r.wall_millis,
            r.subsets_evaluated,
            r.branches_evaluated,
            match (r.kernel_vertices, r.vertices_per_nt) {
                (Some(v), Some(q)) => format!("kernel {v} vertices ({q:.2} per nt) {}", r.note),
                (Some(v), None) => format!("kernel {v} vertices {}", r.note),
                _ => r.note.clone(),
            }
            .trim_end()
        )
        .expect("string write");
    }
    writeln!(text, "{} instances, {} disagreements", report.instances, report.disagreements).expect("string write");
    if let Some(q) = report.max_vertices_per_nt {
        writeln!(text, "max kernel vertices per non-terminal: {q:.2}").expect("string write");
    }
    let mut outcome = Outcome::ok(text);
    if disagreements > 0 {
        outcome.code = 3;
        outcome.stderr = report.reproducers.iter().map(|p| format!("reproducer written to {p}\n")).collect();
    }
    Ok(outcome)
}
