//! One pass/fail line per acceptance criterion. Exits non-zero if any fails.

use std::path::Path;
use std::time::{Duration, Instant};

use ntst::counting::{count_admissible_trees_by_weight, solve_by_inclusion_exclusion};
use ntst::format::{render_instance, render_tree};
use ntst::kernel::{has_reducible_degree_pattern, kernelize, lift_solution, KernelRule, Verdict};
use ntst::matroid::{solve_by_matroid_intersection, PartitionMatroid};
use ntst::oracle::{brute_force_solve, false_twin_ham_instance, petersen_graph, random_instance, star_graph, WeightMode};
use ntst::{EdgeSet, Error, Instance, MultiGraph, SolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn quiet() -> SolveOptions {
    SolveOptions { witness: false, ..SolveOptions::default() }
}

fn within(start: Instant, limit: Duration, summary: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{summary}, but took {took:.1?} (limit {limit:?})"))
    } else {
        Ok(format!("{summary} in {took:.1?}"))
    }
}

fn mode_for(i: u64) -> WeightMode {
    match i % 3 {
        0 => WeightMode::Unit,
        1 => WeightMode::Integer { max: 6 },
        _ => WeightMode::Rational { max_num: 9, max_den: 5 },
    }
}

fn optimum_matches_oracle() -> Outcome {
    let start = Instant::now();
    let mut feasible = 0;
    for seed in 0..500u64 {
        let n = 2 + (seed % 9) as usize;
        let k = ((seed / 9) as usize) % (n - 1);
        let p = 0.25 + 0.05 * (seed % 6) as f64;
        let inst = random_instance(seed, n, p, k, mode_for(seed / 3)).map_err(|e| format!("seed {seed}: {e}"))?;
        let fast = solve_by_matroid_intersection(&inst, &SolveOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let oracle = brute_force_solve(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        if fast.feasible != oracle.feasible || fast.weight != oracle.opt_weight {
            return Err(format!("seed {seed}: matroid {:?} vs oracle {:?}", fast.weight, oracle.opt_weight));
        }
        feasible += fast.feasible as usize;
    }
    within(start, Duration::from_secs(120), format!("500/500 instances agree ({feasible} feasible)"))
}

fn counts_match_oracle() -> Outcome {
    let start = Instant::now();
    let histogram = |inst: &Instance| count_admissible_trees_by_weight(inst, None).map(|c| c.sparse());
    let fixed = |n: usize, nt: &[usize]| Instance::unweighted(MultiGraph::complete(n), nt.iter().copied()).map_err(|e| e.to_string());
    let k3 = histogram(&fixed(3, &[])?).map_err(|e| e.to_string())?;
    let k4 = histogram(&fixed(4, &[])?).map_err(|e| e.to_string())?;
    let k4v = histogram(&fixed(4, &[0])?).map_err(|e| e.to_string())?;
    let show = |h: &std::collections::BTreeMap<usize, num_bigint::BigUint>| format!("{h:?}");
    if show(&k3) != "{2: 3}" || k4.values().sum::<num_bigint::BigUint>() != 16u32.into() || show(&k4v) != "{3: 7}" {
        return Err(format!("fixed checks: K3 {k3:?}, K4 {k4:?}, K4 one NT {k4v:?}"));
    }
    for seed in 0..300u64 {
        let n = 2 + (seed % 6) as usize;
        let k = ((seed / 6) as usize) % (n - 1);
        let inst = random_instance(seed, n, 0.6, k, WeightMode::Integer { max: 4 }).map_err(|e| e.to_string())?;
        let counts = count_admissible_trees_by_weight(&inst, Some(4)).map_err(|e| format!("seed {seed}: {e}"))?;
        let oracle = brute_force_solve(&inst).map_err(|e| e.to_string())?.histogram.ok_or_else(|| "oracle gave no histogram".to_string())?;
        let len = counts.len().max(oracle.len());
        let entry = |v: &ntst::counting::WeightCountVector, q| v.get(q).cloned().unwrap_or_default();
        if let Some(q) = (0..len).find(|&q| entry(&counts, q) != entry(&oracle, q)) {
            return Err(format!("seed {seed}: weight {q} counted {} vs oracle {}", entry(&counts, q), entry(&oracle, q)));
        }
    }
    within(start, Duration::from_secs(120), "fixed checks and 300/300 histograms agree".into())
}

fn check_with_cli(dir: &Path, inst: &Instance, tree: &EdgeSet) -> bool {
    let (file, tree_file) = (dir.join("inst.ntst"), dir.join("tree.txt"));
    std::fs::write(&file, render_instance(inst)).expect("write instance");
    std::fs::write(&tree_file, render_tree(inst, tree)).expect("write tree");
    ntst::cli::run(["ntst".as_ref(), "check".as_ref(), file.as_os_str(), tree_file.as_os_str()]).code == 0
}

fn kernels_sound_and_small() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (mut compared, mut lifted) = (0, 0);
    for seed in 0..300u64 {
        let n = 3 + (seed % 28) as usize;
        let k = ((seed / 7) as usize % 7).min(n - 2);
        let p = (3.0 / n as f64).clamp(0.2, 0.6);
        let inst = random_instance(seed, n, p, k, WeightMode::Unit).map_err(|e| e.to_string())?;
        let expected = (n <= 10).then(|| brute_force_solve(&inst).map(|o| o.feasible)).transpose().map_err(|e| e.to_string())?;
        for rule in [KernelRule::K, KernelRule::Vc, KernelRule::Ml] {
            let fail = |what: String| Err(format!("seed {seed} {rule:?}: {what}"));
            let res = kernelize(&inst, rule).map_err(|e| format!("seed {seed}: {e}"))?;
            let kernel_solution = if res.verdict == Verdict::Infeasible {
                None
            } else {
                let kn = res.kernel.n();
                match rule {
                    KernelRule::K if kn > (3 * k).max(1) => return fail(format!("{kn} vertices for k = {k}")),
                    KernelRule::Vc if kn > 4 * res.cover_size.map_or(0, |c| c.0) + 2 => return fail(format!("{kn} vertices, cover {:?}", res.cover_size)),
                    KernelRule::Ml if has_reducible_degree_pattern(&res.kernel) => return fail("reducible pattern left".into()),
                    _ => {}
                }
                Some(solve_by_matroid_intersection(&res.kernel, &SolveOptions::default()).map_err(|e| e.to_string())?)
            };
            let feasible = kernel_solution.as_ref().is_some_and(|s| s.feasible);
            if let Some(expected) = expected {
                compared += 1;
                if feasible != expected {
                    return fail(format!("kernel says {feasible}, original {expected}"));
                }
            }
            if let Some(tree) = kernel_solution.and_then(|s| s.tree) {
                let full = lift_solution(&inst, &res.trace, &tree).map_err(|e| e.to_string())?;
                if !check_with_cli(dir.path(), &inst, &full) {
                    return fail("lifted witness rejected by check".into());
                }
                lifted += 1;
            }
        }
    }
    within(start, Duration::from_secs(180), format!("900 kernels within bounds, {compared} answers compared, {lifted} lifted witnesses pass check"))
}

fn random_partition_matroid(rng: &mut ChaCha8Rng) -> (usize, Result<PartitionMatroid, Error>) {
    let ground = rng.gen_range(1..=10);
    let nblocks = rng.gen_range(1..=ground.min(4));
    let mut blocks = vec![Vec::new(); nblocks];
    for e in 0..ground {
        blocks[rng.gen_range(0..nblocks)].push(e);
    }
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for b in &blocks {
        let lo = rng.gen_range(0..=b.len().min(2));
        lower.push(lo);
        upper.push(rng.gen_range(lo..=b.len() + 1));
    }
    let rank = rng.gen_range(0..=ground);
    (ground, PartitionMatroid::new(ground, blocks, lower, upper, rank))
}

fn partition_matroid_axioms() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut tested, mut empty) = (0, 0);
    while tested < 1000 {
        let (ground, pm) = random_partition_matroid(&mut rng);
        let pm = match pm {
            Ok(pm) => pm,
            Err(Error::EmptyBaseFamily(_)) => {
                empty += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        tested += 1;
        let members = |mask: u32| (0..ground).filter(|&e| mask >> e & 1 == 1).collect::<Vec<_>>();
        let by_definition = |mask: u32| {
            mask.count_ones() as usize == pm.rank()
                && pm.blocks().iter().enumerate().all(|(i, b)| {
                    let c = b.iter().filter(|&&e| mask >> e & 1 == 1).count();
                    pm.lower(i) <= c && c <= pm.cap(i)
                })
        };
        let mut bases = Vec::new();
        for mask in 0..1u32 << ground {
            let is_base = pm.is_base(&members(mask)).map_err(|e| e.to_string())?;
            if is_base != by_definition(mask) {
                return Err(format!("is_base disagrees with the bounds on {:?}", members(mask)));
            }
            if is_base {
                bases.push(mask);
            }
        }
        for &b1 in &bases {
            for &b2 in &bases {
                for x in (0..ground).filter(|&x| (b1 & !b2) >> x & 1 == 1) {
                    let exchanged = (0..ground).filter(|&y| (b2 & !b1) >> y & 1 == 1).any(|y| bases.contains(&(b1 & !(1 << x) | 1 << y)));
                    if !exchanged {
                        return Err(format!("exchange fails for {:?}, {:?}, x = {x}", members(b1), members(b2)));
                    }
                }
            }
        }
        for _ in 0..8 {
            let subset = members(rng.gen_range(0..1u32 << ground));
            let closed = pm.extension_feasible(&subset).map_err(|e| e.to_string())?;
            let flow = pm.extension_feasible_by_flow(&subset).map_err(|e| e.to_string())?;
            let mask: u32 = subset.iter().map(|&e| 1 << e).sum();
            let exhaustive = bases.iter().any(|&b| b & mask == mask);
            if closed != flow || closed != exhaustive {
                return Err(format!("extension of {subset:?}: closed form {closed}, flow {flow}, exhaustive {exhaustive}"));
            }
        }
    }
    within(start, Duration::from_secs(60), format!("1000 matroids ({empty} empty families skipped), exchange and extension checks agree"))
}

fn hamiltonian_cases() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, MultiGraph, bool)> = (3..=9).map(|n| (format!("C{n}"), MultiGraph::cycle(n), true)).collect();
    cases.push(("Petersen".into(), petersen_graph(), false));
    cases.push(("K1,3".into(), star_graph(3), false));
    for (name, g, hamiltonian) in &cases {
        for v in [0, g.n() - 1] {
            let inst = false_twin_ham_instance(g, v).map_err(|e| e.to_string())?;
            let ie = solve_by_inclusion_exclusion(&inst, &quiet()).map_err(|e| e.to_string())?;
            let matroid = solve_by_matroid_intersection(&inst, &quiet()).map_err(|e| e.to_string())?;
            if ie.feasible != *hamiltonian || matroid.feasible != *hamiltonian {
                return Err(format!("{name} twin of {v}: ie {}, matroid {}, expected {hamiltonian}", ie.feasible, matroid.feasible));
            }
        }
    }
    within(start, Duration::from_secs(60), format!("{} graphs decided correctly by both solvers", cases.len()))
}

fn instance_with_nt_edges(n: usize, k: usize, ell: usize) -> Result<Instance, String> {
    (0..10_000u64)
        .map(|seed| random_instance(seed, n, 0.08, k, WeightMode::Integer { max: 4 }))
        .filter_map(|r| r.ok())
        .find(|inst| inst.nt_edges().len() == ell)
        .ok_or_else(|| format!("no seed gives n = {n} with {ell} edges between non-terminals"))
}

fn scaling_smoke() -> Outcome {
    let ie_inst = random_instance(6, 30, 0.2, 12, WeightMode::Integer { max: 4 }).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let ie = solve_by_inclusion_exclusion(&ie_inst, &SolveOptions { threads: 1, witness: false, max_weight: Some(4) }).map_err(|e| e.to_string())?;
    let ie_time = start.elapsed();
    if ie.stats.subsets_evaluated != 1 << 12 {
        return Err(format!("ie evaluated {} subsets, expected 4096", ie.stats.subsets_evaluated));
    }

    let m_inst = instance_with_nt_edges(60, 16, 12)?;
    let start = Instant::now();
    let matroid = solve_by_matroid_intersection(&m_inst, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let m_time = start.elapsed();
    if matroid.stats.branches_evaluated > 1 << 12 {
        return Err(format!("matroid evaluated {} branches, more than 4096", matroid.stats.branches_evaluated));
    }
    let limit = Duration::from_secs(60);
    let summary = format!(
        "ie n=30 k=12 W=4: 4096 subsets, {ie_time:.1?}; matroid n=60 l=12: {} branches, {m_time:.1?}",
        matroid.stats.branches_evaluated
    );
    if ie_time > limit || m_time > limit {
        Err(format!("{summary} (limit {limit:?} each)"))
    } else {
        Ok(summary)
    }
}

fn bench_cross_on_corpus() -> Outcome {
    let start = Instant::now();
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let repro = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = ntst::cli::run([
        "ntst".as_ref(),
        "bench".as_ref(),
        corpus.as_os_str(),
        "--suite".as_ref(),
        "cross".as_ref(),
        "--repro-dir".as_ref(),
        repro.path().as_os_str(),
    ]);
    let summary = out.stdout.lines().find(|l| l.contains("disagreements")).unwrap_or("no summary line").to_string();
    if out.code != 0 || summary != "100 instances, 0 disagreements" {
        return Err(format!("exit {}: {summary} {}", out.code, out.stderr.trim()));
    }
    within(start, Duration::from_secs(300), format!("{summary}, exit 0"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("oracle equivalence, optimum", optimum_matches_oracle),
        ("oracle equivalence, counting", counts_match_oracle),
        ("kernel soundness and size", kernels_sound_and_small),
        ("partition matroid axioms and extension", partition_matroid_axioms),
        ("hamiltonian special case", hamiltonian_cases),
        ("scaling smoke test", scaling_smoke),
        ("cross-algorithm agreement on corpus", bench_cross_on_corpus),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
