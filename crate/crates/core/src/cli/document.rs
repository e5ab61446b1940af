use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::counting::WeightCountVector;
use crate::graph::{EdgeSet, Instance};
use crate::kernel::{KernelResult, KernelRule, Verdict};
use crate::solve::SolveResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Feasible,
    Infeasible,
    Unknown,
}

/// JSON written by `solve` and `count`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResultDocument {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
    /// `[u, v, "w"]` with 1-based vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<(usize, usize, String)>>,
    pub algorithm: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSummary>,
    pub stats: StatsDocument,
    /// Non-zero counts by total weight; numbers beyond `u64` are strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<BTreeMap<u64, serde_json::Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KernelSummary {
    pub rule: KernelRule,
    pub verdict: Verdict,
    pub vertices_before: usize,
    pub vertices_after: usize,
}

impl KernelSummary {
    pub fn new(rule: KernelRule, original: &Instance, kernel: &KernelResult) -> Self {
        KernelSummary { rule, verdict: kernel.verdict, vertices_before: original.n(), vertices_after: kernel.kernel.n() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StatsDocument {
    pub subsets_evaluated: u64,
    pub branches_evaluated: u64,
    pub wall_millis: u64,
}

pub fn count_value(c: &BigUint) -> serde_json::Value {
    match c.to_u64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(c.to_string()),
    }
}

pub fn counts_map(counts: &WeightCountVector) -> BTreeMap<u64, serde_json::Value> {
    counts.sparse().into_iter().map(|(q, c)| (q as u64, count_value(&c))).collect()
}

pub fn tree_entries(inst: &Instance, tree: &EdgeSet) -> Vec<(usize, usize, String)> {
    tree.iter()
        .map(|&e| {
            let (u, v) = inst.graph().edge(e);
            (u + 1, v + 1, inst.weight(e).to_string())
        })
        .collect()
}

impl ResultDocument {
    pub fn from_result(inst: &Instance, result: &SolveResult, algorithm: &str, wall_millis: u64) -> Self {
        ResultDocument {
            status: if result.feasible { Status::Feasible } else { Status::Infeasible },
            weight: result.weight.as_ref().map(|w| w.to_string()),
            tree: result.tree.as_ref().map(|t| tree_entries(inst, t)),
            algorithm: algorithm.to_string(),
            kernel: None,
            stats: StatsDocument {
                subsets_evaluated: result.stats.subsets_evaluated,
                branches_evaluated: result.stats.branches_evaluated,
                wall_millis,
            },
            counts: result.counts.as_ref().map(counts_map),
        }
    }
}
