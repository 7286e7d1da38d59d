//! Module-side data against exchange-graph variables, root by root.

use std::time::Instant;

use serde::Serialize;

use crate::cartan::CartanTriple;
use crate::ccmod::{cc_function, Catalog};
use crate::cluster::{ExtMatrix, Explorer, Seed};
use crate::error::Result;
use crate::rootsys::{default_tubes, enumerate_real_schur, SchurRootLabel};

#[derive(Clone, Debug, Serialize)]
pub struct RootRecord {
    pub label: String,
    pub rank: Vec<i64>,
    pub f_ccmod: serde_json::Value,
    pub f_cluster: Option<serde_json::Value>,
    pub g_ccmod: Vec<i64>,
    pub g_cluster: Option<Vec<i64>>,
    /// 1-indexed mutation word reaching the cluster variable.
    pub word: Option<Vec<usize>>,
    pub equal: bool,
    pub micros: u128,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub equal: usize,
    pub mismatched: usize,
    pub missing: usize,
    pub reflections: usize,
    pub seeds_visited: usize,
    pub mutations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub triple: crate::cartan::CartanInput,
    pub depth: usize,
    pub records: Vec<RootRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.total > 0 && self.summary.equal == self.summary.total
    }
}

/// Explores the exchange graph far enough to meet every real Schur root of
/// depth `<= depth` and every tube root.
///
/// Preprojective variables appear along `(1 2 ... n)^{depth+1}` and
/// preinjective ones along `(n ... 1)^{depth+1}`. Tube variables live in the
/// finite-type subgraphs that never mutate the extended vertex, searched from
/// the seeds after each full sink sweep.
pub fn reach_variables(t: &CartanTriple, depth: usize) -> Result<Explorer> {
    let n = t.n();
    let mut ex = Explorer::for_triple(t);
    let s0 = ex.initial_seed();
    let sinks: Vec<usize> = (0..n).cycle().take(n * (depth + 1)).collect();
    let sources: Vec<usize> = (0..n).rev().cycle().take(n * (depth + 1)).collect();
    ex.walk(&s0, &sinks)?;
    ex.walk(&s0, &sources)?;
    let tubes = default_tubes(t)?;
    if let Some(k) = tubes.extended_vertex {
        let keep: Vec<usize> = (0..n).filter(|&v| v != k).collect();
        let sweep: Vec<usize> = (0..n).collect();
        let mut seed: Seed = s0;
        let wanted: Vec<Vec<i64>> = tubes.all_roots().into_iter().map(|(r, _)| r).collect();
        for _ in 0..=n + 1 {
            ex.bfs(&seed, usize::MAX, Some(&keep))?;
            if wanted.iter().all(|r| ex.get(r).is_some()) {
                break;
            }
            seed = ex.walk(&seed, &sweep)?;
        }
    }
    Ok(ex)
}

pub fn verify_sweep(t: &CartanTriple, depth: usize) -> Result<VerificationReport> {
    let mat = ExtMatrix::principal(t.b());
    let ex = reach_variables(t, depth)?;
    let mut catalog = Catalog::new(t)?;
    let labels: Vec<(Vec<i64>, SchurRootLabel)> = enumerate_real_schur(t, depth)?;
    let mut records = Vec::new();
    let mut summary = Summary::default();
    for (rank, label) in labels {
        let start = Instant::now();
        let datum = catalog.datum(&rank, label)?.clone();
        let x = cc_function(&datum, &mat)?;
        let found = ex.get(&rank);
        let equal = found.is_some_and(|v| v.poly == x);
        summary.total += 1;
        summary.reflections += datum.reflections;
        match (found.is_some(), equal) {
            (_, true) => summary.equal += 1,
            (true, false) => summary.mismatched += 1,
            (false, _) => summary.missing += 1,
        }
        records.push(RootRecord {
            label: label.to_string(),
            rank,
            f_ccmod: datum.f.to_json(),
            f_cluster: found.map(|v| v.data.f().to_json()),
            g_ccmod: datum.g.clone(),
            g_cluster: found.map(|v| v.data.g.clone()),
            word: found.map(|v| v.word.iter().map(|k| k + 1).collect()),
            equal,
            micros: start.elapsed().as_micros(),
        });
    }
    summary.seeds_visited = ex.seeds_visited();
    summary.mutations = ex.mutations;
    Ok(VerificationReport { triple: t.to_input(), depth, records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sweeps_pass_on_fixtures() {
        for (name, t) in fixtures::all() {
            let rep = verify_sweep(&t, 2).unwrap();
            let bad: Vec<_> = rep.records.iter().filter(|r| !r.equal).map(|r| (&r.label, &r.rank, r.f_cluster.is_some())).collect();
            assert!(rep.passed(), "{name}: {bad:?}");
        }
    }
}
