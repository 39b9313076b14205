//! Query-count benchmarking with CSV output.
//!
//! Two modes: direct runs against random instances of a class, and duel
//! runs against an adaptive adversary. Counts always come from the oracle,
//! and rows aggregate min/mean/max over the trials of one dimension.

use std::io::{Read, Write};

use matuso::solvers::SinkFinder;
use matuso::uso::{UsoOracle, VertexEvalOracle};
use matuso::MatousekUso;
use serde::{Deserialize, Serialize};

use crate::duel::run_duel;
use crate::registry::{AdversaryId, InstanceClass, QueryModel, SolverId};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub solver: String,
    pub class: String,
    pub trials: usize,
    pub min_queries: usize,
    pub mean_queries: f64,
    pub max_queries: usize,
    pub bound: usize,
    pub bound_respected: bool,
}

fn aggregate(
    n: usize,
    solver: &str,
    class: &str,
    counts: &[usize],
    bound: usize,
) -> BenchRow {
    let min_queries = counts.iter().copied().min().unwrap_or(0);
    let max_queries = counts.iter().copied().max().unwrap_or(0);
    let mean_queries = if counts.is_empty() {
        0.0
    } else {
        counts.iter().sum::<usize>() as f64 / counts.len() as f64
    };
    BenchRow {
        n,
        solver: solver.into(),
        class: class.into(),
        trials: counts.len(),
        min_queries,
        mean_queries,
        max_queries,
        bound,
        bound_respected: max_queries <= bound,
    }
}

/// Per-trial seed: one stream per (base seed, n, trial index).
fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (trial as u64).rotate_left(32)
}

/// Runs `solver` on `trials` random instances per dimension; the count is
/// the vertex-evaluation counter, the bound the solver's worst case.
pub fn run_instance_bench(
    solver_id: SolverId,
    class: InstanceClass,
    ns: &[usize],
    trials: usize,
    seed: u64,
) -> anyhow::Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        let mut counts = Vec::with_capacity(trials);
        for trial in 0..trials {
            let s = trial_seed(seed, n, trial);
            let uso = match class {
                InstanceClass::General => MatousekUso::random_general(n, s),
                InstanceClass::Realizable => MatousekUso::random_realizable(n, s).0,
            };
            let sink = uso.sink().clone();
            let mut oracle = UsoOracle::new(uso);
            let finder: Box<dyn SinkFinder> = solver_id.sink_finder(s);
            let report = finder
                .find_sink(&mut oracle)
                .map_err(|e| anyhow::anyhow!("solver {solver_id} failed at n={n}: {e}"))?;
            if report.answer != sink {
                anyhow::bail!("solver {solver_id} returned a wrong sink at n={n}");
            }
            counts.push(oracle.query_count());
        }
        rows.push(aggregate(
            n,
            solver_id.name(),
            class.name(),
            &counts,
            solver_id.vertex_eval_bound(n),
        ));
    }
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// Runs duels instead of fixed instances. Counts are reported in the
/// solver's native model: raw matrix-vector queries for matrix solvers,
/// adversary queries plus the one anchor evaluation for sink finders.
pub fn run_duel_bench(
    solver_id: SolverId,
    adversary_id: AdversaryId,
    ns: &[usize],
    trials: usize,
    seed: u64,
) -> anyhow::Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        let mut counts = Vec::with_capacity(trials);
        for trial in 0..trials {
            let verdict = run_duel(solver_id, adversary_id, n, trial_seed(seed, n, trial));
            if !verdict.passed() {
                anyhow::bail!(
                    "duel {} vs {} failed at n={n}: audits={}, correct={}, queries={} (lower bound {})",
                    solver_id,
                    adversary_id,
                    verdict.audits_passed,
                    verdict.answer_correct,
                    verdict.queries,
                    verdict.lower_bound
                );
            }
            let count = match solver_id.native_model() {
                QueryModel::MatrixVector => verdict.queries,
                QueryModel::VertexEvaluation => verdict.queries + 1,
            };
            counts.push(count);
        }
        rows.push(aggregate(
            n,
            solver_id.name(),
            &format!("duel:{}", adversary_id.name()),
            &counts,
            solver_id.vertex_eval_bound(n),
        ));
    }
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> anyhow::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

/// Header-only output for an empty run.
pub fn csv_string(rows: &[BenchRow]) -> anyhow::Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "n",
        "solver",
        "class",
        "trials",
        "min_queries",
        "mean_queries",
        "max_queries",
        "bound",
        "bound_respected",
    ])?;
    let mut inner = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(writer.into_inner()?);
    for row in rows {
        inner.serialize(row)?;
    }
    Ok(String::from_utf8(inner.into_inner()?)?)
}

pub fn read_csv<R: Read>(input: R) -> anyhow::Result<Vec<BenchRow>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for row in reader.deserialize() {
        rows.push(row?);
    }
    Ok(rows)
}
