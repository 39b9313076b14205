//! Structure recovery for realizable instances.
//!
//! The hidden matrix of a realizable instance is the reflexive transitive
//! closure of a branching, so instead of reading all n^2 bits it suffices to
//! recover the branching. Two phases: *levelling* finds the level of every
//! vertex in exactly `ceil(log2 n)` queries, then a *divide-and-conquer*
//! pass over level intervals finds every vertex's ancestor chain, merging
//! the per-interval probes into one shared query per bit position. Knowing
//! the matrix, the target system is solved by elimination with no further
//! queries.

use crate::dig::{Branching, LevelAssignment};
use crate::gf2::{self, BitVec};
use crate::uso::{MxyOracle, VertexEvalOracle};

use super::{
    ceil_log2, AncestorTable, MxySolver, SinkFinder, SinkFinderFromMxy, SolveError, SolveReport,
};

/// Recovers the level of every vertex in exactly `ceil(log2 n)` queries.
///
/// Round `i` queries the set `q` of vertices whose level ends in `i` one
/// bits; a vertex has an odd number of strict in-neighbors inside `q`
/// exactly when bit `i` of its level is set. The rounds run unconditionally
/// so the query count is fixed, even when a query is the zero vector.
pub fn levelling(oracle: &mut dyn MxyOracle) -> LevelAssignment {
    let n = oracle.n();
    let rounds = ceil_log2(n);
    let mut lvl = vec![0usize; n];
    let mut q = BitVec::ones(n);
    for i in 0..rounds {
        let reply = oracle.query(&q);
        let r = reply.xor(&q);
        for v in r.iter_ones() {
            lvl[v - 1] += 1 << i;
        }
        q.and_assign(&r);
    }
    LevelAssignment::new(lvl)
}

/// Recovers the full ancestor table of a hidden branching closure whose
/// levels are already known.
///
/// Keeps a set of disjoint level intervals. Each round splits every
/// interval at its median level `m` and identifies, for the vertices in the
/// lower half, which median vertex is their `m`-ancestor: the medians are
/// probed by the bits of their labels, one shared query per bit position
/// across all intervals, and the replies for deeper intervals are cleaned
/// by xoring off the reply at the already-known interval-end ancestor.
/// Vertex labels are 1-based so label 0 can mean "unknown"; when `n` is a
/// power of two the label `n` has no set bit among the probed positions,
/// and an all-zero readout within the detection range decodes to `n`.
pub fn divide_and_conquer(
    oracle: &mut dyn MxyOracle,
    lvl: &LevelAssignment,
) -> Result<AncestorTable, SolveError> {
    let n = oracle.n();
    assert_eq!(lvl.n(), n, "level data has the wrong dimension");
    let lmax = lvl.max_level();
    let mut table = AncestorTable::new(n, lmax);
    if lmax == 0 {
        return Ok(table);
    }
    let bits = ceil_log2(n);
    let buckets = lvl.buckets();
    let mut subproblems: Vec<(usize, usize)> = vec![(0, lmax)];
    let mut code = vec![0usize; n + 1];

    while !subproblems.is_empty() {
        let medians: Vec<usize> = subproblems.iter().map(|&(a, b)| (a + b) / 2).collect();
        code.iter_mut().for_each(|c| *c = 0);

        for s in 0..bits {
            let mut q = BitVec::zeros(n);
            for &m in &medians {
                for &v in &buckets[m] {
                    if (v >> s) & 1 == 1 {
                        q.set(v, true);
                    }
                }
            }
            let mut r = oracle.query(&q);
            for (i, &(_, b)) in subproblems.iter().enumerate() {
                let m = medians[i];
                // Cancel this interval's median probes out of everything
                // below the interval, via the known level-b ancestors.
                for bucket in buckets.iter().take(lmax + 1).skip(b + 1) {
                    for &v in bucket {
                        let anchor = table.get(b, v);
                        if anchor == 0 {
                            return Err(SolveError::InconsistentInstance);
                        }
                        if r.get(anchor) {
                            r.flip(v);
                        }
                    }
                }
                for bucket in buckets.iter().take(b + 1).skip(m + 1) {
                    for &v in bucket {
                        if r.get(v) {
                            code[v] |= 1 << s;
                        }
                    }
                }
            }
        }

        for (i, &(_, b)) in subproblems.iter().enumerate() {
            let m = medians[i];
            for bucket in buckets.iter().take(b + 1).skip(m + 1) {
                for &v in bucket {
                    let mut label = code[v];
                    if label == 0 {
                        // Every vertex below level m has an m-ancestor, so an
                        // empty readout can only be the bit-starved label.
                        label = 1 << bits;
                    }
                    if label > n || lvl.level(label) != m {
                        return Err(SolveError::InconsistentInstance);
                    }
                    table.set(m, v, label);
                }
            }
            // Extend the fresh m-ancestors through the known level-b
            // ancestors to every vertex below the interval.
            for bucket in buckets.iter().take(lmax + 1).skip(b + 1) {
                for &v in bucket {
                    let through = table.get(b, v);
                    let ancestor = table.get(m, through);
                    if ancestor == 0 {
                        return Err(SolveError::InconsistentInstance);
                    }
                    table.set(m, v, ancestor);
                }
            }
        }

        let mut next = Vec::new();
        for (i, &(a, b)) in subproblems.iter().enumerate() {
            let m = medians[i];
            if m > a {
                next.push((a, m));
            }
            if b > m + 1 {
                next.push((m + 1, b));
            }
        }
        subproblems = next;
    }
    Ok(table)
}

/// Hidden-matrix solver for realizable instances: levelling, then
/// divide-and-conquer, then reconstruct the closure and eliminate. Total
/// queries at most `ceil(log2 n) * (1 + ceil(log2 (max_level + 1)))`.
#[derive(Clone, Debug, Default)]
pub struct BranchingRecovery;

impl MxySolver for BranchingRecovery {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError> {
        let before = oracle.query_count();
        let t0 = oracle.transcript().len();
        let lvl = levelling(oracle);
        let table = divide_and_conquer(oracle, &lvl)?;
        let parents = table.parents(&lvl)?;
        let branching =
            Branching::from_parents(parents).map_err(|_| SolveError::NotRealizableOracle)?;
        if branching.depths() != lvl.as_slice() {
            return Err(SolveError::NotRealizableOracle);
        }
        let matrix = branching.closure().into_adj();
        // The recovered closure must reproduce every reply we were given.
        for (q, reply) in &oracle.transcript()[t0..] {
            if &matrix.mul_vec(q) != reply {
                return Err(SolveError::NotRealizableOracle);
            }
        }
        let x = gf2::solve(&matrix, oracle.target())
            .map_err(|_| SolveError::NotRealizableOracle)?;
        Ok(SolveReport {
            answer: x,
            queries_used: oracle.query_count() - before,
            transcript: oracle.transcript()[t0..].to_vec(),
        })
    }
}

/// Sink finding on realizable instances in
/// `1 + ceil(log2 n) + ceil(log2 n) * ceil(log2 (max_level + 1))` vertex
/// evaluations: one anchor evaluation plus the recovery run through the
/// model reduction.
pub fn solve_realizable_sink(
    oracle: &mut dyn VertexEvalOracle,
) -> Result<SolveReport, SolveError> {
    SinkFinderFromMxy::new(BranchingRecovery).find_sink(oracle)
}
