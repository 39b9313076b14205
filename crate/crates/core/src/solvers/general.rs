//! Solvers that work on every Matousek-type instance: antipodal jumping and
//! column-by-column matrix recovery.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::gf2::{self, BitMatrix, BitVec};
use crate::uso::{MxyOracle, VertexEvalOracle};

use super::{MxySolver, SinkFinder, SolveError, SolveReport};

/// Repeatedly jump from `v` to `v xor o(v)`. On a decomposable orientation
/// every jump permanently fixes at least one dimension, so after at most
/// `n` evaluations the walk sits on the sink; the final jump target needs
/// no confirming query. A revisited vertex proves the oracle is not
/// decomposable.
pub fn jump_antipodal(
    oracle: &mut dyn VertexEvalOracle,
    start: &BitVec,
) -> Result<SolveReport, SolveError> {
    let n = oracle.n();
    assert_eq!(start.len(), n, "start vertex has the wrong dimension");
    let before = oracle.query_count();
    let t0 = oracle.transcript().len();
    let mut v = start.clone();
    let mut seen = HashSet::new();
    for _ in 0..n {
        if !seen.insert(v.clone()) {
            return Err(SolveError::NotDecomposable);
        }
        let out = oracle.query(&v);
        if out.is_zero() {
            return Ok(SolveReport {
                answer: v,
                queries_used: oracle.query_count() - before,
                transcript: oracle.transcript()[t0..].to_vec(),
            });
        }
        v.xor_assign(&out);
    }
    if seen.contains(&v) {
        return Err(SolveError::NotDecomposable);
    }
    Ok(SolveReport {
        answer: v,
        queries_used: oracle.query_count() - before,
        transcript: oracle.transcript()[t0..].to_vec(),
    })
}

/// The antipodal-jump sink finder. Starts at the all-ones vertex unless a
/// start is configured.
#[derive(Clone, Debug, Default)]
pub struct JumpAntipodal {
    pub start: Option<BitVec>,
}

impl SinkFinder for JumpAntipodal {
    fn find_sink(&self, oracle: &mut dyn VertexEvalOracle) -> Result<SolveReport, SolveError> {
        let start = self
            .start
            .clone()
            .unwrap_or_else(|| BitVec::ones(oracle.n()));
        jump_antipodal(oracle, &start)
    }
}

/// Recovers the hidden matrix column by column: query `e_1 .. e_n`, exactly
/// `n` queries.
pub fn recover_matrix_naive(oracle: &mut dyn MxyOracle) -> BitMatrix {
    let n = oracle.n();
    let mut m = BitMatrix::zeros(n, n);
    for j in 1..=n {
        let column = oracle.query(&BitVec::unit(n, j));
        for i in column.iter_ones() {
            m.set(i, j, true);
        }
    }
    m
}

/// Full recovery followed by elimination: `n` queries, any legal hidden
/// matrix.
#[derive(Clone, Debug, Default)]
pub struct NaiveRecovery;

impl MxySolver for NaiveRecovery {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError> {
        let before = oracle.query_count();
        let t0 = oracle.transcript().len();
        let m = recover_matrix_naive(oracle);
        let x = gf2::solve(&m, oracle.target()).map_err(|_| SolveError::InconsistentInstance)?;
        Ok(SolveReport {
            answer: x,
            queries_used: oracle.query_count() - before,
            transcript: oracle.transcript()[t0..].to_vec(),
        })
    }
}

/// A seeded query strategy for adversary duels: emits random linearly
/// independent queries until the target is spanned by the replies, then
/// reads the answer off the combination.
#[derive(Clone, Debug)]
pub struct RandomProbe {
    pub seed: u64,
}

impl MxySolver for RandomProbe {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError> {
        let n = oracle.n();
        let y = oracle.target().clone();
        let before = oracle.query_count();
        let t0 = oracle.transcript().len();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut queries: Vec<BitVec> = Vec::new();
        let mut replies: Vec<BitVec> = Vec::new();
        loop {
            if let Some(coeff) = gf2::express_in_span(&replies, &y) {
                let mut x = BitVec::zeros(n);
                for (i, q) in queries.iter().enumerate() {
                    if coeff.get(i + 1) {
                        x.xor_assign(q);
                    }
                }
                return Ok(SolveReport {
                    answer: x,
                    queries_used: oracle.query_count() - before,
                    transcript: oracle.transcript()[t0..].to_vec(),
                });
            }
            let q = loop {
                let candidate = BitVec::random(n, &mut rng);
                if !gf2::span_contains(&queries, &candidate) {
                    break candidate;
                }
            };
            let reply = oracle.query(&q);
            queries.push(q);
            replies.push(reply);
        }
    }
}
