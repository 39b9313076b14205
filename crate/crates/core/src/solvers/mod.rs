//! Sink-finding and matrix-recovery algorithms, plus the query-preserving
//! reductions between the two oracle models.

mod general;
mod realizable;
mod reduction;

pub use general::{jump_antipodal, recover_matrix_naive, JumpAntipodal, NaiveRecovery, RandomProbe};
pub use realizable::{divide_and_conquer, levelling, solve_realizable_sink, BranchingRecovery};
pub use reduction::{MxySolverFromSinkFinder, SinkFinderFromMxy};

use serde::Serialize;
use thiserror::Error;

use crate::dig::LevelAssignment;
use crate::gf2::BitVec;
use crate::uso::{MxyOracle, VertexEvalOracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("not decomposable: the jump sequence revisited a vertex")]
    NotDecomposable,
    #[error("oracle not realizable Matousek-type")]
    NotRealizableOracle,
    #[error("inconsistent instance")]
    InconsistentInstance,
}

/// Outcome of one solve: the answer, the oracle-count delta consumed, and
/// the query/reply pairs issued.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub answer: BitVec,
    pub queries_used: usize,
    pub transcript: Vec<(BitVec, BitVec)>,
}

/// Ancestor lookup table: `get(l, v)` is the level-`l` ancestor of vertex
/// `v`, or 0 when it does not exist or is not yet known. Rows cover levels
/// `0..max_level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncestorTable {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl AncestorTable {
    #[must_use]
    pub fn new(n: usize, levels: usize) -> Self {
        Self {
            n,
            rows: vec![vec![0; n]; levels],
        }
    }

    #[must_use]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of level rows (the maximum level of the graph).
    #[must_use]
    pub fn levels(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn get(&self, level: usize, v: usize) -> usize {
        self.rows[level][v - 1]
    }

    pub fn set(&mut self, level: usize, v: usize, ancestor: usize) {
        self.rows[level][v - 1] = ancestor;
    }

    /// Reads the parent array off the table: the parent of a vertex on
    /// level `l > 0` is its `(l-1)`-ancestor.
    pub fn parents(&self, lvl: &LevelAssignment) -> Result<Vec<usize>, SolveError> {
        (1..=self.n)
            .map(|v| {
                let level = lvl.level(v);
                if level == 0 {
                    Ok(0)
                } else {
                    match self.get(level - 1, v) {
                        0 => Err(SolveError::InconsistentInstance),
                        p => Ok(p),
                    }
                }
            })
            .collect()
    }
}

/// A deterministic sink-finding algorithm in the vertex-evaluation model.
pub trait SinkFinder {
    fn find_sink(&self, oracle: &mut dyn VertexEvalOracle) -> Result<SolveReport, SolveError>;
}

/// A deterministic algorithm for the hidden-matrix problem: find `x` with
/// `Mx = y` using matrix-vector queries.
pub trait MxySolver {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError>;
}

impl<T: SinkFinder + ?Sized> SinkFinder for &T {
    fn find_sink(&self, oracle: &mut dyn VertexEvalOracle) -> Result<SolveReport, SolveError> {
        (**self).find_sink(oracle)
    }
}

impl<T: MxySolver + ?Sized> MxySolver for &T {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError> {
        (**self).solve_mxy(oracle)
    }
}

impl<T: SinkFinder + ?Sized> SinkFinder for Box<T> {
    fn find_sink(&self, oracle: &mut dyn VertexEvalOracle) -> Result<SolveReport, SolveError> {
        (**self).find_sink(oracle)
    }
}

impl<T: MxySolver + ?Sized> MxySolver for Box<T> {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError> {
        (**self).solve_mxy(oracle)
    }
}

/// `ceil(log2(n))` with the convention `ceil_log2(1) = 0`.
#[must_use]
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    if n == 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `floor(log2(n))` for `n >= 1`.
#[must_use]
pub fn floor_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_report_serializes_with_bit_strings() {
        let report = SolveReport {
            answer: "010".parse().unwrap(),
            queries_used: 1,
            transcript: vec![("111".parse().unwrap(), "101".parse().unwrap())],
        };
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["answer"], "010");
        assert_eq!(json["queries_used"], 1);
        assert_eq!(json["transcript"][0][0], "111");
        assert_eq!(json["transcript"][0][1], "101");
    }

    #[test]
    fn log_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(ceil_log2(1024), 10);
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(63), 5);
        assert_eq!(floor_log2(64), 6);
    }
}
