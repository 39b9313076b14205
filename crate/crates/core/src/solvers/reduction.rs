//! Query-preserving reductions between the two oracle models.
//!
//! Any two outmaps of an instance differ by `M` applied to the vertex
//! difference, so one anchor evaluation turns a vertex oracle into a
//! matrix-vector oracle and vice versa. Wrapping a hidden-matrix solver
//! yields a sink finder using one extra evaluation; wrapping a sink finder
//! yields a hidden-matrix solver using one evaluation less.

use crate::gf2::BitVec;
use crate::uso::{MxyOracle, VertexEvalOracle};

use super::{MxySolver, SinkFinder, SolveError, SolveReport};

/// Sink finder built from a hidden-matrix solver: evaluate the anchor
/// vertex (all zeros) to fix the target `y = o(0)`, then serve each
/// matrix-vector query `q` as `o(0) xor o(q)`. The solver's answer is the
/// sink itself.
#[derive(Clone, Debug, Default)]
pub struct SinkFinderFromMxy<B> {
    inner: B,
}

impl<B> SinkFinderFromMxy<B> {
    pub fn new(inner: B) -> Self {
        Self { inner }
    }
}

struct MxyFromVertex<'a> {
    vertex: &'a mut dyn VertexEvalOracle,
    y: BitVec,
    transcript: Vec<(BitVec, BitVec)>,
}

impl MxyOracle for MxyFromVertex<'_> {
    fn n(&self) -> usize {
        self.vertex.n()
    }

    fn target(&self) -> &BitVec {
        &self.y
    }

    fn query(&mut self, q: &BitVec) -> BitVec {
        let reply = self.y.xor(&self.vertex.query(q));
        self.transcript.push((q.clone(), reply.clone()));
        reply
    }

    fn query_count(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &[(BitVec, BitVec)] {
        &self.transcript
    }
}

impl<B: MxySolver> SinkFinder for SinkFinderFromMxy<B> {
    fn find_sink(&self, oracle: &mut dyn VertexEvalOracle) -> Result<SolveReport, SolveError> {
        let n = oracle.n();
        let before = oracle.query_count();
        let t0 = oracle.transcript().len();
        let y = oracle.query(&BitVec::zeros(n));
        let mut sim = MxyFromVertex {
            vertex: oracle,
            y,
            transcript: Vec::new(),
        };
        let inner_report = self.inner.solve_mxy(&mut sim)?;
        Ok(SolveReport {
            answer: inner_report.answer,
            queries_used: oracle.query_count() - before,
            transcript: oracle.transcript()[t0..].to_vec(),
        })
    }
}

/// Hidden-matrix solver built from a sink finder: the first vertex the
/// finder evaluates becomes the anchor `v0` with outmap `y`; every later
/// evaluation of `v` is served as `y xor M(v xor v0)` at the cost of one
/// matrix-vector query. The sink `s` translates back to the solution
/// `x = s xor v0`.
#[derive(Clone, Debug, Default)]
pub struct MxySolverFromSinkFinder<A> {
    inner: A,
}

impl<A> MxySolverFromSinkFinder<A> {
    pub fn new(inner: A) -> Self {
        Self { inner }
    }
}

struct VertexFromMxy<'a> {
    mxy: &'a mut dyn MxyOracle,
    y: BitVec,
    anchor: Option<BitVec>,
    transcript: Vec<(BitVec, BitVec)>,
}

impl VertexEvalOracle for VertexFromMxy<'_> {
    fn n(&self) -> usize {
        self.mxy.n()
    }

    fn query(&mut self, v: &BitVec) -> BitVec {
        let reply = match &self.anchor {
            None => {
                self.anchor = Some(v.clone());
                self.y.clone()
            }
            Some(v0) => self.y.xor(&self.mxy.query(&v.xor(v0))),
        };
        self.transcript.push((v.clone(), reply.clone()));
        reply
    }

    fn query_count(&self) -> usize {
        self.transcript.len()
    }

    fn transcript(&self) -> &[(BitVec, BitVec)] {
        &self.transcript
    }
}

impl<A: SinkFinder> MxySolver for MxySolverFromSinkFinder<A> {
    fn solve_mxy(&self, oracle: &mut dyn MxyOracle) -> Result<SolveReport, SolveError> {
        let n = oracle.n();
        let before = oracle.query_count();
        let t0 = oracle.transcript().len();
        let y = oracle.target().clone();
        let mut sim = VertexFromMxy {
            mxy: oracle,
            y,
            anchor: None,
            transcript: Vec::new(),
        };
        let inner_report = self.inner.find_sink(&mut sim)?;
        let anchor = sim.anchor.unwrap_or_else(|| BitVec::zeros(n));
        Ok(SolveReport {
            answer: inner_report.answer.xor(&anchor),
            queries_used: oracle.query_count() - before,
            transcript: oracle.transcript()[t0..].to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dig::Branching;
    use crate::gf2::BitMatrix;
    use crate::solvers::{JumpAntipodal, NaiveRecovery};
    use crate::uso::{MatousekUso, MatrixOracle, UsoOracle};

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn wrapped_naive_recovery_uses_n_plus_one_evaluations() {
        let m = Branching::from_parents(vec![0, 1, 0, 2]).unwrap().closure().into_adj();
        let uso = MatousekUso::new(m, bv("0101")).unwrap();
        let mut oracle = UsoOracle::new(uso.clone());
        let finder = SinkFinderFromMxy::new(NaiveRecovery);
        let report = finder.find_sink(&mut oracle).unwrap();
        assert_eq!(report.answer, *uso.sink());
        assert_eq!(report.queries_used, 5);
    }

    #[test]
    fn wrapped_jump_uses_one_query_less() {
        let m = Branching::from_parents(vec![0, 1, 2]).unwrap().closure().into_adj();
        let y = bv("110");
        let mut oracle = MatrixOracle::new(m.clone(), y.clone());
        let solver = MxySolverFromSinkFinder::new(JumpAntipodal::default());
        let report = solver.solve_mxy(&mut oracle).unwrap();
        assert_eq!(m.mul_vec(&report.answer), y);
        assert!(report.queries_used <= 2);
    }

    #[test]
    fn identity_instance_maps_target_to_itself() {
        let y = bv("1010");
        let mut oracle = MatrixOracle::new(BitMatrix::identity(4), y.clone());
        let solver = MxySolverFromSinkFinder::new(JumpAntipodal::default());
        let report = solver.solve_mxy(&mut oracle).unwrap();
        assert_eq!(report.answer, y);
    }

    #[test]
    fn double_wrap_preserves_queries_and_answers() {
        for n in 1..=3 {
            for seed in 0..5u64 {
                let uso = MatousekUso::random_general(n, seed);
                let y = BitVec::ones(n);

                let mut direct = MatrixOracle::new(uso.matrix().clone(), y.clone());
                let direct_report = NaiveRecovery.solve_mxy(&mut direct).unwrap();

                let mut wrapped = MatrixOracle::new(uso.matrix().clone(), y.clone());
                let round_trip =
                    MxySolverFromSinkFinder::new(SinkFinderFromMxy::new(NaiveRecovery));
                let wrapped_report = round_trip.solve_mxy(&mut wrapped).unwrap();

                assert_eq!(wrapped_report.answer, direct_report.answer);
                assert_eq!(wrapped_report.queries_used, direct_report.queries_used);
            }
        }
    }
}
