//! The general adaptive adversary.
//!
//! Starts from the identity matrix. While fewer than `n - 1` independent
//! queries have been answered, it checks whether answering the newest query
//! honestly would let the solver combine the replies into the target `y`;
//! if so, it first patches the matrix by adding a correction vector `z` to
//! a row `j` chosen among the free variables of the query system. `z` is
//! orthogonal to every earlier query, so old replies stay valid, and column
//! `j` of the matrix is still a unit column, so row additions only create
//! edges into a sink of the influence graph and the matrix stays legal.
//! Past the budget the adversary freezes and answers honestly.

use serde::Serialize;

use crate::dig;
use crate::gf2::{self, BitMatrix, BitVec};
use crate::uso::MxyOracle;

use super::AdversaryError;

/// One structural change: `z` was xored into row `row` while answering the
/// query numbered `at_query` (1-based position in the transcript).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowAddition {
    pub at_query: usize,
    pub row: usize,
    pub z: BitVec,
}

#[derive(Clone, Debug)]
pub struct GeneralAdversary {
    y: BitVec,
    matrix: BitMatrix,
    accepted: Vec<BitVec>,
    replies: Vec<BitVec>,
    transcript: Vec<(BitVec, BitVec)>,
    row_additions: Vec<RowAddition>,
}

impl GeneralAdversary {
    /// Adversary with the default target `y = 1`.
    #[must_use]
    pub fn new(n: usize) -> Self {
        Self::with_target(BitVec::ones(n))
    }

    /// # Panics
    /// Panics on an empty target.
    #[must_use]
    pub fn with_target(y: BitVec) -> Self {
        assert!(!y.is_empty(), "target must have positive dimension");
        let n = y.len();
        Self {
            y,
            matrix: BitMatrix::identity(n),
            accepted: Vec::new(),
            replies: Vec::new(),
            transcript: Vec::new(),
            row_additions: Vec::new(),
        }
    }

    /// Number of linearly independent queries answered so far.
    #[must_use]
    pub fn accepted_queries(&self) -> usize {
        self.accepted.len()
    }

    #[must_use]
    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    #[must_use]
    pub fn row_additions(&self) -> &[RowAddition] {
        &self.row_additions
    }

    /// The solution of the current matrix.
    #[must_use]
    pub fn solution(&self) -> BitVec {
        gf2::solve(&self.matrix, &self.y).expect("legal matrices are invertible")
    }

    fn column_is_unit(&self, j: usize) -> bool {
        let n = self.y.len();
        (1..=n).all(|i| self.matrix.get(i, j) == (i == j))
    }

    fn respond(&mut self, x: &BitVec) -> BitVec {
        let n = self.y.len();
        // Dependent queries are answered by linearity and consume no budget.
        if let Some(coeff) = gf2::express_in_span(&self.accepted, x) {
            let mut reply = BitVec::zeros(n);
            for (i, r) in self.replies.iter().enumerate() {
                if coeff.get(i + 1) {
                    reply.xor_assign(r);
                }
            }
            return reply;
        }
        if self.accepted.len() >= n - 1 {
            return self.matrix.mul_vec(x);
        }
        self.accepted.push(x.clone());
        let k = self.accepted.len();
        let candidate = self.matrix.mul_vec(x);
        let mut given = self.replies.clone();
        given.push(candidate);
        if gf2::span_contains(&given, &self.y) {
            let queries = BitMatrix::new(self.accepted.clone(), n);
            let free = gf2::free_variables(&queries);
            let z = gf2::solve_underdetermined(&queries, &BitVec::unit(k, k), &free)
                .expect("independent rows make the selector system consistent");
            let j = free
                .iter()
                .copied()
                .find(|&j| self.column_is_unit(j))
                .expect("free variables keep unit columns");
            assert!(self.column_is_unit(j), "chosen row must be a sink");
            self.matrix.row_mut(j).xor_assign(&z);
            self.row_additions.push(RowAddition {
                at_query: self.transcript.len() + 1,
                row: j,
                z,
            });
        }
        let reply = self.matrix.mul_vec(x);
        self.replies.push(reply.clone());
        reply
    }

    /// Verifies that the solver still cannot know the solution: the target
    /// is outside the span of the replies, and feeding the current
    /// solution as one more query yields a second matrix that is legal,
    /// agrees with the whole transcript, and has a different solution.
    pub fn uncertainty_audit(&self) -> Result<bool, AdversaryError> {
        let n = self.y.len();
        if self.accepted.len() + 1 >= n {
            return Err(AdversaryError::AuditPastBudget {
                answered: self.accepted.len(),
                n,
            });
        }
        if gf2::span_contains(&self.replies, &self.y) {
            return Ok(false);
        }
        let probe = self.solution();
        let mut fork = self.clone();
        fork.respond(&probe);
        let second = fork.matrix;
        if !dig::is_legal_dig(&second) {
            return Ok(false);
        }
        for (q, r) in &self.transcript {
            if &second.mul_vec(q) != r {
                return Ok(false);
            }
        }
        // `probe` solves the current matrix; the fork must not agree on it.
        Ok(second.mul_vec(&probe) != self.y)
    }
}

impl MxyOracle for GeneralAdversary {
    fn n(&self) -> usize {
        self.y.len()
    }

    fn target(&self) -> &BitVec {
        &self.y
    }

    fn query(&mut self, q: &BitVec) -> BitVec {
        let reply = self.respond(q);
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

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    #[test]
    fn first_unit_query_stays_honest() {
        // span{e_1} does not contain the all-ones target, so no change.
        let mut adv = GeneralAdversary::new(3);
        assert_eq!(adv.query(&bv("100")), bv("100"));
        assert!(adv.row_additions().is_empty());
        assert_eq!(adv.matrix(), &BitMatrix::identity(3));
    }

    #[test]
    fn spanning_query_forces_a_matrix_change() {
        let mut adv = GeneralAdversary::with_target(bv("11"));
        let reply = adv.query(&bv("11"));
        assert_eq!(adv.row_additions().len(), 1);
        assert_ne!(reply, bv("11"), "reply must avoid the target");
        assert!(dig::is_legal_dig(adv.matrix()));
        assert!(adv.uncertainty_audit().unwrap_or(true));
    }

    #[test]
    fn dependent_queries_reuse_replies() {
        let mut adv = GeneralAdversary::new(4);
        let r1 = adv.query(&bv("1100"));
        let r2 = adv.query(&bv("0110"));
        assert_eq!(adv.accepted_queries(), 2);
        let dependent = adv.query(&bv("1010"));
        assert_eq!(adv.accepted_queries(), 2);
        assert_eq!(dependent, r1.xor(&r2));
        assert_eq!(adv.query_count(), 3);
    }

    #[test]
    fn fresh_adversary_audit_holds() {
        let adv = GeneralAdversary::new(3);
        assert!(adv.uncertainty_audit().unwrap());
    }

    #[test]
    fn audit_defined_only_before_budget() {
        let mut adv = GeneralAdversary::new(2);
        assert!(adv.uncertainty_audit().unwrap());
        let _ = adv.query(&bv("10"));
        // One accepted query reaches the n-1 budget for n = 2.
        assert!(matches!(
            adv.uncertainty_audit(),
            Err(AdversaryError::AuditPastBudget { .. })
        ));
    }

    #[test]
    fn replay_stays_consistent_through_changes() {
        let mut adv = GeneralAdversary::new(5);
        let queries = [bv("11111"), bv("10000"), bv("01100"), bv("00011")];
        for q in &queries {
            let _ = adv.query(q);
            assert!(dig::is_legal_dig(adv.matrix()));
            for (past_q, past_r) in adv.transcript().to_vec() {
                assert_eq!(adv.matrix().mul_vec(&past_q), past_r);
            }
        }
    }

    #[test]
    fn frozen_phase_answers_from_the_final_matrix() {
        let n = 3;
        let mut adv = GeneralAdversary::new(n);
        let _ = adv.query(&bv("100"));
        let _ = adv.query(&bv("010"));
        // Budget n-1 = 2 reached; the next independent query is honest.
        let final_matrix = adv.matrix().clone();
        let r = adv.query(&bv("001"));
        assert_eq!(r, final_matrix.mul_vec(&bv("001")));
        assert_eq!(adv.matrix(), &final_matrix);
    }
}
