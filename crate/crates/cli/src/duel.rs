//! Solver-versus-adversary duels in the matrix-vector model.
//!
//! A duel runs one solver against an adaptive oracle, audits the adversary
//! after every answered query, and judges the outcome against the final
//! matrix using the oracle counter only. The verdict never trusts the
//! solver's self-report.

use matuso::adversaries::{GeneralAdversary, GoodPathsAdversary, PathEvent, RowAddition};
use matuso::dig;
use matuso::gf2::{BitMatrix, BitVec};
use matuso::uso::MxyOracle;
use serde::Serialize;

use crate::registry::{AdversaryId, SolverId};

#[derive(Clone, Debug, Serialize)]
pub struct DuelVerdict {
    pub n: usize,
    pub solver: String,
    pub adversary: String,
    pub seed: u64,
    /// Matrix-vector queries consumed, from the adversary's counter.
    pub queries: usize,
    pub answer: Option<BitVec>,
    pub answer_correct: bool,
    pub audits_run: usize,
    pub audits_passed: bool,
    /// Queries any correct solver must spend against this adversary.
    pub lower_bound: usize,
    pub bound_respected: bool,
    pub solver_error: Option<String>,
    pub transcript: Vec<(BitVec, BitVec)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub row_additions: Vec<RowAddition>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub path_events: Vec<PathEvent>,
    pub final_matrix: BitMatrix,
}

impl DuelVerdict {
    /// Overall pass: audits held and a correct answer arrived no earlier
    /// than the lower bound allows.
    #[must_use]
    pub fn passed(&self) -> bool {
        self.audits_passed && self.answer_correct && self.bound_respected
    }
}

struct AuditedGeneral {
    adv: GeneralAdversary,
    audits_run: usize,
    audit_failures: usize,
}

impl MxyOracle for AuditedGeneral {
    fn n(&self) -> usize {
        self.adv.n()
    }
    fn target(&self) -> &BitVec {
        self.adv.target()
    }
    fn query(&mut self, q: &BitVec) -> BitVec {
        let r = self.adv.query(q);
        if self.adv.accepted_queries() + 1 < self.adv.n() {
            self.audits_run += 1;
            match self.adv.uncertainty_audit() {
                Ok(true) => {}
                _ => self.audit_failures += 1,
            }
        }
        r
    }
    fn query_count(&self) -> usize {
        self.adv.query_count()
    }
    fn transcript(&self) -> &[(BitVec, BitVec)] {
        self.adv.transcript()
    }
}

struct AuditedGoodPaths {
    adv: GoodPathsAdversary,
    audits_run: usize,
    audit_failures: usize,
}

impl MxyOracle for AuditedGoodPaths {
    fn n(&self) -> usize {
        self.adv.n()
    }
    fn target(&self) -> &BitVec {
        self.adv.target()
    }
    fn query(&mut self, q: &BitVec) -> BitVec {
        let r = self.adv.query(q);
        self.audits_run += 1;
        if !self.adv.audit() {
            self.audit_failures += 1;
        }
        // While a good path and a second path remain, a disagreeing twin
        // instance must exist and replay the transcript exactly.
        if let Some((alt, alt_solution)) = self.adv.indistinguishable_alternative() {
            let consistent = dig::is_realizable_dig(&alt).unwrap_or(false)
                && self
                    .adv
                    .transcript()
                    .iter()
                    .all(|(past_q, past_r)| &alt.mul_vec(past_q) == past_r)
                && alt.mul_vec(&alt_solution) == *self.adv.target()
                && alt_solution != self.adv.solution();
            if !consistent {
                self.audit_failures += 1;
            }
        }
        r
    }
    fn query_count(&self) -> usize {
        self.adv.query_count()
    }
    fn transcript(&self) -> &[(BitVec, BitVec)] {
        self.adv.transcript()
    }
}

/// Runs one duel. The seed feeds randomized solvers; adversaries are
/// deterministic.
#[must_use]
pub fn run_duel(solver_id: SolverId, adversary_id: AdversaryId, n: usize, seed: u64) -> DuelVerdict {
    let solver = solver_id.mxy_solver(seed);
    match adversary_id {
        AdversaryId::General => {
            let mut oracle = AuditedGeneral {
                adv: GeneralAdversary::new(n),
                audits_run: 0,
                audit_failures: 0,
            };
            let outcome = solver.solve_mxy(&mut oracle);
            let queries = oracle.adv.query_count();
            let (answer, solver_error) = match outcome {
                Ok(report) => (Some(report.answer), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let answer_correct = answer
                .as_ref()
                .is_some_and(|x| oracle.adv.matrix().mul_vec(x) == *oracle.adv.target());
            let lower_bound = adversary_id.lower_bound(n);
            DuelVerdict {
                n,
                solver: solver_id.name().into(),
                adversary: adversary_id.name().into(),
                seed,
                queries,
                answer,
                answer_correct,
                audits_run: oracle.audits_run,
                audits_passed: oracle.audit_failures == 0,
                lower_bound,
                bound_respected: !answer_correct || queries >= lower_bound,
                solver_error,
                transcript: oracle.adv.transcript().to_vec(),
                row_additions: oracle.adv.row_additions().to_vec(),
                path_events: Vec::new(),
                final_matrix: oracle.adv.matrix().clone(),
            }
        }
        AdversaryId::GoodPaths => {
            let mut oracle = AuditedGoodPaths {
                adv: GoodPathsAdversary::new(n),
                audits_run: 0,
                audit_failures: 0,
            };
            let outcome = solver.solve_mxy(&mut oracle);
            let queries = oracle.adv.query_count();
            let (answer, solver_error) = match outcome {
                Ok(report) => (Some(report.answer), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let answer_correct = answer
                .as_ref()
                .is_some_and(|x| oracle.adv.matrix().mul_vec(x) == *oracle.adv.target());
            let lower_bound = adversary_id.lower_bound(n);
            DuelVerdict {
                n,
                solver: solver_id.name().into(),
                adversary: adversary_id.name().into(),
                seed,
                queries,
                answer,
                answer_correct,
                audits_run: oracle.audits_run,
                audits_passed: oracle.audit_failures == 0,
                lower_bound,
                bound_respected: !answer_correct || queries >= lower_bound,
                solver_error,
                transcript: oracle.adv.transcript().to_vec(),
                row_additions: Vec::new(),
                path_events: oracle.adv.events().to_vec(),
                final_matrix: oracle.adv.matrix().clone(),
            }
        }
    }
}
