//! Adaptive lower-bound oracles.
//!
//! Both adversaries answer matrix-vector queries while reshaping the hidden
//! matrix behind the solver's back, keeping every past reply valid. The
//! general adversary keeps the solution out of the span of the replies for
//! as long as linear algebra allows; the good-paths adversary maintains a
//! union of disjoint paths and forces a logarithmic number of queries on
//! realizable instances. Each carries an auditor that re-derives the
//! claimed invariants from the recorded state.

mod general;
mod good_paths;

pub use general::{GeneralAdversary, RowAddition};
pub use good_paths::{GoodPathsAdversary, PathEvent};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdversaryError {
    #[error("uncertainty audit is defined only while fewer than n-1 queries are answered (answered {answered}, n = {n})")]
    AuditPastBudget { answered: usize, n: usize },
}
