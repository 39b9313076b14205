//! Shared setup for the criterion benchmarks: deterministic instances so
//! runs are comparable across machines.

use matuso::dig::Branching;
use matuso::gf2::BitMatrix;
use matuso::uso::MatousekUso;

/// A realizable instance with a reproducible branching.
#[must_use]
pub fn realizable_instance(n: usize, seed: u64) -> MatousekUso {
    MatousekUso::random_realizable(n, seed).0
}

/// A general instance over an arbitrary legal graph.
#[must_use]
pub fn general_instance(n: usize, seed: u64) -> MatousekUso {
    MatousekUso::random_general(n, seed)
}

/// The closure of a random branching, as a raw matrix for kernel benches.
#[must_use]
pub fn closure_matrix(n: usize, seed: u64) -> BitMatrix {
    Branching::random(n, seed).closure().into_adj()
}
