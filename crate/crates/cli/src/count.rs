//! Exact counting of small structures, cross-checked against the closed
//! formula `2^n * (n+1)^(n-1)` for realizable instances.

use matuso::dig::{enumerate_branchings, enumerate_legal_digs};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub n: usize,
    pub branchings: usize,
    pub legal_digs: usize,
    pub realizable_usos: usize,
    pub total_usos: usize,
    pub formula_realizable: usize,
    pub formula_matches: bool,
}

pub fn count(n: usize) -> anyhow::Result<CountReport> {
    anyhow::ensure!((1..=4).contains(&n), "counting supports n in 1..=4");
    let branchings = enumerate_branchings(n)?.len();
    let legal_digs = enumerate_legal_digs(n)?.len();
    let realizable_usos = branchings << n;
    let total_usos = legal_digs << n;
    let formula_realizable = (1usize << n) * (n + 1).pow(n as u32 - 1);
    Ok(CountReport {
        n,
        branchings,
        legal_digs,
        realizable_usos,
        total_usos,
        formula_realizable,
        formula_matches: realizable_usos == formula_realizable,
    })
}
