//! Structural verification of instances: orientation consistency, unique
//! sink per face, the parallel outmap law, and realizability.

use matuso::dig::{enumerate_legal_digs, is_realizable_dig};
use matuso::gf2::BitVec;
use matuso::uso::{
    check_orientation_consistency, find_parallel_violation, find_uso_violation, MatousekUso,
};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub instances: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    #[must_use]
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, outcome: Result<(), String>) -> CheckResult {
    match outcome {
        Ok(()) => CheckResult {
            check: name.into(),
            passed: true,
            detail: None,
        },
        Err(detail) => CheckResult {
            check: name.into(),
            passed: false,
            detail: Some(detail),
        },
    }
}

/// Runs all structural checks against one instance.
#[must_use]
pub fn verify_instance(uso: &MatousekUso) -> VerifyReport {
    let n = uso.n();
    let mut checks = Vec::new();

    checks.push(check(
        "orientation-consistency",
        if check_orientation_consistency(|v| uso.outmap(v), n) {
            Ok(())
        } else {
            Err("an edge leaves both of its endpoints".into())
        },
    ));

    checks.push(check(
        "unique-sink-per-face",
        match find_uso_violation(|v| uso.outmap(v), n) {
            Ok(None) => Ok(()),
            Ok(Some(v)) => Err(format!(
                "face free={} fixed={} has {} sinks",
                v.free, v.fixed, v.sinks
            )),
            Err(e) => Err(e.to_string()),
        },
    ));

    checks.push(check(
        "parallel-outmap-law",
        match find_parallel_violation(uso) {
            None => Ok(()),
            Some((x, y)) => Err(format!("law fails for vertices {x} and {y}")),
        },
    ));

    let realizable = is_realizable_dig(uso.matrix()).unwrap_or(false);
    checks.push(CheckResult {
        check: "realizable".into(),
        passed: true,
        detail: Some(if realizable { "yes".into() } else { "no".into() }),
    });

    VerifyReport {
        n,
        instances: 1,
        checks,
    }
}

/// Sweeps every legal graph and every sink location of dimension `n`.
pub fn verify_exhaustive(n: usize) -> anyhow::Result<VerifyReport> {
    anyhow::ensure!(
        (1..=4).contains(&n),
        "exhaustive verification supports n in 1..=4"
    );
    let digs = enumerate_legal_digs(n)?;
    let mut instances = 0usize;
    for dig in &digs {
        for s in 0..1usize << n {
            let uso = MatousekUso::new(dig.adj().clone(), BitVec::from_index(n, s))?;
            instances += 1;
            let report = verify_instance(&uso);
            if !report.all_passed() {
                let mut checks = report.checks;
                checks.insert(
                    0,
                    CheckResult {
                        check: "exhaustive-sweep".into(),
                        passed: false,
                        detail: Some(format!("failure at matrix\n{}\nsink {}", dig.adj(), s)),
                    },
                );
                return Ok(VerifyReport {
                    n,
                    instances,
                    checks,
                });
            }
        }
    }
    Ok(VerifyReport {
        n,
        instances,
        checks: vec![CheckResult {
            check: "exhaustive-sweep".into(),
            passed: true,
            detail: Some(format!("{instances} instances verified")),
        }],
    })
}
