//! Acceptance suite: one test per headline guarantee, each printing a
//! PASS line when its criterion holds at the stated tolerance.
//!
//! Run with `cargo test -p matuso-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use matuso::adversaries::GeneralAdversary;
use matuso::dig::{enumerate_branchings, enumerate_legal_digs, is_realizable_dig, Branching};
use matuso::gf2::{BitMatrix, BitVec};
use matuso::solvers::{
    ceil_log2, divide_and_conquer, floor_log2, jump_antipodal, levelling, solve_realizable_sink,
    JumpAntipodal, MxySolver, MxySolverFromSinkFinder, NaiveRecovery, RandomProbe, SinkFinder,
    SinkFinderFromMxy,
};
use matuso::uso::{
    check_parallel_law, check_uso, MatousekUso, MatrixOracle, MxyOracle, UsoOracle,
    VertexEvalOracle,
};

use matuso_cli::bench::{csv_string, read_csv, run_instance_bench};
use matuso_cli::duel::run_duel;
use matuso_cli::registry::{AdversaryId, InstanceClass, SolverId};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_instances(n: usize) -> Vec<MatousekUso> {
    let mut out = Vec::new();
    for dig in enumerate_legal_digs(n).unwrap() {
        for s in 0..1usize << n {
            out.push(MatousekUso::new(dig.adj().clone(), BitVec::from_index(n, s)).unwrap());
        }
    }
    out
}

#[test]
fn criterion_01_jump_antipodal_upper_bound() {
    // Exhaustive: every instance for n <= 4.
    let mut exhaustive = 0usize;
    for n in 1..=4 {
        for uso in all_instances(n) {
            let sink = uso.sink().clone();
            let mut oracle = UsoOracle::new(uso);
            let report = jump_antipodal(&mut oracle, &BitVec::ones(n)).unwrap();
            assert_eq!(report.answer, sink, "wrong sink at n={n}");
            assert!(oracle.query_count() <= n, "budget exceeded at n={n}");
            exhaustive += 1;
        }
    }
    assert_eq!(exhaustive, 2 + 12 + 200 + 8688);

    // Randomized: 1000 instances per dimension in 5..=10.
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for n in 5..=10 {
        for _ in 0..1000 {
            let uso = MatousekUso::random_general_with(n, &mut rng);
            let sink = uso.sink().clone();
            let start = BitVec::random(n, &mut rng);
            let mut oracle = UsoOracle::new(uso);
            let report = jump_antipodal(&mut oracle, &start).unwrap();
            assert_eq!(report.answer, sink);
            assert!(oracle.query_count() <= n);
        }
    }
    println!("[acceptance] criterion 1 (sink in <= n evaluations, exhaustive n<=4 and random n<=10): PASS");
}

/// Audits after every answered query while the budget allows.
struct AuditedOracle {
    adv: GeneralAdversary,
    failures: usize,
}

impl MxyOracle for AuditedOracle {
    fn n(&self) -> usize {
        self.adv.n()
    }
    fn target(&self) -> &BitVec {
        self.adv.target()
    }
    fn query(&mut self, q: &BitVec) -> BitVec {
        let r = self.adv.query(q);
        if self.adv.accepted_queries() + 1 < self.adv.n() {
            if !self.adv.uncertainty_audit().unwrap() {
                self.failures += 1;
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

#[test]
fn criterion_02_general_adversary_uncertainty() {
    for n in 2..=8 {
        let mut solvers: Vec<Box<dyn MxySolver>> = vec![
            Box::new(NaiveRecovery),
            Box::new(MxySolverFromSinkFinder::new(JumpAntipodal::default())),
        ];
        for seed in 0..100 {
            solvers.push(Box::new(RandomProbe { seed }));
        }
        for solver in &solvers {
            let mut oracle = AuditedOracle {
                adv: GeneralAdversary::new(n),
                failures: 0,
            };
            let report = solver.solve_mxy(&mut oracle).unwrap();
            assert_eq!(oracle.failures, 0, "audit failure at n={n}");
            assert_eq!(
                oracle.adv.matrix().mul_vec(&report.answer),
                *oracle.adv.target(),
                "incorrect final answer at n={n}"
            );
        }
    }
    println!("[acceptance] criterion 2 (general adversary: uncertainty audit after every early query): PASS");
}

fn realizable_pool(n: usize, count: usize, seed: u64) -> Vec<Branching> {
    (0..count as u64)
        .map(|k| Branching::random(n, seed.wrapping_add(k)))
        .collect()
}

#[test]
fn criterion_03_levelling() {
    for n in 1..=6 {
        for b in enumerate_branchings(n).unwrap() {
            let mut oracle = MatrixOracle::new(b.closure().into_adj(), BitVec::ones(n));
            let lvl = levelling(&mut oracle);
            assert_eq!(oracle.query_count(), ceil_log2(n), "query count at n={n}");
            assert_eq!(lvl.as_slice(), &b.depths()[..], "levels at n={n}");
        }
    }
    for n in [16usize, 64, 256, 1024, 4096] {
        for b in realizable_pool(n, 100, 0xACCE_0003) {
            let mut oracle = MatrixOracle::new(b.closure().into_adj(), BitVec::ones(n));
            let lvl = levelling(&mut oracle);
            assert_eq!(oracle.query_count(), ceil_log2(n), "query count at n={n}");
            assert_eq!(lvl.as_slice(), &b.depths()[..], "levels at n={n}");
        }
    }
    println!("[acceptance] criterion 3 (levelling: exactly ceil(log2 n) queries, exact levels): PASS");
}

#[test]
fn criterion_04_divide_and_conquer() {
    let check = |b: &Branching, n: usize| {
        let mut oracle = MatrixOracle::new(b.closure().into_adj(), BitVec::ones(n));
        let lvl = levelling(&mut oracle);
        let spent = oracle.query_count();
        let table = divide_and_conquer(&mut oracle, &lvl).unwrap();
        let lmax = lvl.max_level();
        assert!(
            oracle.query_count() - spent <= ceil_log2(n) * ceil_log2(lmax + 1),
            "query bound at n={n}"
        );
        assert_eq!(
            table.parents(&lvl).unwrap(),
            b.parents(),
            "branching reconstruction at n={n}"
        );
    };
    for n in 1..=6 {
        for b in enumerate_branchings(n).unwrap() {
            check(&b, n);
        }
    }
    for n in [16usize, 64, 256, 1024, 4096] {
        for b in realizable_pool(n, 100, 0xACCE_0004) {
            check(&b, n);
        }
    }
    println!("[acceptance] criterion 4 (divide-and-conquer: exact reconstruction within the log^2 budget): PASS");
}

#[test]
fn criterion_05_realizable_upper_bound() {
    // Direct runs across sizes.
    for n in [16usize, 64, 256, 1024] {
        let budget = 1 + ceil_log2(n) + ceil_log2(n) * ceil_log2(n);
        for seed in 0..25u64 {
            let (uso, _) = MatousekUso::random_realizable(n, 0xACCE_0005 + seed);
            let sink = uso.sink().clone();
            let mut oracle = UsoOracle::new(uso);
            let report = solve_realizable_sink(&mut oracle).unwrap();
            assert_eq!(report.answer, sink);
            assert!(
                oracle.query_count() <= budget,
                "n={n}: {} > {budget}",
                oracle.query_count()
            );
        }
    }
    // The numeric gap, recorded through the bench CSV path.
    let rows = run_instance_bench(
        SolverId::RealizableLog2,
        InstanceClass::Realizable,
        &[1024],
        20,
        0xACCE_0005,
    )
    .unwrap();
    let csv = csv_string(&rows).unwrap();
    let parsed = read_csv(csv.as_bytes()).unwrap();
    assert_eq!(parsed, rows, "CSV round trip must be lossless");
    let row = &parsed[0];
    assert_eq!(row.n, 1024);
    assert!(row.max_queries <= 111, "max {} > 111", row.max_queries);
    assert!(row.bound_respected);
    assert!(row.max_queries < 1024, "no gap exhibited");
    println!(
        "[acceptance] criterion 5 (realizable sink in <= 1 + log + log^2 evaluations; n=1024 max {} <= 111): PASS",
        row.max_queries
    );
}

#[test]
fn criterion_06_good_paths_lower_bound() {
    for n in [4usize, 16, 64, 256] {
        let mut entries: Vec<(SolverId, u64)> = vec![
            (SolverId::NaiveRecover, 0),
            (SolverId::RealizableLog2, 0),
            (SolverId::JumpAntipodal, 0),
        ];
        for seed in 0..5 {
            entries.push((SolverId::RandomProbe, seed));
        }
        for (solver, seed) in entries {
            let verdict = run_duel(solver, AdversaryId::GoodPaths, n, seed);
            assert!(verdict.audits_passed, "{solver} audit failed at n={n}");
            assert!(verdict.answer_correct, "{solver} answered wrongly at n={n}");
            assert!(
                verdict.queries >= floor_log2(n),
                "{solver} beat the lower bound at n={n}: {} < {}",
                verdict.queries,
                floor_log2(n)
            );
        }
    }
    println!("[acceptance] criterion 6 (good-paths adversary: no solver certifies in < floor(log2 n) queries): PASS");
}

#[test]
fn criterion_07_model_equivalence() {
    for n in 1..=4 {
        for uso in all_instances(n) {
            let sink = uso.sink().clone();
            let mut oracle = UsoOracle::new(uso);
            let finder = SinkFinderFromMxy::new(NaiveRecovery);
            let report = finder.find_sink(&mut oracle).unwrap();
            assert_eq!(report.answer, sink);
            assert_eq!(oracle.query_count(), n + 1, "exactly n+1 evaluations");
        }
    }
    for n in 2..=4 {
        for dig in enumerate_legal_digs(n).unwrap() {
            for y_index in 0..1usize << n {
                let y = BitVec::from_index(n, y_index);
                let mut oracle = MatrixOracle::new(dig.adj().clone(), y.clone());
                let solver = MxySolverFromSinkFinder::new(JumpAntipodal::default());
                let report = solver.solve_mxy(&mut oracle).unwrap();
                assert_eq!(dig.adj().mul_vec(&report.answer), y);
                assert!(oracle.query_count() <= n - 1, "more than n-1 queries");
            }
        }
    }
    println!("[acceptance] criterion 7 (model reductions: n+1 evaluations up, n-1 queries down): PASS");
}

#[test]
fn criterion_08_structural_laws() {
    for n in 1..=4 {
        for uso in all_instances(n) {
            assert!(check_parallel_law(&uso));
            assert!(check_uso(|v| uso.outmap(v), n).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0008);
    for n in 5..=8 {
        for _ in 0..1000 {
            let uso = MatousekUso::random_general_with(n, &mut rng);
            assert!(check_parallel_law(&uso));
            assert!(check_uso(|v| uso.outmap(v), n).unwrap());
        }
    }
    // Query bits mark odd in-neighbor counts inside the queried set.
    for _ in 0..1000 {
        let n = 10;
        let uso = MatousekUso::random_general_with(n, &mut rng);
        let q = BitVec::random(n, &mut rng);
        let product = uso.matrix().mul_vec(&q);
        for v in 1..=n {
            let parity = (1..=n)
                .filter(|&u| uso.matrix().get(v, u) && q.get(u))
                .count()
                % 2;
            assert_eq!(product.get(v), parity == 1);
        }
    }
    println!("[acceptance] criterion 8 (parallel law, unique sink per face, in-neighbor parity): PASS");
}

#[test]
fn criterion_09_counting() {
    let mut branchings = Vec::new();
    let mut realizable = Vec::new();
    let mut legal = Vec::new();
    let mut total = Vec::new();
    for n in 1..=4usize {
        let bs = enumerate_branchings(n).unwrap();
        let digs = enumerate_legal_digs(n).unwrap();
        // Distinct closures, counted independently of the branching count.
        let closures: std::collections::HashSet<BitMatrix> =
            bs.iter().map(|b| b.closure().into_adj()).collect();
        assert_eq!(closures.len(), bs.len());
        let formula = (1usize << n) * (n + 1).pow(n as u32 - 1);
        assert_eq!(closures.len() << n, formula, "formula disagrees at n={n}");
        branchings.push(bs.len());
        realizable.push(closures.len() << n);
        legal.push(digs.len());
        total.push(digs.len() << n);
    }
    assert_eq!(branchings, vec![1, 3, 16, 125]);
    assert_eq!(realizable, vec![2, 12, 128, 2000]);
    assert_eq!(legal, vec![1, 3, 25, 543]);
    assert_eq!(total, vec![2, 12, 200, 8688]);
    println!("[acceptance] criterion 9 (counts: branchings, realizable and total orientations, formula agreement): PASS");
}

#[test]
fn criterion_10_realizability_characterization() {
    for n in 1..=4 {
        let closures: std::collections::HashSet<BitMatrix> = enumerate_branchings(n)
            .unwrap()
            .into_iter()
            .map(|b| b.closure().into_adj())
            .collect();
        for dig in enumerate_legal_digs(n).unwrap() {
            assert_eq!(
                is_realizable_dig(dig.adj()).unwrap(),
                closures.contains(dig.adj()),
                "characterization disagrees at n={n} for\n{}",
                dig.adj()
            );
        }
    }
    println!("[acceptance] criterion 10 (realizable iff the closure of some branching, exhaustive n<=4): PASS");
}
