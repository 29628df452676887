//! Acceptance suite.  Each test covers one criterion, prints a PASS/FAIL
//! line (visible with `--nocapture`), and enforces the stated tolerances
//! and runtime budgets.
//!
//! Criterion 4b is expected to fail: with the published bracket
//! normalization `lower_est(n) = (c_n / n^d)^{1/n}`, the n = 1 bracket
//! degenerates to `c_1 = 7`, which already exceeds the limit value
//! 6.4641..., and the lower envelope dips once more between n = 2 and
//! n = 3 before settling into monotone growth.  The check is kept exactly
//! as stated rather than weakened; see the FAIL message for the observed
//! table.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use pgraded::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(number: &str, label: &str, ok: bool) {
    println!(
        "criterion {number} ({label}): {}",
        if ok { "PASS" } else { "FAIL" }
    );
}

fn setup(q: u32) -> (PSuperalgebra, StructureTable) {
    let alg = PSuperalgebra::build(q).unwrap();
    let table = StructureTable::build(&alg).unwrap();
    (alg, table)
}

#[test]
fn criterion_1_grading_verification() {
    let started = Instant::now();
    let mut ok = true;
    for q in 1..=3 {
        let r = verify_prop1(q).unwrap();
        ok &= r.passed;
        assert!(
            r.passed,
            "prop1 q={q}: {:?}",
            r.failures().collect::<Vec<_>>()
        );
    }
    for q in 1..=2 {
        let alg = PSuperalgebra::build(q).unwrap();
        assert_eq!(alg.dim(), if q == 1 { 7 } else { 31 });
        let r = verify_prop2(&alg).unwrap();
        ok &= r.passed;
        assert!(
            r.passed,
            "prop2 q={q}: {:?}",
            r.failures().collect::<Vec<_>>()
        );
    }
    let elapsed = started.elapsed();
    ok &= elapsed < Duration::from_secs(10);
    report("1", "grading verification", ok);
    assert!(
        elapsed < Duration::from_secs(10),
        "verification took {elapsed:?}, budget 10 s"
    );
}

#[test]
fn criterion_2_superalgebra_axioms() {
    let alg1 = PSuperalgebra::build(1).unwrap();
    let r1 = verify_super_axioms(&alg1, TripleSelection::Exhaustive).unwrap();
    assert!(r1.passed, "q=1: {:?}", r1.failures().collect::<Vec<_>>());

    let alg2 = PSuperalgebra::build(2).unwrap();
    let sel = TripleSelection::Random {
        count: 10_000,
        seed: 0xacce57,
    };
    let r2 = verify_super_axioms(&alg2, sel).unwrap();
    assert!(r2.passed, "q=2: {:?}", r2.failures().collect::<Vec<_>>());

    report("2", "superalgebra axioms", r1.passed && r2.passed);
}

#[test]
fn criterion_3_oracle_equivalence() {
    let started = Instant::now();
    let (alg, table) = setup(1);
    let dp = FeasibilityTable::build(&alg, &table, 6).unwrap();

    for n in 1..=5 {
        for v in compositions(n, alg.dim()) {
            assert_eq!(
                dp.is_feasible(&v).unwrap(),
                brute_force_feasible(&v, &alg).unwrap(),
                "disagreement at {v:?}"
            );
        }
    }

    let all6 = compositions(6, alg.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(0x06ac1e);
    for v in all6.choose_multiple(&mut rng, 200) {
        assert_eq!(
            dp.is_feasible(v).unwrap(),
            brute_force_feasible(v, &alg).unwrap(),
            "disagreement at {v:?}"
        );
    }

    let elapsed = started.elapsed();
    report("3", "DP equals brute-force oracle", true);
    assert!(
        elapsed < Duration::from_secs(300),
        "oracle comparison took {elapsed:?}, budget 5 min"
    );
}

fn golden_codimensions() -> (PSuperalgebra, FeasibilityTable, Vec<(u32, BigUint)>) {
    let (alg, table) = setup(1);
    let dp = FeasibilityTable::build(&alg, &table, 14).unwrap();
    let codims = (1..=14u32)
        .map(|n| (n, dp.graded_codimension(n).unwrap()))
        .collect();
    (alg, dp, codims)
}

#[test]
fn criterion_4a_codimension_exactness_and_bounds() {
    let (alg, dp, codims) = golden_codimensions();
    assert_eq!(codims[0].1, BigUint::from(7u32), "c_1");

    let dim = BigUint::from(7u32);
    for (n, c) in &codims {
        // Dimension bound: c_n <= (2t^2 - 1)^{n+1}.
        assert!(*c <= dim.pow(n + 1), "dimension bound fails at n = {n}");
        // Coarse envelope: c_n <= (n+1)^{d+1} (3 + 2 sqrt 3)^n.
        assert!(
            upper_bound_check(*n, c, 2).unwrap(),
            "exponent envelope fails at n = {n}"
        );
    }

    for n in 1..=14 {
        for v in dp.feasible_at(n) {
            let z = z_degree_of(v, &alg).unwrap();
            assert!(z.abs() <= 1, "Z-degree constraint fails at {v:?}");
            assert!(alg.in_support(&degree_of(v, &alg).unwrap()));
        }
    }

    report("4a", "codimension exactness and bounds", true);
}

#[test]
fn criterion_4b_estimate_brackets_vs_limit() {
    let (_, _, codims) = golden_codimensions();
    let limit = theoretical_exponent(2).unwrap();
    let rep = estimate_exponent(2, &codims).unwrap();

    let contained = rep
        .estimates
        .iter()
        .all(|e| e.lower < limit && limit < e.upper);
    let increasing = rep.estimates.windows(2).all(|w| w[0].lower < w[1].lower);
    let ok = contained && increasing;
    report("4b", "estimate brackets vs limit", ok);

    let table: Vec<String> = rep
        .estimates
        .iter()
        .map(|e| format!("n={}: lower={:.6} upper={:.6}", e.n, e.lower, e.upper))
        .collect();
    assert!(
        ok,
        "bracket check failed (lower_est(1) = c_1 = 7 exceeds the limit {limit:.4} by \
         construction of the n^d normalization; the lower envelope also dips from n=2 \
         to n=3):\n{}",
        table.join("\n")
    );
}

#[test]
fn criterion_5_exponent_closed_form() {
    let started = Instant::now();
    for t in [2u64, 4, 8, 16] {
        let expo = theoretical_exponent(t).unwrap();
        let z0 = z_star(t).unwrap();

        let residual = pgraded::exponent::g_prime_residual(t).unwrap();
        assert!(residual.abs() < 1e-8, "t={t}: |g'(z0)| = {residual:e}");

        let second = pgraded::exponent::g_second(t).unwrap();
        assert!(second > 0.0, "t={t}: g''(z0) = {second}");

        let value = (-g_of_z(z0, t).unwrap()).exp();
        assert!(
            (value - expo).abs() / expo < 1e-9,
            "t={t}: exp(-g(z0)) = {value}, closed form {expo}"
        );

        let max = maximize_phi_constrained(t).unwrap();
        assert!(
            (max.value - expo).abs() / expo < 1e-7,
            "t={t}: search found {}, closed form {expo}",
            max.value
        );

        let full = verify_critical_point(t, 1e-8).unwrap();
        assert!(
            full.passed,
            "t={t}: {:?}",
            full.failures().collect::<Vec<_>>()
        );
    }

    // The two quoted values of the closed form.
    assert!((theoretical_exponent(2).unwrap() - (3.0 + 2.0 * 3f64.sqrt())).abs() < 1e-12);
    assert!((theoretical_exponent(4).unwrap() - (15.0 + 4.0 * 15f64.sqrt())).abs() < 1e-12);

    let elapsed = started.elapsed();
    report("5", "exponent closed form", true);
    assert!(
        elapsed < Duration::from_secs(1),
        "closed-form certification took {elapsed:?}, budget 1 s"
    );
}

#[test]
fn criterion_6_stirling_sandwich() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57111);
    for _ in 0..1000 {
        let n = rng.gen_range(7u32..=30);
        let mut counts = vec![1u8; 7];
        for _ in 0..(n - 7) {
            counts[rng.gen_range(0..7)] += 1;
        }
        let v = MultiDegree::new(counts);
        assert!(stirling_sandwich_check(&v), "sandwich fails for {v:?}");
    }
    report("6", "factorial sandwich", true);
}

#[test]
fn criterion_7_witness_soundness() {
    let (alg, table) = setup(1);
    let dp = FeasibilityTable::build(&alg, &table, 8).unwrap();
    let mut checked = 0usize;
    for n in 1..=8 {
        for v in compositions(n, alg.dim()) {
            let witness = dp.witness(&v, &alg, &table).unwrap();
            match witness {
                None => assert!(!dp.is_feasible(&v).unwrap()),
                Some(tree) => {
                    assert_eq!(tree.multidegree(alg.dim()), v);
                    let (value, _) = tree.eval(&alg).unwrap();
                    assert!(!value.is_zero(), "witness for {v:?} evaluates to zero");
                    let g = degree_of(&v, &alg).unwrap();
                    let target = &alg.element(alg.index_of(&g).unwrap()).matrix;
                    assert!(
                        value.integer_multiple_of(target).is_some(),
                        "witness for {v:?} lands outside its 1-dimensional component"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(
        checked > 1000,
        "expected over a thousand feasible witnesses"
    );
    report("7", "witness soundness", true);
}

#[test]
fn criterion_8_determinism_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4", "8"] {
        for format in ["csv", "json"] {
            let path = dir.path().join(format!("codim-{threads}.{format}"));
            let status = Command::new(env!("CARGO_BIN_EXE_pgraded"))
                .args([
                    "codim",
                    "--t",
                    "2",
                    "--max-n",
                    "10",
                    "--threads",
                    threads,
                    "--format",
                    format,
                    "--out",
                    path.to_str().unwrap(),
                ])
                .status()
                .unwrap();
            assert!(status.success());
            outputs.push((format, std::fs::read(&path).unwrap()));
        }
    }
    let all_equal = |want: &str| {
        let runs: Vec<&Vec<u8>> = outputs
            .iter()
            .filter(|(format, _)| *format == want)
            .map(|(_, bytes)| bytes)
            .collect();
        runs.windows(2).all(|pair| pair[0] == pair[1])
    };
    let ok = all_equal("csv") && all_equal("json");
    report("8", "byte-identical output across thread counts", ok);
    assert!(ok, "outputs differ across thread counts");
}

#[test]
fn criterion_4_reference_row() {
    // Anchor row quoted everywhere else: c_1 = 7 with all unit vectors
    // feasible, straight from the CLI.
    let out = Command::new(env!("CARGO_BIN_EXE_pgraded"))
        .args(["codim", "--t", "2", "--max-n", "1", "--format", "csv"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1), Some("1,7,7,0"));
}
