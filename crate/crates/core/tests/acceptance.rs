//! Acceptance checks, one test per criterion. Each prints a single
//! `criterion N [PASS|FAIL] ...` line before asserting.

use std::time::{Duration, Instant};

use jones_dqc1::braid::{enumerate_words, parse_braid, relation_rewrites, BraidWord};
use jones_dqc1::cli;
use jones_dqc1::discriminate::{
    classify, run_discrimination, select_panel, ClosureFilter, DiscriminationReport,
    NMR_REFERENCE_RATE,
};
use jones_dqc1::dqc1::{
    run_exact, run_exact_with_rotation, weight_rotation_with_phase, NoiseModel, DEFAULT_SEED,
};
use jones_dqc1::fibrep::{braid_unitary, crossing_unitary, FibBasis, ALGEBRA_TOL};
use jones_dqc1::jones::{eval_exact, eval_exact_with, jones_from_m, PHI};
use jones_dqc1::oracle::{component_count, jones_oracle, OracleConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn verdict(n: u32, title: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("criterion {n} [{tag}] {title}: {detail}");
    assert!(ok, "criterion {n} failed: {detail}");
}

fn words(strands: usize, length: usize) -> Vec<BraidWord> {
    enumerate_words(strands, length).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let mut suite = words(4, 3);
    for len in 0..=2 {
        suite.extend(words(4, len));
    }
    suite.push(BraidWord::identity(4).unwrap());
    let mut worst = 0.0f64;
    for b in &suite {
        let exact = eval_exact(b).unwrap().value;
        let oracle = jones_oracle(b, &cfg).unwrap();
        worst = worst.max((exact - oracle).norm());
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "oracle equivalence",
        worst <= 1e-9 && elapsed < Duration::from_secs(10),
        &format!(
            "{} words, worst |diff| = {worst:.2e}, {elapsed:.2?}",
            suite.len()
        ),
    );
}

#[test]
fn criterion_2_six_distinct_knots() {
    let start = Instant::now();
    let knots: Vec<BraidWord> = words(4, 3)
        .into_iter()
        .filter(|b| component_count(b) == 1)
        .collect();
    let classes = classify(&knots).unwrap();
    let elapsed = start.elapsed();

    // Context for the verdict below: the same clustering over every closure.
    let all = classify(&words(4, 3)).unwrap();
    println!(
        "note: all 216 closures form {} classes (sizes {:?})",
        all.len(),
        all.iter().map(|(c, _)| c.size).collect::<Vec<_>>()
    );

    verdict(
        2,
        "six distinct knots among one-component closures",
        classes.len() == 6 && elapsed < Duration::from_secs(5),
        &format!(
            "{} words with one component, {} classes (sizes {:?}), {elapsed:.2?}",
            knots.len(),
            classes.len(),
            classes.iter().map(|(c, _)| c.size).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_3_unknot_calibration() {
    let b = parse_braid("1 2 3", 4).unwrap();
    let v = eval_exact(&b).unwrap().value;
    let oracle = jones_oracle(&b, &OracleConfig::default()).unwrap();
    let err = (v - Complex64::new(1.0, 0.0)).norm();
    verdict(
        3,
        "unknot calibration",
        err <= 1e-9 && (oracle - v).norm() <= 1e-9 && component_count(&b) == 1,
        &format!("V = {:.12} {:+.12}i", v.re, v.im),
    );
}

#[test]
fn criterion_4_identity_braid() {
    let v = eval_exact(&BraidWord::identity(4).unwrap()).unwrap().value;
    let expected = 2.0 * PHI + 1.0;
    let err = (v - Complex64::new(expected, 0.0)).norm();
    verdict(
        4,
        "identity braid value",
        err <= 1e-9 && (v.re - 4.236068).abs() < 1e-6,
        &format!("V = {:.9}, 2φ+1 = {expected:.9}", v.re),
    );
}

fn random_braid(rng: &mut ChaCha20Rng, strands: usize) -> BraidWord {
    let len = rng.random_range(0..=8);
    let word = (0..len)
        .map(|_| {
            let g = rng.random_range(1..strands as i32);
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, word).unwrap()
}

#[test]
fn criterion_5_algebraic_invariants() {
    let mut rng = ChaCha20Rng::seed_from_u64(DEFAULT_SEED);
    let mut worst = [0.0f64; 6];
    let mut braids = 0;
    for strands in 2..=5 {
        let basis = FibBasis::new(strands).unwrap();
        let g = |i: usize, s: i32| crossing_unitary(i, s, &basis).unwrap();
        for i in 1..strands {
            for j in 1..strands {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    if i.abs_diff(j) >= 2 {
                        let d = g(i, si)
                            .compose(&g(j, sj))
                            .max_abs_diff(&g(j, sj).compose(&g(i, si)));
                        worst[1] = worst[1].max(d);
                    }
                    if j == i + 1 && si == sj {
                        let lhs = g(i, si).compose(&g(j, si)).compose(&g(i, si));
                        let rhs = g(j, si).compose(&g(i, si)).compose(&g(j, si));
                        worst[2] = worst[2].max(lhs.max_abs_diff(&rhs));
                    }
                }
            }
        }
        for _ in 0..30 {
            let b = random_braid(&mut rng, strands);
            braids += 1;
            let u = braid_unitary(&b, &basis).unwrap();
            worst[0] = worst[0].max(u.unitarity_defect());
            for r in relation_rewrites(&b) {
                let d = braid_unitary(&r, &basis).unwrap().max_abs_diff(&u);
                worst[1] = worst[1].max(d);
                worst[2] = worst[2].max(d);
            }
            let at = rng.random_range(0..=b.len());
            let gen =
                rng.random_range(1..strands as i32) * if rng.random_bool(0.5) { 1 } else { -1 };
            let padded = b.with_inverse_pair(at, gen).unwrap();
            worst[3] = worst[3].max(braid_unitary(&padded, &basis).unwrap().max_abs_diff(&u));
            worst[4] = worst[4].max(u.off_block_magnitude(basis.half()));
            worst[5] = worst[5].max(u.identity_defect_on(basis.padding()));
        }
    }
    let names = [
        "unitarity",
        "far commutation",
        "Yang-Baxter",
        "inverse pair",
        "block diagonal",
        "padding identity",
    ];
    let detail = names
        .iter()
        .zip(worst)
        .map(|(n, w)| format!("{n} {w:.1e}"))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(
        5,
        "algebraic invariants",
        braids >= 100 && worst.iter().all(|&w| w <= ALGEBRA_TOL),
        &format!("{braids} random braids, m in 2..=5; {detail}"),
    );
}

#[test]
fn criterion_6_dqc1_consistency() {
    let basis = FibBasis::new(4).unwrap();
    let n = basis.register_qubits();
    let (mut worst_v, mut worst_eps, mut worst_rot) = (0.0f64, 0.0f64, 0.0f64);
    for b in words(4, 3) {
        let exact = eval_exact_with(&b, &basis).unwrap();
        let m1 = run_exact(&b, &basis, 1.0).unwrap().m_estimate;
        let v = jones_from_m(m1, b.writhe(), n, 4).unwrap().value;
        worst_v = worst_v.max((v - exact.value).norm());
        for eps in [0.05, 0.3] {
            let m = run_exact(&b, &basis, eps).unwrap().m_estimate;
            worst_eps = worst_eps.max((m - m1).norm());
        }
        for theta in [0.7, 2.0, -1.3] {
            let rot = weight_rotation_with_phase(theta);
            let m = run_exact_with_rotation(&b, &basis, 1.0, &rot)
                .unwrap()
                .m_estimate;
            worst_rot = worst_rot.max((m - m1).norm());
        }
    }
    verdict(
        6,
        "DQC1 consistency",
        worst_v <= 1e-9 && worst_eps <= 1e-9 && worst_rot <= 1e-9,
        &format!("V {worst_v:.1e}, epsilon {worst_eps:.1e}, free column {worst_rot:.1e}"),
    );
}

fn discriminate(noise: &NoiseModel) -> DiscriminationReport {
    let panel = select_panel(4, 3, 3, ClosureFilter::All).unwrap();
    run_discrimination(&panel, 1.0, noise, 200).unwrap().report
}

#[test]
fn criterion_7_discrimination() {
    let start = Instant::now();
    let main = discriminate(&NoiseModel::default());
    let elapsed = start.elapsed();
    let noiseless = discriminate(&NoiseModel::noiseless(DEFAULT_SEED));
    let rates: Vec<f64> = [1.0, 0.99, 0.90]
        .iter()
        .map(|&f| {
            if f == 0.99 {
                main.success_rate
            } else {
                discriminate(&NoiseModel {
                    gate_fidelity: f,
                    ..NoiseModel::default()
                })
                .success_rate
            }
        })
        .collect();
    let monotone = rates.windows(2).all(|w| w[1] <= w[0]);
    verdict(
        7,
        "discrimination experiment",
        elapsed < Duration::from_secs(300) && noiseless.success_rate == 1.0 && monotone,
        &format!(
            "rate at 0.99 = {:.4} ({elapsed:.2?}), noiseless = {}, rates at 1.0/0.99/0.90 = {rates:?}, \
             reference {NMR_REFERENCE_RATE:.4}",
            main.success_rate, noiseless.success_rate
        ),
    );
}

#[test]
fn criterion_8_pair_bookkeeping() {
    let panel = select_panel(4, 3, 3, ClosureFilter::All).unwrap();
    let r = run_discrimination(&panel, 1.0, &NoiseModel::noiseless(DEFAULT_SEED), 3)
        .unwrap()
        .report;
    verdict(
        8,
        "pair bookkeeping",
        panel.entries.len() == 18 && r.distinct_pairs_total == 135 && r.identical_pairs_total == 18,
        &format!(
            "{} braids, distinct {}, identical {}",
            panel.entries.len(),
            r.distinct_pairs_total,
            r.identical_pairs_total
        ),
    );
}

fn cli_bytes(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut argv = vec!["jones-dqc1"];
    argv.extend_from_slice(args);
    cli::run(argv, &mut out).unwrap_or_else(|e| panic!("{args:?}: {}", e.message));
    out
}

#[test]
fn criterion_9_determinism() {
    let commands: &[&[&str]] = &[
        &["eval", "--strands", "4", "1 -2 3"],
        &["eval", "--strands", "4", "--format", "csv", "1 -2 3"],
        &["oracle", "--strands", "4", "1 -2 3"],
        &["simulate", "--strands", "4", "--repeats", "50", "-1 2 -3"],
        &[
            "simulate",
            "--strands",
            "4",
            "--repeats",
            "50",
            "--format",
            "csv",
            "-1 2 -3",
        ],
        &[
            "simulate",
            "--strands",
            "5",
            "--repeats",
            "20",
            "--depolarizing",
            "--seed",
            "7",
            "1 2 -3 4",
        ],
        &["discriminate", "--repeats", "40"],
        &["discriminate", "--repeats", "40", "--format", "csv"],
        &["basis", "--strands", "5"],
    ];
    let mut same = 0;
    for args in commands {
        let a = cli_bytes(args);
        let b = cli_bytes(args);
        same += usize::from(a == b && !a.is_empty());
    }
    verdict(
        9,
        "determinism",
        same == commands.len(),
        &format!(
            "{same}/{} seeded commands byte-identical across two runs",
            commands.len()
        ),
    );
}
