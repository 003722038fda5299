//! End-to-end acceptance checks, one per headline property.
//!
//! Each test prints a single PASS line on success; a failure panics with
//! the offending instances.  Tolerances are asserted against their pinned
//! values so a drive-by edit of the constants cannot silently relax a
//! check.

use std::process::Command;

use polyquery::Error;
use polyquery::classical;
use polyquery::ffield::Field;
use polyquery::monomial::MonomialBasis;
use polyquery::qsim;
use polyquery::querymap::{self, DEFAULT_WORK_CAP, Strategy};
use polyquery::secant::{self, DEFAULT_MODULAR_PRIME, SecantInstance};
use polyquery::tolerances;
use polyquery::waring::{self, FitConfig, Ground, McConfig, PowerSumModel, Sampler};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Success ratios for `k = 0..=kmax` built once through the sumset chain.
fn ratio_sweep(field: &Field, n: usize, d: u32, kmax: usize) -> Vec<querymap::QueryRange> {
    let basis = MonomialBasis::new(n, d).expect("basis fits");
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(querymap::QueryRange::trivial(field, &basis));
    if kmax == 0 {
        return out;
    }
    let base = querymap::enumerate(field, &basis, 1, Strategy::Sumset, DEFAULT_WORK_CAP)
        .expect("one query fits");
    out.push(base.clone());
    for _ in 2..=kmax {
        let next = querymap::sumset(out.last().expect("nonempty"), &base, DEFAULT_WORK_CAP)
            .expect("sumset fits");
        out.push(next);
    }
    out
}

/// Exact success probability: the simulated measurement returns the hidden
/// coefficient vector with probability `|R_k| / q^J`, identically for
/// every secret, across a grid of small instances.
#[test]
fn a1_success_probability_is_exact_and_secret_independent() {
    assert_eq!(tolerances::SUCCESS_MATCH, 1e-10);
    let mut instances = 0usize;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for &(p, r) in &[(2u64, 1u32), (3, 1), (5, 1)] {
        let field = Field::new(p, r).expect("prime field");
        for n in 1..=2usize {
            for d in 1..=3u32 {
                let ranges = ratio_sweep(&field, n, d, 4);
                for k in 1..=4usize {
                    let range = &ranges[k];
                    let exact = range.ratio().to_f64();
                    let zero = vec![0u64; range.j()];
                    let sim = qsim::success_probability(range, &zero).expect("state fits");
                    let (dev, _) = qsim::independence_max_deviation(range, 100, 1)
                        .expect("sweep fits");
                    let gap = (sim - exact).abs().max(dev);
                    worst = worst.max(gap);
                    instances += 1;
                    if gap > 1e-10 {
                        failures.push(format!("q={} n={n} d={d} k={k}: deviation {gap:.3e}", field.q()));
                    }
                }
            }
        }
    }
    assert_eq!(instances, 72);
    println!(
        "acceptance 1 (exact success probability): {} ({instances} instances, worst deviation {worst:.2e})",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Univariate threshold: for cubics, `k = d/(n+d) * J = 3` queries reach
/// success `1 - 6/q`, while any smaller `k` stays at or below `1/2`.  The
/// plateau at `k = 2` is the transition from vanishing to constant
/// success; the last query lifts it to `1 - O(1/q)`.
#[test]
fn a2_univariate_cubic_threshold() {
    let basis = MonomialBasis::new(1, 3).expect("basis fits");
    let j = basis.len(); // 4 coefficients
    let k_star = (3 * j).div_ceil(1 + 3); // d J / (n + d) = 3
    assert_eq!(k_star, 3);
    let mut failures = Vec::new();
    for &q in &[5u64, 7, 11, 13] {
        let field = Field::new(q, 1).expect("prime field");
        let ranges = ratio_sweep(&field, 1, 3, k_star);
        let at = ranges[k_star].ratio().to_f64();
        if at < 1.0 - 6.0 / q as f64 {
            failures.push(format!("q={q} k={k_star}: ratio {at:.6} below 1 - 6/q"));
        }
        for k in 1..k_star {
            let below = ranges[k].ratio().to_f64();
            if below > 0.5 {
                failures.push(format!("q={q} k={k}: ratio {below:.6} above 1/2"));
            }
        }
    }
    println!(
        "acceptance 2 (univariate threshold at k = 3): {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Quadric rank `n + 1`: for ternary quadrics, three queries reach the
/// `1 - 8/q` envelope while two queries stay under `10/q`, reflecting the
/// dimension deficit of the two-point secant variety (5 of 6).
#[test]
fn a3_quadric_needs_n_plus_one_queries() {
    let mut failures = Vec::new();
    for &q in &[3u64, 5, 7] {
        let field = Field::new(q, 1).expect("prime field");
        let ranges = ratio_sweep(&field, 2, 2, 3);
        let three = ranges[3].ratio().to_f64();
        let two = ranges[2].ratio().to_f64();
        if three < 1.0 - 8.0 / q as f64 {
            failures.push(format!("q={q} k=3: ratio {three:.6} below 1 - 8/q"));
        }
        if two > 10.0 / q as f64 {
            failures.push(format!("q={q} k=2: ratio {two:.6} above 10/q"));
        }
    }
    println!(
        "acceptance 3 (quadric rank n + 1): {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Optimality: the post-query states for all `q^J` secrets span at most
/// `|R_k|` dimensions, so no measurement beats the success ratio.
#[test]
fn a4_gram_rank_bounded_by_range_size() {
    assert_eq!(tolerances::SPECTRAL_CUTOFF, 1e-8);
    let field = Field::new(2, 1).expect("prime field");
    let mut failures = Vec::new();
    for &(n, d) in &[(1usize, 1u32), (1, 2), (2, 1)] {
        let basis = MonomialBasis::new(n, d).expect("basis fits");
        for k in 1..=2usize {
            let range = querymap::enumerate(&field, &basis, k, Strategy::Sumset, DEFAULT_WORK_CAP)
                .expect("range fits");
            let report = qsim::gram_rank(&range).expect("gram fits");
            if report.rank > range.size() {
                failures.push(format!(
                    "n={n} d={d} k={k}: rank {} above |R_k| = {}",
                    report.rank,
                    range.size()
                ));
            }
        }
    }
    println!(
        "acceptance 4 (span bound rank <= |R_k|): {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Secant dimensions match the closed form on the whole small table,
/// including the quadric clause and all four sporadic deficient cases.
#[test]
fn a5_secant_dimension_table() {
    // The four deficient sporadic values, pinned.
    let sporadic = [
        ((4usize, 3u32, 7usize), 34u64),
        ((2, 4, 5), 14),
        ((3, 4, 9), 34),
        ((4, 4, 14), 69),
    ];
    for ((n, d, k), dim) in sporadic {
        assert_eq!(secant::expected_secant_dim(n, d, k).unwrap(), dim as u128);
    }
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 1..=4usize {
        for d in 1..=5u32 {
            let inst = SecantInstance::new(n, d).expect("instance fits");
            let kc = secant::generic_rank_formula(n, d).expect("formula defined") as usize;
            for k in 1..=kc {
                let report = secant::secant_dim(&inst, k, 3, DEFAULT_MODULAR_PRIME, 5)
                    .expect("rank fits");
                checked += 1;
                if !report.matches {
                    failures.push(format!(
                        "n={n} d={d} k={k}: observed {} expected {}",
                        report.observed, report.expected
                    ));
                }
                // Independent oracle for the quadric clause.
                if d == 2 && k >= 2 && k <= n {
                    let clause = (k * (n + 1) - k * (k - 1) / 2) as u64;
                    assert_eq!(report.expected, clause, "quadric clause at n={n} k={k}");
                }
                if let Some(&(_, dim)) = sporadic.iter().find(|&&((sn, sd, sk), _)| {
                    (sn, sd, sk) == (n, d as u32, k)
                }) {
                    assert_eq!(report.observed as u64, dim, "sporadic case n={n} d={d} k={k}");
                }
            }
        }
    }
    println!(
        "acceptance 5 (secant dimension table): {} ({checked} triples, 0 mismatches expected)",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// The measured generic rank agrees with the closed form on all 20 shapes
/// with `n <= 4` and `d <= 5`.
#[test]
fn a6_generic_rank_formula_agrees_with_scan() {
    let mut pairs = 0usize;
    let mut failures = Vec::new();
    for n in 1..=4usize {
        for d in 1..=5u32 {
            let inst = SecantInstance::new(n, d).expect("instance fits");
            let formula = secant::generic_rank_formula(n, d).expect("formula defined");
            let scan = secant::generic_rank_scan(&inst, 3, DEFAULT_MODULAR_PRIME, 6)
                .expect("scan fits");
            pairs += 1;
            if formula != scan.rank as u128 {
                failures.push(format!("n={n} d={d}: formula {formula} scan {}", scan.rank));
            }
        }
    }
    assert_eq!(pairs, 20);
    println!(
        "acceptance 6 (generic rank formula vs scan): {} ({pairs} shapes)",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Typical-rank transitions from 1000-sample Monte Carlo runs: complex
/// rank concentrates on a single value while real rank can split.
#[test]
fn a7_typical_rank_transitions() {
    assert_eq!(tolerances::FIT_TOLERANCE, 1e-6);
    let mc = McConfig { samples: 1000, sampler: Sampler::Gaussian, seed: 7 };
    let fit = FitConfig::default();
    let cubic = PowerSumModel::new(1, 3).expect("model fits");
    let quadric = PowerSumModel::new(2, 2).expect("model fits");

    let c_k2 = waring::rank_fraction(&cubic, Ground::Complex, 2, &mc, &fit).unwrap().fraction;
    let r_k2 = waring::rank_fraction(&cubic, Ground::Real, 2, &mc, &fit).unwrap().fraction;
    let r_k3 = waring::rank_fraction(&cubic, Ground::Real, 3, &mc, &fit).unwrap().fraction;
    let q_k2 = waring::rank_fraction(&quadric, Ground::Real, 2, &mc, &fit).unwrap().fraction;
    let q_k3 = waring::rank_fraction(&quadric, Ground::Real, 3, &mc, &fit).unwrap().fraction;

    let mut failures = Vec::new();
    if c_k2 < 0.99 {
        failures.push(format!("complex cubic k=2: fraction {c_k2:.3} below 0.99"));
    }
    if !(0.05..=0.95).contains(&r_k2) {
        failures.push(format!("real cubic k=2: fraction {r_k2:.3} outside (0.05, 0.95)"));
    }
    if r_k3 < 0.99 {
        failures.push(format!("real cubic k=3: fraction {r_k3:.3} below 0.99"));
    }
    if q_k2 > 0.01 {
        failures.push(format!("real quadric k=2: fraction {q_k2:.3} above 0.01"));
    }
    if q_k3 < 0.99 {
        failures.push(format!("real quadric k=3: fraction {q_k3:.3} below 0.99"));
    }
    println!(
        "acceptance 7 (typical-rank transitions): {} (C cubic {c_k2:.3}, R cubic {r_k2:.3}/{r_k3:.3}, R quadric {q_k2:.3}/{q_k3:.3})",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Classical baseline: with `J` good points the round trip is exact every
/// time; with a repeated point, so only `J - 1` distinct equations, the
/// solver reports a singular system every time.
#[test]
fn a8_classical_round_trips() {
    let fields: Vec<Field> = [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)]
        .iter()
        .map(|&(p, r)| Field::new(p, r).expect("field builds"))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0usize;
    let mut failures = Vec::new();
    while done < 1000 {
        let field = &fields[rng.random_range(0..fields.len())];
        let n = rng.random_range(1..=2usize);
        let d = rng.random_range(1..=3u32);
        let basis = MonomialBasis::new(n, d).expect("basis fits");
        let j = basis.len();
        // Feasibility: enough distinct points must exist.
        let points_available = (field.q() as u128).pow(n as u32);
        if points_available < j as u128 {
            continue;
        }
        let seed = rng.random_range(0..u64::MAX);
        let points = match classical::sample_points_full_rank(&field, &basis, 200, seed) {
            Ok(points) => points,
            Err(Error::Exhausted { .. }) => continue,
            Err(e) => panic!("unexpected failure: {e}"),
        };
        let coeffs: Vec<u64> = (0..j).map(|_| rng.random_range(0..field.q())).collect();
        let samples = classical::observe_fq(&field, &basis, &coeffs, &points);
        match classical::interpolate_fq(&field, &basis, &samples) {
            Ok(solved) if solved == coeffs => {}
            other => failures.push(format!("q={} n={n} d={d}: round trip {other:?}", field.q())),
        }
        // Repeat one point: only J - 1 distinct equations remain.
        if j >= 2 {
            let mut repeated = points.clone();
            repeated[j - 1] = repeated[0].clone();
            let short = classical::observe_fq(&field, &basis, &coeffs, &repeated);
            match classical::interpolate_fq(&field, &basis, &short) {
                Err(Error::SingularSystem) => {}
                other => {
                    failures.push(format!("q={} n={n} d={d}: no singularity, {other:?}", field.q()))
                }
            }
        }
        done += 1;
    }
    println!(
        "acceptance 8 (classical baseline, {done} round trips): {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}

/// Property bundle: exhaustive field axioms, Jacobians against finite
/// differences, agreement of the two enumeration strategies, and
/// byte-stable reports from every subcommand of the binary.
#[test]
fn a9_property_suites() {
    assert_eq!(tolerances::JACOBIAN_STEP, 1e-6);
    assert_eq!(tolerances::JACOBIAN_AGREEMENT, 1e-5);
    let mut failures = Vec::new();

    // Field axioms, exhaustive for q <= 16.
    let mut fields: Vec<Field> = [(2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)]
        .iter()
        .map(|&(p, r)| Field::new(p, r).expect("field builds"))
        .collect();
    fields.push(Field::with_modulus(2, 4, &[1, 1, 0, 0, 1]).expect("F16 builds"));
    for f in &fields {
        let q = f.q();
        for a in 0..q {
            for b in 0..q {
                if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                    failures.push(format!("q={q}: commutativity at ({a}, {b})"));
                }
                for c in 0..q {
                    if f.mul(a, f.mul(b, c)) != f.mul(f.mul(a, b), c)
                        || f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                    {
                        failures.push(format!("q={q}: ring law at ({a}, {b}, {c})"));
                    }
                }
            }
            if a != 0 {
                let inv = f.inv(a).expect("nonzero inverts");
                if f.mul(a, inv) != 1 {
                    failures.push(format!("q={q}: inverse of {a}"));
                }
            }
        }
    }

    // Analytic Jacobian vs central differences on 100 random instances.
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let models = [PowerSumModel::new(1, 3).unwrap(), PowerSumModel::new(2, 2).unwrap()];
    for i in 0..100 {
        let model = &models[i % 2];
        let k = 1 + i % 3;
        let target: Vec<f64> = (0..model.j()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let m = waring::real_param_len(model, k);
        let params: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let (_, jac) = waring::residual_jacobian_real(model, &target, &params);
        let h = tolerances::JACOBIAN_STEP;
        for c in 0..m {
            let mut plus = params.clone();
            plus[c] += h;
            let mut minus = params.clone();
            minus[c] -= h;
            let (rp, _) = waring::residual_jacobian_real(model, &target, &plus);
            let (rm, _) = waring::residual_jacobian_real(model, &target, &minus);
            for row in 0..model.j() {
                let fd = (rp[row] - rm[row]) / (2.0 * h);
                let gap = (fd - jac[(row, c)]).abs();
                if gap > tolerances::JACOBIAN_AGREEMENT * jac[(row, c)].abs().max(1.0) {
                    failures.push(format!("instance {i}: jacobian gap {gap:.3e} at ({row}, {c})"));
                }
            }
        }
    }

    // The two enumeration strategies agree whenever the exhaustive one is
    // affordable: all instances with q^{k(n+1)} <= 10^7.
    let mut compared = 0usize;
    for f in &fields {
        let q = f.q() as u128;
        for n in 1..=2usize {
            for d in 1..=3u32 {
                let basis = MonomialBasis::new(n, d).expect("basis fits");
                for k in 1..=3usize {
                    let tuples = q.checked_pow((k * (n + 1)) as u32);
                    if tuples.is_none_or(|t| t > 10_000_000) {
                        continue;
                    }
                    let a = querymap::enumerate(f, &basis, k, Strategy::Exhaustive, DEFAULT_WORK_CAP)
                        .expect("exhaustive fits");
                    let b = querymap::enumerate(f, &basis, k, Strategy::Sumset, DEFAULT_WORK_CAP)
                        .expect("sumset fits");
                    compared += 1;
                    if a.size() != b.size() {
                        failures.push(format!("q={q} n={n} d={d} k={k}: sizes differ"));
                        continue;
                    }
                    for i in 0..a.size() {
                        if a.entry_key(i) != b.entry_key(i) || a.rep_key(i) != b.rep_key(i) {
                            failures.push(format!("q={q} n={n} d={d} k={k}: entry {i} differs"));
                            break;
                        }
                    }
                }
            }
        }
    }
    assert!(compared >= 100, "grid too small: {compared}");

    // Byte-stable reports from every subcommand of the binary.
    let bin = env!("CARGO_BIN_EXE_polyquery");
    let dir = tempfile::tempdir().expect("tempdir");
    let commands: &[&[&str]] = &[
        &["range", "--p", "3", "--n", "1", "--d", "2", "--kmax", "2"],
        &["simulate", "--p", "3", "--n", "1", "--d", "2", "--k", "1", "--samples", "25"],
        &["gram", "--p", "2", "--n", "1", "--d", "2", "--kmax", "2"],
        &["classical", "--p", "7", "--n", "1", "--d", "2"],
        &["secant-dim", "--n", "2", "--d", "2", "--kmax", "2"],
        &["kc", "--n", "2", "--d", "2"],
        &["typical-rank", "--n", "1", "--d", "3", "--k", "2", "--samples", "20"],
        &["report", "--q-list", "2,3", "--n", "1", "--d", "2", "--kmax", "2"],
    ];
    for (ci, args) in commands.iter().enumerate() {
        for format in ["json", "csv"] {
            let mut outputs = Vec::new();
            for run in 0..2 {
                let path = dir.path().join(format!("{ci}-{format}-{run}"));
                let status = Command::new(bin)
                    .args(*args)
                    .args(["--format", format, "--out"])
                    .arg(&path)
                    .status()
                    .expect("binary runs");
                assert!(status.success(), "{args:?} failed");
                outputs.push(std::fs::read(&path).expect("output written"));
            }
            if outputs[0] != outputs[1] {
                failures.push(format!("{} {format}: bytes differ across runs", args[0]));
            }
        }
    }

    println!(
        "acceptance 9 (axioms, jacobians, strategies x{compared}, stable reports): {}",
        if failures.is_empty() { "PASS" } else { "FAIL" }
    );
    assert!(failures.is_empty(), "{failures:?}");
}
