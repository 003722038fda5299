//! The state-vector pipeline, step by step.
//!
//! The strategy prepares a uniform superposition over canonical query
//! tuples, lets the phase queries imprint the hidden coefficient vector
//! `c`, and measures in the character basis.  The walkthrough shows, on a
//! small instance, that the measured distribution puts weight exactly
//! `|R_k| / q^J` on `c` itself, and that this success weight is the same
//! for every hidden vector.
//!
//! Run with: `cargo run --example success_probability`

use polyquery::ffield::Field;
use polyquery::monomial::MonomialBasis;
use polyquery::qsim::{self, PhaseState};
use polyquery::querymap::{self, DEFAULT_WORK_CAP, Strategy};

fn main() -> Result<(), polyquery::Error> {
    // Quadratics over F_3 in one variable: coefficients (1, x, x^2), J = 3.
    let field = Field::new(3, 1)?;
    let basis = MonomialBasis::new(1, 2)?;
    let k = 1;
    let range = querymap::enumerate(&field, &basis, k, Strategy::Sumset, DEFAULT_WORK_CAP)?;
    let ratio = range.ratio();

    println!("Instance: q = 3, n = 1, d = 2, k = {k} query.");
    println!("Coefficient space has q^J = {} vectors.", ratio.denominator);
    println!("Reachable phase vectors |R_{k}| = {}.", range.size());
    println!("Predicted success probability: {} = {:.6}.", ratio, ratio.to_f64());
    println!();

    println!("A few reachable phase vectors and the query tuples behind them:");
    for i in 0..4.min(range.size()) {
        let digits = range.entry_digits(i);
        let tuple = range.rep_tuple(i);
        println!(
            "  z = {:?}  from query at x = {:?} with multiplier y = {}",
            digits,
            tuple.point(0),
            tuple.multiplier(0)
        );
    }
    println!();

    // The success probability is identical for every secret; show a few.
    for secret in [vec![0, 0, 0], vec![2, 1, 0], vec![1, 2, 2]] {
        let state = PhaseState::prepare(&range, &secret)?;
        println!("Secret {:?}: measured success = {:.10}", secret, state.success_probability());
    }
    println!();

    // The full outcome distribution for one secret: the mass at the secret
    // is the success probability, and everything sums to one.
    let secret = vec![2, 1, 0];
    let state = PhaseState::prepare(&range, &secret)?;
    let dist = state.distribution()?;
    let total: f64 = dist.iter().sum();
    let q = field.q();
    let secret_index = (secret[0] * q + secret[1]) * q + secret[2];
    println!("Distribution over all {} outcomes for secret {:?}:", dist.len(), secret);
    println!("  mass at the secret  = {:.10}", dist[secret_index as usize]);
    println!("  total mass          = {:.10}", total);
    let mut top: Vec<(usize, f64)> = dist.iter().copied().enumerate().collect();
    top.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    println!("  largest five outcome weights:");
    for &(idx, p) in top.iter().take(5) {
        let c = [idx as u64 / (q * q), (idx as u64 / q) % q, idx as u64 % q];
        let marker = if idx == secret_index as usize { "  <- the secret" } else { "" };
        println!("    c' = {:?}  weight {:.6}{}", c, p, marker);
    }
    println!();

    // Exhaustive independence check: the success weight deviates from the
    // exact ratio only by floating-point error, for all q^J secrets.
    let (deviation, tested) = qsim::independence_max_deviation(&range, 100, 0)?;
    println!("Largest |measured - exact| over {tested} secrets: {deviation:.3e}");
    Ok(())
}
