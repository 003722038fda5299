//! Classical vs phase-query counts for polynomial interpolation.
//!
//! Classically, recovering a degree-`d` polynomial in `n` variables takes
//! `J = binomial(n + d, d)` evaluation queries: one per coefficient.
//! Phase queries need only about `d/(n+d) * J` to succeed with probability
//! `1 - O(1/q)`, and over the complex numbers the generic rank marks the
//! least `k` that can reach almost every polynomial.  The walkthrough
//! prints both counts for a grid of `(n, d)` and then verifies the jump in
//! measured success ratio at the predicted `k` on concrete fields.
//!
//! Run with: `cargo run --example query_counts`

use polyquery::ffield::Field;
use polyquery::monomial::MonomialBasis;
use polyquery::querymap::{self, DEFAULT_WORK_CAP, Strategy};
use polyquery::secant;

fn main() -> Result<(), polyquery::Error> {
    println!("Query counts per instance shape:");
    println!();
    println!(
        "{:>3} {:>3} {:>11} {:>13} {:>13} {:>7}",
        "n", "d", "classical J", "quantum (F_q)", "generic rank", "saving"
    );
    for n in 1..=4usize {
        for d in 2..=4u32 {
            let basis = MonomialBasis::new(n, d)?;
            let j = basis.len() as u128;
            let quantum = (d as u128 * j).div_ceil((n + d as usize) as u128);
            let kc = secant::generic_rank_formula(n, d)?;
            println!(
                "{:>3} {:>3} {:>11} {:>13} {:>13} {:>6.2}x",
                n,
                d,
                j,
                quantum,
                kc,
                j as f64 / quantum as f64
            );
        }
    }
    println!();
    println!("quantum (F_q) = ceil(d/(n+d) * J): queries after which the");
    println!("success ratio approaches 1 for large fields.  The saving");
    println!("factor tends to (n+d)/d, a constant-factor speedup.");
    println!();

    println!("Measured success ratios around the predicted query count:");
    println!();
    println!("{:>3} {:>3} {:>4} {:>4} {:>14} {:>14}", "n", "d", "q", "k*", "ratio at k*-1", "ratio at k*");
    for &(n, d, p, r) in &[(1usize, 2u32, 13u64, 1u32), (1, 3, 13, 1), (2, 2, 7, 1)] {
        let field = Field::new(p, r)?;
        let basis = MonomialBasis::new(n, d)?;
        let j = basis.len() as u128;
        let kq = ((d as u128 * j).div_ceil((n + d as usize) as u128)) as usize;
        let below =
            querymap::enumerate(&field, &basis, kq - 1, Strategy::Sumset, DEFAULT_WORK_CAP)?;
        let at = querymap::enumerate(&field, &basis, kq, Strategy::Sumset, DEFAULT_WORK_CAP)?;
        println!(
            "{:>3} {:>3} {:>4} {:>4} {:>14.6} {:>14.6}",
            n,
            d,
            field.q(),
            kq,
            below.ratio().to_f64(),
            at.ratio().to_f64()
        );
    }
    println!();
    println!("One query below the threshold the ratio is bounded away from 1;");
    println!("at the threshold it is 1 - O(1/q).  A classical learner needs");
    println!("the full J samples regardless of q.");
    Ok(())
}
