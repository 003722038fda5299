//! Minimal query count over the complex numbers: formula vs measurement.
//!
//! The smallest `k` for which almost every polynomial is reachable equals
//! the generic rank of the degree-`d` Veronese variety.  There is a closed
//! form: `ceil(J / (n+1))`, bumped to `n + 1` for quadrics and by one for
//! four exceptional pairs.  The scan measures the true value by growing
//! `k` until the stacked tangent matrix reaches full rank `J`, without
//! assuming the formula.
//!
//! Run with: `cargo run --example generic_rank_table`

use polyquery::secant::{self, DEFAULT_MODULAR_PRIME, DEFAULT_TRIALS, SecantInstance};

const EXCEPTIONAL: &[(usize, u32)] = &[(4, 3), (2, 4), (3, 4), (4, 4)];

fn main() -> Result<(), polyquery::Error> {
    println!("{:>3} {:>3} {:>4} {:>8} {:>9}  note", "n", "d", "J", "formula", "observed");
    for n in 1..=4usize {
        for d in 2..=4u32 {
            let inst = SecantInstance::new(n, d)?;
            let formula = secant::generic_rank_formula(n, d)?;
            let scan = secant::generic_rank_scan(&inst, DEFAULT_TRIALS, DEFAULT_MODULAR_PRIME, 0)?;
            let note = if d == 2 && n >= 2 {
                "quadric clause: n + 1"
            } else if EXCEPTIONAL.contains(&(n, d)) {
                "exceptional: ceil(J/(n+1)) + 1"
            } else {
                ""
            };
            println!(
                "{:>3} {:>3} {:>4} {:>8} {:>9}  {note}",
                n,
                d,
                inst.j(),
                formula,
                scan.rank
            );
            assert_eq!(formula, scan.rank as u128, "scan must agree with the formula");
        }
    }
    println!();
    println!("The observed column never consults the formula: it grows k until");
    println!("the measured secant dimension reaches J.  Agreement on the");
    println!("quadric and exceptional rows confirms both correction clauses.");
    Ok(())
}
