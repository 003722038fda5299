//! Growth of the reachable phase set with the query count.
//!
//! `k` phase queries reach the set `R_k` of phase-coefficient vectors, and
//! the interpolation succeeds with probability exactly `|R_k| / q^J` where
//! `J` counts the coefficients.  This walkthrough tabulates that ratio for
//! univariate cubics across field sizes.  Two regimes show up: at
//! `k = ceil((d+1)/2) = 2` the ratio jumps from vanishing to a constant
//! plateau near `1/2` (the weighted point configurations behind a phase
//! vector are unique up to reordering, so the image covers about `1/k!` of
//! the space), and at `k = d/(n+d) * J = 3` the ratio reaches
//! `1 - O(1/q)`.
//!
//! Run with: `cargo run --example range_growth`

use polyquery::ffield::Field;
use polyquery::monomial::MonomialBasis;
use polyquery::querymap::{self, DEFAULT_WORK_CAP, Strategy};

const FIELDS: &[(u64, u32)] =
    &[(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1)];

fn main() -> Result<(), polyquery::Error> {
    println!("Univariate cubics: n = 1, d = 3, so J = 4 coefficients.");
    println!();
    println!("{:>5} {:>3} {:>8} {:>8} {:>10}  note", "q", "k", "|R_k|", "q^J", "ratio");
    for &(p, r) in FIELDS {
        let field = Field::new(p, r)?;
        let basis = MonomialBasis::new(1, 3)?;
        for k in 0..=3 {
            let range = querymap::enumerate(&field, &basis, k, Strategy::Sumset, DEFAULT_WORK_CAP)?;
            let ratio = range.ratio();
            let note = match k {
                1 => "vanishing as 1/q^2",
                2 => "plateau near 1/2",
                3 => "1 - O(1/q)",
                _ => "only the zero polynomial",
            };
            println!(
                "{:>5} {:>3} {:>8} {:>8} {:>10.6}  {note}",
                field.q(),
                k,
                range.size(),
                ratio.denominator,
                ratio.to_f64()
            );
        }
        println!();
    }

    println!("The same ratios with query points restricted to nonzero x.");
    println!("Shrinking the allowed points shrinks the reachable set:");
    println!();
    println!("{:>5} {:>3} {:>8} {:>10} {:>10}", "q", "k", "|R_k|", "full", "restricted");
    for &(p, r) in &[(5u64, 1u32), (7, 1)] {
        let field = Field::new(p, r)?;
        let basis = MonomialBasis::new(1, 3)?;
        for k in 2..=3 {
            let full = querymap::enumerate(&field, &basis, k, Strategy::Sumset, DEFAULT_WORK_CAP)?;
            let restricted = querymap::enumerate_nonzero(&field, &basis, k, DEFAULT_WORK_CAP)?;
            println!(
                "{:>5} {:>3} {:>8} {:>10.6} {:>10.6}",
                field.q(),
                k,
                restricted.size(),
                full.ratio().to_f64(),
                restricted.ratio().to_f64()
            );
        }
    }
    Ok(())
}
