//! Typical ranks of random polynomials over the reals and complexes.
//!
//! Over the complex numbers a single rank is typical: a random form has
//! the generic rank with probability one.  Over the reals several ranks
//! can each occur with positive probability.  The walkthrough estimates
//! the fraction of random forms expressible with `k` powers of linear
//! forms by actually fitting them, and reports Wilson 95 percent
//! confidence intervals.
//!
//! Binary cubics: complex rank is 2 almost surely, while real rank splits
//! between 2 and 3.  Ternary quadrics: real rank 2 has measure zero
//! because the rank-2 locus has dimension 5 inside the 6-dimensional
//! coefficient space, and rank 3 is typical.
//!
//! Run with: `cargo run --example typical_rank`

use polyquery::waring::{self, FitConfig, Ground, McConfig, PowerSumModel, Sampler};

fn row(
    model: &PowerSumModel,
    ground: Ground,
    k: usize,
    label: &str,
) -> Result<(), polyquery::Error> {
    let mc = McConfig { samples: 120, sampler: Sampler::Gaussian, seed: 11 };
    let fit = FitConfig::default();
    let est = waring::rank_fraction(model, ground, k, &mc, &fit)?;
    println!(
        "{:>8} k = {k}: {:>3}/{:<3} fitted, fraction {:.3} in [{:.3}, {:.3}]  {label}",
        match ground {
            Ground::Real => "real",
            Ground::Complex => "complex",
        },
        est.successes,
        est.samples,
        est.fraction,
        est.wilson_low,
        est.wilson_high
    );
    Ok(())
}

fn main() -> Result<(), polyquery::Error> {
    println!("Binary cubics (n = 1, d = 3): J = 4 coefficients.");
    let cubic = PowerSumModel::new(1, 3)?;
    row(&cubic, Ground::Complex, 2, "single typical rank")?;
    row(&cubic, Ground::Real, 2, "one of two typical ranks")?;
    row(&cubic, Ground::Real, 3, "covers the rest")?;
    println!();

    println!("Ternary quadrics (n = 2, d = 2): J = 6 coefficients.");
    let quadric = PowerSumModel::new(2, 2)?;
    row(&quadric, Ground::Real, 2, "measure zero: secant variety is deficient")?;
    row(&quadric, Ground::Real, 3, "typical rank n + 1")?;
    println!();

    println!("The real fractions at the split rank sit strictly inside (0, 1):");
    println!("both ranks occur with positive probability, so no single k");
    println!("works almost surely over the reals below the maximal rank.");
    Ok(())
}
