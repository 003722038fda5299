//! The classical sampling baseline the quantum count is measured against.
//!
//! A classical learner sees one evaluation per query, so it needs as many
//! samples as there are coefficients: `J = binomial(n + d, d)`.  The
//! walkthrough shows a full round trip with `J` well-chosen points, the
//! singular system that results from fewer distinct points, and the
//! small-field ambiguity where no point set can ever work.
//!
//! Run with: `cargo run --example classical_baseline`

use polyquery::Error;
use polyquery::classical::{self, SampleSet};
use polyquery::ffield::Field;
use polyquery::monomial::MonomialBasis;

fn main() -> Result<(), Error> {
    // Quadratics over F_7: three coefficients, three samples.
    let field = Field::new(7, 1)?;
    let basis = MonomialBasis::new(1, 2)?;
    let j = basis.len();
    println!("Quadratics over F_7: J = {j} coefficients to recover.");

    let points = classical::sample_points_full_rank(&field, &basis, 100, 7)?;
    let coeffs = vec![3, 0, 5];
    let samples = classical::observe_fq(&field, &basis, &coeffs, &points);
    println!("Hidden coefficients: {:?}", coeffs);
    for (x, v) in samples.points().iter().zip(samples.values()) {
        println!("  query x = {:?} -> value {}", x, v);
    }
    let solved = classical::interpolate_fq(&field, &basis, &samples)?;
    println!("Interpolated:        {:?}", solved);
    assert_eq!(solved, coeffs);
    println!();

    // Repeating a point gives only J - 1 distinct equations; the system is
    // singular no matter which values are observed.
    let mut repeated = points.clone();
    repeated[j - 1] = repeated[0].clone();
    let samples = classical::observe_fq(&field, &basis, &coeffs, &repeated);
    match classical::interpolate_fq(&field, &basis, &samples) {
        Err(Error::SingularSystem) => {
            println!("With only {} distinct points: linear system is singular.", j - 1)
        }
        other => println!("unexpected outcome: {other:?}"),
    }
    println!();

    // Over F_2 a single variable offers just two points, but a univariate
    // quadratic has three coefficients.  No sample set distinguishes x^2
    // from x, so the hunt for an invertible point set must give up.
    let f2 = Field::new(2, 1)?;
    let basis2 = MonomialBasis::new(1, 2)?;
    println!("Quadratics over F_2: q^n = 2 points but J = {} coefficients.", basis2.len());
    match classical::sample_points_full_rank(&f2, &basis2, 50, 0) {
        Err(Error::Exhausted { attempts }) => {
            println!("No invertible point set found in {attempts} attempts, as it must be.")
        }
        other => println!("unexpected outcome: {other:?}"),
    }

    // The ambiguity witness: a nonzero polynomial vanishing at every point.
    let all_points = vec![vec![0], vec![1]];
    let v = classical::vandermonde_fq(&f2, &basis2, &all_points);
    let kernel = classical::kernel_vector_fq(&f2, all_points.len(), basis2.len(), &v)
        .expect("underdetermined system has a kernel");
    println!("Kernel coefficients {:?}: this polynomial is zero at both points,", kernel);
    let zero = vec![0; basis2.len()];
    let base = SampleSet::new(
        all_points.clone(),
        all_points.iter().map(|x| basis2.evaluate_fq(&f2, &kernel, x)).collect(),
    )?;
    println!("so {:?} and {:?} observe identically: {:?}", zero, kernel, base.values());
    Ok(())
}
