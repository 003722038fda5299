//! Numerical simulation of the phase-query measurement.
//!
//! For a secret coefficient vector `c` the protocol prepares the canonical
//! representative tuple of every reachable phase vector `z` in superposition,
//! queries once per tuple position, and ends in the normalized state with
//! amplitude `e(<z, c>) / sqrt(|R|)` on `z`, where `e` is the additive
//! character and `R` the reachable set.  Measuring in the character basis of
//! the full space `F_q^J` returns outcome `c'` with probability
//!
//! ```text
//! P(c') = | sum_{z in R} e(<z, c - c'>) |^2 / (q^J |R|)
//! ```
//!
//! so the chance of recovering the secret exactly is `|R| / q^J` no matter
//! what `c` is.  Everything here is computed with explicit complex sums so
//! that the closed-form ratio can be checked against an honest simulation.
//!
//! Amplitude sums run over fixed-size row chunks that are reduced in chunk
//! order, so results are bit-identical regardless of how many worker threads
//! rayon uses.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::Error;
use crate::querymap::QueryRange;
use crate::tolerances::SPECTRAL_CUTOFF;

/// Rows per parallel chunk; fixed so reductions are deterministic.
const CHUNK_ROWS: usize = 16384;

/// Full outcome distributions are only computed up to this many outcomes.
pub const DISTRIBUTION_CAP: u128 = 1_000_000;

/// Gram matrices are only built while `q^J` is at most this.
pub const GRAM_CAP: u128 = 4096;

/// Exhaustive secret sweeps switch to sampling above this many secrets.
pub const EXHAUSTIVE_SECRET_CAP: u128 = 1024;

/// The post-query state for one secret, with the decoded reachable set.
pub struct PhaseState<'a> {
    range: &'a QueryRange,
    table: Vec<u16>,
    secret: Vec<u64>,
    amplitudes: Vec<Complex64>,
}

fn check_vector(range: &QueryRange, v: &[u64]) -> Result<(), Error> {
    if v.len() != range.j() {
        return Err(Error::DimensionMismatch { expected: range.j(), got: v.len() });
    }
    if let Some(&bad) = v.iter().find(|&&c| c >= range.q()) {
        return Err(Error::InvalidInput(format!(
            "coefficient {bad} is outside the field of order {}",
            range.q()
        )));
    }
    Ok(())
}

/// Character sum `sum_z e(<z, w>)` over the decoded rows, chunked for
/// deterministic parallel reduction.
fn character_sum(range: &QueryRange, table: &[u16], w: &[u64]) -> Complex64 {
    let field = range.field();
    let j = range.j();
    let mut scratch = vec![0u64; j];
    if table.len() <= CHUNK_ROWS * j {
        let mut total = Complex64::ZERO;
        for row in table.chunks_exact(j) {
            for (s, &d) in scratch.iter_mut().zip(row) {
                *s = d as u64;
            }
            total += field.character(field.dot(&scratch, w));
        }
        return total;
    }
    let partials: Vec<Complex64> = table
        .par_chunks(CHUNK_ROWS * j)
        .map(|chunk| {
            let mut local = vec![0u64; j];
            let mut acc = Complex64::ZERO;
            for row in chunk.chunks_exact(j) {
                for (s, &d) in local.iter_mut().zip(row) {
                    *s = d as u64;
                }
                acc += field.character(field.dot(&local, w));
            }
            acc
        })
        .collect();
    partials.into_iter().sum()
}

impl<'a> PhaseState<'a> {
    /// Runs the queries for one secret and keeps the resulting amplitudes.
    pub fn prepare(range: &'a QueryRange, secret: &[u64]) -> Result<Self, Error> {
        check_vector(range, secret)?;
        let table = range.entry_digit_table()?;
        let field = range.field();
        let j = range.j();
        let norm = 1.0 / (range.size() as f64).sqrt();
        let mut scratch = vec![0u64; j];
        let amplitudes = table
            .chunks_exact(j)
            .map(|row| {
                for (s, &d) in scratch.iter_mut().zip(row) {
                    *s = d as u64;
                }
                field.character(field.dot(&scratch, secret)) * norm
            })
            .collect();
        Ok(PhaseState { range, table, secret: secret.to_vec(), amplitudes })
    }

    pub fn range(&self) -> &QueryRange {
        self.range
    }

    pub fn secret(&self) -> &[u64] {
        &self.secret
    }

    /// Amplitudes in entry order, one per reachable phase vector.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Probability that the final measurement reports `outcome`.
    pub fn outcome_probability(&self, outcome: &[u64]) -> Result<f64, Error> {
        check_vector(self.range, outcome)?;
        let field = self.range.field();
        let delta: Vec<u64> =
            self.secret.iter().zip(outcome).map(|(&c, &o)| field.sub(c, o)).collect();
        let sum = character_sum(self.range, &self.table, &delta);
        let denom = self.range.ratio().denominator as f64 * self.range.size() as f64;
        Ok(sum.norm_sqr() / denom)
    }

    /// Probability of recovering the secret exactly.
    pub fn success_probability(&self) -> f64 {
        self.outcome_probability(&self.secret).expect("secret was validated at preparation")
    }

    /// Probability of every outcome in key order.  Refused above
    /// [`DISTRIBUTION_CAP`] outcomes.
    pub fn distribution(&self) -> Result<Vec<f64>, Error> {
        let total = self.range.ratio().denominator;
        if total > DISTRIBUTION_CAP {
            return Err(Error::SizeCap {
                what: "outcome distribution",
                size: total,
                cap: DISTRIBUTION_CAP,
            });
        }
        let q = self.range.q();
        let j = self.range.j();
        let mut outcome = vec![0u64; j];
        let mut out = Vec::with_capacity(total as usize);
        for _ in 0..total {
            out.push(self.outcome_probability(&outcome)?);
            for slot in outcome.iter_mut().rev() {
                *slot += 1;
                if *slot < q {
                    break;
                }
                *slot = 0;
            }
        }
        Ok(out)
    }
}

/// Simulated probability of recovering `secret`, equal to the range ratio up
/// to floating-point noise.
pub fn success_probability(range: &QueryRange, secret: &[u64]) -> Result<f64, Error> {
    Ok(PhaseState::prepare(range, secret)?.success_probability())
}

/// Largest deviation between the simulated success probability and the exact
/// ratio over a sweep of secrets, plus the number of secrets tried.
///
/// All `q^J` secrets are swept when there are at most
/// [`EXHAUSTIVE_SECRET_CAP`] of them; otherwise `samples` secrets are drawn
/// from a seeded generator.
pub fn independence_max_deviation(
    range: &QueryRange,
    samples: usize,
    seed: u64,
) -> Result<(f64, usize), Error> {
    let table = range.entry_digit_table()?;
    let expected = range.ratio().to_f64();
    let q = range.q();
    let j = range.j();
    let total = range.ratio().denominator;
    let norm = range.ratio().denominator as f64 * range.size() as f64;

    let mut secrets: Vec<Vec<u64>> = Vec::new();
    if total <= EXHAUSTIVE_SECRET_CAP {
        let mut secret = vec![0u64; j];
        for _ in 0..total {
            secrets.push(secret.clone());
            for slot in secret.iter_mut().rev() {
                *slot += 1;
                if *slot < q {
                    break;
                }
                *slot = 0;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            secrets.push((0..j).map(|_| rng.random_range(0..q)).collect());
        }
    }

    let count = secrets.len();
    let mut worst = 0.0f64;
    for secret in secrets {
        // Success amplitude computed the honest way: the prepared phase and
        // the measurement phase cancel only up to floating point.
        let field = range.field();
        let mut scratch = vec![0u64; j];
        let sum: Complex64 = if table.len() <= CHUNK_ROWS * j {
            let mut acc = Complex64::ZERO;
            for row in table.chunks_exact(j) {
                for (s, &d) in scratch.iter_mut().zip(row) {
                    *s = d as u64;
                }
                let phase = field.dot(&scratch, &secret);
                acc += field.character(phase) * field.character(field.neg(phase));
            }
            acc
        } else {
            let partials: Vec<Complex64> = table
                .par_chunks(CHUNK_ROWS * j)
                .map(|chunk| {
                    let mut local = vec![0u64; j];
                    let mut acc = Complex64::ZERO;
                    for row in chunk.chunks_exact(j) {
                        for (s, &d) in local.iter_mut().zip(row) {
                            *s = d as u64;
                        }
                        let phase = field.dot(&local, &secret);
                        acc += field.character(phase) * field.character(field.neg(phase));
                    }
                    acc
                })
                .collect();
            partials.into_iter().sum()
        };
        let prob = sum.norm_sqr() / norm;
        worst = worst.max((prob - expected).abs());
    }
    Ok((worst, count))
}

/// Rank of the Gram matrix of the post-query states against its structural
/// bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GramReport {
    /// Numerical rank of the Gram matrix.
    pub rank: usize,
    /// Dimension of the span the states can reach: the size of the range.
    pub bound: usize,
    pub tight: bool,
}

/// Builds the Gram matrix of the states for every secret and reports its
/// numerical rank.
///
/// The states span exactly the space indexed by the reachable set, so the
/// rank should equal the range size.  Eigenvalues below
/// [`SPECTRAL_CUTOFF`](crate::tolerances::SPECTRAL_CUTOFF) times the largest
/// one are treated as zero.
pub fn gram_rank(range: &QueryRange) -> Result<GramReport, Error> {
    let total = range.ratio().denominator;
    if total > GRAM_CAP {
        return Err(Error::SizeCap { what: "gram matrix", size: total, cap: GRAM_CAP });
    }
    let outcomes = total as usize;
    let rows = range.size();
    let table = range.entry_digit_table()?;
    let field = range.field();
    let q = range.q();
    let j = range.j();
    let norm = 1.0 / (rows as f64).sqrt();

    // States as columns: M[z, c] = e(<z, c>) / sqrt(|R|).
    let mut m = nalgebra::DMatrix::<Complex64>::zeros(rows, outcomes);
    let mut secret = vec![0u64; j];
    let mut scratch = vec![0u64; j];
    for c in 0..outcomes {
        for (zi, row) in table.chunks_exact(j).enumerate() {
            for (s, &d) in scratch.iter_mut().zip(row) {
                *s = d as u64;
            }
            m[(zi, c)] = field.character(field.dot(&scratch, &secret)) * norm;
        }
        for slot in secret.iter_mut().rev() {
            *slot += 1;
            if *slot < q {
                break;
            }
            *slot = 0;
        }
    }
    let gram = m.adjoint() * &m;
    let eigen = gram.symmetric_eigen();
    let largest = eigen.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let rank = if largest == 0.0 {
        0
    } else {
        eigen.eigenvalues.iter().filter(|&&v| v.abs() > SPECTRAL_CUTOFF * largest).count()
    };
    Ok(GramReport { rank, bound: rows, tight: rank == rows })
}
