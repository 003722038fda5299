//! Classical interpolation baseline.
//!
//! A degree-`d` polynomial in `n` variables has `J` unknown coefficients, so
//! a classical learner that only sees evaluations needs `J` of them with a
//! full-rank Vandermonde matrix.  This module builds those matrices, solves
//! the exact linear system over `F_q`, solves the real-coefficient analogue
//! with floating-point elimination, and searches for evaluation points that
//! make the system solvable.  Small fields can make full rank impossible
//! outright: once `q^n < J` the rows repeat and some coefficient vectors
//! become indistinguishable from evaluations alone.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Error;
use crate::ffield::Field;
use crate::monomial::MonomialBasis;
use crate::tolerances::REAL_SOLVE_RESIDUAL;

/// Attempts made by the point search before giving up.
pub const DEFAULT_SAMPLE_ATTEMPTS: u32 = 100;

/// Evaluation points paired with the observed values.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet<T> {
    points: Vec<Vec<T>>,
    values: Vec<T>,
}

impl<T> SampleSet<T> {
    pub fn new(points: Vec<Vec<T>>, values: Vec<T>) -> Result<Self, Error> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: points.len(), got: values.len() });
        }
        Ok(SampleSet { points, values })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// Evaluates a coefficient vector at each point, producing the sample set a
/// classical learner would observe.
pub fn observe_fq(
    field: &Field,
    basis: &MonomialBasis,
    coeffs: &[u64],
    points: &[Vec<u64>],
) -> SampleSet<u64> {
    let values = points.iter().map(|x| basis.evaluate_fq(field, coeffs, x)).collect();
    SampleSet { points: points.to_vec(), values }
}

/// Row-major Vandermonde matrix over `F_q`: one feature vector per point.
pub fn vandermonde_fq(field: &Field, basis: &MonomialBasis, points: &[Vec<u64>]) -> Vec<u64> {
    let mut rows = Vec::with_capacity(points.len() * basis.len());
    for x in points {
        rows.extend_from_slice(&basis.feature_vector_fq(field, x));
    }
    rows
}

/// Rank of a row-major matrix over `F_q` by Gaussian elimination.
pub fn rank_fq(field: &Field, rows: usize, cols: usize, matrix: &[u64]) -> usize {
    assert_eq!(matrix.len(), rows * cols);
    let mut m = matrix.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            m.swap(rank * cols + c, pivot * cols + c);
        }
        let inv = field.inv(m[rank * cols + col]).expect("pivot is nonzero");
        for c in col..cols {
            m[rank * cols + c] = field.mul(m[rank * cols + c], inv);
        }
        for r in 0..rows {
            if r != rank && m[r * cols + col] != 0 {
                let factor = m[r * cols + col];
                for c in col..cols {
                    let sub = field.mul(factor, m[rank * cols + c]);
                    m[r * cols + c] = field.sub(m[r * cols + c], sub);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A nonzero vector in the kernel of a row-major matrix over `F_q`, if the
/// columns are dependent.  Witnesses that two distinct coefficient vectors
/// produce identical evaluations.
pub fn kernel_vector_fq(
    field: &Field,
    rows: usize,
    cols: usize,
    matrix: &[u64],
) -> Option<Vec<u64>> {
    assert_eq!(matrix.len(), rows * cols);
    let mut m = matrix.to_vec();
    // pivot_of[c] is the row whose leading one sits in column c.
    let mut pivot_of = vec![usize::MAX; cols];
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            m.swap(rank * cols + c, pivot * cols + c);
        }
        let inv = field.inv(m[rank * cols + col]).expect("pivot is nonzero");
        for c in col..cols {
            m[rank * cols + c] = field.mul(m[rank * cols + c], inv);
        }
        for r in 0..rows {
            if r != rank && m[r * cols + col] != 0 {
                let factor = m[r * cols + col];
                for c in col..cols {
                    let sub = field.mul(factor, m[rank * cols + c]);
                    m[r * cols + c] = field.sub(m[r * cols + c], sub);
                }
            }
        }
        pivot_of[col] = rank;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let free = (0..cols).find(|&c| pivot_of[c] == usize::MAX)?;
    let mut v = vec![0u64; cols];
    v[free] = 1;
    for c in 0..cols {
        let row = pivot_of[c];
        if row != usize::MAX {
            // Pivot column value balances the free column's contribution.
            v[c] = field.neg(m[row * cols + free]);
        }
    }
    Some(v)
}

/// Solves for the coefficient vector from exactly `J` samples over `F_q`.
pub fn interpolate_fq(
    field: &Field,
    basis: &MonomialBasis,
    samples: &SampleSet<u64>,
) -> Result<Vec<u64>, Error> {
    let j = basis.len();
    if samples.len() != j {
        return Err(Error::DimensionMismatch { expected: j, got: samples.len() });
    }
    // Augmented elimination on [V | values].
    let cols = j + 1;
    let mut m = Vec::with_capacity(j * cols);
    for (x, &v) in samples.points().iter().zip(samples.values()) {
        m.extend_from_slice(&basis.feature_vector_fq(field, x));
        m.push(v);
    }
    for col in 0..j {
        let Some(pivot) = (col..j).find(|&r| m[r * cols + col] != 0) else {
            return Err(Error::SingularSystem);
        };
        for c in 0..cols {
            m.swap(col * cols + c, pivot * cols + c);
        }
        let inv = field.inv(m[col * cols + col]).expect("pivot is nonzero");
        for c in col..cols {
            m[col * cols + c] = field.mul(m[col * cols + c], inv);
        }
        for r in 0..j {
            if r != col && m[r * cols + col] != 0 {
                let factor = m[r * cols + col];
                for c in col..cols {
                    let sub = field.mul(factor, m[col * cols + c]);
                    m[r * cols + c] = field.sub(m[r * cols + c], sub);
                }
            }
        }
    }
    Ok((0..j).map(|r| m[r * cols + j]).collect())
}

/// Solves the real-coefficient system from exactly `J` samples, rejecting
/// solves whose residual shows the matrix was numerically singular.
pub fn interpolate_real(basis: &MonomialBasis, samples: &SampleSet<f64>) -> Result<Vec<f64>, Error> {
    let j = basis.len();
    if samples.len() != j {
        return Err(Error::DimensionMismatch { expected: j, got: samples.len() });
    }
    let rows: Vec<Vec<f64>> = samples.points().iter().map(|x| basis.feature_vector(x)).collect();
    let v = nalgebra::DMatrix::<f64>::from_fn(j, j, |r, c| rows[r][c]);
    let rhs = nalgebra::DVector::<f64>::from_column_slice(samples.values());
    let lu = v.clone().lu();
    let Some(solution) = lu.solve(&rhs) else {
        return Err(Error::SingularSystem);
    };
    let residual = (&v * &solution - &rhs).amax();
    let scale = 1.0 + rhs.amax();
    if !residual.is_finite() || residual > REAL_SOLVE_RESIDUAL * scale {
        return Err(Error::SingularSystem);
    }
    Ok(solution.iter().copied().collect())
}

/// Draws `J`-point sets from a seeded generator until the Vandermonde matrix
/// is invertible.
///
/// Fails with [`Error::Exhausted`] after `max_attempts` draws, which is
/// certain once `q^n < J`: with fewer distinct points than coefficients the
/// matrix can never reach full rank.
pub fn sample_points_full_rank(
    field: &Field,
    basis: &MonomialBasis,
    max_attempts: u32,
    seed: u64,
) -> Result<Vec<Vec<u64>>, Error> {
    let j = basis.len();
    let n = basis.n();
    let q = field.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let points: Vec<Vec<u64>> =
            (0..j).map(|_| (0..n).map(|_| rng.random_range(0..q)).collect()).collect();
        let v = vandermonde_fq(field, basis, &points);
        if rank_fq(field, j, j, &v) == j {
            return Ok(points);
        }
    }
    Err(Error::Exhausted { attempts: max_attempts })
}
