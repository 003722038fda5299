//! Monomial exponent bookkeeping and evaluation of monomial feature vectors.
//!
//! Everything downstream fixes one ordering of the exponent vectors
//! `j = (j_1, ..., j_n)` with `j_1 + ... + j_n <= d`: ascending total degree,
//! and within a degree the vector whose leading entries are larger comes
//! first.  For `n = 2, d = 2` that is `(0,0), (1,0), (0,1), (2,0), (1,1),
//! (0,2)`.  Coefficient vectors, phase vectors, and report columns all index
//! monomials in this order.
//!
//! The feature vector of a point `x` is `(x^j)_j`, the evaluation of every
//! monomial at `x`; a polynomial with coefficient vector `c` evaluates to the
//! inner product of `c` with it.

use std::cmp::Ordering;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::Error;
use crate::ffield::Field;

/// Default cap on the number of basis terms.
pub const DEFAULT_TERM_CAP: u128 = 1_000_000;

/// Exact binomial coefficient, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // Multiply before dividing; the intermediate product of i+1
        // consecutive integers is always divisible by (i+1)!.
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Graded-lexicographic comparison: lower total degree first, then the
/// vector with the larger leading entries.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

/// The ordered exponent vectors of all monomials of total degree at most `d`
/// in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    d: u32,
    exps: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: u32) -> Result<Self, Error> {
        Self::with_cap(n, d, DEFAULT_TERM_CAP)
    }

    pub fn with_cap(n: usize, d: u32, cap: u128) -> Result<Self, Error> {
        assert!(n >= 1, "at least one variable");
        let terms =
            binomial(n as u64 + d as u64, d as u64).ok_or(Error::Overflow { terms: u128::MAX, cap })?;
        if terms > cap {
            return Err(Error::Overflow { terms, cap });
        }
        let mut exps = Vec::with_capacity(terms as usize);
        let mut scratch = vec![0u32; n];
        for total in 0..=d {
            emit_degree(&mut exps, &mut scratch, 0, total);
        }
        debug_assert_eq!(exps.len() as u128, terms);
        Ok(MonomialBasis { n, d, exps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of monomials, `binomial(n + d, d)`.
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn exponent(&self, j: usize) -> &[u32] {
        &self.exps[j]
    }

    /// Feature vector `(x^j)_j` over a finite field; `x` holds `n` element
    /// encodings.
    pub fn feature_vector_fq(&self, field: &Field, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.n);
        // pows[i][e] = x_i^e
        let pows: Vec<Vec<u64>> = x
            .iter()
            .map(|&xi| {
                let mut col = Vec::with_capacity(self.d as usize + 1);
                col.push(1u64);
                for _ in 0..self.d {
                    col.push(field.mul(*col.last().expect("nonempty"), xi));
                }
                col
            })
            .collect();
        self.exps
            .iter()
            .map(|exp| {
                exp.iter()
                    .enumerate()
                    .fold(1u64, |acc, (i, &e)| field.mul(acc, pows[i][e as usize]))
            })
            .collect()
    }

    /// Feature vector over any numeric scalar (`f64`, `Complex64`, ...).
    pub fn feature_vector<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Copy + One + Mul<Output = T>,
    {
        assert_eq!(x.len(), self.n);
        let pows: Vec<Vec<T>> = x
            .iter()
            .map(|&xi| {
                let mut col = Vec::with_capacity(self.d as usize + 1);
                col.push(T::one());
                for _ in 0..self.d {
                    col.push(*col.last().expect("nonempty") * xi);
                }
                col
            })
            .collect();
        self.exps
            .iter()
            .map(|exp| {
                exp.iter()
                    .enumerate()
                    .fold(T::one(), |acc, (i, &e)| acc * pows[i][e as usize])
            })
            .collect()
    }

    /// Evaluates the polynomial with coefficient vector `c` at `x` over a
    /// finite field.
    pub fn evaluate_fq(&self, field: &Field, c: &[u64], x: &[u64]) -> u64 {
        assert_eq!(c.len(), self.len());
        field.dot(c, &self.feature_vector_fq(field, x))
    }

    /// Evaluates the polynomial with coefficient vector `c` at `x` over a
    /// numeric scalar.
    pub fn evaluate<T>(&self, c: &[T], x: &[T]) -> T
    where
        T: Copy + One + Zero + Mul<Output = T> + Add<Output = T>,
    {
        assert_eq!(c.len(), self.len());
        self.feature_vector(x)
            .into_iter()
            .zip(c)
            .fold(T::zero(), |acc, (f, &ci)| acc + f * ci)
    }
}

fn emit_degree(out: &mut Vec<Vec<u32>>, scratch: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == scratch.len() {
        scratch[pos] = remaining;
        out.push(scratch.clone());
        return;
    }
    // Larger leading entries first keeps the within-degree order.
    for lead in (0..=remaining).rev() {
        scratch[pos] = lead;
        emit_degree(out, scratch, pos + 1, remaining - lead);
    }
}

/// The ordered exponent vectors of all monomials of total degree exactly `d`
/// in `vars` variables: the degree-`d` slice of the graded order.
pub fn homogeneous_basis(vars: usize, d: u32) -> Result<Vec<Vec<u32>>, Error> {
    let basis = MonomialBasis::new(vars, d)?;
    Ok(basis
        .exps
        .into_iter()
        .filter(|e| e.iter().map(|&x| x as u64).sum::<u64>() == d as u64)
        .collect())
}
