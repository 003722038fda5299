//! Dimensions of secant varieties of the Veronese embedding, which govern
//! how many rank-one summands a generic form needs.
//!
//! A degree-`d` form in `n + 1` variables that splits into `k` powers of
//! linear forms lives on the `k`-th secant variety.  Its affine dimension is
//! the rank of the Terracini matrix: the tangent space at a sum of `k`
//! generic powers is spanned by the forms `l_i^{d-1} x_m`, one row per point
//! and variable.  The expected value `min(k(n+1), J)` holds except for a
//! short classical list of deficient cases: quadrics with `2 <= k <= n`,
//! where the dimension is `k(n+1) - k(k-1)/2`, and the four sporadic cases
//! `(n, d, k)` in `{(4,3,7), (2,4,5), (3,4,9), (4,4,14)}`, which fall short
//! by one.  The smallest `k` whose secant variety fills the whole space is
//! the generic rank.
//!
//! Ranks are computed modulo a large prime, which can only underestimate the
//! rational rank; random points and a few trials make that event vanishingly
//! unlikely.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::Error;
use crate::ffield::{Field, is_prime};
use crate::monomial::{binomial, homogeneous_basis};

/// Modulus for rank computations, the Mersenne prime `2^31 - 1`.
pub const DEFAULT_MODULAR_PRIME: u64 = 2_147_483_647;

/// Independent random point sets tried per rank query.
pub const DEFAULT_TRIALS: u32 = 3;

/// Largest number of degree-`d` monomials handled.
pub const COLUMN_CAP: u128 = 10_000;

/// Largest Terracini matrix, in entries.
const ENTRY_CAP: u128 = 50_000_000;

/// Degree-`d` forms in `n + 1` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecantInstance {
    n: usize,
    d: u32,
}

impl SecantInstance {
    pub fn new(n: usize, d: u32) -> Result<Self, Error> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidInput(format!(
                "need at least one variable and degree one, got n = {n}, d = {d}"
            )));
        }
        let j = binomial((n + d as usize) as u64, d as u64)
            .ok_or(Error::Overflow { terms: u128::MAX, cap: COLUMN_CAP })?;
        if j > COLUMN_CAP {
            return Err(Error::SizeCap { what: "monomial count", size: j, cap: COLUMN_CAP });
        }
        Ok(SecantInstance { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of homogeneous coordinates, `n + 1`.
    pub fn vars(&self) -> usize {
        self.n + 1
    }

    /// Number of degree-`d` monomials.
    pub fn j(&self) -> u128 {
        binomial((self.n + self.d as usize) as u64, self.d as u64).expect("checked at construction")
    }
}

/// Affine dimension of the `k`-th secant variety, with every known
/// deficient case folded in.
pub fn expected_secant_dim(n: usize, d: u32, k: usize) -> Result<u128, Error> {
    let vars = n as u128 + 1;
    let j = binomial((n + d as usize) as u64, d as u64)
        .ok_or(Error::Overflow { terms: u128::MAX, cap: u128::MAX })?;
    if k == 0 {
        return Ok(0);
    }
    let k128 = k as u128;
    if d == 2 && k >= 2 && k <= n {
        return Ok(k128 * vars - k128 * (k128 - 1) / 2);
    }
    if matches!((n, d, k), (4, 3, 7) | (2, 4, 5) | (3, 4, 9) | (4, 4, 14)) {
        return Ok(j - 1);
    }
    Ok((k128 * vars).min(j))
}

/// Smallest `k` whose secant variety has full dimension: the rank of a
/// generic form.
///
/// The count `ceil(J / (n+1))` is right except for quadrics in three or
/// more variables, whose rank is `n + 1`, and the four deficient quartic
/// and cubic cases, which need one extra summand.
pub fn generic_rank_formula(n: usize, d: u32) -> Result<u128, Error> {
    let vars = n as u128 + 1;
    let j = binomial((n + d as usize) as u64, d as u64)
        .ok_or(Error::Overflow { terms: u128::MAX, cap: u128::MAX })?;
    if d == 2 && n >= 2 {
        return Ok(vars);
    }
    let base = j.div_ceil(vars);
    if matches!((n, d), (4, 3) | (2, 4) | (3, 4) | (4, 4)) {
        Ok(base + 1)
    } else {
        Ok(base)
    }
}

/// Row-major Terracini matrix at the given points, `k (n+1)` rows by `J`
/// columns over `F_prime`.
///
/// The row for point `l` and variable `m` holds the coefficients of
/// `l^{d-1} x_m`: the entry at exponent `b` with `b_m >= 1` is the
/// multinomial `(d-1; b - e_m)` times `l^{b - e_m}`.
pub fn tangent_matrix(
    inst: &SecantInstance,
    modular: &Field,
    points: &[Vec<u64>],
) -> Result<Vec<u64>, Error> {
    assert_eq!(modular.r(), 1, "rank arithmetic runs over a prime field");
    let p = modular.q();
    let vars = inst.vars();
    let d = inst.d as usize;
    let exps = homogeneous_basis(vars, inst.d)?;
    let j = exps.len();
    let rows = points.len() * vars;
    if (rows as u128) * (j as u128) > ENTRY_CAP {
        return Err(Error::SizeCap {
            what: "tangent matrix",
            size: rows as u128 * j as u128,
            cap: ENTRY_CAP,
        });
    }

    // (d-1)! / prod g_i! mod p via factorial tables; every factorial up to
    // (d-1)! must be invertible, so the characteristic must reach d.
    if p < d as u64 {
        return Err(Error::InvalidInput(format!(
            "modulus {p} is below the degree {d}; multinomial coefficients vanish"
        )));
    }
    let mut fact = vec![1u64; d.max(1)];
    for i in 1..fact.len() {
        fact[i] = modular.mul(fact[i - 1], i as u64 % p);
    }
    let inv_fact: Vec<u64> =
        fact.iter().map(|&f| modular.inv(f).expect("factorials are nonzero")).collect();

    let mut matrix = vec![0u64; rows * j];
    for (pi, point) in points.iter().enumerate() {
        if point.len() != vars {
            return Err(Error::DimensionMismatch { expected: vars, got: point.len() });
        }
        let reduced: Vec<u64> = point.iter().map(|&c| c % p).collect();
        if reduced.iter().all(|&c| c == 0) {
            return Err(Error::ZeroPoint { index: pi });
        }
        // powers[s][e] = l_s^e
        let powers: Vec<Vec<u64>> = reduced
            .iter()
            .map(|&c| {
                let mut col = vec![1u64; d];
                for e in 1..d {
                    col[e] = modular.mul(col[e - 1], c);
                }
                col
            })
            .collect();
        for m in 0..vars {
            let row = &mut matrix[(pi * vars + m) * j..(pi * vars + m + 1) * j];
            for (slot, beta) in row.iter_mut().zip(&exps) {
                if beta[m] == 0 {
                    continue;
                }
                let mut coeff = fact[d - 1];
                let mut value = 1u64;
                for (s, &b) in beta.iter().enumerate() {
                    let g = if s == m { b - 1 } else { b } as usize;
                    coeff = modular.mul(coeff, inv_fact[g]);
                    value = modular.mul(value, powers[s][g]);
                }
                *slot = modular.mul(coeff, value);
            }
        }
    }
    Ok(matrix)
}

/// Observed against expected dimension for one `(n, d, k)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DimReport {
    pub k: usize,
    pub observed: usize,
    /// Expected dimensions stay far below `u64` under the column cap.
    pub expected: u64,
    pub matches: bool,
}

/// Measures the secant dimension as the best Terracini rank over a few
/// random point sets.
pub fn secant_dim(
    inst: &SecantInstance,
    k: usize,
    trials: u32,
    prime: u64,
    seed: u64,
) -> Result<DimReport, Error> {
    if !is_prime(prime) {
        return Err(Error::NonPrime(prime));
    }
    let modular = Field::new(prime, 1)?;
    let vars = inst.vars();
    let j = inst.j() as usize;
    let expected = expected_secant_dim(inst.n, inst.d, k)?;
    let mut observed = 0usize;
    for trial in 0..trials.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut points = Vec::with_capacity(k);
        for _ in 0..k {
            loop {
                let point: Vec<u64> = (0..vars).map(|_| rng.random_range(0..prime)).collect();
                if point.iter().any(|&c| c != 0) {
                    points.push(point);
                    break;
                }
            }
        }
        let matrix = tangent_matrix(inst, &modular, &points)?;
        let rank = crate::classical::rank_fq(&modular, k * vars, j, &matrix);
        observed = observed.max(rank);
    }
    let expected = u64::try_from(expected).expect("bounded by the column cap");
    Ok(DimReport { k, observed, expected, matches: observed as u64 == expected })
}

/// Scan outcome: the first `k` whose secant variety fills the space, with
/// the dimension trace leading up to it.
#[derive(Clone, Debug, Serialize)]
pub struct ScanOutcome {
    pub rank: usize,
    pub trace: Vec<DimReport>,
}

/// Finds the generic rank by measurement: increase `k` until the Terracini
/// rank reaches `J`.
pub fn generic_rank_scan(
    inst: &SecantInstance,
    trials: u32,
    prime: u64,
    seed: u64,
) -> Result<ScanOutcome, Error> {
    let j = inst.j() as usize;
    let mut trace = Vec::new();
    for k in 1..=j {
        let report = secant_dim(inst, k, trials, prime, seed)?;
        let filled = report.observed == j;
        trace.push(report);
        if filled {
            return Ok(ScanOutcome { rank: k, trace });
        }
    }
    // J points always span: the Veronese variety is nondegenerate.
    unreachable!("rank must reach J by k = J");
}
