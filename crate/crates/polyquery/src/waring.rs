//! Numerical power-sum decompositions of homogeneous forms.
//!
//! A degree-`d` form in `n + 1` variables is fitted as a sum of `k` powers
//! of linear forms: over the reals `sum_i c_i (l_i . x)^d` with a free real
//! weight per term so both signs are reachable at even degree, over the
//! complex numbers `sum_i (l_i . x)^d` with complex `l_i`.  The fit runs
//! damped least squares from several random starts; a target counts as rank
//! at most `k` when some start drives the coefficient residual below
//! tolerance.
//!
//! Convergence certifies membership in the closure of the rank-`k` set, so
//! the decision is really about border rank.  Typical-rank questions are
//! unaffected: the sets of forms of rank at most `k` and of border rank at
//! most `k` differ only by measure zero, and all targets here are drawn at
//! random.
//!
//! Complex fits run through the realified system: residuals stack real and
//! imaginary parts, and each complex parameter contributes the two real
//! columns prescribed by the Cauchy-Riemann equations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::Error;
use crate::monomial::homogeneous_basis;
use crate::tolerances::FIT_TOLERANCE;

/// Two-sided 95 percent quantile of the standard normal.
const WILSON_Z: f64 = 1.959963984540054;

/// Ground field for the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ground {
    Real,
    Complex,
}

/// Distribution of random target forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Independent standard normal coefficients.
    Gaussian,
    /// Gaussian draw scaled to unit norm.
    UnitSphere,
}

/// Optimizer settings for one rank decision.
#[derive(Clone, Copy, Debug)]
pub struct FitConfig {
    pub restarts: u32,
    pub max_iters: u32,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { restarts: 20, max_iters: 500, tolerance: FIT_TOLERANCE, seed: 0 }
    }
}

/// Monte Carlo settings for typical-rank fractions.
#[derive(Clone, Copy, Debug)]
pub struct McConfig {
    pub samples: u32,
    pub sampler: Sampler,
    pub seed: u64,
}

/// Outcome of one rank-at-most-`k` decision.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RankFit {
    pub k: usize,
    pub converged: bool,
    /// Best residual norm across starts.
    pub residual: f64,
    pub restarts_used: u32,
}

/// Fraction of random targets that fitted, with a Wilson 95 percent
/// confidence interval.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FractionEstimate {
    pub successes: u32,
    pub samples: u32,
    pub fraction: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// The degree-`d` power-sum model in `n + 1` variables, with the monomial
/// exponents and multinomial weights precomputed.
#[derive(Clone, Debug)]
pub struct PowerSumModel {
    vars: usize,
    d: u32,
    exps: Vec<Vec<u32>>,
    mults: Vec<f64>,
}

fn multinomial_f64(d: u32, beta: &[u32]) -> f64 {
    let mut rem = d;
    let mut out = 1.0f64;
    for &b in beta {
        for i in 1..=b {
            out = out * ((rem - b + i) as f64) / (i as f64);
        }
        rem -= b;
    }
    out
}

impl PowerSumModel {
    pub fn new(n: usize, d: u32) -> Result<Self, Error> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidInput(format!(
                "need at least one variable and degree one, got n = {n}, d = {d}"
            )));
        }
        let exps = homogeneous_basis(n + 1, d)?;
        let mults = exps.iter().map(|b| multinomial_f64(d, b)).collect();
        Ok(PowerSumModel { vars: n + 1, d, exps, mults })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Number of coefficients of a form.
    pub fn j(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    /// Coefficients of `(l . x)^d` for one real direction, weight one.
    pub fn power_coeffs_real(&self, l: &[f64]) -> Vec<f64> {
        assert_eq!(l.len(), self.vars);
        let pw = real_power_table(l, self.d as usize);
        self.exps
            .iter()
            .zip(&self.mults)
            .map(|(beta, &m)| {
                let mut v = m;
                for (s, &b) in beta.iter().enumerate() {
                    v *= pw[s][b as usize];
                }
                v
            })
            .collect()
    }

    /// Coefficients of `(l . x)^d` for one complex direction.
    pub fn power_coeffs_complex(&self, l: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(l.len(), self.vars);
        let pw = complex_power_table(l, self.d as usize);
        self.exps
            .iter()
            .zip(&self.mults)
            .map(|(beta, &m)| {
                let mut v = Complex64::new(m, 0.0);
                for (s, &b) in beta.iter().enumerate() {
                    v *= pw[s][b as usize];
                }
                v
            })
            .collect()
    }
}

fn real_power_table(l: &[f64], d: usize) -> Vec<Vec<f64>> {
    l.iter()
        .map(|&c| {
            let mut col = vec![1.0f64; d + 1];
            for e in 1..=d {
                col[e] = col[e - 1] * c;
            }
            col
        })
        .collect()
}

fn complex_power_table(l: &[Complex64], d: usize) -> Vec<Vec<Complex64>> {
    l.iter()
        .map(|&c| {
            let mut col = vec![Complex64::ONE; d + 1];
            for e in 1..=d {
                col[e] = col[e - 1] * c;
            }
            col
        })
        .collect()
}

/// Real parameter layout: `k` blocks of `[weight, l_0, ..., l_{vars-1}]`.
pub fn real_param_len(model: &PowerSumModel, k: usize) -> usize {
    k * (model.vars + 1)
}

/// Realified complex layout: `k` blocks of `[Re l_0, Im l_0, ...]`.
pub fn complex_param_len(model: &PowerSumModel, k: usize) -> usize {
    2 * k * model.vars
}

/// Residual `model(params) - target` and its Jacobian for the real model.
pub fn residual_jacobian_real(
    model: &PowerSumModel,
    target: &[f64],
    params: &[f64],
) -> (DVector<f64>, DMatrix<f64>) {
    let stride = model.vars + 1;
    assert_eq!(params.len() % stride, 0);
    assert_eq!(target.len(), model.j());
    let k = params.len() / stride;
    let j = model.j();
    let d = model.d as usize;
    let mut res = DVector::<f64>::from_iterator(j, target.iter().map(|&t| -t));
    let mut jac = DMatrix::<f64>::zeros(j, params.len());
    for i in 0..k {
        let block = &params[i * stride..(i + 1) * stride];
        let (weight, l) = (block[0], &block[1..]);
        let pw = real_power_table(l, d);
        for (row, (beta, &mult)) in model.exps.iter().zip(&model.mults).enumerate() {
            let mut prod = 1.0f64;
            for (s, &b) in beta.iter().enumerate() {
                prod *= pw[s][b as usize];
            }
            res[row] += weight * mult * prod;
            jac[(row, i * stride)] = mult * prod;
            for (m, &bm) in beta.iter().enumerate() {
                if bm == 0 {
                    continue;
                }
                let mut partial = bm as f64 * pw[m][bm as usize - 1];
                for (s, &b) in beta.iter().enumerate() {
                    if s != m {
                        partial *= pw[s][b as usize];
                    }
                }
                jac[(row, i * stride + 1 + m)] = weight * mult * partial;
            }
        }
    }
    (res, jac)
}

/// Residual and Jacobian for the realified complex model: rows stack real
/// then imaginary parts, and each complex parameter owns the column pair
/// `(Re g, Im g)` and `(-Im g, Re g)` for its holomorphic derivative `g`.
pub fn residual_jacobian_complex(
    model: &PowerSumModel,
    target: &[Complex64],
    params: &[f64],
) -> (DVector<f64>, DMatrix<f64>) {
    let vars = model.vars;
    let stride = 2 * vars;
    assert_eq!(params.len() % stride, 0);
    assert_eq!(target.len(), model.j());
    let k = params.len() / stride;
    let j = model.j();
    let d = model.d as usize;
    let mut res = DVector::<f64>::zeros(2 * j);
    for (row, &t) in target.iter().enumerate() {
        res[row] = -t.re;
        res[j + row] = -t.im;
    }
    let mut jac = DMatrix::<f64>::zeros(2 * j, params.len());
    for i in 0..k {
        let block = &params[i * stride..(i + 1) * stride];
        let l: Vec<Complex64> =
            (0..vars).map(|s| Complex64::new(block[2 * s], block[2 * s + 1])).collect();
        let pw = complex_power_table(&l, d);
        for (row, (beta, &mult)) in model.exps.iter().zip(&model.mults).enumerate() {
            let mut prod = Complex64::new(mult, 0.0);
            for (s, &b) in beta.iter().enumerate() {
                prod *= pw[s][b as usize];
            }
            res[row] += prod.re;
            res[j + row] += prod.im;
            for (m, &bm) in beta.iter().enumerate() {
                if bm == 0 {
                    continue;
                }
                let mut g = Complex64::new(mult * bm as f64, 0.0) * pw[m][bm as usize - 1];
                for (s, &b) in beta.iter().enumerate() {
                    if s != m {
                        g *= pw[s][b as usize];
                    }
                }
                let (cre, cim) = (i * stride + 2 * m, i * stride + 2 * m + 1);
                jac[(row, cre)] = g.re;
                jac[(j + row, cre)] = g.im;
                jac[(row, cim)] = -g.im;
                jac[(j + row, cim)] = g.re;
            }
        }
    }
    (res, jac)
}

/// Damped least squares with multiplicative damping control.  Returns the
/// final residual norm and whether it reached `stop_norm`.
fn lm_minimize<F>(
    mut theta: DVector<f64>,
    mut eval: F,
    max_iters: u32,
    stop_norm: f64,
) -> (f64, bool)
where
    F: FnMut(&DVector<f64>) -> (DVector<f64>, DMatrix<f64>),
{
    let (mut res, mut jac) = eval(&theta);
    let mut cost = res.norm();
    let mut damp = 1e-3f64;
    for _ in 0..max_iters {
        if cost <= stop_norm {
            return (cost, true);
        }
        let jt = jac.transpose();
        let hess = &jt * &jac;
        let grad = &jt * &res;
        let mut stepped = false;
        while damp <= 1e12 {
            let mut damped = hess.clone();
            for i in 0..damped.nrows() {
                damped[(i, i)] += damp;
            }
            if let Some(chol) = damped.cholesky() {
                let step = chol.solve(&grad);
                let cand = &theta - &step;
                let (cand_res, cand_jac) = eval(&cand);
                let cand_cost = cand_res.norm();
                if cand_cost < cost {
                    theta = cand;
                    res = cand_res;
                    jac = cand_jac;
                    cost = cand_cost;
                    damp = (damp / 10.0).max(1e-14);
                    stepped = true;
                    break;
                }
            }
            damp *= 10.0;
        }
        if !stepped {
            break;
        }
    }
    (cost, cost <= stop_norm)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn normals(rng: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| StandardNormal.sample(rng)).collect()
}

fn target_norm_real(target: &[f64]) -> f64 {
    target.iter().map(|t| t * t).sum::<f64>().sqrt()
}

fn target_norm_complex(target: &[Complex64]) -> f64 {
    target.iter().map(|t| t.norm_sqr()).sum::<f64>().sqrt()
}

/// Linear fallback once `k >= J`: `J` generic powers already span the space,
/// so weights alone solve the fit.
fn linear_fit_real(model: &PowerSumModel, target: &[f64], k: usize, seed: u64) -> f64 {
    let j = model.j();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut a = DMatrix::<f64>::zeros(j, k);
    for col in 0..k {
        let l = normals(&mut rng, model.vars);
        let coeffs = model.power_coeffs_real(&l);
        for row in 0..j {
            a[(row, col)] = coeffs[row];
        }
    }
    let b = DVector::<f64>::from_column_slice(target);
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(w) => (&a * w - &b).norm(),
        Err(_) => f64::INFINITY,
    }
}

fn linear_fit_complex(model: &PowerSumModel, target: &[Complex64], k: usize, seed: u64) -> f64 {
    let j = model.j();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut a = DMatrix::<Complex64>::zeros(j, k);
    for col in 0..k {
        let re = normals(&mut rng, model.vars);
        let im = normals(&mut rng, model.vars);
        let l: Vec<Complex64> =
            re.iter().zip(&im).map(|(&x, &y)| Complex64::new(x, y)).collect();
        let coeffs = model.power_coeffs_complex(&l);
        for row in 0..j {
            a[(row, col)] = coeffs[row];
        }
    }
    let b = DVector::<Complex64>::from_column_slice(target);
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(w) => (&a * w - &b).norm(),
        Err(_) => f64::INFINITY,
    }
}

/// Decides whether a real form fits as `k` weighted powers.
pub fn fit_rank_real(
    model: &PowerSumModel,
    target: &[f64],
    k: usize,
    config: &FitConfig,
) -> Result<RankFit, Error> {
    if target.len() != model.j() {
        return Err(Error::DimensionMismatch { expected: model.j(), got: target.len() });
    }
    let scale = target_norm_real(target);
    let stop = config.tolerance * scale.max(1.0);
    if scale == 0.0 {
        return Ok(RankFit { k, converged: true, residual: 0.0, restarts_used: 0 });
    }
    if k == 0 {
        return Ok(RankFit { k, converged: scale <= stop, residual: scale, restarts_used: 0 });
    }
    if k >= model.j() {
        let residual = linear_fit_real(model, target, k, config.seed);
        return Ok(RankFit { k, converged: residual <= stop, residual, restarts_used: 0 });
    }
    let mut best = f64::INFINITY;
    for restart in 0..config.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        let init = DVector::<f64>::from_vec(normals(&mut rng, real_param_len(model, k)));
        let (residual, converged) = lm_minimize(
            init,
            |theta| residual_jacobian_real(model, target, theta.as_slice()),
            config.max_iters,
            stop,
        );
        best = best.min(residual);
        if converged {
            return Ok(RankFit { k, converged: true, residual, restarts_used: restart + 1 });
        }
    }
    Ok(RankFit { k, converged: false, residual: best, restarts_used: config.restarts.max(1) })
}

/// Decides whether a complex form fits as `k` powers.
pub fn fit_rank_complex(
    model: &PowerSumModel,
    target: &[Complex64],
    k: usize,
    config: &FitConfig,
) -> Result<RankFit, Error> {
    if target.len() != model.j() {
        return Err(Error::DimensionMismatch { expected: model.j(), got: target.len() });
    }
    let scale = target_norm_complex(target);
    let stop = config.tolerance * scale.max(1.0);
    if scale == 0.0 {
        return Ok(RankFit { k, converged: true, residual: 0.0, restarts_used: 0 });
    }
    if k == 0 {
        return Ok(RankFit { k, converged: scale <= stop, residual: scale, restarts_used: 0 });
    }
    if k >= model.j() {
        let residual = linear_fit_complex(model, target, k, config.seed);
        return Ok(RankFit { k, converged: residual <= stop, residual, restarts_used: 0 });
    }
    let mut best = f64::INFINITY;
    for restart in 0..config.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        let init = DVector::<f64>::from_vec(normals(&mut rng, complex_param_len(model, k)));
        let (residual, converged) = lm_minimize(
            init,
            |theta| residual_jacobian_complex(model, target, theta.as_slice()),
            config.max_iters,
            stop,
        );
        best = best.min(residual);
        if converged {
            return Ok(RankFit { k, converged: true, residual, restarts_used: restart + 1 });
        }
    }
    Ok(RankFit { k, converged: false, residual: best, restarts_used: config.restarts.max(1) })
}

pub fn is_rank_at_most_real(
    model: &PowerSumModel,
    target: &[f64],
    k: usize,
    config: &FitConfig,
) -> Result<bool, Error> {
    Ok(fit_rank_real(model, target, k, config)?.converged)
}

pub fn is_rank_at_most_complex(
    model: &PowerSumModel,
    target: &[Complex64],
    k: usize,
    config: &FitConfig,
) -> Result<bool, Error> {
    Ok(fit_rank_complex(model, target, k, config)?.converged)
}

/// Wilson score interval at 95 percent for a binomial fraction.
pub fn wilson_interval(successes: u32, samples: u32) -> (f64, f64) {
    if samples == 0 {
        return (0.0, 1.0);
    }
    let n = samples as f64;
    let p = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = p + z2 / (2.0 * n);
    let spread = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (((center - spread) / denom).max(0.0), ((center + spread) / denom).min(1.0))
}

/// Estimates the measure of forms with rank at most `k` by sampling targets
/// and fitting each one.
///
/// Every sample derives its own generator and optimizer seed from the Monte
/// Carlo seed, so estimates are reproducible and samples are independent.
pub fn rank_fraction(
    model: &PowerSumModel,
    ground: Ground,
    k: usize,
    mc: &McConfig,
    fit: &FitConfig,
) -> Result<FractionEstimate, Error> {
    let j = model.j();
    let mut successes = 0u32;
    for idx in 0..mc.samples {
        let sample_seed = splitmix64(mc.seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
        let sub_fit = FitConfig { seed: splitmix64(sample_seed), ..*fit };
        let ok = match ground {
            Ground::Real => {
                let mut target = normals(&mut rng, j);
                if mc.sampler == Sampler::UnitSphere {
                    let norm = target_norm_real(&target);
                    if norm > 0.0 {
                        for t in &mut target {
                            *t /= norm;
                        }
                    }
                }
                is_rank_at_most_real(model, &target, k, &sub_fit)?
            }
            Ground::Complex => {
                let re = normals(&mut rng, j);
                let im = normals(&mut rng, j);
                let mut target: Vec<Complex64> =
                    re.iter().zip(&im).map(|(&x, &y)| Complex64::new(x, y)).collect();
                if mc.sampler == Sampler::UnitSphere {
                    let norm = target_norm_complex(&target);
                    if norm > 0.0 {
                        for t in &mut target {
                            *t /= norm;
                        }
                    }
                }
                is_rank_at_most_complex(model, &target, k, &sub_fit)?
            }
        };
        if ok {
            successes += 1;
        }
    }
    let fraction = if mc.samples == 0 { 0.0 } else { successes as f64 / mc.samples as f64 };
    let (wilson_low, wilson_high) = wilson_interval(successes, mc.samples);
    Ok(FractionEstimate { successes, samples: mc.samples, fraction, wilson_low, wilson_high })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::{JACOBIAN_AGREEMENT, JACOBIAN_STEP};

    #[test]
    fn multinomials_are_exact_for_small_degrees() {
        assert_eq!(multinomial_f64(3, &[3, 0]), 1.0);
        assert_eq!(multinomial_f64(3, &[2, 1]), 3.0);
        assert_eq!(multinomial_f64(4, &[2, 2]), 6.0);
        assert_eq!(multinomial_f64(4, &[1, 1, 2]), 12.0);
        assert_eq!(multinomial_f64(5, &[1, 1, 1, 2]), 60.0);
    }

    #[test]
    fn power_coeffs_expand_the_binomial() {
        let model = PowerSumModel::new(1, 3).unwrap();
        // (x + 2y)^3 = x^3 + 6 x^2 y + 12 x y^2 + 8 y^3
        let coeffs = model.power_coeffs_real(&[1.0, 2.0]);
        assert_eq!(coeffs, vec![1.0, 6.0, 12.0, 8.0]);
        let c = model.power_coeffs_complex(&[Complex64::ONE, Complex64::I]);
        // (x + iy)^3 = x^3 + 3i x^2 y - 3 x y^2 - i y^3
        assert!((c[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((c[1] - Complex64::new(0.0, 3.0)).norm() < 1e-12);
        assert!((c[2] - Complex64::new(-3.0, 0.0)).norm() < 1e-12);
        assert!((c[3] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn jacobians_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..100 {
            let n = 1 + (trial % 2) as usize;
            let d = 2 + (trial % 3) as u32;
            let k = 1 + (trial % 2) as usize;
            let model = PowerSumModel::new(n, d).unwrap();
            let real = trial % 2 == 0;
            let plen = if real { real_param_len(&model, k) } else { complex_param_len(&model, k) };
            let params = normals(&mut rng, plen);
            let target = normals(&mut rng, model.j());
            let ctarget: Vec<Complex64> = target
                .iter()
                .map(|&t| Complex64::new(t, 0.5 * t))
                .collect();
            let eval = |p: &[f64]| -> (DVector<f64>, DMatrix<f64>) {
                if real {
                    residual_jacobian_real(&model, &target, p)
                } else {
                    residual_jacobian_complex(&model, &ctarget, p)
                }
            };
            let (_, jac) = eval(&params);
            for col in 0..plen {
                let mut hi = params.clone();
                let mut lo = params.clone();
                hi[col] += JACOBIAN_STEP;
                lo[col] -= JACOBIAN_STEP;
                let (rh, _) = eval(&hi);
                let (rl, _) = eval(&lo);
                for row in 0..rh.len() {
                    let fd = (rh[row] - rl[row]) / (2.0 * JACOBIAN_STEP);
                    let an = jac[(row, col)];
                    let tol = JACOBIAN_AGREEMENT * (1.0 + an.abs());
                    assert!(
                        (fd - an).abs() <= tol,
                        "trial {trial} row {row} col {col}: fd {fd} vs analytic {an}"
                    );
                }
            }
        }
    }

    #[test]
    fn planted_decompositions_are_recovered() {
        let config = FitConfig::default();
        // Binary cubic with two planted directions.
        let model = PowerSumModel::new(1, 3).unwrap();
        let a = model.power_coeffs_real(&[1.0, 2.0]);
        let b = model.power_coeffs_real(&[1.0, -1.0]);
        let target: Vec<f64> = a.iter().zip(&b).map(|(x, y)| 0.7 * x - 1.3 * y).collect();
        let fit = fit_rank_real(&model, &target, 2, &config).unwrap();
        assert!(fit.converged, "residual {}", fit.residual);
        // A generic rank-2 form is far from the rank-1 cone.
        let below = fit_rank_real(&model, &target, 1, &config).unwrap();
        assert!(!below.converged);
        assert!(below.residual > 1e-2);
    }

    #[test]
    fn zero_target_and_rank_zero_edge_cases() {
        let model = PowerSumModel::new(1, 3).unwrap();
        let zero = vec![0.0; model.j()];
        let config = FitConfig::default();
        for k in [0usize, 1, 3] {
            let fit = fit_rank_real(&model, &zero, k, &config).unwrap();
            assert!(fit.converged);
            assert_eq!(fit.residual, 0.0);
        }
        let nonzero = vec![1.0, 0.0, 0.0, 0.0];
        let fit = fit_rank_real(&model, &nonzero, 0, &config).unwrap();
        assert!(!fit.converged);
        let czero = vec![Complex64::ZERO; model.j()];
        assert!(fit_rank_complex(&model, &czero, 0, &config).unwrap().converged);
    }

    #[test]
    fn saturated_rank_uses_the_linear_path() {
        let config = FitConfig::default();
        let model = PowerSumModel::new(1, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let target = normals(&mut rng, model.j());
        let fit = fit_rank_real(&model, &target, model.j(), &config).unwrap();
        assert!(fit.converged, "residual {}", fit.residual);
        assert_eq!(fit.restarts_used, 0);
        let ctarget: Vec<Complex64> = (0..model.j())
            .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
            .collect();
        let cfit = fit_rank_complex(&model, &ctarget, model.j() + 2, &config).unwrap();
        assert!(cfit.converged, "residual {}", cfit.residual);
    }

    #[test]
    fn complex_binary_cubics_have_generic_rank_two() {
        let model = PowerSumModel::new(1, 3).unwrap();
        let mc = McConfig { samples: 30, sampler: Sampler::Gaussian, seed: 9 };
        let est = rank_fraction(&model, Ground::Complex, 2, &mc, &FitConfig::default()).unwrap();
        assert!(est.fraction >= 0.9, "fraction {}", est.fraction);
    }

    #[test]
    fn real_binary_cubics_split_between_two_typical_ranks() {
        let model = PowerSumModel::new(1, 3).unwrap();
        let mc = McConfig { samples: 60, sampler: Sampler::Gaussian, seed: 13 };
        let config = FitConfig::default();
        let at2 = rank_fraction(&model, Ground::Real, 2, &mc, &config).unwrap();
        assert!(
            at2.fraction > 0.05 && at2.fraction < 0.95,
            "rank-2 fraction {} should be strictly interior",
            at2.fraction
        );
        let at3 = rank_fraction(&model, Ground::Real, 3, &mc, &config).unwrap();
        assert!(at3.fraction > at2.fraction);
        assert!(at3.wilson_low > 0.8, "rank-3 wilson low {}", at3.wilson_low);
    }

    #[test]
    fn fractions_are_deterministic() {
        let model = PowerSumModel::new(1, 3).unwrap();
        let mc = McConfig { samples: 10, sampler: Sampler::UnitSphere, seed: 77 };
        let a = rank_fraction(&model, Ground::Real, 2, &mc, &FitConfig::default()).unwrap();
        let b = rank_fraction(&model, Ground::Real, 2, &mc, &FitConfig::default()).unwrap();
        assert_eq!(a.successes, b.successes);
        assert_eq!(a.fraction, b.fraction);
        assert_eq!(a.wilson_low, b.wilson_low);
    }

    #[test]
    fn wilson_interval_properties() {
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
        let (lo, hi) = wilson_interval(0, 20);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.3);
        let (lo, hi) = wilson_interval(20, 20);
        assert!(lo > 0.7 && lo < 1.0);
        assert_eq!(hi, 1.0);
        for &(s, m) in &[(3u32, 10u32), (7, 10), (50, 100), (1, 2)] {
            let (lo, hi) = wilson_interval(s, m);
            let p = s as f64 / m as f64;
            assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
            // Complement symmetry of the score interval.
            let (clo, chi) = wilson_interval(m - s, m);
            assert!((lo - (1.0 - chi)).abs() < 1e-12);
            assert!((hi - (1.0 - clo)).abs() < 1e-12);
        }
        // More samples tighten the interval at the same fraction.
        let (lo_small, hi_small) = wilson_interval(5, 10);
        let (lo_big, hi_big) = wilson_interval(500, 1000);
        assert!(hi_big - lo_big < hi_small - lo_small);
    }

    #[test]
    fn mismatched_target_lengths_are_rejected() {
        let model = PowerSumModel::new(1, 3).unwrap();
        assert!(matches!(
            fit_rank_real(&model, &[1.0], 1, &FitConfig::default()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            fit_rank_complex(&model, &[Complex64::ONE], 1, &FitConfig::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
