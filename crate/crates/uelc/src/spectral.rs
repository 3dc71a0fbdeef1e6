//! Markov generator of the walk on the weighted line graph and estimation of
//! its second-smallest eigenvalue, which bounds the walk length from below.
//!
//! The generator is `M = I - Q` where `Q` is the link transition operator.
//! `M` is symmetric positive semi-definite with spectrum in `[0, 2]`; the
//! uniform vector is an exact eigenvector with eigenvalue 0 (the operator is
//! doubly stochastic by construction). `1/lambda_2` is the time at which the
//! two coarsest communities have each internally mixed, so it serves as a
//! lower bound for the step number.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::linkdyn::LinkTransition;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("eigensolver did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("lambda_2 is numerically zero; the walk domain is disconnected")]
    Disconnected,
    #[error("operator must have at least 2 edges, got {0}")]
    TooSmall(usize),
}

/// Matrix-free application of `M = I - Q` backed by a [`LinkTransition`].
pub struct MarkovGenerator<'a> {
    q: &'a LinkTransition,
}

impl<'a> MarkovGenerator<'a> {
    pub fn new(q: &'a LinkTransition) -> Self {
        MarkovGenerator { q }
    }

    pub fn dim(&self) -> usize {
        self.q.edge_count()
    }

    /// `y = x - Q x` (Q is symmetric, so left and right application agree).
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.q.apply(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = xi - *yi;
        }
    }
}

/// How the walk length is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepMode {
    /// Always use the cap; avoids the eigensolver entirely.
    Fixed,
    /// Use `ceil(1/lambda_2)` of the current subnetwork, capped.
    Spectral,
}

/// Step-number policy shared by link and node detection.
#[derive(Debug, Clone, Copy)]
pub struct StepPolicy {
    pub mode: StepMode,
    pub cap: usize,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            mode: StepMode::Fixed,
            cap: 100,
            tol: 1e-8,
            max_iter: 600,
        }
    }
}

impl StepPolicy {
    pub fn fixed(cap: usize) -> Self {
        StepPolicy {
            mode: StepMode::Fixed,
            cap,
            ..Default::default()
        }
    }

    pub fn spectral(cap: usize) -> Self {
        StepPolicy {
            mode: StepMode::Spectral,
            cap,
            ..Default::default()
        }
    }
}

/// Converged estimate of `lambda_2` and the work it took.
#[derive(Debug, Clone, Copy)]
pub struct Lambda2Estimate {
    pub lambda2: f64,
    pub iterations: usize,
}

/// Walk length decided by [`step_bound`].
#[derive(Debug, Clone, Copy)]
pub struct StepBound {
    pub steps: usize,
    /// Present when the spectral estimate ran and converged.
    pub lambda2: Option<f64>,
    /// True when spectral mode fell back to the cap after solver failure.
    pub fell_back: bool,
}

/// Estimates the second-smallest eigenvalue of `M = I - Q`.
///
/// Lanczos with full reorthogonalization, run inside the mean-zero subspace:
/// the known eigenvector (uniform, eigenvalue 0) is deflated exactly by
/// re-centering, since `Q` preserves zero-sum vectors. Ritz values come from
/// Sturm bisection on the tridiagonal matrix. Converges to machine precision
/// once the Krylov space is exhausted, so graphs with `m <= max_iter` are
/// solved exactly.
pub fn estimate_lambda2(
    gen: &MarkovGenerator<'_>,
    tol: f64,
    max_iter: usize,
) -> Result<Lambda2Estimate, SpectralError> {
    let n = gen.dim();
    if n < 2 {
        return Err(SpectralError::TooSmall(n));
    }
    // The mean-zero subspace has dimension n - 1.
    let krylov_cap = (n - 1).min(max_iter.max(1));

    // Deterministic pseudo-random start; a fixed seed keeps runs identical.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ebc_5eed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    center(&mut v);
    let norm = dot(&v, &v).sqrt();
    v.iter_mut().for_each(|x| *x /= norm);

    let mut alphas: Vec<f64> = Vec::with_capacity(krylov_cap);
    let mut betas: Vec<f64> = Vec::new();
    let mut basis: Vec<Vec<f64>> = vec![v.clone()];
    let mut w = vec![0.0; n];
    let mut v_prev: Vec<f64> = Vec::new();
    let mut beta_prev = 0.0;
    let mut theta_prev = f64::INFINITY;
    let mut stable = 0usize;

    for k in 0..krylov_cap {
        gen.apply(&v, &mut w);
        center(&mut w);
        if k > 0 {
            for (wi, pi) in w.iter_mut().zip(&v_prev) {
                *wi -= beta_prev * pi;
            }
        }
        let a = dot(&w, &v);
        alphas.push(a);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi -= a * vi;
        }
        // Full reorthogonalization keeps the basis clean enough for the
        // tridiagonal eigenvalues to track the operator's.
        for b in &basis {
            let proj = dot(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
        center(&mut w);

        let theta = smallest_tridiag_eigenvalue(&alphas, &betas);
        if (theta - theta_prev).abs() <= tol * 0.1 {
            stable += 1;
            if stable >= 2 {
                return finish(theta, k + 1);
            }
        } else {
            stable = 0;
        }
        theta_prev = theta;

        let beta = dot(&w, &w).sqrt();
        if beta < 1e-13 {
            // Krylov space exhausted: the Ritz values are exact.
            return finish(theta, k + 1);
        }
        if k + 1 < krylov_cap {
            betas.push(beta);
            v_prev = v.clone();
            beta_prev = beta;
            v = w.iter().map(|wi| wi / beta).collect();
            basis.push(v.clone());
        }
    }

    if krylov_cap == n - 1 {
        // Ran the full subspace: exact up to rounding even without the
        // stability check having fired.
        return finish(theta_prev, krylov_cap);
    }
    Err(SpectralError::NonConvergence(max_iter))
}

fn finish(theta: f64, iterations: usize) -> Result<Lambda2Estimate, SpectralError> {
    if theta < 1e-10 {
        return Err(SpectralError::Disconnected);
    }
    Ok(Lambda2Estimate {
        lambda2: theta,
        iterations,
    })
}

/// Picks the walk length: the cap in fixed mode, `min(ceil(1/lambda_2), cap)`
/// in spectral mode. Solver failure in spectral mode falls back to the cap
/// with the `fell_back` flag raised.
pub fn step_bound(policy: &StepPolicy, gen: Option<&MarkovGenerator<'_>>) -> StepBound {
    match policy.mode {
        StepMode::Fixed => StepBound {
            steps: policy.cap,
            lambda2: None,
            fell_back: false,
        },
        StepMode::Spectral => {
            let gen = gen.expect("spectral step mode requires a generator");
            match estimate_lambda2(gen, policy.tol, policy.max_iter) {
                Ok(est) => {
                    // The estimate carries ~tol of error; without slack,
                    // 1/lambda_2 landing a hair above an integer would bump
                    // the ceiling by one step.
                    let bound = (1.0 / est.lambda2 - 1e-6).ceil() as usize;
                    StepBound {
                        steps: bound.max(1).min(policy.cap),
                        lambda2: Some(est.lambda2),
                        fell_back: false,
                    }
                }
                Err(_) => StepBound {
                    steps: policy.cap,
                    lambda2: None,
                    fell_back: true,
                },
            }
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projects out the uniform component in place.
fn center(v: &mut [f64]) {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
}

/// Smallest eigenvalue of the symmetric tridiagonal matrix with diagonal
/// `alphas` and off-diagonal `betas`, by bisection on Sturm sequence counts.
#[allow(clippy::needless_range_loop)]
fn smallest_tridiag_eigenvalue(alphas: &[f64], betas: &[f64]) -> f64 {
    let k = alphas.len();
    debug_assert_eq!(betas.len() + 1, k.max(1));
    if k == 1 {
        return alphas[0];
    }
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..k {
        let r = betas.get(i.wrapping_sub(1)).map_or(0.0, |b| b.abs())
            + betas.get(i).map_or(0.0, |b| b.abs());
        lo = lo.min(alphas[i] - r);
        hi = hi.max(alphas[i] + r);
    }
    // Count of eigenvalues below x via the LDL^T sign recurrence.
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut d = alphas[0] - x;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..k {
            let denom = if d == 0.0 { 1e-300 } else { d };
            d = alphas[i] - x - betas[i - 1] * betas[i - 1] / denom;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    };
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
