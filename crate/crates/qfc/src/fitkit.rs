//! Damped least-squares (Levenberg–Marquardt) fitting.
//!
//! Minimizes Σᵢ wᵢ·rᵢ(p)² for a user-supplied residual vector r(p) with
//! numeric central-difference Jacobians, box bounds (clamping with
//! active-set freezing), covariance from (JᵀWJ)⁻¹ at the optimum, and
//! profile-likelihood confidence intervals that re-optimize the remaining
//! parameters at each probe point.
//!
//! The optimizer itself uses no random numbers; [`lm_fit_multistart`] is an
//! opt-in seeded helper on top of it.

use nalgebra::DMatrix;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FitError {
    #[error("residual vector is empty")]
    EmptyResidual,
    #[error("{residuals} residuals for {params} parameters; need residuals >= parameters")]
    Underdetermined { residuals: usize, params: usize },
    #[error("residuals are not finite at the initial parameters")]
    NonFiniteInit,
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("weights must be positive and finite")]
    InvalidWeights,
    #[error("residual length changed from {expected} to {got} during the fit")]
    ResidualLengthChanged { expected: usize, got: usize },
    #[error("damping exceeded {cap:.3e} without an acceptable step; last good cost {cost:.6e}")]
    DampingExceeded {
        cap: f64,
        cost: f64,
        params: Vec<f64>,
    },
    #[error("parameter index {index} out of range for {params} parameters")]
    BadParameterIndex { index: usize, params: usize },
    #[error("confidence level must be in (0, 1), got {0}")]
    BadLevel(f64),
    #[error("profile confidence interval requested before a successful fit")]
    ProfileWithoutFit,
}

/// How an [`lm_fit`] run terminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    StepTolerance,
    GradientTolerance,
    CostTolerance,
    MaxIterations,
}

/// One end of a confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntervalEnd {
    /// Profile crossing located at this parameter value.
    Value(f64),
    /// The search ran into a parameter bound before the profile crossed;
    /// the interval is one-sided.
    AtBound(f64),
    /// The profile never reached the target within the search range.
    Open,
}

impl IntervalEnd {
    pub fn value(&self) -> Option<f64> {
        match self {
            IntervalEnd::Value(v) | IntervalEnd::AtBound(v) => Some(*v),
            IntervalEnd::Open => None,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, IntervalEnd::Value(_))
    }
}

/// Profile-likelihood confidence interval for one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceInterval {
    pub level: f64,
    pub lower: IntervalEnd,
    pub upper: IntervalEnd,
}

impl ConfidenceInterval {
    /// Whether `x` lies inside the interval; open or bound-limited sides
    /// extend to infinity resp. the bound.
    pub fn contains(&self, x: f64) -> bool {
        let lo_ok = match self.lower {
            IntervalEnd::Value(v) | IntervalEnd::AtBound(v) => x >= v,
            IntervalEnd::Open => true,
        };
        let hi_ok = match self.upper {
            IntervalEnd::Value(v) | IntervalEnd::AtBound(v) => x <= v,
            IntervalEnd::Open => true,
        };
        lo_ok && hi_ok
    }

    pub fn is_two_sided(&self) -> bool {
        self.lower.is_closed() && self.upper.is_closed()
    }
}

/// Accepted-iteration diagnostic record.
#[derive(Debug, Clone, Copy)]
pub struct TraceRow {
    pub iteration: usize,
    pub cost: f64,
    pub damping: f64,
}

/// A weighted nonlinear least-squares problem.
///
/// `residual` maps parameters to the residual vector; the cost is
/// Σᵢ wᵢ·rᵢ², with unit weights unless set. Bounds default to ±∞.
pub struct FitProblem<F> {
    residual: F,
    init: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    weights: Option<Vec<f64>>,
    pub max_iterations: usize,
    /// Step convergence: |δⱼ| ≤ tol·(|pⱼ| + tol) for every parameter.
    pub step_tolerance: f64,
    /// Scale-free gradient (orthogonality) convergence threshold.
    pub gradient_tolerance: f64,
    /// Relative cost-decrease convergence threshold.
    pub cost_tolerance: f64,
    /// Record accepted iterations for diagnostics.
    pub trace: bool,
}

impl<F> FitProblem<F>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    pub fn new(init: Vec<f64>, residual: F) -> Self {
        let n = init.len();
        Self {
            residual,
            init,
            lower: vec![f64::NEG_INFINITY; n],
            upper: vec![f64::INFINITY; n],
            weights: None,
            max_iterations: 200,
            step_tolerance: 1e-10,
            gradient_tolerance: 1e-10,
            cost_tolerance: 1e-12,
            trace: false,
        }
    }

    pub fn bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, FitError> {
        let n = self.init.len();
        if lower.len() != n || upper.len() != n {
            return Err(FitError::InvalidBounds(format!(
                "bound length {}/{} does not match {} parameters",
                lower.len(),
                upper.len(),
                n
            )));
        }
        for j in 0..n {
            if !(lower[j] <= upper[j]) {
                return Err(FitError::InvalidBounds(format!(
                    "lower[{j}] = {} above upper[{j}] = {}",
                    lower[j], upper[j]
                )));
            }
            if self.init[j] < lower[j] || self.init[j] > upper[j] {
                return Err(FitError::InvalidBounds(format!(
                    "initial value {} outside [{}, {}] for parameter {j}",
                    self.init[j], lower[j], upper[j]
                )));
            }
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn weights(mut self, weights: Vec<f64>) -> Result<Self, FitError> {
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(FitError::InvalidWeights);
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn n_params(&self) -> usize {
        self.init.len()
    }

    fn weight(&self, i: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[i])
    }

    fn cost_of(&self, r: &[f64]) -> f64 {
        r.iter()
            .enumerate()
            .map(|(i, ri)| self.weight(i) * ri * ri)
            .sum()
    }
}

/// Result of an [`lm_fit`] run.
#[derive(Debug, Clone)]
pub struct FitResult {
    pub params: Vec<f64>,
    /// Final weighted cost Σ wᵢrᵢ².
    pub cost: f64,
    /// (JᵀWJ)⁻¹ at the optimum, symmetric positive semidefinite.
    pub covariance: DMatrix<f64>,
    /// Profile-likelihood intervals; populated by [`profile_intervals`].
    pub intervals: Vec<Option<ConfidenceInterval>>,
    pub status: Convergence,
    pub iterations: usize,
    pub n_residuals: usize,
    pub trace: Vec<TraceRow>,
}

impl FitResult {
    pub fn converged(&self) -> bool {
        self.status != Convergence::MaxIterations
    }

    /// 1σ standard error for parameter `j` from the covariance diagonal.
    pub fn std_error(&self, j: usize) -> f64 {
        self.covariance[(j, j)].max(0.0).sqrt()
    }
}

const DAMPING_INCREASE: f64 = 10.0;
const DAMPING_DECREASE: f64 = 10.0;
const DAMPING_CAP: f64 = 1e16;

/// Central-difference Jacobian of `f` at `p`, step max(1e-6·|pⱼ|, 1e-9)
/// per parameter. Falls back to a one-sided difference against bounds.
pub fn numeric_jacobian<F>(
    f: &F,
    p: &[f64],
    lower: &[f64],
    upper: &[f64],
) -> Result<DMatrix<f64>, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = p.len();
    let r0 = f(p);
    let m = r0.len();
    let mut jac = DMatrix::zeros(m, n);
    let mut work = p.to_vec();
    for j in 0..n {
        let h = (1e-6 * p[j].abs()).max(1e-9);
        let up_ok = p[j] + h <= upper[j];
        let dn_ok = p[j] - h >= lower[j];
        let col: Vec<f64> = if up_ok && dn_ok {
            work[j] = p[j] + h;
            let rp = f(&work);
            work[j] = p[j] - h;
            let rm = f(&work);
            work[j] = p[j];
            if rp.len() != m || rm.len() != m {
                return Err(FitError::ResidualLengthChanged {
                    expected: m,
                    got: rp.len().max(rm.len()),
                });
            }
            rp.iter()
                .zip(&rm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect()
        } else if up_ok {
            work[j] = p[j] + h;
            let rp = f(&work);
            work[j] = p[j];
            rp.iter().zip(&r0).map(|(a, b)| (a - b) / h).collect()
        } else {
            work[j] = p[j] - h;
            let rm = f(&work);
            work[j] = p[j];
            r0.iter().zip(&rm).map(|(a, b)| (a - b) / h).collect()
        };
        for i in 0..m {
            jac[(i, j)] = col[i];
        }
    }
    Ok(jac)
}

/// Run the Levenberg–Marquardt iteration to convergence.
///
/// Damping is multiplied by 10 on a rejected step and divided by 10 on an
/// accepted one, starting from 1e-3·max diag(JᵀWJ). Parameters are clamped
/// to their bounds after each step; parameters pinned at a bound with the
/// gradient pointing outward are frozen out of the linear solve.
/// Deterministic given identical inputs; the cost of accepted steps is
/// monotone non-increasing.
pub fn lm_fit<F>(problem: &FitProblem<F>) -> Result<FitResult, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = problem.init.len();
    let mut p = problem.init.clone();
    let mut r = (problem.residual)(&p);
    let m = r.len();
    if m == 0 {
        return Err(FitError::EmptyResidual);
    }
    if m < n {
        return Err(FitError::Underdetermined {
            residuals: m,
            params: n,
        });
    }
    if let Some(w) = &problem.weights {
        if w.len() != m {
            return Err(FitError::InvalidBounds(format!(
                "{} weights for {} residuals",
                w.len(),
                m
            )));
        }
    }
    if r.iter().any(|v| !v.is_finite()) {
        return Err(FitError::NonFiniteInit);
    }

    let mut cost = problem.cost_of(&r);
    let mut lambda = f64::NAN; // set from the first Jacobian
    let mut status = Convergence::MaxIterations;
    let mut iterations = 0;
    let mut trace = Vec::new();

    for iter in 0..problem.max_iterations {
        iterations = iter + 1;
        let jac = numeric_jacobian(&problem.residual, &p, &problem.lower, &problem.upper)?;

        // Gradient of the cost (up to the factor 2): g = JᵀWr.
        let mut grad = vec![0.0; n];
        let mut col_norm = vec![0.0; n];
        for j in 0..n {
            let mut g = 0.0;
            let mut c2 = 0.0;
            for i in 0..m {
                let w = problem.weight(i);
                g += w * jac[(i, j)] * r[i];
                c2 += w * jac[(i, j)] * jac[(i, j)];
            }
            grad[j] = g;
            col_norm[j] = c2.sqrt();
        }

        // Scale-free orthogonality test (also catches an exact fit).
        let sqrt_cost = cost.sqrt();
        let ortho = grad
            .iter()
            .zip(&col_norm)
            .map(|(g, c)| {
                if *c > 0.0 && sqrt_cost > 0.0 {
                    g.abs() / (c * sqrt_cost)
                } else {
                    0.0
                }
            })
            .fold(0.0f64, f64::max);
        if cost == 0.0 || ortho < problem.gradient_tolerance {
            status = Convergence::GradientTolerance;
            break;
        }

        // Active set: frozen when pinned at a bound with an outward push.
        let free: Vec<usize> = (0..n)
            .filter(|&j| {
                let at_lo = p[j] <= problem.lower[j] && grad[j] > 0.0;
                let at_hi = p[j] >= problem.upper[j] && grad[j] < 0.0;
                !(at_lo || at_hi)
            })
            .collect();
        if free.is_empty() {
            status = Convergence::GradientTolerance;
            break;
        }

        let nf = free.len();
        let mut a = DMatrix::zeros(nf, nf);
        for (aj, &j) in free.iter().enumerate() {
            for (ak, &k) in free.iter().enumerate().skip(aj) {
                let mut s = 0.0;
                for i in 0..m {
                    s += problem.weight(i) * jac[(i, j)] * jac[(i, k)];
                }
                a[(aj, ak)] = s;
                a[(ak, aj)] = s;
            }
        }
        let max_diag = (0..nf).map(|j| a[(j, j)]).fold(0.0f64, f64::max);
        if lambda.is_nan() {
            lambda = 1e-3 * max_diag.max(f64::MIN_POSITIVE);
        }

        // Inner damping loop: escalate lambda until a step is accepted.
        let accepted = loop {
            let mut damped = a.clone();
            for j in 0..nf {
                damped[(j, j)] += lambda;
            }
            let rhs = nalgebra::DVector::from_iterator(nf, free.iter().map(|&j| -grad[j]));
            let step = match damped.cholesky() {
                Some(ch) => ch.solve(&rhs),
                None => {
                    lambda *= DAMPING_INCREASE;
                    if lambda > DAMPING_CAP {
                        return Err(FitError::DampingExceeded {
                            cap: DAMPING_CAP,
                            cost,
                            params: p,
                        });
                    }
                    continue;
                }
            };

            let mut p_trial = p.clone();
            for (aj, &j) in free.iter().enumerate() {
                p_trial[j] = (p[j] + step[aj]).clamp(problem.lower[j], problem.upper[j]);
            }
            let r_trial = (problem.residual)(&p_trial);
            if r_trial.len() != m {
                return Err(FitError::ResidualLengthChanged {
                    expected: m,
                    got: r_trial.len(),
                });
            }
            let finite = r_trial.iter().all(|v| v.is_finite());
            let cost_trial = if finite {
                problem.cost_of(&r_trial)
            } else {
                f64::INFINITY
            };
            if cost_trial < cost {
                lambda = (lambda / DAMPING_DECREASE).max(1e-300);
                break Some((p_trial, r_trial, cost_trial));
            }
            lambda *= DAMPING_INCREASE;
            if lambda > DAMPING_CAP {
                break None;
            }
        };

        let Some((p_new, r_new, cost_new)) = accepted else {
            // Damping maxed out without progress: already at a stationary
            // point to within float resolution.
            status = Convergence::StepTolerance;
            break;
        };

        let step_small = p_new.iter().zip(&p).all(|(new, old)| {
            (new - old).abs() <= problem.step_tolerance * (old.abs() + problem.step_tolerance)
        });
        let cost_drop = cost - cost_new;
        p = p_new;
        r = r_new;
        cost = cost_new;
        if problem.trace {
            trace.push(TraceRow {
                iteration: iterations,
                cost,
                damping: lambda,
            });
        }
        if step_small {
            status = Convergence::StepTolerance;
            break;
        }
        if cost_drop <= problem.cost_tolerance * cost {
            status = Convergence::CostTolerance;
            break;
        }
    }

    let covariance = covariance_at(problem, &p)?;
    Ok(FitResult {
        params: p,
        cost,
        covariance,
        intervals: vec![None; n],
        status,
        iterations,
        n_residuals: m,
        trace,
    })
}

fn covariance_at<F>(problem: &FitProblem<F>, p: &[f64]) -> Result<DMatrix<f64>, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = p.len();
    let jac = numeric_jacobian(&problem.residual, p, &problem.lower, &problem.upper)?;
    let m = jac.nrows();
    let mut a = DMatrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let mut s = 0.0;
            for i in 0..m {
                s += problem.weight(i) * jac[(i, j)] * jac[(i, k)];
            }
            a[(j, k)] = s;
            a[(k, j)] = s;
        }
    }
    let max_diag = (0..n).map(|j| a[(j, j)]).fold(0.0f64, f64::max);
    if max_diag == 0.0 {
        return Ok(DMatrix::zeros(n, n));
    }
    // An escalating ridge keeps near-degenerate fits (e.g. depletion curves
    // truncated before their peak) invertible.
    let mut ridge = 0.0;
    loop {
        let mut trial = a.clone();
        for j in 0..n {
            trial[(j, j)] += ridge;
        }
        if let Some(ch) = trial.cholesky() {
            let cov = ch.inverse();
            let sym = (&cov + cov.transpose()) * 0.5;
            return Ok(sym);
        }
        ridge = if ridge == 0.0 {
            1e-14 * max_diag
        } else {
            ridge * 10.0
        };
        if ridge > 1e-2 * max_diag {
            return Ok(DMatrix::zeros(n, n));
        }
    }
}

fn chi2_quantile(level: f64) -> Result<f64, FitError> {
    if !(level > 0.0 && level < 1.0) {
        return Err(FitError::BadLevel(level));
    }
    let chi2 = ChiSquared::new(1.0).expect("1 degree of freedom is valid");
    Ok(chi2.inverse_cdf(level))
}

/// Profile-likelihood confidence interval for one parameter.
///
/// Each side walks outward from the estimate, re-optimizing all remaining
/// parameters, until the profiled cost exceeds `fit.cost` plus the
/// chi-square quantile for one parameter (3.84 at 95 %), then bisects the
/// crossing. A side that runs into a parameter bound is reported as
/// [`IntervalEnd::AtBound`]; a side whose profile never reaches the target
/// is reported as [`IntervalEnd::Open`].
pub fn profile_ci<F>(
    problem: &FitProblem<F>,
    fit: &FitResult,
    index: usize,
    level: f64,
) -> Result<ConfidenceInterval, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = problem.init.len();
    if index >= n {
        return Err(FitError::BadParameterIndex { index, params: n });
    }
    if fit.params.len() != n {
        return Err(FitError::ProfileWithoutFit);
    }
    let target = fit.cost + chi2_quantile(level)?;

    let sigma = {
        let s = fit.std_error(index);
        if s.is_finite() && s > 0.0 {
            s
        } else {
            (1e-3 * fit.params[index].abs()).max(1e-6)
        }
    };

    let lower = profile_side(problem, fit, index, target, -1.0, sigma)?;
    let upper = profile_side(problem, fit, index, target, 1.0, sigma)?;
    Ok(ConfidenceInterval {
        level,
        lower,
        upper,
    })
}

fn profile_side<F>(
    problem: &FitProblem<F>,
    fit: &FitResult,
    index: usize,
    target: f64,
    direction: f64,
    sigma: f64,
) -> Result<IntervalEnd, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let center = fit.params[index];
    let bound = if direction < 0.0 {
        problem.lower[index]
    } else {
        problem.upper[index]
    };
    let mut warm = fit.params.clone();

    let mut inside = center;
    let mut step = 0.5 * sigma;
    let mut outside = None;
    for _ in 0..200 {
        let mut x = center + direction * step;
        let mut clipped = false;
        if (direction < 0.0 && x <= bound) || (direction > 0.0 && x >= bound) {
            x = bound;
            clipped = true;
        }
        let c = profiled_cost(problem, index, x, &mut warm)?;
        if c >= target {
            outside = Some(x);
            break;
        }
        inside = x;
        if clipped {
            // Profile stays below the target all the way to the bound.
            return Ok(IntervalEnd::AtBound(bound));
        }
        step *= 2.0;
    }
    let Some(mut hi) = outside else {
        return Ok(IntervalEnd::Open);
    };

    let mut lo = inside;
    let tol = (1e-4 * sigma).max(1e-12 * center.abs()).max(1e-300);
    for _ in 0..100 {
        if (hi - lo).abs() <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let c = profiled_cost(problem, index, mid, &mut warm)?;
        if c >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(IntervalEnd::Value(0.5 * (lo + hi)))
}

/// Cost with parameter `index` pinned at `x` and the rest re-optimized,
/// warm-started from (and updating) `warm`.
fn profiled_cost<F>(
    problem: &FitProblem<F>,
    index: usize,
    x: f64,
    warm: &mut Vec<f64>,
) -> Result<f64, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = problem.init.len();
    if n == 1 {
        let r = (problem.residual)(&[x]);
        return Ok(problem.cost_of(&r));
    }
    let reduced = |q: &[f64]| {
        let mut full = Vec::with_capacity(n);
        full.extend_from_slice(&q[..index]);
        full.push(x);
        full.extend_from_slice(&q[index..]);
        (problem.residual)(&full)
    };
    let strip = |v: &[f64]| {
        let mut out = Vec::with_capacity(n - 1);
        out.extend_from_slice(&v[..index]);
        out.extend_from_slice(&v[index + 1..]);
        out
    };
    let mut init = strip(warm);
    let lo = strip(&problem.lower);
    let hi = strip(&problem.upper);
    for j in 0..init.len() {
        init[j] = init[j].clamp(lo[j], hi[j]);
    }
    let mut sub = FitProblem::new(init, reduced).bounds(lo, hi)?;
    if let Some(w) = &problem.weights {
        sub = sub.weights(w.clone())?;
    }
    sub.max_iterations = problem.max_iterations.min(100);
    sub.step_tolerance = problem.step_tolerance;
    sub.gradient_tolerance = problem.gradient_tolerance;
    sub.cost_tolerance = problem.cost_tolerance;
    let res = lm_fit(&sub)?;
    let mut full = Vec::with_capacity(n);
    full.extend_from_slice(&res.params[..index]);
    full.push(x);
    full.extend_from_slice(&res.params[index..]);
    *warm = full;
    Ok(res.cost)
}

/// Fill `fit.intervals` with profile intervals for the selected parameter
/// indices (all parameters when `which` is `None`).
pub fn profile_intervals<F>(
    problem: &FitProblem<F>,
    fit: &mut FitResult,
    which: Option<&[usize]>,
    level: f64,
) -> Result<(), FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let all: Vec<usize> = (0..fit.params.len()).collect();
    let selected = which.unwrap_or(&all);
    for &k in selected {
        if k >= fit.intervals.len() {
            return Err(FitError::BadParameterIndex {
                index: k,
                params: fit.intervals.len(),
            });
        }
        let ci = profile_ci(problem, fit, k, level)?;
        fit.intervals[k] = Some(ci);
    }
    Ok(())
}

/// Seeded multi-start wrapper: perturbs the initial point and keeps the
/// best converged fit. Opt-in only; plain [`lm_fit`] stays randomness-free.
pub fn lm_fit_multistart<F>(
    problem: &FitProblem<F>,
    starts: usize,
    seed: u64,
) -> Result<FitResult, FitError>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = problem.init.len();
    let mut best: Option<FitResult> = None;
    for start in 0..starts.max(1) {
        let init: Vec<f64> = if start == 0 {
            problem.init.clone()
        } else {
            (0..n)
                .map(|j| {
                    let (lo, hi) = (problem.lower[j], problem.upper[j]);
                    if lo.is_finite() && hi.is_finite() && lo < hi {
                        rng.random_range(lo..hi)
                    } else {
                        let scale = problem.init[j].abs().max(1.0);
                        (problem.init[j] + rng.random_range(-1.0..1.0) * scale).clamp(lo, hi)
                    }
                })
                .collect()
        };
        let residual = &problem.residual;
        let mut sub = FitProblem::new(init, |q: &[f64]| residual(q))
            .bounds(problem.lower.clone(), problem.upper.clone())?;
        if let Some(w) = &problem.weights {
            sub = sub.weights(w.clone())?;
        }
        sub.max_iterations = problem.max_iterations;
        match lm_fit(&sub) {
            Ok(res) => {
                if best.as_ref().is_none_or(|b| res.cost < b.cost) {
                    best = Some(res);
                }
            }
            Err(FitError::DampingExceeded { .. }) | Err(FitError::NonFiniteInit) => continue,
            Err(e) => return Err(e),
        }
    }
    best.ok_or(FitError::DampingExceeded {
        cap: DAMPING_CAP,
        cost: f64::INFINITY,
        params: problem.init.clone(),
    })
}
