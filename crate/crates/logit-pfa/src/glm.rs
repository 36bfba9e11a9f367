//! Marginal binary logistic regression.
//!
//! Each predictor column is regressed on the shared 0/1 outcome with an
//! intercept and a single slope, fitted by Newton's method with step halving.
//! The module also exposes the standardized per-observation score
//! contributions of the slope, which downstream code stacks into the joint
//! covariance estimate of all slope estimators.

use crate::error::GlmError;
use crate::stats::{ln_1p_exp, sigmoid};
use ndarray::Array1;

/// Newton solver controls for a single marginal fit.
#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Convergence threshold on the max-norm of the score vector.
    pub tolerance: f64,
    /// Newton update cap before `NoConvergence`.
    pub max_iterations: usize,
    /// |slope| beyond which the fit is declared separated.
    pub separation_bound: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 50,
            separation_bound: 1e3,
        }
    }
}

/// One predictor column paired with the shared binary outcome.
///
/// Construction validates everything the solver relies on: equal lengths with
/// at least two observations, a 0/1-coded outcome containing both classes,
/// and a non-constant predictor.
#[derive(Debug, Clone)]
pub struct ObservationSet {
    x: Array1<f64>,
    y: Array1<f64>,
}

impl ObservationSet {
    pub fn new(x: Array1<f64>, y: Array1<f64>) -> Result<Self, GlmError> {
        if x.len() != y.len() {
            return Err(GlmError::DegenerateInput(format!(
                "predictor has {} observations, outcome has {}",
                x.len(),
                y.len()
            )));
        }
        if x.len() < 2 {
            return Err(GlmError::DegenerateInput(
                "need at least 2 observations".to_string(),
            ));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(GlmError::DegenerateInput(
                "non-finite predictor value".to_string(),
            ));
        }
        let mut ones = 0usize;
        for &v in y.iter() {
            if v == 1.0 {
                ones += 1;
            } else if v != 0.0 {
                return Err(GlmError::DegenerateInput(format!(
                    "outcome must be coded 0/1, found {v}"
                )));
            }
        }
        if ones == 0 || ones == y.len() {
            return Err(GlmError::DegenerateInput(
                "outcome is single-class".to_string(),
            ));
        }
        let first = x[0];
        if x.iter().all(|&v| v == first) {
            return Err(GlmError::DegenerateInput(
                "predictor is constant".to_string(),
            ));
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> &Array1<f64> {
        &self.x
    }

    pub fn y(&self) -> &Array1<f64> {
        &self.y
    }

    pub fn n_obs(&self) -> usize {
        self.x.len()
    }
}

/// Converged maximum-likelihood fit of one marginal logistic model.
#[derive(Debug, Clone)]
pub struct MarginalFit {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    /// Fitted probabilities at the returned coefficients.
    pub pi_hat: Array1<f64>,
    pub converged: bool,
    /// Newton updates performed before convergence.
    pub iterations: usize,
    pub log_likelihood: f64,
}

/// Detects complete or quasi-complete separation for a single predictor:
/// every outcome-0 value sits at or beyond every outcome-1 value (or vice
/// versa), in which case the likelihood has no finite maximizer.
fn is_separated(x: &Array1<f64>, y: &Array1<f64>) -> bool {
    let (mut min0, mut max0) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min1, mut max1) = (f64::INFINITY, f64::NEG_INFINITY);
    for (&xi, &yi) in x.iter().zip(y.iter()) {
        if yi == 1.0 {
            min1 = min1.min(xi);
            max1 = max1.max(xi);
        } else {
            min0 = min0.min(xi);
            max0 = max0.max(xi);
        }
    }
    max0 <= min1 || max1 <= min0
}

fn log_likelihood_at(x: &Array1<f64>, y: &Array1<f64>, alpha: f64, beta: f64) -> f64 {
    x.iter()
        .zip(y.iter())
        .map(|(&xi, &yi)| {
            let eta = alpha + beta * xi;
            yi * eta - ln_1p_exp(eta)
        })
        .sum()
}

/// Maximum-likelihood fit of the marginal logistic model.
///
/// Newton-Raphson with step halving, started at the intercept-only MLE.
/// Convergence is declared when the score vector's max-norm drops below
/// `opts.tolerance`.
pub fn fit_logistic(obs: &ObservationSet, opts: &SolverOptions) -> Result<MarginalFit, GlmError> {
    let x = obs.x();
    let y = obs.y();
    let n = obs.n_obs();

    if is_separated(x, y) {
        return Err(GlmError::SeparationDetected);
    }

    let y_bar = y.sum() / n as f64;
    let mut alpha = (y_bar / (1.0 - y_bar)).ln();
    let mut beta = 0.0f64;
    let mut pi = Array1::<f64>::zeros(n);

    for iteration in 0..=opts.max_iterations {
        // One fused pass: fitted probabilities, score, averaged information,
        // and the log-likelihood at the current coefficients.
        let (mut u0, mut u1) = (0.0f64, 0.0f64);
        let (mut i00, mut i01, mut i11) = (0.0f64, 0.0f64, 0.0f64);
        let mut ll = 0.0f64;
        for i in 0..n {
            let xi = x[i];
            let eta = alpha + beta * xi;
            let p = sigmoid(eta);
            pi[i] = p;
            let w = p * (1.0 - p);
            let r = y[i] - p;
            u0 += r;
            u1 += xi * r;
            i00 += w;
            i01 += w * xi;
            i11 += w * xi * xi;
            ll += y[i] * eta - ln_1p_exp(eta);
        }

        if u0.abs().max(u1.abs()) <= opts.tolerance {
            return Ok(MarginalFit {
                alpha_hat: alpha,
                beta_hat: beta,
                pi_hat: pi,
                converged: true,
                iterations: iteration,
                log_likelihood: ll,
            });
        }
        if iteration == opts.max_iterations {
            break;
        }

        let det = i00 * i11 - i01 * i01;
        if !det.is_finite() || det <= 0.0 {
            // the weights collapsed along a diverging coefficient path
            return Err(GlmError::SeparationDetected);
        }
        let step_a = (i11 * u0 - i01 * u1) / det;
        let step_b = (i00 * u1 - i01 * u0) / det;

        // step halving keeps the likelihood nondecreasing
        let mut lambda = 1.0f64;
        let (mut next_a, mut next_b) = (alpha + step_a, beta + step_b);
        for _ in 0..30 {
            if log_likelihood_at(x, y, next_a, next_b) >= ll - 1e-12 {
                break;
            }
            lambda *= 0.5;
            next_a = alpha + lambda * step_a;
            next_b = beta + lambda * step_b;
        }
        alpha = next_a;
        beta = next_b;

        if beta.abs() > opts.separation_bound {
            return Err(GlmError::SeparationDetected);
        }
    }

    Err(GlmError::NoConvergence {
        iterations: opts.max_iterations,
    })
}

/// Standardized score contribution of each observation to the slope.
///
/// The 2x2 observed information, averaged over all n observations and
/// evaluated at the fit, is inverted once; entry i of the result is the slope
/// coordinate of that inverse applied to the i-th raw score
/// `(1, x_i)' (y_i - pi_i)`.
pub fn score_contributions(
    fit: &MarginalFit,
    obs: &ObservationSet,
) -> Result<Array1<f64>, GlmError> {
    assert!(fit.converged, "score contributions require a converged fit");
    let x = obs.x();
    let y = obs.y();
    let n = obs.n_obs();
    assert_eq!(fit.pi_hat.len(), n, "fit and observations disagree on n");

    let nf = n as f64;
    let (mut a, mut b, mut c) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..n {
        let w = fit.pi_hat[i] * (1.0 - fit.pi_hat[i]);
        a += w;
        b += w * x[i];
        c += w * x[i] * x[i];
    }
    a /= nf;
    b /= nf;
    c /= nf;

    let det = a * c - b * b;
    let scale = a * c + b * b;
    if !(det > scale * 1e-12) {
        return Err(GlmError::SingularInformation);
    }

    Ok(Array1::from_shape_fn(n, |i| {
        (a * x[i] - b) * (y[i] - fit.pi_hat[i]) / det
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn obs(x: Vec<f64>, y: Vec<f64>) -> ObservationSet {
        ObservationSet::new(Array1::from_vec(x), Array1::from_vec(y)).unwrap()
    }

    #[test]
    fn constant_predictor_rejected() {
        let err = ObservationSet::new(array![1.0, 1.0, 1.0], array![0.0, 1.0, 0.0]).unwrap_err();
        assert!(matches!(err, GlmError::DegenerateInput(_)));
    }

    #[test]
    fn single_class_rejected() {
        let err = ObservationSet::new(array![1.0, 2.0, 3.0], array![1.0, 1.0, 1.0]).unwrap_err();
        assert!(matches!(err, GlmError::DegenerateInput(_)));
    }

    #[test]
    fn miscoded_outcome_rejected() {
        let err = ObservationSet::new(array![1.0, 2.0], array![0.0, 2.0]).unwrap_err();
        assert!(matches!(err, GlmError::DegenerateInput(_)));
    }

    #[test]
    fn length_mismatch_rejected() {
        let err = ObservationSet::new(array![1.0, 2.0, 3.0], array![0.0, 1.0]).unwrap_err();
        assert!(matches!(err, GlmError::DegenerateInput(_)));
    }

    #[test]
    fn symmetric_design_gives_zero_coefficients() {
        let o = obs(vec![-1.0, -1.0, 1.0, 1.0], vec![0.0, 1.0, 0.0, 1.0]);
        let fit = fit_logistic(&o, &SolverOptions::default()).unwrap();
        assert!(fit.alpha_hat.abs() <= 1e-8);
        assert!(fit.beta_hat.abs() <= 1e-8);
        assert!(fit.converged);
        assert_eq!(fit.iterations, 0);
    }

    #[test]
    fn complete_separation_detected() {
        let o = obs(vec![-1.0, -1.0, 1.0, 1.0], vec![0.0, 0.0, 1.0, 1.0]);
        let err = fit_logistic(&o, &SolverOptions::default()).unwrap_err();
        assert_eq!(err, GlmError::SeparationDetected);
    }

    #[test]
    fn quasi_separation_detected() {
        let o = obs(vec![-1.0, 0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0, 1.0]);
        let err = fit_logistic(&o, &SolverOptions::default()).unwrap_err();
        assert_eq!(err, GlmError::SeparationDetected);
    }

    #[test]
    fn iteration_cap_reported() {
        let o = obs(
            vec![0.5, -0.2, 1.1, -0.8, 0.3, -1.0],
            vec![1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
        );
        let opts = SolverOptions {
            max_iterations: 1,
            ..SolverOptions::default()
        };
        let err = fit_logistic(&o, &opts).unwrap_err();
        assert_eq!(err, GlmError::NoConvergence { iterations: 1 });
    }

    #[test]
    fn singular_information_detected() {
        let o = obs(vec![-1.0, -1.0, 1.0, 1.0], vec![0.0, 1.0, 0.0, 1.0]);
        // fabricated fit with collapsed weights
        let fit = MarginalFit {
            alpha_hat: -500.0,
            beta_hat: 0.0,
            pi_hat: array![1e-220, 1e-220, 1e-220, 1e-220],
            converged: true,
            iterations: 1,
            log_likelihood: 0.0,
        };
        let err = score_contributions(&fit, &o).unwrap_err();
        assert_eq!(err, GlmError::SingularInformation);
    }
}
