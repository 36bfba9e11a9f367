//! Multiple marginal models: fit every predictor column, stack the
//! standardized score contributions into an n-by-p matrix, estimate the joint
//! covariance and correlation of the slope estimators, and Studentize.

use crate::error::{GlmError, MmmError};
use crate::exec;
use crate::glm::{fit_logistic, score_contributions, MarginalFit, ObservationSet, SolverOptions};
use crate::stats::two_sided_p;
use ndarray::{Array1, Array2};

/// Stacked score contributions, one column per retained predictor.
#[derive(Debug, Clone)]
pub struct ScoreMatrix {
    pub psi: Array2<f64>,
    /// Original column index of each retained column, ascending.
    pub retained: Vec<usize>,
}

impl ScoreMatrix {
    pub fn n(&self) -> usize {
        self.psi.nrows()
    }

    pub fn p(&self) -> usize {
        self.psi.ncols()
    }
}

/// Estimated covariance of the slope estimators (scaled by n).
#[derive(Debug, Clone)]
pub struct CovarianceEstimate {
    pub sigma: Array2<f64>,
    pub n: usize,
}

/// Correlation matrix derived from a covariance estimate.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    pub sigma_star: Array2<f64>,
}

/// Studentized statistics with their two-sided p-values.
#[derive(Debug, Clone)]
pub struct ZVector {
    pub z: Vec<f64>,
    pub p_values: Vec<f64>,
}

/// Per-column fits plus score vectors; failed columns are kept aside with
/// their error class so reports stay honest about what was dropped.
#[derive(Debug)]
pub struct MarginalModels {
    pub fits: Vec<MarginalFit>,
    pub scores: Vec<Array1<f64>>,
    pub retained: Vec<usize>,
    pub failures: Vec<(usize, GlmError)>,
}

/// Fit one logistic model per column of `x` and compute the score
/// contributions of each converged fit. Columns are independent, so the work
/// is dispatched through [`exec::map_indexed`]; results are a pure function
/// of the inputs regardless of scheduling.
pub fn fit_marginal_models(
    x: &Array2<f64>,
    y: &Array1<f64>,
    opts: &SolverOptions,
) -> MarginalModels {
    let p = x.ncols();
    let per_column = exec::map_indexed(p, |j| {
        ObservationSet::new(x.column(j).to_owned(), y.clone()).and_then(|obs| {
            let fit = fit_logistic(&obs, opts)?;
            let scores = score_contributions(&fit, &obs)?;
            Ok((fit, scores))
        })
    });

    let mut models = MarginalModels {
        fits: Vec::new(),
        scores: Vec::new(),
        retained: Vec::new(),
        failures: Vec::new(),
    };
    for (j, outcome) in per_column.into_iter().enumerate() {
        match outcome {
            Ok((fit, scores)) => {
                models.fits.push(fit);
                models.scores.push(scores);
                models.retained.push(j);
            }
            Err(e) => models.failures.push((j, e)),
        }
    }
    models
}

/// Assemble per-column score vectors into the n-by-p score matrix.
pub fn stack_scores(
    score_columns: &[Array1<f64>],
    retained: &[usize],
) -> Result<ScoreMatrix, MmmError> {
    if score_columns.len() != retained.len() {
        return Err(MmmError::ShapeMismatch {
            expected: retained.len(),
            found: score_columns.len(),
        });
    }
    if score_columns.is_empty() {
        return Err(MmmError::TooFewColumns { retained: 0 });
    }
    let n = score_columns[0].len();
    for col in score_columns {
        if col.len() != n {
            return Err(MmmError::ShapeMismatch {
                expected: n,
                found: col.len(),
            });
        }
    }
    let mut psi = Array2::zeros((n, score_columns.len()));
    for (jj, col) in score_columns.iter().enumerate() {
        psi.column_mut(jj).assign(col);
    }
    Ok(ScoreMatrix {
        psi,
        retained: retained.to_vec(),
    })
}

/// Average of the score-row outer products: `psi' psi / n`.
pub fn estimate_covariance(scores: &ScoreMatrix) -> CovarianceEstimate {
    let n = scores.n();
    let mut sigma = scores.psi.t().dot(&scores.psi);
    sigma /= n as f64;
    CovarianceEstimate { sigma, n }
}

/// Rescale a covariance to unit diagonal. The diagonal is set to exactly 1
/// and off-diagonal entries are computed once per pair, so the result is
/// bitwise symmetric.
pub fn to_correlation(cov: &CovarianceEstimate) -> Result<CorrelationMatrix, MmmError> {
    let p = cov.sigma.nrows();
    let mut inv_sd = Vec::with_capacity(p);
    for j in 0..p {
        let d = cov.sigma[[j, j]];
        if !(d > 1e-14) {
            return Err(MmmError::ZeroVariance { index: j });
        }
        inv_sd.push(1.0 / d.sqrt());
    }
    let mut m = Array2::zeros((p, p));
    for i in 0..p {
        m[[i, i]] = 1.0;
        for j in i + 1..p {
            let r = (cov.sigma[[i, j]] * inv_sd[i] * inv_sd[j]).clamp(-1.0, 1.0);
            m[[i, j]] = r;
            m[[j, i]] = r;
        }
    }
    Ok(CorrelationMatrix { sigma_star: m })
}

/// Studentized slope statistics: `z_j = beta_j * sqrt(n) / sqrt(sigma_jj)`,
/// with two-sided normal p-values.
pub fn z_statistics(beta_hat: &[f64], cov: &CovarianceEstimate) -> Result<ZVector, MmmError> {
    let p = cov.sigma.nrows();
    if beta_hat.len() != p {
        return Err(MmmError::ShapeMismatch {
            expected: p,
            found: beta_hat.len(),
        });
    }
    let sqrt_n = (cov.n as f64).sqrt();
    let mut z = Vec::with_capacity(p);
    let mut p_values = Vec::with_capacity(p);
    for (j, &b) in beta_hat.iter().enumerate() {
        let v = cov.sigma[[j, j]];
        if !(v > 1e-14) {
            return Err(MmmError::ZeroVariance { index: j });
        }
        let zj = b * sqrt_n / v.sqrt();
        z.push(zj);
        p_values.push(two_sided_p(zj));
    }
    Ok(ZVector { z, p_values })
}

/// Everything the factor stage needs, computed in one pass from raw data.
#[derive(Debug)]
pub struct ZPipeline {
    pub models: MarginalModels,
    pub scores: ScoreMatrix,
    pub covariance: CovarianceEstimate,
    pub correlation: CorrelationMatrix,
    pub beta_hat: Vec<f64>,
    pub z: ZVector,
}

/// Fit all columns and carry the survivors through covariance, correlation,
/// and Studentization. Failed columns are dropped and reported in
/// `models.failures`.
pub fn run_z_pipeline(
    x: &Array2<f64>,
    y: &Array1<f64>,
    opts: &SolverOptions,
) -> Result<ZPipeline, MmmError> {
    let models = fit_marginal_models(x, y, opts);
    if models.retained.len() < 2 {
        return Err(MmmError::TooFewColumns {
            retained: models.retained.len(),
        });
    }
    let scores = stack_scores(&models.scores, &models.retained)?;
    let covariance = estimate_covariance(&scores);
    let correlation = to_correlation(&covariance)?;
    let beta_hat: Vec<f64> = models.fits.iter().map(|f| f.beta_hat).collect();
    let z = z_statistics(&beta_hat, &covariance)?;
    Ok(ZPipeline {
        models,
        scores,
        covariance,
        correlation,
        beta_hat,
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn z_arithmetic_identity() {
        let cov = CovarianceEstimate {
            sigma: array![[4.0]],
            n: 100,
        };
        let zv = z_statistics(&[1.0], &cov).unwrap();
        assert_eq!(zv.z[0], 5.0);
    }

    #[test]
    fn zero_beta_gives_unit_p_value() {
        let cov = CovarianceEstimate {
            sigma: array![[2.5]],
            n: 50,
        };
        let zv = z_statistics(&[0.0], &cov).unwrap();
        assert_eq!(zv.z[0], 0.0);
        assert_eq!(zv.p_values[0], 1.0);
    }

    #[test]
    fn zero_variance_rejected() {
        let cov = CovarianceEstimate {
            sigma: array![[0.0]],
            n: 50,
        };
        assert!(matches!(
            z_statistics(&[1.0], &cov),
            Err(MmmError::ZeroVariance { index: 0 })
        ));
    }

    #[test]
    fn correlation_of_identity_is_identity() {
        let cov = CovarianceEstimate {
            sigma: Array2::eye(3),
            n: 10,
        };
        let corr = to_correlation(&cov).unwrap();
        assert_eq!(corr.sigma_star, Array2::eye(3));
    }

    #[test]
    fn perfectly_correlated_two_by_two() {
        let cov = CovarianceEstimate {
            sigma: array![[4.0, 2.0], [2.0, 1.0]],
            n: 10,
        };
        let corr = to_correlation(&cov).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((corr.sigma_star[[i, j]] - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn stack_rejects_ragged_columns() {
        let cols = vec![array![1.0, 2.0], array![1.0, 2.0, 3.0]];
        assert!(matches!(
            stack_scores(&cols, &[0, 1]),
            Err(MmmError::ShapeMismatch { .. })
        ));
    }
}
