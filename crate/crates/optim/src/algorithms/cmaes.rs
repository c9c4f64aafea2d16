//! CMA-ES with rank-one and rank-μ covariance updates and cumulative step-size
//! adaptation. Strategy constants follow Hansen's standard settings; only the
//! population size and initial step size are configurable.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;

use super::Step;
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct CmaEs {
    pub pop_size: usize,
    pub sigma: f64,
}

impl CmaEs {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            pop_size: params.count("pop_size", 2)?,
            sigma: params.positive("sigma")?,
        })
    }
}

/// Strategy parameters derived from dimension and population size.
struct Constants {
    mu: usize,
    weights: Vec<f64>,
    mu_eff: f64,
    c_sigma: f64,
    d_sigma: f64,
    c_c: f64,
    c_1: f64,
    c_mu: f64,
    chi_n: f64,
}

impl Constants {
    fn new(n: usize, lambda: usize) -> Self {
        let nf = n as f64;
        let mu = (lambda / 2).max(1);
        let raw: Vec<f64> = (0..mu)
            .map(|i| ((lambda as f64 + 1.0) / 2.0).ln() - ((i + 1) as f64).ln())
            .collect();
        let sum: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / sum).collect();
        let mu_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();

        let c_sigma = (mu_eff + 2.0) / (nf + mu_eff + 5.0);
        let d_sigma = 1.0 + 2.0 * (((mu_eff - 1.0) / (nf + 1.0)).sqrt() - 1.0).max(0.0) + c_sigma;
        let c_c = (4.0 + mu_eff / nf) / (nf + 4.0 + 2.0 * mu_eff / nf);
        let c_1 = 2.0 / ((nf + 1.3).powi(2) + mu_eff);
        let c_mu =
            (1.0 - c_1).min(2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nf + 2.0).powi(2) + mu_eff));
        let chi_n = nf.sqrt() * (1.0 - 1.0 / (4.0 * nf) + 1.0 / (21.0 * nf * nf));
        Self {
            mu,
            weights,
            mu_eff,
            c_sigma,
            d_sigma,
            c_c,
            c_1,
            c_mu,
            chi_n,
        }
    }
}

impl Optimizer for CmaEs {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let n = ctx.dim();
        let lambda = self.pop_size;
        let k = Constants::new(n, lambda);

        let mut mean = DVector::from_vec(ctx.bounds().sample(rng));
        let mut sigma = self.sigma;
        let mut cov = DMatrix::<f64>::identity(n, n);
        let mut basis = DMatrix::<f64>::identity(n, n);
        let mut scales = DVector::<f64>::from_element(n, 1.0);
        let mut p_sigma = DVector::<f64>::zeros(n);
        let mut p_c = DVector::<f64>::zeros(n);

        // Eigendecomposition is refreshed lazily; O(n^3) per refresh.
        let eigen_interval = ((1.0 / ((k.c_1 + k.c_mu) * n as f64 * 10.0)) as usize).max(1);
        let mut generation = 0usize;

        loop {
            let mut samples: Vec<(f64, DVector<f64>)> = Vec::with_capacity(lambda);
            for _ in 0..lambda {
                let z = DVector::<f64>::from_fn(n, |_, _| rng.sample(StandardNormal));
                let y = &basis * scales.component_mul(&z);
                let mut x: Vec<f64> = (&mean + sigma * y).iter().copied().collect();
                let f = ctx.evaluate(&mut x)?;
                samples.push((f, DVector::from_vec(x)));
            }
            samples.sort_by(|a, b| a.0.total_cmp(&b.0));

            let old_mean = mean.clone();
            let steps: Vec<DVector<f64>> = samples[..k.mu]
                .iter()
                .map(|(_, x)| (x - &old_mean) / sigma)
                .collect();
            let mut y_w = DVector::<f64>::zeros(n);
            for (w, y) in k.weights.iter().zip(&steps) {
                y_w.axpy(*w, y, 1.0);
            }
            mean = &old_mean + sigma * &y_w;
            let mut m: Vec<f64> = mean.iter().copied().collect();
            ctx.bounds().clip(&mut m);
            mean = DVector::from_vec(m);

            // C^{-1/2} y_w = B D^{-1} B^T y_w
            let inv_sqrt_y = &basis * (basis.transpose() * &y_w).component_div(&scales);
            p_sigma = (1.0 - k.c_sigma) * &p_sigma
                + (k.c_sigma * (2.0 - k.c_sigma) * k.mu_eff).sqrt() * inv_sqrt_y;
            let ps_norm = p_sigma.norm();
            let decay = 1.0 - (1.0 - k.c_sigma).powi(2 * (generation as i32 + 1));
            let h_sigma = ps_norm / decay.sqrt() / k.chi_n < 1.4 + 2.0 / (n as f64 + 1.0);
            let h = if h_sigma { 1.0 } else { 0.0 };
            p_c = (1.0 - k.c_c) * &p_c + h * (k.c_c * (2.0 - k.c_c) * k.mu_eff).sqrt() * &y_w;

            let mut rank_mu = DMatrix::<f64>::zeros(n, n);
            for (w, y) in k.weights.iter().zip(&steps) {
                rank_mu.ger(*w, y, y, 1.0);
            }
            let correction = (1.0 - h) * k.c_c * (2.0 - k.c_c);
            cov = (1.0 - k.c_1 - k.c_mu + k.c_1 * correction) * cov
                + k.c_1 * (&p_c * p_c.transpose())
                + k.c_mu * rank_mu;

            sigma *= ((k.c_sigma / k.d_sigma) * (ps_norm / k.chi_n - 1.0)).exp();
            generation += 1;

            if generation.is_multiple_of(eigen_interval) {
                cov = (&cov + cov.transpose()) * 0.5;
                let eig = SymmetricEigen::new(cov.clone());
                if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
                    return Ok(());
                }
                scales = eig.eigenvalues.map(|v| v.max(1e-300).sqrt());
                basis = eig.eigenvectors;
            }

            let spread = sigma * scales.max();
            if !spread.is_finite() || spread < 1e-14 {
                return Ok(());
            }
        }
    }
}
