//! Simultaneous perturbation stochastic approximation.
//!
//! Each iteration spends two FEs on a Rademacher-perturbed central difference.
//! Gains: `a_k = a / (k + A)^alpha`, `c_k = c / k^gamma`, `A = stability * budget`.
//! The final FEs of the budget evaluate the unperturbed iterate, so the trace
//! reflects where the iterate ended rather than only its perturbed neighbours.

use rand::Rng;

use super::Step;
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct Spsa {
    pub a: f64,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub stability: f64,
}

impl Spsa {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            a: params.positive("a")?,
            c: params.positive("c")?,
            alpha: params.positive("alpha")?,
            gamma: params.positive("gamma")?,
            stability: params.real("stability")?.max(0.0),
        })
    }

    pub fn gains(&self, k: usize, budget: usize) -> (f64, f64) {
        let k = k as f64;
        let big_a = self.stability * budget as f64;
        (
            self.a / (k + big_a).powf(self.alpha),
            self.c / k.powf(self.gamma),
        )
    }
}

impl Optimizer for Spsa {
    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let dim = ctx.dim();
        let mut x = ctx.bounds().sample(rng);
        let mut k = 1usize;

        while ctx.remaining() > 2 {
            let (a_k, c_k) = self.gains(k, ctx.budget());
            let delta: Vec<f64> = (0..dim)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            let mut plus: Vec<f64> = x.iter().zip(&delta).map(|(xi, d)| xi + c_k * d).collect();
            let mut minus: Vec<f64> = x.iter().zip(&delta).map(|(xi, d)| xi - c_k * d).collect();
            let f_plus = ctx.evaluate(&mut plus)?;
            let f_minus = ctx.evaluate(&mut minus)?;
            let slope = (f_plus - f_minus) / (2.0 * c_k);
            if slope.is_finite() {
                for (xi, d) in x.iter_mut().zip(&delta) {
                    *xi -= a_k * slope * d;
                }
                ctx.bounds().clip(&mut x);
            }
            k += 1;
        }
        loop {
            ctx.evaluate(&mut x.clone())?;
        }
    }
}
