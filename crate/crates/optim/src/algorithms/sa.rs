//! Simulated annealing with three cooling/visiting schemes.
//!
//! Temperature is indexed by evaluation count `k` and floored at `t_min`.
//! Evaluations are grouped into stages of `l`; the run stops natively after
//! `max_stay_counter` consecutive stages without a new best. Acceptance is
//! Metropolis on raw objective differences.

use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, StandardNormal};

use super::Step;
use crate::bounds::Bounds;
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaVariant {
    /// Very-fast re-annealing: `T_k = T_max exp(-c k^{1/N})` with a per-coordinate
    /// heavy-tailed step.
    Fast,
    /// `T_k = T_max / ln(1 + k)` with a Gaussian step.
    Boltzmann,
    /// `T_k = T_max / (1 + k)` with an isotropic Cauchy step.
    Cauchy,
}

#[derive(Debug, Clone)]
pub struct Annealing {
    pub variant: SaVariant,
    pub t_max: f64,
    pub t_min: f64,
    pub l: usize,
    pub max_stay_counter: usize,
    /// Multiplier on the visiting step; 0 freezes the chain in place.
    pub step_scale: f64,
    /// Accepted proposals in the most recent search.
    pub accepted: usize,
}

impl Annealing {
    pub fn from_params(variant: SaVariant, params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            variant,
            t_max: params.positive("t_max")?,
            t_min: params.positive("t_min")?,
            l: params.count("l", 1)?,
            max_stay_counter: params.count("max_stay_counter", 1)?,
            step_scale: 1.0,
            accepted: 0,
        })
    }

    /// Temperature after `k >= 1` evaluations of an `n`-dimensional search.
    pub fn temperature(&self, k: usize, n: usize) -> f64 {
        let k = k.max(1) as f64;
        let t = match self.variant {
            SaVariant::Fast => {
                let horizon = (self.l * self.max_stay_counter) as f64;
                let c = (self.t_max / self.t_min).ln() / horizon.powf(1.0 / n as f64);
                self.t_max * (-c * k.powf(1.0 / n as f64)).exp()
            }
            SaVariant::Boltzmann => self.t_max / (1.0 + k).ln(),
            SaVariant::Cauchy => self.t_max / (1.0 + k),
        };
        t.max(self.t_min)
    }

    /// Candidate around `x` at temperature `t`. Returns `x` unchanged when
    /// `t == 0` or the step scale is 0.
    pub(crate) fn propose<R: Rng + ?Sized>(
        &self,
        x: &[f64],
        t: f64,
        bounds: &Bounds,
        rng: &mut R,
    ) -> Vec<f64> {
        let tau = (t / self.t_max).max(0.0);
        if tau == 0.0 || self.step_scale == 0.0 {
            return x.to_vec();
        }
        let step = match self.variant {
            SaVariant::Fast => x
                .iter()
                .enumerate()
                .map(|(j, _)| {
                    let u: f64 = rng.random();
                    let y = (u - 0.5).signum()
                        * tau
                        * ((1.0 + 1.0 / tau).powf((2.0 * u - 1.0).abs()) - 1.0);
                    y * bounds.range(j)
                })
                .collect::<Vec<_>>(),
            SaVariant::Boltzmann => x
                .iter()
                .enumerate()
                .map(|(j, _)| {
                    let sd = 0.5 * t.sqrt().min(bounds.range(j) / 3.0);
                    let z: f64 = StandardNormal.sample(rng);
                    sd * z
                })
                .collect::<Vec<_>>(),
            SaVariant::Cauchy => {
                let denom: f64 = StandardNormal.sample(rng);
                let denom = denom.abs().max(f64::MIN_POSITIVE);
                x.iter()
                    .enumerate()
                    .map(|(j, _)| {
                        let z: f64 = StandardNormal.sample(rng);
                        tau * bounds.range(j) * z / denom
                    })
                    .collect::<Vec<_>>()
            }
        };
        x.iter()
            .zip(step)
            .map(|(xj, d)| xj + self.step_scale * d)
            .collect()
    }
}

impl Optimizer for Annealing {
    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let n = ctx.dim();
        let mut visit = OptimRng::seed_from_u64(rng.random());
        let mut accept = OptimRng::seed_from_u64(rng.random());

        let mut x = ctx.bounds().sample(&mut visit);
        let mut fx = ctx.evaluate(&mut x)?;
        let mut k = 1usize;
        let mut stay = 0usize;
        self.accepted = 0;

        loop {
            let stage_start_best = ctx.best_value();
            for _ in 0..self.l {
                let t = self.temperature(k, n);
                let mut y = self.propose(&x, t, ctx.bounds(), &mut visit);
                let fy = ctx.evaluate(&mut y)?;
                k += 1;
                let df = fy - fx;
                if df < 0.0 || accept.random::<f64>() < (-df / t).exp() {
                    x = y;
                    fx = fy;
                    self.accepted += 1;
                }
            }
            if ctx.best_value() < stage_start_best {
                stay = 0;
            } else {
                stay += 1;
                if stay >= self.max_stay_counter {
                    return Ok(());
                }
            }
        }
    }
}
