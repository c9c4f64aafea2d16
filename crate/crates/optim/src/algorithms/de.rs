//! Classic differential evolution with immediate replacement.

use rand::Rng;

use super::{distinct, Population, Step};
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeStrategy {
    /// Mutate around the current best, binomial crossover.
    Best1Bin,
    /// Mutate around the current best, exponential crossover.
    Best1Exp,
    /// Mutate around a random member, binomial crossover.
    Rand1Bin,
}

#[derive(Debug, Clone)]
pub struct DifferentialEvolution {
    pub strategy: DeStrategy,
    pub pop_size: usize,
    pub f_weight: f64,
    pub f_cr: f64,
}

impl DifferentialEvolution {
    pub fn from_params(strategy: DeStrategy, params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            strategy,
            pop_size: params.count("pop_size", 4)?,
            f_weight: params.positive("f_weight")?,
            f_cr: params.probability("f_cr")?,
        })
    }
}

/// Binomial crossover; dimension `forced` always comes from the mutant.
pub(crate) fn binomial<R: Rng + ?Sized>(rng: &mut R, target: &[f64], mutant: &mut [f64], cr: f64) {
    let forced = rng.random_range(0..target.len());
    for (j, (m, t)) in mutant.iter_mut().zip(target).enumerate() {
        if j != forced && rng.random::<f64>() >= cr {
            *m = *t;
        }
    }
}

/// Exponential crossover: a cyclic run of mutant dimensions starting at a random index.
fn exponential<R: Rng + ?Sized>(rng: &mut R, target: &[f64], mutant: &mut [f64], cr: f64) {
    let n = target.len();
    let start = rng.random_range(0..n);
    let mut len = 1;
    while len < n && rng.random::<f64>() < cr {
        len += 1;
    }
    for (j, (m, t)) in mutant.iter_mut().zip(target).enumerate() {
        let offset = (j + n - start) % n;
        if offset >= len {
            *m = *t;
        }
    }
}

impl Optimizer for DifferentialEvolution {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let np = self.pop_size;
        let mut pop = Population::random(ctx, rng, np)?;
        let mut best = pop.best();

        loop {
            for i in 0..np {
                let base = match self.strategy {
                    DeStrategy::Best1Bin | DeStrategy::Best1Exp => best,
                    DeStrategy::Rand1Bin => distinct(rng, np, 1, &[i])[0],
                };
                let r = distinct(rng, np, 2, &[i, base]);
                let mut trial: Vec<f64> = pop.xs[base]
                    .iter()
                    .zip(&pop.xs[r[0]])
                    .zip(&pop.xs[r[1]])
                    .map(|((b, a), c)| b + self.f_weight * (a - c))
                    .collect();
                match self.strategy {
                    DeStrategy::Best1Exp => exponential(rng, &pop.xs[i], &mut trial, self.f_cr),
                    _ => binomial(rng, &pop.xs[i], &mut trial, self.f_cr),
                }
                let f = ctx.evaluate(&mut trial)?;
                if f <= pop.fs[i] {
                    pop.xs[i] = trial;
                    pop.fs[i] = f;
                    if f < pop.fs[best] {
                        best = i;
                    }
                }
            }
        }
    }
}
