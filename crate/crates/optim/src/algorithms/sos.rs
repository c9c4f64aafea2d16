//! Symbiotic organisms search: mutualism, commensalism and parasitism phases
//! per organism, each with greedy replacement.

use rand::seq::index;
use rand::Rng;

use super::{distinct, Population, Step};
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct SymbioticOrganisms {
    pub pop_size: usize,
}

impl SymbioticOrganisms {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            pop_size: params.count("pop_size", 2)?,
        })
    }
}

fn offer(pop: &mut Population, best: &mut usize, k: usize, x: Vec<f64>, f: f64) {
    if f < pop.fs[k] {
        pop.xs[k] = x;
        pop.fs[k] = f;
        if f < pop.fs[*best] {
            *best = k;
        }
    }
}

impl Optimizer for SymbioticOrganisms {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let dim = ctx.dim();
        let np = self.pop_size;
        let mut pop = Population::random(ctx, rng, np)?;
        let mut best = pop.best();

        loop {
            for i in 0..np {
                // Mutualism: i and j both move toward the best past their mutual vector.
                let j = distinct(rng, np, 1, &[i])[0];
                let bf1 = rng.random_range(1..=2) as f64;
                let bf2 = rng.random_range(1..=2) as f64;
                let xb = pop.xs[best].clone();
                let mut xi = pop.xs[i].clone();
                let mut xj = pop.xs[j].clone();
                for d in 0..dim {
                    let mutual = (pop.xs[i][d] + pop.xs[j][d]) / 2.0;
                    xi[d] += rng.random::<f64>() * (xb[d] - mutual * bf1);
                    xj[d] += rng.random::<f64>() * (xb[d] - mutual * bf2);
                }
                let fi = ctx.evaluate(&mut xi)?;
                offer(&mut pop, &mut best, i, xi, fi);
                let fj = ctx.evaluate(&mut xj)?;
                offer(&mut pop, &mut best, j, xj, fj);

                // Commensalism: i benefits from j, j is unaffected.
                let j = distinct(rng, np, 1, &[i])[0];
                let xb = &pop.xs[best];
                let mut xi: Vec<f64> = (0..dim)
                    .map(|d| pop.xs[i][d] + rng.random_range(-1.0..=1.0) * (xb[d] - pop.xs[j][d]))
                    .collect();
                let fi = ctx.evaluate(&mut xi)?;
                offer(&mut pop, &mut best, i, xi, fi);

                // Parasitism: a mutated copy of i competes with j.
                let j = distinct(rng, np, 1, &[i])[0];
                let mut parasite = pop.xs[i].clone();
                let k = rng.random_range(1..=dim);
                for d in index::sample(rng, dim, k) {
                    parasite[d] =
                        rng.random_range(ctx.bounds().lower()[d]..ctx.bounds().upper()[d]);
                }
                let fp = ctx.evaluate(&mut parasite)?;
                offer(&mut pop, &mut best, j, parasite, fp);
            }
        }
    }
}
