//! Harmony search. One improvisation per evaluation; it replaces the worst
//! harmony when strictly better.

use rand::Rng;

use super::{Population, Step};
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct HarmonySearch {
    /// Memory consideration rate.
    pub c_r: f64,
    /// Pitch adjustment rate.
    pub pa_r: f64,
    /// Harmony memory size.
    pub hms: usize,
    /// Pitch adjustment width as a fraction of each coordinate's range.
    pub bandwidth: f64,
}

impl HarmonySearch {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            c_r: params.probability("c_r")?,
            pa_r: params.probability("pa_r")?,
            hms: params.count("hms", 1)?,
            bandwidth: params.positive("bandwidth")?,
        })
    }
}

impl Optimizer for HarmonySearch {
    fn min_budget(&self, _dim: usize) -> usize {
        self.hms
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let dim = ctx.dim();
        let mut memory = Population::random(ctx, rng, self.hms)?;
        let mut worst = memory.worst();

        loop {
            let mut x = Vec::with_capacity(dim);
            for j in 0..dim {
                let v = if rng.random::<f64>() < self.c_r {
                    let base = memory.xs[rng.random_range(0..self.hms)][j];
                    if rng.random::<f64>() < self.pa_r {
                        let bw = self.bandwidth * ctx.bounds().range(j);
                        base + bw * rng.random_range(-1.0..=1.0)
                    } else {
                        base
                    }
                } else {
                    rng.random_range(ctx.bounds().lower()[j]..ctx.bounds().upper()[j])
                };
                x.push(v);
            }
            let f = ctx.evaluate(&mut x)?;
            if f < memory.fs[worst] {
                memory.xs[worst] = x;
                memory.fs[worst] = f;
                worst = memory.worst();
            }
        }
    }
}
