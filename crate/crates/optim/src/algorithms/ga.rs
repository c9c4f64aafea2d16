//! Real-coded generational GA: tournament selection, BLX-α crossover,
//! per-gene Gaussian mutation, and single-elite survival.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{Population, Step};
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct GeneticAlgorithm {
    pub pop_size: usize,
    pub pc: f64,
    pub pm: f64,
    pub tournament_size: usize,
    pub blend_alpha: f64,
    /// Mutation standard deviation as a fraction of each coordinate's range.
    pub mutation_scale: f64,
}

impl GeneticAlgorithm {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            pop_size: params.count("pop_size", 2)?,
            pc: params.probability("pc")?,
            pm: params.probability("pm")?,
            tournament_size: params.count("tournament_size", 1)?,
            blend_alpha: params.real("blend_alpha")?.max(0.0),
            mutation_scale: params.positive("mutation_scale")?,
        })
    }

    fn tournament(&self, rng: &mut OptimRng, fs: &[f64]) -> usize {
        let mut winner = rng.random_range(0..fs.len());
        for _ in 1..self.tournament_size {
            let c = rng.random_range(0..fs.len());
            if fs[c] < fs[winner] {
                winner = c;
            }
        }
        winner
    }
}

impl Optimizer for GeneticAlgorithm {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let dim = ctx.dim();
        let sigmas: Vec<Normal<f64>> = (0..dim)
            .map(|j| {
                Normal::new(0.0, self.mutation_scale * ctx.bounds().range(j)).expect("positive")
            })
            .collect();
        let mut pop = Population::random(ctx, rng, self.pop_size)?;

        loop {
            let elite = pop.best();
            let mut children: Vec<Vec<f64>> = Vec::with_capacity(self.pop_size);
            while children.len() < self.pop_size - 1 {
                let a = &pop.xs[self.tournament(rng, &pop.fs)];
                let b = &pop.xs[self.tournament(rng, &pop.fs)];
                let (mut c1, mut c2) = (a.clone(), b.clone());
                if rng.random::<f64>() < self.pc {
                    for j in 0..dim {
                        let lo = a[j].min(b[j]);
                        let hi = a[j].max(b[j]);
                        let ext = self.blend_alpha * (hi - lo);
                        c1[j] = rng.random_range(lo - ext..=hi + ext);
                        c2[j] = rng.random_range(lo - ext..=hi + ext);
                    }
                }
                for child in [&mut c1, &mut c2] {
                    for (g, n) in child.iter_mut().zip(&sigmas) {
                        if rng.random::<f64>() < self.pm {
                            *g += n.sample(rng);
                        }
                    }
                }
                children.push(c1);
                if children.len() < self.pop_size - 1 {
                    children.push(c2);
                }
            }

            let fs = ctx.evaluate_all(&mut children)?;
            children.push(pop.xs[elite].clone());
            let mut next_fs = fs;
            next_fs.push(pop.fs[elite]);
            pop.xs = children;
            pop.fs = next_fs;
        }
    }
}
