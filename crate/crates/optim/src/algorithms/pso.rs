//! Global-best particle swarm with inertia weight and velocity clamping.
//! The global best is updated after every evaluation.

use rand::Rng;

use super::{argmin, Population, Step};
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct ParticleSwarm {
    pub pop_size: usize,
    pub w: f64,
    pub c1: f64,
    pub c2: f64,
    /// Velocity limit as a fraction of each coordinate's range.
    pub v_max: f64,
}

impl ParticleSwarm {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            pop_size: params.count("pop_size", 1)?,
            w: params.real("w")?,
            c1: params.real("c1")?,
            c2: params.real("c2")?,
            v_max: params.positive("v_max")?,
        })
    }
}

impl Optimizer for ParticleSwarm {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let dim = ctx.dim();
        let v_lim: Vec<f64> = (0..dim)
            .map(|j| self.v_max * ctx.bounds().range(j))
            .collect();
        let Population { mut xs, fs } = Population::random(ctx, rng, self.pop_size)?;
        let mut vs = vec![vec![0.0; dim]; self.pop_size];
        let mut pbest = xs.clone();
        let mut pbest_f = fs;
        let mut g = argmin(&pbest_f);

        loop {
            for i in 0..self.pop_size {
                for j in 0..dim {
                    let r1: f64 = rng.random();
                    let r2: f64 = rng.random();
                    let v = self.w * vs[i][j]
                        + self.c1 * r1 * (pbest[i][j] - xs[i][j])
                        + self.c2 * r2 * (pbest[g][j] - xs[i][j]);
                    vs[i][j] = v.clamp(-v_lim[j], v_lim[j]);
                    xs[i][j] += vs[i][j];
                }
                let f = ctx.evaluate(&mut xs[i])?;
                if f < pbest_f[i] {
                    pbest_f[i] = f;
                    pbest[i].clone_from(&xs[i]);
                    if f < pbest_f[g] {
                        g = i;
                    }
                }
            }
        }
    }
}
