//! Self-organizing migrating algorithm, team-to-team variant.
//!
//! Each migration loop draws `m` individuals, lets the best `n` of them
//! migrate, and points each migrant at a leader chosen as the best of `s`
//! random individuals. A migrant takes `n_jump` jumps of size `step` toward
//! the leader along a random PRT sub-space and keeps the best point visited.

use rand::Rng;

use super::{distinct, Population, Step};
use crate::error::{OptimError, Result};
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct Isoma {
    pub n_jump: usize,
    pub step: f64,
    pub pop_size: usize,
    pub prt: f64,
    pub m: usize,
    pub n: usize,
    pub s: usize,
}

impl Isoma {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        let me = Self {
            n_jump: params.count("n_jump", 1)?,
            step: params.positive("step")?,
            pop_size: params.count("pop_size", 2)?,
            prt: params.probability("prt")?,
            m: params.count("m", 1)?,
            n: params.count("n", 1)?,
            s: params.count("s", 1)?,
        };
        if me.m > me.pop_size || me.n > me.m || me.s > me.pop_size {
            return Err(OptimError::InvalidHyperparameter {
                key: "m".into(),
                value: me.m as f64,
                reason: "requires n <= m <= pop_size and s <= pop_size",
            });
        }
        Ok(me)
    }
}

impl Optimizer for Isoma {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let dim = ctx.dim();
        let mut pop = Population::random(ctx, rng, self.pop_size)?;

        loop {
            let mut pool = distinct(rng, self.pop_size, self.m, &[]);
            pool.sort_by(|&a, &b| pop.fs[a].total_cmp(&pop.fs[b]));
            let migrants = &pool[..self.n];

            let team = distinct(rng, self.pop_size, self.s, &[]);
            let leader = *team
                .iter()
                .min_by(|&&a, &&b| pop.fs[a].total_cmp(&pop.fs[b]))
                .expect("s >= 1");
            let leader_x = pop.xs[leader].clone();

            for &i in migrants {
                if i == leader {
                    continue;
                }
                let start = pop.xs[i].clone();
                let mut best_x = None;
                let mut best_f = pop.fs[i];
                for j in 1..=self.n_jump {
                    let t = j as f64 * self.step;
                    let forced = rng.random_range(0..dim);
                    let mut x: Vec<f64> = (0..dim)
                        .map(|d| {
                            let on = d == forced || rng.random::<f64>() < self.prt;
                            if on {
                                start[d] + t * (leader_x[d] - start[d])
                            } else {
                                start[d]
                            }
                        })
                        .collect();
                    let f = ctx.evaluate(&mut x)?;
                    if f < best_f {
                        best_f = f;
                        best_x = Some(x);
                    }
                }
                if let Some(x) = best_x {
                    pop.xs[i] = x;
                    pop.fs[i] = best_f;
                }
            }
        }
    }
}
