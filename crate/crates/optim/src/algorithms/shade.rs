//! Success-history adaptive DE: SHADE and iL-SHADE.
//!
//! Both use current-to-pbest/1 mutation with an external archive of replaced
//! parents and binomial crossover. iL-SHADE adds linear population size
//! reduction, a shrinking pbest fraction, phase-dependent caps on F and CR,
//! and a memory slot pinned at 0.9.

use rand::Rng;
use rand_distr::{Cauchy, Distribution, Normal};

use super::de::binomial;
use super::{Population, Step};
use crate::error::Result;
use crate::spec::Hyperparams;
use crate::{OptimRng, Optimizer, SearchContext};

#[derive(Debug, Clone)]
pub struct Shade {
    pub pop_size: usize,
    pub miu_f: f64,
    pub miu_cr: f64,
}

impl Shade {
    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            pop_size: params.count("pop_size", 4)?,
            miu_f: params.positive("miu_f")?,
            miu_cr: params.probability("miu_cr")?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Ilshade {
    pub pop_size: usize,
    pub memory_size: usize,
}

impl Ilshade {
    pub const MIN_POP: usize = 4;
    const P_MAX: f64 = 0.25;
    const P_MIN: f64 = 0.125;

    pub fn from_params(params: &Hyperparams) -> Result<Self> {
        Ok(Self {
            pop_size: params.count("pop_size", Self::MIN_POP)?,
            memory_size: params.count("memory_size", 2)?,
        })
    }
}

/// Parameter memory indexed by a round-robin write pointer.
struct Memory {
    f: Vec<f64>,
    cr: Vec<f64>,
    next: usize,
    /// Number of leading slots that adapt; slots past it stay fixed.
    adaptive: usize,
    /// Blend the new mean with the old entry instead of overwriting it.
    average_with_old: bool,
}

impl Memory {
    fn draw(&self, rng: &mut OptimRng) -> (f64, f64) {
        let r = rng.random_range(0..self.f.len());
        (self.f[r], self.cr[r])
    }

    fn update(&mut self, s_f: &[f64], s_cr: &[f64], delta: &[f64]) {
        if s_f.is_empty() {
            return;
        }
        let total: f64 = delta.iter().sum();
        let weights: Vec<f64> = if total > 0.0 {
            delta.iter().map(|d| d / total).collect()
        } else {
            vec![1.0 / delta.len() as f64; delta.len()]
        };
        let new_f = lehmer(&weights, s_f);
        let new_cr = if self.average_with_old {
            lehmer(&weights, s_cr)
        } else {
            weights.iter().zip(s_cr).map(|(w, c)| w * c).sum()
        };
        let k = self.next;
        if self.average_with_old {
            self.f[k] = (self.f[k] + new_f) / 2.0;
            self.cr[k] = (self.cr[k] + new_cr) / 2.0;
        } else {
            self.f[k] = new_f;
            self.cr[k] = new_cr;
        }
        self.next = (self.next + 1) % self.adaptive;
    }
}

/// Weighted Lehmer mean `Σ w s² / Σ w s`; 0 when every sample is 0.
fn lehmer(weights: &[f64], samples: &[f64]) -> f64 {
    let num: f64 = weights.iter().zip(samples).map(|(w, s)| w * s * s).sum();
    let den: f64 = weights.iter().zip(samples).map(|(w, s)| w * s).sum();
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Hooks that distinguish iL-SHADE from SHADE.
trait Schedule {
    fn p_best(&self, rng: &mut OptimRng, np: usize, progress: f64) -> f64;
    fn adjust(&self, f: f64, cr: f64, progress: f64) -> (f64, f64);
    fn target_pop(&self, current: usize, progress: f64) -> usize;
}

impl Schedule for Shade {
    fn p_best(&self, rng: &mut OptimRng, np: usize, _progress: f64) -> f64 {
        let p_min = 2.0 / np as f64;
        rng.random_range(p_min..=0.2f64.max(p_min))
    }

    fn adjust(&self, f: f64, cr: f64, _progress: f64) -> (f64, f64) {
        (f, cr)
    }

    fn target_pop(&self, current: usize, _progress: f64) -> usize {
        current
    }
}

impl Schedule for Ilshade {
    fn p_best(&self, _rng: &mut OptimRng, _np: usize, progress: f64) -> f64 {
        Self::P_MAX - (Self::P_MAX - Self::P_MIN) * progress
    }

    fn adjust(&self, f: f64, cr: f64, progress: f64) -> (f64, f64) {
        let cr = if progress < 0.25 {
            cr.max(0.5)
        } else if progress < 0.5 {
            cr.max(0.25)
        } else {
            cr
        };
        let f = if progress < 0.6 { f.min(0.7) } else { f };
        (f, cr)
    }

    fn target_pop(&self, _current: usize, progress: f64) -> usize {
        let span = self.pop_size as f64 - Self::MIN_POP as f64;
        ((self.pop_size as f64 - span * progress).round() as usize).max(Self::MIN_POP)
    }
}

impl Optimizer for Shade {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let memory = Memory {
            f: vec![self.miu_f; self.pop_size],
            cr: vec![self.miu_cr; self.pop_size],
            next: 0,
            adaptive: self.pop_size,
            average_with_old: false,
        };
        evolve(&*self, memory, self.pop_size, ctx, rng)
    }
}

impl Optimizer for Ilshade {
    fn min_budget(&self, _dim: usize) -> usize {
        self.pop_size
    }

    fn search(&mut self, ctx: &mut SearchContext<'_>, rng: &mut OptimRng) -> Step<()> {
        let h = self.memory_size;
        let mut f = vec![0.5; h];
        let mut cr = vec![0.8; h];
        f[h - 1] = 0.9;
        cr[h - 1] = 0.9;
        let memory = Memory {
            f,
            cr,
            next: 0,
            adaptive: h - 1,
            average_with_old: true,
        };
        evolve(&*self, memory, self.pop_size, ctx, rng)
    }
}

fn evolve(
    schedule: &dyn Schedule,
    mut memory: Memory,
    np0: usize,
    ctx: &mut SearchContext<'_>,
    rng: &mut OptimRng,
) -> Step<()> {
    let dim = ctx.dim();
    let mut pop = Population::random(ctx, rng, np0)?;
    let mut archive: Vec<Vec<f64>> = Vec::new();

    loop {
        let np = pop.len();
        let progress = ctx.progress();
        let ranking = pop.ranking();
        let p = schedule.p_best(rng, np, progress);
        let top = ((p * np as f64).round() as usize).clamp(2.min(np), np);

        let mut trials = Vec::with_capacity(np);
        let mut params = Vec::with_capacity(np);
        for i in 0..np {
            let (mf, mcr) = memory.draw(rng);
            let cr = Normal::new(mcr, 0.1)
                .expect("finite mean")
                .sample(rng)
                .clamp(0.0, 1.0);
            let cauchy = Cauchy::new(mf, 0.1).expect("finite location");
            let f = loop {
                let f = cauchy.sample(rng);
                if f > 0.0 {
                    break f.min(1.0);
                }
            };
            let (f, cr) = schedule.adjust(f, cr, progress);

            let pbest = ranking[rng.random_range(0..top)];
            let r1 = loop {
                let r = rng.random_range(0..np);
                if r != i {
                    break r;
                }
            };
            let r2 = loop {
                let r = rng.random_range(0..np + archive.len());
                if r != i && r != r1 {
                    break r;
                }
            };
            let x2 = if r2 < np {
                &pop.xs[r2]
            } else {
                &archive[r2 - np]
            };
            let xi = &pop.xs[i];
            let mut trial: Vec<f64> = (0..dim)
                .map(|j| xi[j] + f * (pop.xs[pbest][j] - xi[j]) + f * (pop.xs[r1][j] - x2[j]))
                .collect();
            binomial(rng, xi, &mut trial, cr);
            trials.push(trial);
            params.push((f, cr));
        }

        let mut s_f = Vec::new();
        let mut s_cr = Vec::new();
        let mut delta = Vec::new();
        for (i, (mut trial, (f, cr))) in trials.into_iter().zip(params).enumerate() {
            let value = ctx.evaluate(&mut trial)?;
            if value < pop.fs[i] {
                s_f.push(f);
                s_cr.push(cr);
                delta.push(pop.fs[i] - value);
                archive.push(std::mem::replace(&mut pop.xs[i], trial));
                pop.fs[i] = value;
            } else if value == pop.fs[i] {
                pop.xs[i] = trial;
            }
        }
        memory.update(&s_f, &s_cr, &delta);

        let target = schedule.target_pop(np, ctx.progress());
        if target < np {
            let keep: Vec<usize> = pop.ranking().into_iter().take(target).collect();
            pop.xs = keep.iter().map(|&i| pop.xs[i].clone()).collect();
            pop.fs = keep.iter().map(|&i| pop.fs[i]).collect();
        }
        while archive.len() > pop.len() {
            let victim = rng.random_range(0..archive.len());
            archive.swap_remove(victim);
        }
    }
}
