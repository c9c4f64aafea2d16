//! The implemented optimizer set. Each module exposes one strategy type
//! implementing [`Optimizer`](crate::Optimizer), built from [`Hyperparams`](crate::Hyperparams).

pub mod cmaes;
pub mod de;
pub mod ga;
pub mod hs;
pub mod isoma;
pub mod pso;
pub mod sa;
pub mod shade;
pub mod sos;
pub mod spsa;

use rand::Rng;

use crate::{SearchContext, Termination};

type Step<T> = Result<T, Termination>;

/// Uniformly initialized, evaluated population.
pub(crate) struct Population {
    pub xs: Vec<Vec<f64>>,
    pub fs: Vec<f64>,
}

impl Population {
    pub fn random<R: Rng + ?Sized>(
        ctx: &mut SearchContext<'_>,
        rng: &mut R,
        size: usize,
    ) -> Step<Self> {
        let mut xs: Vec<Vec<f64>> = (0..size).map(|_| ctx.bounds().sample(rng)).collect();
        let fs = ctx.evaluate_all(&mut xs)?;
        Ok(Self { xs, fs })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn best(&self) -> usize {
        argmin(&self.fs)
    }

    pub fn worst(&self) -> usize {
        self.fs
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("empty population")
    }

    /// Indices sorted from best to worst.
    pub fn ranking(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.fs[a].total_cmp(&self.fs[b]));
        idx
    }
}

pub(crate) fn argmin(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("argmin of empty slice")
}

/// `k` distinct indices from `0..n`, none of them in `exclude`.
pub(crate) fn distinct<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    exclude: &[usize],
) -> Vec<usize> {
    debug_assert!(n >= k + exclude.len());
    let mut picked = Vec::with_capacity(k);
    while picked.len() < k {
        let i = rng.random_range(0..n);
        if !exclude.contains(&i) && !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked
}
