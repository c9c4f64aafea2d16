//! Derivative-free optimizers behind a single FE-accounted `minimize` entry point.
//!
//! All algorithms minimize an [`Objective`] inside a box ([`Bounds`]), repair
//! candidates by clipping, and record every evaluation in a [`Trace`]. Runs are
//! deterministic given [`OptimizerSpec::seed`].
//!
//! ```
//! use vqebench_optim::{default_spec, minimize, Algorithm, Bounds, FnObjective};
//!
//! let spec = default_spec(Algorithm::CmaEs, 2)
//!     .unwrap()
//!     .with_bounds(Bounds::uniform(2, -5.0, 5.0).unwrap())
//!     .with_budget(2_000)
//!     .with_seed(7);
//! let mut f = FnObjective::new(2, |x: &[f64]| (x[0] - 1.0).powi(2) + x[1] * x[1]);
//! let run = minimize(&spec, &mut f).unwrap();
//! assert!(run.trace.best_value < 1e-6);
//! ```
//!
//! New algorithms plug in by implementing [`Optimizer`] and calling [`minimize_with`].

pub mod algorithms;
mod bounds;
mod context;
mod error;
mod objective;
mod spec;
mod trace;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use bounds::Bounds;
pub use context::{SearchContext, STAGNATION_EPS};
pub use error::{OptimError, Result};
pub use objective::{sphere, FnObjective, Objective, Target};
pub use spec::{default_spec, Algorithm, Hyperparams, OptimizerSpec, ANGLE_BOUND};
pub use trace::{RunResult, Termination, Trace, TracePoint};

/// RNG handed to optimizers. ChaCha is portable, so traces reproduce across platforms.
pub type OptimRng = ChaCha8Rng;

/// A search strategy driven through a [`SearchContext`].
pub trait Optimizer {
    /// FEs needed to complete the initial population.
    fn min_budget(&self, dim: usize) -> usize {
        let _ = dim;
        1
    }

    /// Run until the context reports termination (`Err`) or the strategy
    /// decides it has converged (`Ok`).
    fn search(
        &mut self,
        ctx: &mut SearchContext<'_>,
        rng: &mut OptimRng,
    ) -> std::result::Result<(), Termination>;
}

/// Run the algorithm named in `spec` on `objective`.
pub fn minimize(spec: &OptimizerSpec, objective: &mut dyn Objective) -> Result<RunResult> {
    let mut optimizer = spec.algorithm.build(&spec.hyperparams)?;
    minimize_with(optimizer.as_mut(), spec, objective)
}

/// Run a caller-supplied optimizer under the bounds, budget, target and seed of
/// `spec`. `spec.algorithm` and `spec.hyperparams` are not consulted.
pub fn minimize_with(
    optimizer: &mut dyn Optimizer,
    spec: &OptimizerSpec,
    objective: &mut dyn Objective,
) -> Result<RunResult> {
    check_runnable(optimizer, spec, objective.dim())?;
    let mut rng = OptimRng::seed_from_u64(spec.seed);
    let mut ctx = SearchContext::new(
        objective,
        &spec.bounds,
        spec.budget,
        spec.target,
        spec.stagnation_window(),
    );
    let termination = match optimizer.search(&mut ctx, &mut rng) {
        Err(t) => t,
        Ok(()) => Termination::Stagnation,
    };
    let (trace, target_hit_fe) = ctx.finish();
    Ok(RunResult {
        fe_used: trace.len(),
        trace,
        termination,
        target_hit_fe,
    })
}

/// Fail-fast configuration checks that need no evaluations.
pub fn validate_spec(spec: &OptimizerSpec, objective_dim: usize) -> Result<()> {
    let optimizer = spec.algorithm.build(&spec.hyperparams)?;
    check_runnable(optimizer.as_ref(), spec, objective_dim)
}

fn check_runnable(
    optimizer: &dyn Optimizer,
    spec: &OptimizerSpec,
    objective_dim: usize,
) -> Result<()> {
    if spec.bounds.dim() != objective_dim {
        return Err(OptimError::DimensionMismatch {
            bounds: spec.bounds.dim(),
            objective: objective_dim,
        });
    }
    let required = optimizer.min_budget(spec.dim());
    if spec.budget < required.max(1) {
        return Err(OptimError::BudgetTooSmall {
            budget: spec.budget,
            required: required.max(1),
        });
    }
    Ok(())
}
