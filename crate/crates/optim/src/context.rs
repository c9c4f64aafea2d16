use crate::bounds::Bounds;
use crate::objective::{Objective, Target};
use crate::trace::{Termination, Trace};

/// Minimum best-value improvement that resets the stagnation window.
pub const STAGNATION_EPS: f64 = 1e-8;

/// FE-accounting gateway between an optimizer and its objective.
///
/// Every evaluation goes through [`SearchContext::evaluate`], which repairs the
/// point into bounds, records it, and reports termination as `Err`. Optimizer
/// loops use `?` on it and therefore never exceed the budget.
pub struct SearchContext<'a> {
    objective: &'a mut dyn Objective,
    bounds: &'a Bounds,
    budget: usize,
    target: Option<Target>,
    stagnation_window: Option<usize>,
    trace: Trace,
    target_hit_fe: Option<usize>,
    last_improvement_fe: usize,
    improvement_ref: f64,
}

impl<'a> SearchContext<'a> {
    pub(crate) fn new(
        objective: &'a mut dyn Objective,
        bounds: &'a Bounds,
        budget: usize,
        target: Option<Target>,
        stagnation_window: Option<usize>,
    ) -> Self {
        Self {
            objective,
            bounds,
            budget,
            target,
            stagnation_window,
            trace: Trace::default(),
            target_hit_fe: None,
            last_improvement_fe: 0,
            improvement_ref: f64::INFINITY,
        }
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        self.bounds
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn fe_used(&self) -> usize {
        self.trace.len()
    }

    pub fn remaining(&self) -> usize {
        self.budget - self.fe_used()
    }

    /// Fraction of the budget consumed, in `[0, 1]`.
    pub fn progress(&self) -> f64 {
        self.fe_used() as f64 / self.budget as f64
    }

    pub fn best_value(&self) -> f64 {
        self.trace.best_value
    }

    pub fn best_params(&self) -> &[f64] {
        &self.trace.best_params
    }

    /// Clip `x` into bounds, evaluate it, and record the result.
    pub fn evaluate(&mut self, x: &mut [f64]) -> Result<f64, Termination> {
        if self.fe_used() >= self.budget {
            return Err(Termination::Budget);
        }
        self.bounds.clip(x);
        let value = self.objective.evaluate(x);
        self.trace.record(x, value);
        let fe = self.fe_used();

        if value < self.improvement_ref - STAGNATION_EPS {
            self.improvement_ref = value;
            self.last_improvement_fe = fe;
        }

        if let Some(target) = self.target {
            if self.target_hit_fe.is_none()
                && value <= target.threshold()
                && self.objective.confirm_target(x, value, &target)
            {
                self.target_hit_fe = Some(fe);
                if target.stop {
                    return Err(Termination::Target);
                }
            }
        }

        if let Some(window) = self.stagnation_window {
            if fe - self.last_improvement_fe >= window {
                return Err(Termination::Stagnation);
            }
        }
        Ok(value)
    }

    /// Evaluate a batch in order; stops at the first termination.
    pub fn evaluate_all(&mut self, xs: &mut [Vec<f64>]) -> Result<Vec<f64>, Termination> {
        xs.iter_mut().map(|x| self.evaluate(x)).collect()
    }

    pub(crate) fn finish(self) -> (Trace, Option<usize>) {
        (self.trace, self.target_hit_fe)
    }
}
