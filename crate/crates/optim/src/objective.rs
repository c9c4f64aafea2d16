use serde::{Deserialize, Serialize};

/// A black-box function to be minimized.
///
/// `evaluate` may be stochastic (shot noise) and may carry internal state
/// such as an evaluation counter, hence `&mut self`.
pub trait Objective {
    fn dim(&self) -> usize;

    fn evaluate(&mut self, x: &[f64]) -> f64;

    /// Decide whether a freshly evaluated point counts as having reached `target`.
    ///
    /// Only called when `value <= target.threshold()`. Noisy objectives override
    /// this to confirm the hit with a noiseless re-evaluation.
    fn confirm_target(&mut self, x: &[f64], value: f64, target: &Target) -> bool {
        let _ = x;
        value <= target.threshold()
    }
}

impl<O: Objective + ?Sized> Objective for &mut O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        (**self).evaluate(x)
    }

    fn confirm_target(&mut self, x: &[f64], value: f64, target: &Target) -> bool {
        (**self).confirm_target(x, value, target)
    }
}

/// Early-stop target: a value counts as reached when it is `<= value + tolerance`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Target {
    pub value: f64,
    pub tolerance: f64,
    /// Stop the run at the first confirmed hit. When false the hit FE is only recorded.
    pub stop: bool,
}

impl Target {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Self {
            value,
            tolerance,
            stop: true,
        }
    }

    pub fn record_only(mut self) -> Self {
        self.stop = false;
        self
    }

    pub fn threshold(&self) -> f64 {
        self.value + self.tolerance
    }
}

/// Adapts a closure into an [`Objective`].
pub struct FnObjective<F> {
    dim: usize,
    f: F,
}

impl<F> FnObjective<F>
where
    F: FnMut(&[f64]) -> f64,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: FnMut(&[f64]) -> f64,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// Σ x², the sphere test function.
pub fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}
