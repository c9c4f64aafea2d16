use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    /// 1-based function-evaluation index.
    pub fe: usize,
    pub value: f64,
    pub is_new_best: bool,
}

/// Every evaluation of one run, in FE order, plus the best point seen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub points: Vec<TracePoint>,
    pub best_params: Vec<f64>,
    pub best_value: f64,
}

impl Default for Trace {
    fn default() -> Self {
        Self {
            points: Vec::new(),
            best_params: Vec::new(),
            best_value: f64::INFINITY,
        }
    }
}

impl Trace {
    pub(crate) fn record(&mut self, x: &[f64], value: f64) -> bool {
        let is_new_best = value < self.best_value || self.points.is_empty() && !value.is_nan();
        if is_new_best {
            self.best_value = value;
            self.best_params.clear();
            self.best_params.extend_from_slice(x);
        }
        self.points.push(TracePoint {
            fe: self.points.len() + 1,
            value,
            is_new_best,
        });
        is_new_best
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Only the points that improved the running minimum.
    pub fn improvements(&self) -> impl Iterator<Item = &TracePoint> + '_ {
        self.points.iter().filter(|p| p.is_new_best)
    }

    /// Best value seen within the first `fe` evaluations.
    ///
    /// Runs that stopped before `fe` carry their final best forward.
    pub fn best_at(&self, fe: usize) -> Option<f64> {
        self.improvements()
            .take_while(|p| p.fe <= fe)
            .last()
            .map(|p| p.value)
    }

    /// Running minimum after every evaluation.
    pub fn best_so_far(&self) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.points
            .iter()
            .map(|p| {
                if p.value < best {
                    best = p.value;
                }
                best
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Termination {
    Budget,
    Target,
    Stagnation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub trace: Trace,
    pub termination: Termination,
    pub fe_used: usize,
    /// FE at which the target was first confirmed, if a target was set and reached.
    pub target_hit_fe: Option<usize>,
}
