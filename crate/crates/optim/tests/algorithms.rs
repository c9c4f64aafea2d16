use proptest::prelude::*;
use vqebench_optim::{
    default_spec, minimize, sphere, Algorithm, Bounds, FnObjective, Objective, OptimError,
    OptimizerSpec, Target, Termination,
};

fn spec(alg: Algorithm, dim: usize, lo: f64, hi: f64, budget: usize, seed: u64) -> OptimizerSpec {
    default_spec(alg, dim)
        .unwrap()
        .with_bounds(Bounds::uniform(dim, lo, hi).unwrap())
        .with_budget(budget)
        .with_seed(seed)
}

/// Asserts every queried point lies inside the box.
struct Boxed {
    lo: f64,
    hi: f64,
    dim: usize,
    calls: usize,
}

impl Objective for Boxed {
    fn dim(&self) -> usize {
        self.dim
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.calls += 1;
        assert!(x.iter().all(|v| (self.lo..=self.hi).contains(v)), "{x:?}");
        // Minimum sits outside the box so strategies are pushed against the bounds.
        x.iter().map(|v| (v - 2.0 * self.hi).powi(2)).sum()
    }
}

#[test]
fn shifted_parabola_in_one_dimension() {
    for &alg in Algorithm::ALL {
        if alg == Algorithm::SaBoltzmann {
            continue;
        }
        let s = spec(alg, 1, -5.0, 5.0, 20_000, 1);
        let mut f = FnObjective::new(1, |x: &[f64]| (x[0] - 1.0).powi(2));
        let run = minimize(&s, &mut f).unwrap();
        let best = run.trace.best_params[0];
        assert!((best - 1.0).abs() < 1e-2, "{alg}: x* = {best}");
    }
}

#[test]
fn points_stay_in_bounds_and_budget_is_respected() {
    for &alg in Algorithm::ALL {
        let s = spec(alg, 4, -1.0, 1.0, 3_000, 5);
        let mut f = Boxed {
            lo: -1.0,
            hi: 1.0,
            dim: 4,
            calls: 0,
        };
        let run = minimize(&s, &mut f).unwrap();
        assert!(run.fe_used <= 3_000, "{alg}");
        assert_eq!(run.fe_used, f.calls, "{alg}");
        assert_eq!(run.trace.len(), f.calls, "{alg}");
        // The constrained optimum is the corner at +1 in every coordinate.
        assert!(run
            .trace
            .best_params
            .iter()
            .all(|v| (-1.0..=1.0).contains(v)));
    }
}

#[test]
fn identical_seed_gives_identical_trace() {
    for &alg in Algorithm::ALL {
        let s = spec(alg, 3, -5.0, 5.0, 1_500, 42);
        let mut a = FnObjective::new(3, sphere);
        let mut b = FnObjective::new(3, sphere);
        let ra = minimize(&s, &mut a).unwrap();
        let rb = minimize(&s, &mut b).unwrap();
        assert_eq!(ra, rb, "{alg}");
    }
}

#[test]
fn different_seeds_explore_differently() {
    for &alg in Algorithm::ALL {
        let mut a = FnObjective::new(3, sphere);
        let mut b = FnObjective::new(3, sphere);
        let ra = minimize(&spec(alg, 3, -5.0, 5.0, 200, 1), &mut a).unwrap();
        let rb = minimize(&spec(alg, 3, -5.0, 5.0, 200, 2), &mut b).unwrap();
        assert_ne!(ra.trace.points, rb.trace.points, "{alg}");
    }
}

#[test]
fn target_stops_run_at_first_hit() {
    for alg in [Algorithm::CmaEs, Algorithm::DeBest1Bin, Algorithm::Pso] {
        let s = spec(alg, 2, -5.0, 5.0, 20_000, 3).with_target(Target::new(0.0, 1e-3));
        let mut f = FnObjective::new(2, sphere);
        let run = minimize(&s, &mut f).unwrap();
        assert_eq!(run.termination, Termination::Target, "{alg}");
        let hit = run.target_hit_fe.unwrap();
        assert_eq!(hit, run.fe_used);
        assert!(run.trace.points[hit - 1].value <= 1e-3);
        assert!(run.trace.points[..hit - 1].iter().all(|p| p.value > 1e-3));
    }
}

#[test]
fn record_only_target_does_not_stop() {
    let s = spec(Algorithm::Pso, 2, -5.0, 5.0, 5_000, 3)
        .with_target(Target::new(0.0, 1e-3).record_only());
    let mut f = FnObjective::new(2, sphere);
    let run = minimize(&s, &mut f).unwrap();
    assert_eq!(run.termination, Termination::Budget);
    assert!(run.target_hit_fe.unwrap() < 5_000);
}

#[test]
fn budget_below_one_population_is_rejected() {
    let s = spec(Algorithm::Ga, 3, -1.0, 1.0, 10, 0);
    let mut f = FnObjective::new(3, sphere);
    assert_eq!(
        minimize(&s, &mut f).unwrap_err(),
        OptimError::BudgetTooSmall {
            budget: 10,
            required: 50
        }
    );
}

#[test]
fn dimension_mismatch_is_rejected() {
    let s = spec(Algorithm::Hs, 3, -1.0, 1.0, 100, 0);
    let mut f = FnObjective::new(4, sphere);
    assert!(matches!(
        minimize(&s, &mut f),
        Err(OptimError::DimensionMismatch {
            bounds: 3,
            objective: 4
        })
    ));
}

#[test]
fn stagnation_window_ends_flat_runs() {
    let s = spec(Algorithm::Hs, 2, -1.0, 1.0, 10_000, 0);
    let s = OptimizerSpec {
        stagnation: true,
        ..s
    };
    let mut f = FnObjective::new(2, |_: &[f64]| 1.0);
    let run = minimize(&s, &mut f).unwrap();
    assert_eq!(run.termination, Termination::Stagnation);
    assert_eq!(run.fe_used, 1 + 20 * 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn best_so_far_never_increases(alg_idx in 0..16usize, seed in 0..1_000u64, dim in 1..5usize) {
        let alg = Algorithm::ALL[alg_idx];
        let s = spec(alg, dim, -3.0, 3.0, 600, seed);
        let mut f = FnObjective::new(dim, |x: &[f64]| x.iter().map(|v| (v - 0.5).abs()).sum());
        let run = minimize(&s, &mut f).unwrap();
        prop_assert!(run.fe_used <= 600);
        let bests = run.trace.best_so_far();
        prop_assert!(bests.windows(2).all(|w| w[1] <= w[0]));
        prop_assert_eq!(*bests.last().unwrap(), run.trace.best_value);
        for (i, p) in run.trace.points.iter().enumerate() {
            prop_assert_eq!(p.fe, i + 1);
        }
    }
}
