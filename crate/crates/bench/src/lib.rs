//! Benchmark protocol for metaheuristic optimizers on shot-noise VQE objectives.
//!
//! Three phases share one run executor:
//!
//! 1. Screening on the 5-qubit Ising chain. An optimizer passes if any run
//!    reaches the ground energy within tolerance.
//! 2. Mean function evaluations to target across Ising sizes.
//! 3. Best-so-far convergence curves on the Hubbard model at two shot counts.
//!
//! Success is always decided on the noiseless energy of the best parameters, so
//! a lucky sample cannot count as a hit.

pub mod config;
pub mod error;
pub mod export;
pub mod protocol;
pub mod validate;

pub use config::{ModelSpec, OptimizerEntry, Overrides, Phase, PhaseConfig, Profile};
pub use error::{BenchError, Result};
pub use export::export;
pub use protocol::{
    convergence_curves, execute_run, fe_table, geometric_checkpoints, parameter_count,
    phase1_verdicts, run_phase, run_seed, success_check, Curve, FeTable, PhaseReport,
    PreparedModel, RunJob, RunOutcome, RunRecord, SuccessCheck, TargetMode, TraceFile, Verdict,
};
