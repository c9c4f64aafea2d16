//! The three experiment phases and their success metrics.
//!
//! Every run owns its objective and RNG streams, so runs execute in parallel
//! and results never depend on scheduling. Records are sorted by cell key
//! before they leave this module.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use vqebench_core::seed::{hash_str, mix};
use vqebench_core::{
    build_hubbard_hva, build_ising_ansatz, exact_spectrum, hubbard_hamiltonian, ising_hamiltonian,
    CircuitF64, EnergyObjectiveF64, HamiltonianF64, ShotConfig, Shots, Spectrum,
};
use vqebench_optim::{minimize_with, Optimizer, Target, Termination, Trace};

use crate::config::{ModelSpec, OptimizerEntry, Phase, PhaseConfig};
use crate::error::Result;

/// Eigenvalues reported beside the reference list for the Hubbard model.
pub const SPECTRUM_K: usize = 10;

/// Number of circuit parameters for `model`.
pub fn parameter_count(model: &ModelSpec) -> usize {
    match model {
        ModelSpec::Ising { n_qubits } => 4 * n_qubits,
        ModelSpec::Hubbard { spec, layers } => 2 * spec.sites + 3 * spec.sites * layers,
    }
}

/// Hamiltonian, ansatz and exact spectrum of one model, built once and shared by its runs.
#[derive(Debug, Clone)]
pub struct PreparedModel {
    pub model: ModelSpec,
    pub hamiltonian: HamiltonianF64,
    pub circuit: CircuitF64,
    pub spectrum: Spectrum,
}

impl PreparedModel {
    pub fn new(model: ModelSpec) -> Result<Self> {
        let (hamiltonian, circuit) = match model {
            ModelSpec::Ising { n_qubits } => {
                (ising_hamiltonian(n_qubits)?, build_ising_ansatz(n_qubits)?)
            }
            ModelSpec::Hubbard { spec, layers } => (
                hubbard_hamiltonian(&spec)?,
                build_hubbard_hva(spec.sites, layers)?,
            ),
        };
        let spectrum = exact_spectrum(&hamiltonian, SPECTRUM_K)?;
        Ok(Self {
            model,
            hamiltonian,
            circuit,
            spectrum,
        })
    }

    pub fn ground_energy(&self) -> f64 {
        self.spectrum.ground_energy()
    }

    pub fn dim(&self) -> usize {
        self.circuit.n_params()
    }

    pub fn objective(&self, shots: Shots, seed: u64) -> Result<EnergyObjectiveF64> {
        Ok(EnergyObjectiveF64::new(
            self.circuit.clone(),
            self.hamiltonian.clone(),
            ShotConfig { shots, seed },
        )?)
    }
}

/// Outcome of one exact success query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessCheck {
    pub exact_energy: f64,
    pub success: bool,
}

/// Noiseless energy of `params` compared against `ground + tolerance` (inclusive).
///
/// Costs exactly one exact evaluation on `objective` and no FE.
pub fn success_check(
    objective: &mut EnergyObjectiveF64,
    params: &[f64],
    ground: f64,
    tolerance: f64,
) -> Result<SuccessCheck> {
    let exact_energy = objective.exact_energy(params)?;
    Ok(SuccessCheck {
        exact_energy,
        success: exact_energy <= ground + tolerance,
    })
}

/// `seed_base`, optimizer, model and run index hashed into one run seed.
pub fn run_seed(seed_base: u64, optimizer: &str, model: &str, run: usize) -> u64 {
    mix(
        mix(mix(seed_base, hash_str(optimizer)), hash_str(model)),
        run as u64,
    )
}

/// `1, 2, 4, …` below `budget`, then `budget` itself.
pub fn geometric_checkpoints(budget: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::successors(Some(1usize), |&c| c.checked_mul(2))
        .take_while(|&c| c < budget)
        .collect();
    if budget > 0 {
        out.push(budget);
    }
    out
}

/// One line of `runs.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub optimizer: String,
    pub model: String,
    pub n_qubits: usize,
    pub shots: Shots,
    pub run: usize,
    pub seed: u64,
    /// FE at which the target was confirmed; `None` when the run never reached it.
    pub fe_to_target: Option<usize>,
    pub success: bool,
    /// Lowest sampled energy seen.
    pub best_energy: f64,
    /// Noiseless energy of the best parameters.
    pub best_exact_energy: f64,
    pub ground_energy: f64,
    pub termination: Termination,
    pub fe_used: usize,
    /// Uncounted exact evaluations: target confirmations plus the final success check.
    pub exact_evals: usize,
    /// Trace file, relative to the output directory.
    pub trace: String,
    /// Seconds; kept out of `runs.jsonl` so that file is reproducible.
    #[serde(skip)]
    pub wall_time: f64,
}

impl RunRecord {
    /// Canonical order: optimizer, qubit count, model, shots (exact last), run.
    pub fn cell_key(&self) -> (String, usize, String, u64, usize) {
        (
            self.optimizer.clone(),
            self.n_qubits,
            self.model.clone(),
            shots_key(self.shots),
            self.run,
        )
    }
}

pub(crate) fn shots_key(s: Shots) -> u64 {
    match s {
        Shots::Count(n) => n,
        Shots::Exact => u64::MAX,
    }
}

/// The improving points of a run, enough to rebuild its best-so-far curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub fe_used: usize,
    pub improvements: Vec<(usize, f64)>,
    pub best_params: Vec<f64>,
}

impl TraceFile {
    pub fn from_trace(trace: &Trace) -> Self {
        Self {
            fe_used: trace.len(),
            improvements: trace.improvements().map(|p| (p.fe, p.value)).collect(),
            best_params: trace.best_params.clone(),
        }
    }

    /// Best value within the first `fe` evaluations, carried forward past the end.
    pub fn best_at(&self, fe: usize) -> Option<f64> {
        self.improvements
            .iter()
            .take_while(|(f, _)| *f <= fe)
            .last()
            .map(|&(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub trace: TraceFile,
}

/// One cell of the experiment grid.
#[derive(Debug, Clone)]
pub struct RunJob {
    pub optimizer: OptimizerEntry,
    pub model: usize,
    pub shots: Shots,
    pub run: usize,
}

/// How a run treats the success target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetMode {
    /// Stop at the first confirmed hit (FE counting).
    Stop,
    /// Record the first hit and keep going (convergence curves).
    Record,
}

/// Run `optimizer` on one cell.
///
/// The optimizer stream is seeded with `mix(run_seed, 1)` and the shot stream
/// with `mix(run_seed, 2)`. A run without a confirmed hit whose final best
/// parameters still pass [`success_check`] is credited with the FE at which
/// those parameters were found.
pub fn execute_run(
    cfg: &PhaseConfig,
    prepared: &PreparedModel,
    job: &RunJob,
    optimizer: &mut dyn Optimizer,
    mode: TargetMode,
) -> Result<RunOutcome> {
    let model_id = prepared.model.id();
    let seed = run_seed(cfg.seed_base, job.optimizer.id(), &model_id, job.run);
    let ground = prepared.ground_energy();
    let target = Target::new(ground, cfg.tolerance);
    let mut spec = job
        .optimizer
        .spec(prepared.dim())?
        .with_budget(cfg.budget)
        .with_seed(mix(seed, 1))
        .with_target(match mode {
            TargetMode::Stop => target,
            TargetMode::Record => target.record_only(),
        });
    spec.stagnation = cfg.stagnation;

    let mut objective = prepared.objective(job.shots, mix(seed, 2))?;
    let start = Instant::now();
    let result = minimize_with(optimizer, &spec, &mut objective)?;
    let check = success_check(
        &mut objective,
        &result.trace.best_params,
        ground,
        cfg.tolerance,
    )?;
    let wall_time = start.elapsed().as_secs_f64();

    let found_at = result.trace.improvements().last().map(|p| p.fe);
    let fe_to_target = result
        .target_hit_fe
        .or(if check.success { found_at } else { None });
    let trace_name = format!(
        "traces/{}_{}_{}_{}.json",
        job.optimizer.id(),
        model_id,
        job.shots,
        job.run
    );
    Ok(RunOutcome {
        record: RunRecord {
            optimizer: job.optimizer.id().to_string(),
            model: model_id,
            n_qubits: prepared.model.n_qubits(),
            shots: job.shots,
            run: job.run,
            seed,
            fe_to_target,
            success: fe_to_target.is_some(),
            best_energy: result.trace.best_value,
            best_exact_energy: check.exact_energy,
            ground_energy: ground,
            termination: result.termination,
            fe_used: result.fe_used,
            exact_evals: objective.exact_evals(),
            trace: trace_name,
            wall_time,
        },
        trace: TraceFile::from_trace(&result.trace),
    })
}

/// Every (optimizer, model, shots, run) cell of `cfg`, in canonical order.
pub fn jobs(cfg: &PhaseConfig) -> Vec<RunJob> {
    let mut out = Vec::new();
    for optimizer in &cfg.optimizers {
        for model in 0..cfg.models.len() {
            for &shots in &cfg.shots {
                for run in 0..cfg.runs_per_cell {
                    out.push(RunJob {
                        optimizer: optimizer.clone(),
                        model,
                        shots,
                        run,
                    });
                }
            }
        }
    }
    out
}

/// Prepare every model of `cfg` and run all cells in parallel.
pub fn run_all(
    cfg: &PhaseConfig,
    mode: TargetMode,
) -> Result<(Vec<PreparedModel>, Vec<RunOutcome>)> {
    let prepared = cfg
        .models
        .iter()
        .map(|&m| PreparedModel::new(m))
        .collect::<Result<Vec<_>>>()?;
    let mut outcomes = jobs(cfg)
        .par_iter()
        .map(|job| {
            let model = &prepared[job.model];
            let spec = job.optimizer.spec(model.dim())?;
            let mut optimizer = spec.algorithm.build(&spec.hyperparams)?;
            execute_run(cfg, model, job, optimizer.as_mut(), mode)
        })
        .collect::<Result<Vec<_>>>()?;
    outcomes.sort_by_key(|a| a.record.cell_key());
    Ok((prepared, outcomes))
}

/// Phase-1 outcome for one optimizer.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub optimizer: String,
    pub runs: usize,
    pub successes: usize,
    /// At least one successful run.
    pub passed: bool,
}

/// Per-optimizer OR over run successes, in optimizer-id order.
pub fn phase1_verdicts(records: &[RunRecord]) -> Vec<Verdict> {
    let mut by_opt: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in records {
        let e = by_opt.entry(&r.optimizer).or_default();
        e.0 += 1;
        e.1 += usize::from(r.success);
    }
    by_opt
        .into_iter()
        .map(|(optimizer, (runs, successes))| Verdict {
            optimizer: optimizer.to_string(),
            runs,
            successes,
            passed: successes > 0,
        })
        .collect()
}

/// Mean FE-to-target per (optimizer, column); `None` when any run in the cell failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeTable {
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<Option<f64>>)>,
}

/// Column key: qubit count, model id, shots.
type ColumnKey = (usize, String, u64);

pub fn fe_table(records: &[RunRecord]) -> FeTable {
    let mut columns: BTreeMap<ColumnKey, String> = BTreeMap::new();
    let multi_shot = {
        let mut s: Vec<u64> = records.iter().map(|r| shots_key(r.shots)).collect();
        s.sort_unstable();
        s.dedup();
        s.len() > 1
    };
    let mut cells: BTreeMap<(String, ColumnKey), Vec<Option<usize>>> = BTreeMap::new();
    for r in records {
        let key = (r.n_qubits, r.model.clone(), shots_key(r.shots));
        columns.entry(key.clone()).or_insert_with(|| {
            let base = if r.model.starts_with("ising") {
                format!("{}Q", r.n_qubits)
            } else {
                r.model.clone()
            };
            if multi_shot {
                format!("{base}@{}", r.shots)
            } else {
                base
            }
        });
        cells
            .entry((r.optimizer.clone(), key))
            .or_default()
            .push(r.fe_to_target);
    }
    let mut optimizers: Vec<String> = records.iter().map(|r| r.optimizer.clone()).collect();
    optimizers.sort();
    optimizers.dedup();
    let rows = optimizers
        .into_iter()
        .map(|opt| {
            let values = columns
                .keys()
                .map(|col| {
                    let fes = cells.get(&(opt.clone(), col.clone()))?;
                    let all: Option<Vec<usize>> = fes.iter().copied().collect();
                    all.map(|v| v.iter().sum::<usize>() as f64 / v.len() as f64)
                })
                .collect();
            (opt, values)
        })
        .collect();
    FeTable {
        columns: columns.into_values().collect(),
        rows,
    }
}

/// Mean and per-run best-so-far values at fixed FE checkpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub optimizer: String,
    pub shots: Shots,
    pub checkpoints: Vec<usize>,
    /// `per_run[r][c]`: run `r` at checkpoint `c`.
    pub per_run: Vec<Vec<f64>>,
    pub mean: Vec<f64>,
}

/// One curve per (optimizer, shots), over every model in `outcomes`.
pub fn convergence_curves(outcomes: &[RunOutcome], budget: usize) -> Vec<Curve> {
    let checkpoints = geometric_checkpoints(budget);
    let mut groups: BTreeMap<(String, u64), (Shots, Vec<&RunOutcome>)> = BTreeMap::new();
    for o in outcomes {
        groups
            .entry((o.record.optimizer.clone(), shots_key(o.record.shots)))
            .or_insert_with(|| (o.record.shots, Vec::new()))
            .1
            .push(o);
    }
    groups
        .into_iter()
        .map(|((optimizer, _), (shots, runs))| {
            let per_run: Vec<Vec<f64>> = runs
                .iter()
                .map(|o| {
                    checkpoints
                        .iter()
                        .map(|&c| o.trace.best_at(c).unwrap_or(f64::NAN))
                        .collect()
                })
                .collect();
            let mean = (0..checkpoints.len())
                .map(|c| per_run.iter().map(|r| r[c]).sum::<f64>() / per_run.len() as f64)
                .collect();
            Curve {
                optimizer,
                shots,
                checkpoints: checkpoints.clone(),
                per_run,
                mean,
            }
        })
        .collect()
}

/// Results of one phase, ready for export.
#[derive(Debug, Clone)]
pub struct PhaseReport {
    pub phase: Phase,
    pub outcomes: Vec<RunOutcome>,
    pub verdicts: Vec<Verdict>,
    pub table: FeTable,
    pub curves: Vec<Curve>,
    /// `(model id, computed lowest eigenvalues)` per model.
    pub spectra: Vec<(String, Vec<f64>)>,
}

impl PhaseReport {
    pub fn records(&self) -> Vec<RunRecord> {
        self.outcomes.iter().map(|o| o.record.clone()).collect()
    }
}

/// Run every cell of `cfg` under its phase's rules.
pub fn run_phase(cfg: &PhaseConfig) -> Result<PhaseReport> {
    let mode = match cfg.phase {
        Phase::Convergence => TargetMode::Record,
        _ => TargetMode::Stop,
    };
    let (prepared, outcomes) = run_all(cfg, mode)?;
    let records: Vec<RunRecord> = outcomes.iter().map(|o| o.record.clone()).collect();
    Ok(PhaseReport {
        phase: cfg.phase,
        verdicts: phase1_verdicts(&records),
        table: fe_table(&records),
        curves: match cfg.phase {
            Phase::Convergence => convergence_curves(&outcomes, cfg.budget),
            _ => Vec::new(),
        },
        spectra: prepared
            .iter()
            .map(|p| (p.model.id(), p.spectrum.eigenvalues.clone()))
            .collect(),
        outcomes,
    })
}

/// Screening on the 5-qubit Ising model: an optimizer passes with one successful run.
pub fn run_phase1(cfg: &PhaseConfig) -> Result<PhaseReport> {
    run_phase(cfg)
}

/// Mean FE-to-target per qubit count.
pub fn run_phase2(cfg: &PhaseConfig) -> Result<PhaseReport> {
    run_phase(cfg)
}

/// Convergence curves on the Hubbard model for each shot setting.
pub fn run_phase3(cfg: &PhaseConfig) -> Result<PhaseReport> {
    run_phase(cfg)
}
