//! Phase configuration: a JSON file, a named profile, and CLI overrides, resolved
//! into one [`PhaseConfig`].
//!
//! Precedence, lowest first: phase defaults, profile, file keys, CLI flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use vqebench_core::{HubbardSpec, Shots};
use vqebench_optim::{default_spec, Algorithm, OptimizerSpec};

use crate::error::{config, BenchError, Result};

/// HVA depth giving 192 parameters on six sites.
pub const DEFAULT_LAYERS: usize = 10;
pub const DEFAULT_TOLERANCE: f64 = 0.1;
pub const DEFAULT_RUNS: usize = 5;
pub const DEFAULT_SHOTS: u64 = 5120;
pub const LOW_SHOTS: u64 = 64;

/// Optimizers compared on the Hubbard model unless the config names others.
pub const PHASE3_OPTIMIZERS: &[&str] = &[
    "cmaes_ft",
    "cmaes",
    "ilshade",
    "sa_cauchy",
    "hs",
    "sos",
    "de_best1bin",
    "de_best1exp",
    "isoma",
    "pso",
    "spsa",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Phase {
    Screening,
    FeComparison,
    Convergence,
}

impl Phase {
    pub fn number(self) -> u8 {
        match self {
            Phase::Screening => 1,
            Phase::FeComparison => 2,
            Phase::Convergence => 3,
        }
    }
}

impl TryFrom<u8> for Phase {
    type Error = String;
    fn try_from(n: u8) -> std::result::Result<Self, String> {
        match n {
            1 => Ok(Phase::Screening),
            2 => Ok(Phase::FeComparison),
            3 => Ok(Phase::Convergence),
            _ => Err(format!("phase must be 1, 2 or 3, got {n}")),
        }
    }
}

impl From<Phase> for u8 {
    fn from(p: Phase) -> u8 {
        p.number()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// Desk-scale: 3 runs per cell, 3 to 6 qubits, 30000 FEs.
    Quick,
    /// Full-scale grid: 5 runs per cell, 3 to 9 qubits, 200000 FEs (100000 for phase 3).
    #[default]
    Paper,
}

impl FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "paper" => Ok(Profile::Paper),
            _ => Err(format!("unknown profile \"{s}\" (expected quick or paper)")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Paper => "paper",
        })
    }
}

/// A problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelSpec {
    Ising { n_qubits: usize },
    Hubbard { spec: HubbardSpec, layers: usize },
}

impl ModelSpec {
    /// Stable identifier used in seeds, file names and record keys.
    pub fn id(&self) -> String {
        match self {
            ModelSpec::Ising { n_qubits } => format!("ising{n_qubits}"),
            ModelSpec::Hubbard { spec, .. } => format!("hubbard{}", spec.sites),
        }
    }

    pub fn n_qubits(&self) -> usize {
        match self {
            ModelSpec::Ising { n_qubits } => *n_qubits,
            ModelSpec::Hubbard { spec, .. } => spec.n_qubits(),
        }
    }

    /// Summary-table column label, e.g. `5Q`.
    pub fn label(&self) -> String {
        match self {
            ModelSpec::Ising { n_qubits } => format!("{n_qubits}Q"),
            ModelSpec::Hubbard { .. } => self.id(),
        }
    }
}

/// An optimizer id with hyperparameter overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawOptimizer", into = "RawOptimizer")]
pub struct OptimizerEntry {
    pub algorithm: Algorithm,
    pub overrides: BTreeMap<String, f64>,
}

impl OptimizerEntry {
    pub fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            overrides: BTreeMap::new(),
        }
    }

    pub fn id(&self) -> &'static str {
        self.algorithm.id()
    }

    /// Defaults for `dim` parameters with the overrides applied.
    pub fn spec(&self, dim: usize) -> Result<OptimizerSpec> {
        let mut spec = default_spec(self.algorithm, dim)?;
        for (k, v) in &self.overrides {
            spec.set(k, *v)?;
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RawOptimizer {
    Id(Algorithm),
    Full(FullOptimizer),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FullOptimizer {
    id: Algorithm,
    #[serde(default)]
    overrides: BTreeMap<String, f64>,
}

impl From<RawOptimizer> for OptimizerEntry {
    fn from(raw: RawOptimizer) -> Self {
        match raw {
            RawOptimizer::Id(algorithm) => OptimizerEntry::new(algorithm),
            RawOptimizer::Full(f) => OptimizerEntry {
                algorithm: f.id,
                overrides: f.overrides,
            },
        }
    }
}

impl From<OptimizerEntry> for RawOptimizer {
    fn from(e: OptimizerEntry) -> Self {
        if e.overrides.is_empty() {
            RawOptimizer::Id(e.algorithm)
        } else {
            RawOptimizer::Full(FullOptimizer {
                id: e.algorithm,
                overrides: e.overrides,
            })
        }
    }
}

/// One shot setting or a list of them.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ShotList {
    One(Shots),
    Many(Vec<Shots>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsingKeys {
    n_qubits: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModelKind {
    Ising,
    Hubbard,
}

/// The config file as written; every key optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    phase: Option<Phase>,
    model: Option<ModelKind>,
    ising: Option<IsingKeys>,
    qubits: Option<Vec<usize>>,
    hubbard: Option<HubbardSpec>,
    layers: Option<usize>,
    optimizers: Option<Vec<OptimizerEntry>>,
    runs_per_cell: Option<usize>,
    tolerance: Option<f64>,
    shots: Option<ShotList>,
    seed_base: Option<u64>,
    budget: Option<usize>,
    output_dir: Option<PathBuf>,
    stagnation: Option<bool>,
}

/// Command-line overrides applied last.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub profile: Profile,
    pub optimizers: Option<Vec<String>>,
    pub seed_base: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

/// Fully resolved settings for one phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseConfig {
    pub phase: Phase,
    pub models: Vec<ModelSpec>,
    pub optimizers: Vec<OptimizerEntry>,
    pub runs_per_cell: usize,
    pub tolerance: f64,
    pub shots: Vec<Shots>,
    pub seed_base: u64,
    pub budget: usize,
    pub output_dir: Option<PathBuf>,
    /// Stop runs whose best value stalls; off unless requested.
    pub stagnation: bool,
}

impl PhaseConfig {
    /// Defaults for `phase` under `profile`.
    pub fn defaults(phase: Phase, profile: Profile) -> Self {
        Self::resolve(
            phase,
            ConfigFile::default(),
            &Overrides {
                profile,
                ..Default::default()
            },
        )
        .expect("built-in defaults are valid")
    }

    /// Parse a JSON config. `phase` must match the file's `phase` key when present.
    pub fn from_json(phase: Phase, text: &str, overrides: &Overrides) -> Result<Self> {
        let file: ConfigFile =
            serde_json::from_str(text).map_err(|e| config(format!("invalid config: {e}")))?;
        if let Some(p) = file.phase {
            if p != phase {
                return Err(config(format!(
                    "config is for phase {} but phase {} was requested",
                    p.number(),
                    phase.number()
                )));
            }
        }
        Self::resolve(phase, file, overrides)
    }

    pub fn load(phase: Phase, path: &Path, overrides: &Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        Self::from_json(phase, &text, overrides).map_err(|e| match e {
            BenchError::Config(msg) => config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Defaults and overrides only, no file.
    pub fn from_overrides(phase: Phase, overrides: &Overrides) -> Result<Self> {
        Self::resolve(phase, ConfigFile::default(), overrides)
    }

    fn resolve(phase: Phase, file: ConfigFile, o: &Overrides) -> Result<Self> {
        let quick = o.profile == Profile::Quick;
        let kind = file.model.unwrap_or(match phase {
            Phase::Convergence => ModelKind::Hubbard,
            _ => ModelKind::Ising,
        });
        let models = match kind {
            ModelKind::Hubbard => {
                if file.ising.is_some() || file.qubits.is_some() {
                    return Err(config("ising keys given for a hubbard model"));
                }
                let spec = file.hubbard.unwrap_or_default();
                spec.validate()
                    .map_err(|e| config(format!("hubbard: {e}")))?;
                vec![ModelSpec::Hubbard {
                    spec,
                    layers: file.layers.unwrap_or(DEFAULT_LAYERS),
                }]
            }
            ModelKind::Ising => {
                if file.hubbard.is_some() || file.layers.is_some() {
                    return Err(config("hubbard keys given for an ising model"));
                }
                let qubits = match (file.ising, file.qubits) {
                    (Some(_), Some(_)) => {
                        return Err(config("give either ising.n_qubits or qubits"))
                    }
                    (Some(i), None) => vec![i.n_qubits],
                    (None, Some(q)) => q,
                    (None, None) => match phase {
                        Phase::FeComparison if quick => (3..=6).collect(),
                        Phase::FeComparison => (3..=9).collect(),
                        _ => vec![5],
                    },
                };
                if qubits.is_empty() {
                    return Err(config("qubits must not be empty"));
                }
                if let Some(&n) = qubits.iter().find(|&&n| !(2..=30).contains(&n)) {
                    return Err(config(format!("ising n_qubits {n} outside 2..=30")));
                }
                qubits
                    .into_iter()
                    .map(|n_qubits| ModelSpec::Ising { n_qubits })
                    .collect()
            }
        };

        let optimizers = match (&o.optimizers, file.optimizers) {
            (Some(ids), file_entries) => {
                let from_file = file_entries.unwrap_or_default();
                ids.iter()
                    .map(|id| {
                        let algorithm: Algorithm = id.parse()?;
                        Ok(from_file
                            .iter()
                            .find(|e| e.algorithm == algorithm)
                            .cloned()
                            .unwrap_or_else(|| OptimizerEntry::new(algorithm)))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            (None, Some(entries)) => entries,
            (None, None) => match phase {
                Phase::Convergence => PHASE3_OPTIMIZERS
                    .iter()
                    .map(|id| OptimizerEntry::new(id.parse().expect("built-in id")))
                    .collect(),
                _ => Algorithm::ALL
                    .iter()
                    .map(|&a| OptimizerEntry::new(a))
                    .collect(),
            },
        };
        if optimizers.is_empty() {
            return Err(config("no optimizers selected"));
        }
        for (i, e) in optimizers.iter().enumerate() {
            if optimizers[..i].iter().any(|p| p.algorithm == e.algorithm) {
                return Err(config(format!("optimizer {} listed twice", e.id())));
            }
        }

        let shots = match file.shots {
            Some(ShotList::One(s)) => vec![s],
            Some(ShotList::Many(v)) => v,
            None => match phase {
                Phase::Convergence => vec![Shots::Count(LOW_SHOTS), Shots::Count(DEFAULT_SHOTS)],
                _ => vec![Shots::Count(DEFAULT_SHOTS)],
            },
        };
        if shots.is_empty() {
            return Err(config("shots must not be empty"));
        }

        let runs_per_cell = file
            .runs_per_cell
            .unwrap_or(if quick { 3 } else { DEFAULT_RUNS });
        if runs_per_cell == 0 {
            return Err(config("runs_per_cell must be at least 1"));
        }
        let tolerance = file.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(config(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        let budget = file.budget.unwrap_or(match (quick, phase) {
            (true, _) => 30_000,
            (false, Phase::Convergence) => 100_000,
            (false, _) => 200_000,
        });

        let cfg = PhaseConfig {
            phase,
            models,
            optimizers,
            runs_per_cell,
            tolerance,
            shots,
            seed_base: o.seed_base.or(file.seed_base).unwrap_or(0),
            budget,
            output_dir: o.output_dir.clone().or(file.output_dir),
            stagnation: file.stagnation.unwrap_or(false),
        };
        cfg.check_optimizers()?;
        Ok(cfg)
    }

    /// Reject overrides and budgets no run could satisfy, before any evaluation.
    fn check_optimizers(&self) -> Result<()> {
        for model in &self.models {
            let dim = crate::protocol::parameter_count(model);
            for e in &self.optimizers {
                let spec = e.spec(dim)?.with_budget(self.budget);
                vqebench_optim::validate_spec(&spec, dim)?;
            }
        }
        Ok(())
    }
}
