use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algorithms::{
    cmaes::CmaEs,
    de::{DeStrategy, DifferentialEvolution},
    ga::GeneticAlgorithm,
    hs::HarmonySearch,
    isoma::Isoma,
    pso::ParticleSwarm,
    sa::{Annealing, SaVariant},
    shade::{Ilshade, Shade},
    sos::SymbioticOrganisms,
    spsa::Spsa,
};
use crate::bounds::Bounds;
use crate::error::{OptimError, Result};
use crate::objective::Target;
use crate::Optimizer;

/// Box used by [`default_spec`] for every dimension: `[-2π, 2π]`.
pub const ANGLE_BOUND: f64 = 2.0 * std::f64::consts::PI;

macro_rules! algorithms {
    ($($variant:ident => $id:literal),+ $(,)?) => {
        /// Identifier of an implemented optimizer.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub enum Algorithm {
            $($variant),+
        }

        impl Algorithm {
            pub const ALL: &'static [Algorithm] = &[$(Algorithm::$variant),+];

            pub fn id(self) -> &'static str {
                match self {
                    $(Algorithm::$variant => $id),+
                }
            }
        }

        impl FromStr for Algorithm {
            type Err = OptimError;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($id => Ok(Algorithm::$variant),)+
                    other => Err(OptimError::UnknownAlgorithm(other.to_string())),
                }
            }
        }
    };
}

algorithms! {
    CmaEs => "cmaes",
    CmaEsFt => "cmaes_ft",
    DeBest1Bin => "de_best1bin",
    DeBest1Exp => "de_best1exp",
    DeRand1 => "de_rand1",
    Shade => "shade",
    Ilshade => "ilshade",
    Ga => "ga",
    Hs => "hs",
    SaFast => "sa_fast",
    SaBoltzmann => "sa_boltzmann",
    SaCauchy => "sa_cauchy",
    Isoma => "isoma",
    Pso => "pso",
    Sos => "sos",
    Spsa => "spsa",
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl TryFrom<String> for Algorithm {
    type Error = OptimError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> Self {
        a.id().to_string()
    }
}

impl Algorithm {
    /// Default hyperparameters for a problem of dimension `dim`.
    pub fn default_hyperparams(self, dim: usize) -> Hyperparams {
        let n = dim as f64;
        let pairs: Vec<(&str, f64)> = match self {
            Algorithm::CmaEs => vec![("pop_size", 5.0 * n), ("sigma", 0.5)],
            Algorithm::CmaEsFt => vec![("pop_size", 4.0 + (3.0 * n.ln()).floor()), ("sigma", 0.4)],
            Algorithm::DeBest1Bin | Algorithm::DeBest1Exp | Algorithm::DeRand1 => {
                vec![("pop_size", 15.0 * n), ("f_weight", 0.5), ("f_cr", 0.6)]
            }
            Algorithm::Shade => vec![("pop_size", 100.0), ("miu_f", 0.5), ("miu_cr", 0.5)],
            Algorithm::Ilshade => vec![("pop_size", 12.0 * n), ("memory_size", 6.0)],
            Algorithm::Ga => vec![
                ("pop_size", 50.0),
                ("pc", 0.9),
                ("pm", 0.05),
                ("tournament_size", 3.0),
                ("blend_alpha", 0.5),
                ("mutation_scale", 0.1),
            ],
            Algorithm::Hs => vec![
                ("c_r", 0.95),
                ("pa_r", 0.05),
                ("hms", 50.0),
                ("bandwidth", 0.05),
            ],
            Algorithm::SaFast | Algorithm::SaBoltzmann | Algorithm::SaCauchy => vec![
                ("t_max", 100.0),
                ("t_min", 1e-7),
                ("l", 300.0),
                ("max_stay_counter", 150.0),
            ],
            Algorithm::Isoma => vec![
                ("n_jump", 10.0),
                ("step", 0.11),
                ("pop_size", 40.0),
                ("prt", 0.1),
                ("m", 30.0),
                ("n", 20.0),
                ("s", 3.0),
            ],
            Algorithm::Pso => vec![
                ("pop_size", 40.0),
                ("w", 0.8),
                ("c1", 0.5),
                ("c2", 0.5),
                ("v_max", 0.2),
            ],
            Algorithm::Sos => vec![("pop_size", 50.0)],
            Algorithm::Spsa => vec![
                ("a", 0.2),
                ("c", 0.1),
                ("alpha", 0.602),
                ("gamma", 0.101),
                ("stability", 0.01),
            ],
        };
        Hyperparams(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    /// Instantiate the optimizer from (validated) hyperparameters.
    pub fn build(self, params: &Hyperparams) -> Result<Box<dyn Optimizer>> {
        Ok(match self {
            Algorithm::CmaEs | Algorithm::CmaEsFt => Box::new(CmaEs::from_params(params)?),
            Algorithm::DeBest1Bin => Box::new(DifferentialEvolution::from_params(
                DeStrategy::Best1Bin,
                params,
            )?),
            Algorithm::DeBest1Exp => Box::new(DifferentialEvolution::from_params(
                DeStrategy::Best1Exp,
                params,
            )?),
            Algorithm::DeRand1 => Box::new(DifferentialEvolution::from_params(
                DeStrategy::Rand1Bin,
                params,
            )?),
            Algorithm::Shade => Box::new(Shade::from_params(params)?),
            Algorithm::Ilshade => Box::new(Ilshade::from_params(params)?),
            Algorithm::Ga => Box::new(GeneticAlgorithm::from_params(params)?),
            Algorithm::Hs => Box::new(HarmonySearch::from_params(params)?),
            Algorithm::SaFast => Box::new(Annealing::from_params(SaVariant::Fast, params)?),
            Algorithm::SaBoltzmann => {
                Box::new(Annealing::from_params(SaVariant::Boltzmann, params)?)
            }
            Algorithm::SaCauchy => Box::new(Annealing::from_params(SaVariant::Cauchy, params)?),
            Algorithm::Isoma => Box::new(Isoma::from_params(params)?),
            Algorithm::Pso => Box::new(ParticleSwarm::from_params(params)?),
            Algorithm::Sos => Box::new(SymbioticOrganisms::from_params(params)?),
            Algorithm::Spsa => Box::new(Spsa::from_params(params)?),
        })
    }
}

/// Named numeric hyperparameters, ordered by key.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Hyperparams(BTreeMap<String, f64>);

impl Hyperparams {
    pub fn get(&self, key: &str) -> Option<f64> {
        self.0.get(key).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub(crate) fn real(&self, key: &str) -> Result<f64> {
        let value = self.require(key)?;
        if !value.is_finite() {
            return Err(invalid(key, value, "must be finite"));
        }
        Ok(value)
    }

    pub(crate) fn positive(&self, key: &str) -> Result<f64> {
        let value = self.real(key)?;
        if value <= 0.0 {
            return Err(invalid(key, value, "must be positive"));
        }
        Ok(value)
    }

    pub(crate) fn probability(&self, key: &str) -> Result<f64> {
        let value = self.real(key)?;
        if !(0.0..=1.0).contains(&value) {
            return Err(invalid(key, value, "must lie in [0, 1]"));
        }
        Ok(value)
    }

    /// A whole number no smaller than `min`.
    pub(crate) fn count(&self, key: &str, min: usize) -> Result<usize> {
        let value = self.real(key)?;
        if value.fract() != 0.0 || value < min as f64 {
            return Err(invalid(
                key,
                value,
                "must be a whole number above the minimum",
            ));
        }
        Ok(value as usize)
    }

    fn require(&self, key: &str) -> Result<f64> {
        self.get(key)
            .ok_or_else(|| OptimError::UnknownHyperparameter {
                algorithm: "<missing>".into(),
                key: key.to_string(),
            })
    }
}

fn invalid(key: &str, value: f64, reason: &'static str) -> OptimError {
    OptimError::InvalidHyperparameter {
        key: key.to_string(),
        value,
        reason,
    }
}

/// Everything needed to run one optimizer on one objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSpec {
    pub algorithm: Algorithm,
    pub hyperparams: Hyperparams,
    pub bounds: Bounds,
    /// Maximum number of function evaluations.
    pub budget: usize,
    pub target: Option<Target>,
    pub seed: u64,
    /// Stop when the best value has not improved by more than
    /// [`STAGNATION_EPS`](crate::context::STAGNATION_EPS) within `20 * dim` FEs.
    pub stagnation: bool,
}

impl OptimizerSpec {
    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    /// Replace a default hyperparameter; unknown keys are rejected.
    pub fn set(&mut self, key: &str, value: f64) -> Result<&mut Self> {
        match self.hyperparams.0.get_mut(key) {
            Some(slot) => {
                *slot = value;
                Ok(self)
            }
            None => Err(OptimError::UnknownHyperparameter {
                algorithm: self.algorithm.id().to_string(),
                key: key.to_string(),
            }),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Result<Self> {
        self.set(key, value)?;
        Ok(self)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_target(mut self, target: Target) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub(crate) fn stagnation_window(&self) -> Option<usize> {
        self.stagnation.then(|| 20 * self.dim())
    }
}

/// Defaults for `algorithm` on `dim` parameters, bounded to `[-2π, 2π]`.
pub fn default_spec(algorithm: Algorithm, dim: usize) -> Result<OptimizerSpec> {
    Ok(OptimizerSpec {
        algorithm,
        hyperparams: algorithm.default_hyperparams(dim),
        bounds: Bounds::uniform(dim, -ANGLE_BOUND, ANGLE_BOUND)?,
        budget: 10_000,
        target: None,
        seed: 0,
        stagnation: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for &a in Algorithm::ALL {
            assert_eq!(a.id().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!(Algorithm::ALL.len(), 16);
        assert!(matches!(
            "cobyla".parse::<Algorithm>(),
            Err(OptimError::UnknownAlgorithm(_))
        ));
    }

    #[test]
    fn cmaes_ft_population_for_hubbard() {
        let spec = default_spec(Algorithm::CmaEsFt, 192).unwrap();
        assert_eq!(spec.hyperparams.get("pop_size"), Some(19.0));
        assert_eq!(spec.hyperparams.get("sigma"), Some(0.4));
    }

    #[test]
    fn ilshade_population_is_twelve_dim() {
        let spec = default_spec(Algorithm::Ilshade, 20).unwrap();
        assert_eq!(spec.hyperparams.get("pop_size"), Some(240.0));
        assert_eq!(spec.hyperparams.get("memory_size"), Some(6.0));
    }

    #[test]
    fn sa_defaults() {
        for a in [
            Algorithm::SaFast,
            Algorithm::SaBoltzmann,
            Algorithm::SaCauchy,
        ] {
            for dim in [1, 20, 192] {
                let spec = default_spec(a, dim).unwrap();
                assert_eq!(spec.hyperparams.get("t_max"), Some(100.0));
                assert_eq!(spec.hyperparams.get("t_min"), Some(1e-7));
                assert_eq!(spec.hyperparams.get("l"), Some(300.0));
                assert_eq!(spec.hyperparams.get("max_stay_counter"), Some(150.0));
            }
        }
    }

    #[test]
    fn table_defaults() {
        let get = |a: Algorithm, k: &str| default_spec(a, 20).unwrap().hyperparams.get(k);
        assert_eq!(get(Algorithm::CmaEs, "pop_size"), Some(100.0));
        assert_eq!(get(Algorithm::CmaEs, "sigma"), Some(0.5));
        assert_eq!(get(Algorithm::DeBest1Bin, "f_weight"), Some(0.5));
        assert_eq!(get(Algorithm::DeRand1, "f_cr"), Some(0.6));
        assert_eq!(get(Algorithm::Shade, "pop_size"), Some(100.0));
        assert_eq!(get(Algorithm::Ga, "pc"), Some(0.9));
        assert_eq!(get(Algorithm::Ga, "pm"), Some(0.05));
        assert_eq!(get(Algorithm::Hs, "c_r"), Some(0.95));
        assert_eq!(get(Algorithm::Hs, "pa_r"), Some(0.05));
        assert_eq!(get(Algorithm::Isoma, "step"), Some(0.11));
        assert_eq!(get(Algorithm::Isoma, "n_jump"), Some(10.0));
        assert_eq!(get(Algorithm::Pso, "w"), Some(0.8));
        assert_eq!(get(Algorithm::Sos, "pop_size"), Some(50.0));
    }

    #[test]
    fn default_bounds_are_two_pi() {
        let spec = default_spec(Algorithm::Pso, 3).unwrap();
        assert!(spec.bounds.lower().iter().all(|&v| v == -ANGLE_BOUND));
        assert!(spec.bounds.upper().iter().all(|&v| v == ANGLE_BOUND));
    }

    #[test]
    fn unknown_override_is_rejected() {
        let mut spec = default_spec(Algorithm::Pso, 3).unwrap();
        assert!(spec.set("w", 0.7).is_ok());
        assert!(matches!(
            spec.set("sigma", 0.1),
            Err(OptimError::UnknownHyperparameter { .. })
        ));
    }
}
