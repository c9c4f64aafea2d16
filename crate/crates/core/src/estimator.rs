//! Exact and shot-sampled energy estimates, and the FE-counted VQE objective.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use vqebench_optim::{Objective, Target};

use crate::error::{check_dim, domain, Result};
use crate::pauli::{CommutingGroup, Hamiltonian, PauliSum, Phase};
use crate::scalar::Real;
use crate::seed::mix;
use crate::simulator::{basis_change, run_circuit, Circuit, Statevector};

/// Largest accepted shot count.
pub const MAX_SHOTS: u64 = 1_000_000_000;
/// Largest imaginary part tolerated in an expectation value.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;
/// Standard errors subtracted from the target threshold before a sampled
/// value triggers an exact confirmation.
pub const CONFIRM_MARGIN_SIGMAS: f64 = 3.0;

/// Measurement budget per commuting group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shots {
    /// Noiseless expectation value.
    Exact,
    Count(u64),
}

impl Shots {
    pub fn new(count: u64) -> Result<Self> {
        if (1..=MAX_SHOTS).contains(&count) {
            Ok(Shots::Count(count))
        } else {
            Err(domain(format!(
                "shot count {count} outside 1..={MAX_SHOTS}"
            )))
        }
    }
}

impl fmt::Display for Shots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shots::Exact => f.write_str("exact"),
            Shots::Count(n) => write!(f, "{n}"),
        }
    }
}

impl Serialize for Shots {
    /// `"exact"` or an integer.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Shots::Exact => s.serialize_str("exact"),
            Shots::Count(n) => s.serialize_u64(*n),
        }
    }
}

impl<'de> Deserialize<'de> for Shots {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(n) => Shots::new(n).map_err(D::Error::custom),
            Raw::Word(w) if w == "exact" => Ok(Shots::Exact),
            Raw::Word(w) => Err(D::Error::custom(format!(
                "shots must be a positive integer or \"exact\", got \"{w}\""
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotConfig {
    pub shots: Shots,
    pub seed: u64,
}

/// An energy estimate and its estimated standard error (0 when exact).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T: Real> {
    pub value: T,
    pub std_error: T,
}

/// `<psi|P|psi>` for every term, weighted and summed.
pub fn exact_expectation<T: Real>(state: &Statevector<T>, h: &PauliSum<T>) -> Result<T> {
    check_dim(h.n_qubits(), state.n_qubits())?;
    let amps = state.amplitudes();
    let mut total = Complex::<T>::default();
    for t in h.terms() {
        let (x, z) = (t.string.x_mask() as usize, t.string.z_mask() as usize);
        // Sum of conj(psi[k ^ x]) (-1)^{|k & z|} psi[k]; the i^{nY} factor is applied once.
        let mut acc = Complex::<T>::default();
        for (k, &a) in amps.iter().enumerate() {
            let v = amps[k ^ x].conj() * a;
            if (k & z).count_ones() & 1 == 1 {
                acc -= v;
            } else {
                acc += v;
            }
        }
        total += t.coefficient * Phase::from_exponent(t.string.y_count()).to_complex::<T>() * acc;
    }
    if total.im.abs().as_f64() > IMAG_RESIDUE_TOL {
        return Err(domain(format!(
            "expectation has imaginary part {:e}; operator is not Hermitian",
            total.im.as_f64()
        )));
    }
    Ok(total.re)
}

/// Measure every group of `groups` on `state` with `shots` samples each.
///
/// Each non-constant group rotates a copy of the state into its measurement
/// basis and draws `shots` outcomes by inverse-CDF sampling of sorted
/// uniforms. A term's estimate is the mean of `(-1)^{popcount(outcome & support)}`.
/// Groups are processed in order, so RNG consumption is deterministic.
pub fn sample_groups<T: Real, R: Rng + ?Sized>(
    state: &Statevector<T>,
    groups: &[CommutingGroup<T>],
    shots: u64,
    rng: &mut R,
) -> Result<Estimate<T>> {
    if shots == 0 {
        return Err(domain("at least one shot is required"));
    }
    let mut value = 0.0f64;
    let mut variance = 0.0f64;
    let mut uniforms = vec![0.0f64; shots as usize];

    for group in groups {
        check_dim(group.terms.n_qubits(), state.n_qubits())?;
        if group.constant {
            value += group
                .terms
                .terms()
                .iter()
                .map(|t| t.coefficient.re.as_f64())
                .sum::<f64>();
            continue;
        }
        let mut rotated = state.clone();
        for g in basis_change::<T>(&group.basis) {
            rotated.apply_gate(&g, &[]);
        }
        let probs: Vec<f64> = rotated
            .probabilities()
            .into_iter()
            .map(Real::as_f64)
            .collect();
        let total: f64 = probs.iter().sum();

        for u in uniforms.iter_mut() {
            *u = rng.random::<f64>() * total;
        }
        uniforms.sort_by(f64::total_cmp);

        let terms: Vec<(f64, u64)> = group
            .terms
            .terms()
            .iter()
            .map(|t| (t.coefficient.re.as_f64(), t.string.support_mask()))
            .collect();
        let outcome_value = |k: usize| -> f64 {
            terms
                .iter()
                .map(|&(c, mask)| {
                    if (k as u64 & mask).count_ones().is_multiple_of(2) {
                        c
                    } else {
                        -c
                    }
                })
                .sum()
        };

        // Histogram of outcomes as (value, count) pairs.
        let mut hist: Vec<(f64, u64)> = Vec::new();
        let mut cdf = 0.0;
        let mut next = 0usize;
        let last_nonzero = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        for (k, &p) in probs.iter().enumerate() {
            cdf += p;
            let mut count = 0u64;
            while next < uniforms.len() && (uniforms[next] < cdf || k == last_nonzero) {
                next += 1;
                count += 1;
            }
            if count > 0 {
                hist.push((outcome_value(k), count));
            }
            if next == uniforms.len() {
                break;
            }
        }

        let n = shots as f64;
        let mean = hist.iter().map(|&(v, c)| v * c as f64).sum::<f64>() / n;
        value += mean;
        if shots > 1 {
            let ss = hist
                .iter()
                .map(|&(v, c)| (v - mean).powi(2) * c as f64)
                .sum::<f64>();
            variance += ss / (n - 1.0) / n;
        }
    }
    Ok(Estimate {
        value: T::of(value),
        std_error: T::of(variance.sqrt()),
    })
}

/// Energy of `state` under `cfg`: exact, or sampled with a stream seeded by `cfg.seed`.
pub fn sampled_expectation<T: Real>(
    state: &Statevector<T>,
    h: &Hamiltonian<T>,
    cfg: &ShotConfig,
) -> Result<Estimate<T>> {
    match cfg.shots {
        Shots::Exact => Ok(Estimate {
            value: exact_expectation(state, h)?,
            std_error: T::zero(),
        }),
        Shots::Count(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            sample_groups(state, &h.qubitwise_commuting_groups(), n, &mut rng)
        }
    }
}

/// `θ ↦ <ψ(θ)|H|ψ(θ)>` with shot noise and function-evaluation accounting.
///
/// Evaluation number `f` (0-based) samples from a ChaCha8 stream seeded with
/// `mix(seed, f)`, so a value depends only on the seed, `f`, and `θ`.
#[derive(Debug, Clone)]
pub struct EnergyObjective<T: Real> {
    circuit: Circuit<T>,
    hamiltonian: Hamiltonian<T>,
    groups: Vec<CommutingGroup<T>>,
    config: ShotConfig,
    fe_count: usize,
    exact_evals: usize,
    last_std_error: T,
}

impl<T: Real> EnergyObjective<T> {
    pub fn new(
        circuit: Circuit<T>,
        hamiltonian: Hamiltonian<T>,
        config: ShotConfig,
    ) -> Result<Self> {
        check_dim(hamiltonian.n_qubits(), circuit.n_qubits())?;
        let groups = hamiltonian.qubitwise_commuting_groups();
        Ok(Self {
            circuit,
            hamiltonian,
            groups,
            config,
            fe_count: 0,
            exact_evals: 0,
            last_std_error: T::zero(),
        })
    }

    pub fn circuit(&self) -> &Circuit<T> {
        &self.circuit
    }

    pub fn hamiltonian(&self) -> &Hamiltonian<T> {
        &self.hamiltonian
    }

    pub fn groups(&self) -> &[CommutingGroup<T>] {
        &self.groups
    }

    pub fn config(&self) -> &ShotConfig {
        &self.config
    }

    pub fn n_params(&self) -> usize {
        self.circuit.n_params()
    }

    /// Counted evaluations so far.
    pub fn fe_count(&self) -> usize {
        self.fe_count
    }

    /// Uncounted exact evaluations (target confirmations and success checks).
    pub fn exact_evals(&self) -> usize {
        self.exact_evals
    }

    /// Standard error of the most recent counted evaluation.
    pub fn last_std_error(&self) -> T {
        self.last_std_error
    }

    /// Rewind the counters so the value sequence starts over.
    pub fn reset(&mut self) {
        self.fe_count = 0;
        self.exact_evals = 0;
        self.last_std_error = T::zero();
    }

    /// One counted evaluation.
    pub fn estimate(&mut self, params: &[T]) -> Result<Estimate<T>> {
        let state = run_circuit(&self.circuit, params)?;
        let est = match self.config.shots {
            Shots::Exact => Estimate {
                value: exact_expectation(&state, &self.hamiltonian)?,
                std_error: T::zero(),
            },
            Shots::Count(n) => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(mix(self.config.seed, self.fe_count as u64));
                sample_groups(&state, &self.groups, n, &mut rng)?
            }
        };
        self.fe_count += 1;
        self.last_std_error = est.std_error;
        Ok(est)
    }

    /// Noiseless energy; counted in [`exact_evals`](Self::exact_evals), not as an FE.
    pub fn exact_energy(&mut self, params: &[T]) -> Result<T> {
        self.exact_evals += 1;
        let state = run_circuit(&self.circuit, params)?;
        exact_expectation(&state, &self.hamiltonian)
    }

    fn to_params(x: &[f64]) -> Vec<T> {
        x.iter().map(|&v| T::of(v)).collect()
    }
}

impl<T: Real> Objective for EnergyObjective<T> {
    fn dim(&self) -> usize {
        self.n_params()
    }

    fn evaluate(&mut self, x: &[f64]) -> f64 {
        self.estimate(&Self::to_params(x))
            .expect("optimizer passes vectors of the objective's dimension")
            .value
            .as_f64()
    }

    /// Exact mode trusts the value. Sampled mode requires the value to clear
    /// the threshold by [`CONFIRM_MARGIN_SIGMAS`] standard errors, then
    /// confirms with one exact evaluation.
    fn confirm_target(&mut self, x: &[f64], value: f64, target: &Target) -> bool {
        if self.config.shots == Shots::Exact {
            return value <= target.threshold();
        }
        let margin = CONFIRM_MARGIN_SIGMAS * self.last_std_error.as_f64();
        if value > target.threshold() - margin {
            return false;
        }
        let exact = self
            .exact_energy(&Self::to_params(x))
            .expect("optimizer passes vectors of the objective's dimension");
        exact.as_f64() <= target.threshold()
    }
}
