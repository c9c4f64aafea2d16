//! Cost functions for variational-eigensolver benchmarks.
//!
//! - [`pauli`]: Pauli strings, sums, products and measurement grouping.
//! - [`simulator`]: statevector simulation and the two ansatz builders.
//! - [`models`]: Ising and Jordan-Wigner Hubbard Hamiltonians, exact spectra.
//! - [`estimator`]: exact and shot-sampled energies behind an FE-counted objective.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the `*F64`
//! aliases below are what the benchmark harness uses. Exact spectra are always
//! computed in `f64`.
//!
//! ```
//! use vqebench_core::{exact_spectrum, ising_hamiltonian, HamiltonianF64};
//!
//! let h: HamiltonianF64 = ising_hamiltonian(4).unwrap();
//! assert_eq!(h.len(), 3);
//! assert_eq!(exact_spectrum(&h, 1).unwrap().ground_energy(), -3.0);
//! ```

mod error;
pub mod estimator;
pub mod models;
pub mod pauli;
mod scalar;
pub mod seed;
pub mod simulator;

pub use error::{CoreError, Result};
pub use estimator::{
    exact_expectation, sample_groups, sampled_expectation, EnergyObjective, Estimate, ShotConfig,
    Shots,
};
pub use models::{
    exact_spectrum, hubbard_hamiltonian, ising_hamiltonian, jw_hopping_term, number_operator,
    HubbardSpec, Spectrum, REFERENCE_HUBBARD_EIGENVALUES,
};
pub use pauli::{
    compose, CommutingGroup, Hamiltonian, Pauli, PauliString, PauliSum, PauliTerm, Phase,
};
pub use scalar::Real;
pub use simulator::{
    build_hubbard_hva, build_ising_ansatz, gate_unitary, run_circuit, Angle, Circuit, Gate,
    GateKind, Statevector,
};

pub type PauliSumF64 = PauliSum<f64>;
pub type PauliSumF32 = PauliSum<f32>;
pub type HamiltonianF64 = Hamiltonian<f64>;
pub type HamiltonianF32 = Hamiltonian<f32>;
pub type CircuitF64 = Circuit<f64>;
pub type CircuitF32 = Circuit<f32>;
pub type StatevectorF64 = Statevector<f64>;
pub type StatevectorF32 = Statevector<f32>;
pub type EnergyObjectiveF64 = EnergyObjective<f64>;
pub type EnergyObjectiveF32 = EnergyObjective<f32>;
