//! Fast self-checks run by `vqebench validate` before committing to long phases.

use vqebench_core::{
    build_hubbard_hva, build_ising_ansatz, exact_expectation, exact_spectrum, hubbard_hamiltonian,
    ising_hamiltonian, run_circuit, EnergyObjectiveF64, HamiltonianF64, HubbardSpec, ShotConfig,
    Shots,
};
use vqebench_optim::{default_spec, minimize, sphere, Algorithm, FnObjective, Objective};

use crate::error::Result;

/// Outcome of one invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// Deterministic spread of angles, no RNG needed.
fn angles(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 2.0 * ((i as f64 + 1.0) * 0.7548776662).sin())
        .collect()
}

fn objective(h: &HamiltonianF64, n: usize, shots: Shots, seed: u64) -> Result<EnergyObjectiveF64> {
    Ok(EnergyObjectiveF64::new(
        build_ising_ansatz(n)?,
        h.clone(),
        ShotConfig { shots, seed },
    )?)
}

/// Run every invariant; an `Err` means a check could not be set up at all.
pub fn run_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();

    let ising: HamiltonianF64 = ising_hamiltonian(5)?;
    let spectrum = exact_spectrum(&ising, 4)?;
    out.push(check(
        "ising5 ground energy -4, twofold",
        spectrum.ground_energy() == -4.0 && spectrum.ground_degeneracy(1e-9) == 2,
        format!("{:?}", spectrum.eigenvalues),
    ));

    let ansatz = build_ising_ansatz::<f64>(5)?;
    let hva = build_hubbard_hva::<f64>(6, 10)?;
    out.push(check(
        "parameter counts",
        ansatz.n_params() == 20 && hva.n_params() == 192,
        format!("ising5 {}, hva 6x10 {}", ansatz.n_params(), hva.n_params()),
    ));

    let spec = HubbardSpec::default();
    let hubbard: HamiltonianF64 = hubbard_hamiltonian(&spec)?;
    let expected_terms = 4 * spec.bonds().len() + 3 * spec.sites + 1;
    out.push(check(
        "hubbard6 term count",
        hubbard.len() == expected_terms,
        format!("{} terms, expected {expected_terms}", hubbard.len()),
    ));

    let dimer: HamiltonianF64 = hubbard_hamiltonian(&HubbardSpec { sites: 2, ..spec })?;
    let e0 = exact_spectrum(&dimer, 1)?.ground_energy();
    let expected = (spec.u - (spec.u * spec.u + 16.0 * spec.t * spec.t).sqrt()) / 2.0;
    out.push(check(
        "hubbard dimer ground energy",
        (e0 - expected).abs() < 1e-9,
        format!("{e0} vs {expected}"),
    ));

    let state = run_circuit(&hva, &angles(hva.n_params()))?;
    let norm = state.norm_sqr();
    out.push(check(
        "hva preserves norm",
        (norm - 1.0).abs() < 1e-10,
        format!("|psi|^2 = {norm}"),
    ));

    let theta = angles(20);
    let exact = exact_expectation(&run_circuit(&ansatz, &theta)?, &ising)?;
    let mut sampled = objective(&ising, 5, Shots::Count(5120), 7)?;
    let est = sampled.estimate(&theta)?;
    out.push(check(
        "sampled energy within 5 standard errors",
        (est.value - exact).abs() <= 5.0 * est.std_error,
        format!("{} vs {exact} (se {})", est.value, est.std_error),
    ));

    let (mut a, mut b) = (
        objective(&ising, 5, Shots::Count(64), 3)?,
        objective(&ising, 5, Shots::Count(64), 3)?,
    );
    let seq = |o: &mut EnergyObjectiveF64| (0..5).map(|_| o.evaluate(&theta)).collect::<Vec<_>>();
    out.push(check(
        "objective reproducible from its seed",
        seq(&mut a) == seq(&mut b),
        String::new(),
    ));

    let mut failures = Vec::new();
    for &alg in Algorithm::ALL {
        let spec = default_spec(alg, 4)?.with_budget(3000).with_seed(11);
        let run = |s| -> Result<_> {
            let mut f = FnObjective::new(4, sphere);
            Ok(minimize(s, &mut f)?)
        };
        let (r1, r2) = (run(&spec)?, run(&spec)?);
        let ok =
            r1.fe_used <= 3000 && r1.trace == r2.trace && r1.trace.best_value < sphere(&[2.0; 4]);
        if !ok {
            failures.push(alg.id());
        }
    }
    out.push(check(
        "optimizers respect budget and reproduce",
        failures.is_empty(),
        format!("failing: {failures:?}"),
    ));

    Ok(out)
}
