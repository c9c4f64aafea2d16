mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use common::{c, embed, expm, kron_labels, max_abs_diff, rng, Mat};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::Rng;
use vqebench_core::{
    build_hubbard_hva, build_ising_ansatz, gate_unitary, ising_hamiltonian, run_circuit, Angle,
    Circuit, CoreError, EnergyObjective, Gate, Pauli, PauliString, ShotConfig, Shots, Statevector,
};

/// Full-register text for `labels[q]` on qubit `q`, highest qubit leftmost.
fn register_text(n: usize, ops: &[(usize, char)]) -> String {
    let mut text = vec!['I'; n];
    for &(q, l) in ops {
        text[n - 1 - q] = l;
    }
    text.into_iter().collect()
}

/// `exp(-i·angle·P)` for a register-wide Pauli text, by Taylor series.
fn rotation(text: &str, angle: f64) -> Mat {
    expm(&(kron_labels(text) * c(0.0, -angle)))
}

/// Dense register unitary of one gate, built without the simulator.
fn oracle_gate(g: &Gate<f64>, params: &[f64], n: usize) -> Mat {
    let theta = g.angle().map(|a| a.resolve(params)).unwrap_or(0.0);
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match g {
        Gate::Ry(q, _) => rotation(&register_text(n, &[(*q, 'Y')]), theta / 2.0),
        Gate::Rz(q, _) => rotation(&register_text(n, &[(*q, 'Z')]), theta / 2.0),
        Gate::X(q) => kron_labels(&register_text(n, &[(*q, 'X')])),
        Gate::H(q) => {
            let h = (kron_labels("X") + kron_labels("Z")) / c(2f64.sqrt(), 0.0);
            embed(&h, &[*q], n)
        }
        Gate::Sdg(q) => embed(
            &DMatrix::from_row_slice(2, 2, &[o, z, z, c(0.0, -1.0)]),
            &[*q],
            n,
        ),
        Gate::Cz(a, b) => {
            let diag: Vec<_> = (0..1usize << n)
                .map(|k| {
                    if (k >> a) & 1 == 1 && (k >> b) & 1 == 1 {
                        -o
                    } else {
                        o
                    }
                })
                .collect();
            DMatrix::from_diagonal(&DVector::from_vec(diag))
        }
        Gate::PauliExp(p, _) => {
            let ops: Vec<(usize, char)> = (0..n).map(|q| (q, p.get(q).symbol())).collect();
            rotation(&register_text(n, &ops), theta)
        }
    }
}

fn oracle_state(circuit: &Circuit<f64>, params: &[f64]) -> DVector<num_complex::Complex64> {
    let n = circuit.n_qubits();
    let mut psi = common::basis_state(n, 0);
    for g in circuit.gates() {
        psi = oracle_gate(g, params, n) * psi;
    }
    psi
}

fn state_diff(sv: &Statevector<f64>, oracle: &DVector<num_complex::Complex64>) -> f64 {
    sv.amplitudes()
        .iter()
        .zip(oracle.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max)
}

fn random_circuit(n: usize, len: usize, r: &mut impl Rng) -> (Circuit<f64>, Vec<f64>) {
    let mut circ = Circuit::new(n).unwrap();
    for _ in 0..len {
        let q = r.random_range(0..n);
        let angle = if r.random_bool(0.5) {
            circ.new_slot()
        } else {
            Angle::Fixed(r.random_range(-PI..PI))
        };
        let g = match r.random_range(0..7) {
            0 => Gate::Ry(q, angle),
            1 => Gate::Rz(q, angle),
            2 => Gate::H(q),
            3 => Gate::Sdg(q),
            4 => Gate::X(q),
            5 if n > 1 => {
                let b = (q + r.random_range(1..n)) % n;
                Gate::Cz(q, b)
            }
            _ => {
                let mut p = PauliString::identity(n).unwrap();
                while p.is_identity() {
                    let ops: Vec<(usize, Pauli)> = (0..n)
                        .map(|k| {
                            (
                                k,
                                [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][r.random_range(0..4)],
                            )
                        })
                        .collect();
                    p = PauliString::from_sparse(n, &ops).unwrap();
                }
                Gate::PauliExp(p, angle)
            }
        };
        circ.push(g).unwrap();
    }
    let params = (0..circ.n_params())
        .map(|_| r.random_range(-2.0 * PI..2.0 * PI))
        .collect();
    (circ, params)
}

#[test]
fn empty_circuit_leaves_zero_state() {
    let psi = run_circuit(&Circuit::<f64>::new(2).unwrap(), &[]).unwrap();
    let amps: Vec<_> = psi.amplitudes().to_vec();
    assert_eq!(amps, [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
}

#[test]
fn ry_pi_flips_a_qubit() {
    let mut circ = Circuit::<f64>::new(1).unwrap();
    circ.push(Gate::Ry(0, Angle::Fixed(PI))).unwrap();
    let psi = run_circuit(&circ, &[]).unwrap();
    assert!(psi.amplitudes()[0].norm() < 1e-15);
    assert!((psi.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
}

#[test]
fn parameter_length_mismatch_is_a_dimension_error() {
    let circ = build_ising_ansatz::<f64>(3).unwrap();
    assert!(matches!(
        run_circuit(&circ, &[0.0; 5]),
        Err(CoreError::Dimension {
            expected: 12,
            found: 5
        })
    ));
}

#[test]
fn fifty_random_gates_match_dense_product() {
    let mut r = rng(2024);
    for _ in 0..5 {
        let (circ, params) = random_circuit(6, 50, &mut r);
        let psi = run_circuit(&circ, &params).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() <= 1e-10);
        assert!(state_diff(&psi, &oracle_state(&circ, &params)) <= 1e-8);
    }
}

#[test]
fn gate_unitary_examples() {
    let id = DMatrix::identity(2, 2);
    assert_eq!(gate_unitary(&Gate::Ry(0, Angle::Fixed(0.0)), 0.0), id);

    let rz = gate_unitary(&Gate::<f64>::Rz(0, Angle::Fixed(PI)), PI);
    let expected =
        DMatrix::from_row_slice(2, 2, &[c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);
    assert!(max_abs_diff(&rz, &expected) < 1e-15);

    let xx = PauliString::from_sparse(2, &[(0, Pauli::X), (1, Pauli::X)]).unwrap();
    let u = gate_unitary(
        &Gate::<f64>::PauliExp(xx, Angle::Fixed(FRAC_PI_2)),
        FRAC_PI_2,
    );
    assert!(max_abs_diff(&u, &(kron_labels("XX") * c(0.0, -1.0))) <= 1e-12);
    assert!(max_abs_diff(&u, &rotation("XX", FRAC_PI_2)) <= 1e-12);

    let cz = gate_unitary(&Gate::<f64>::Cz(0, 1), 0.0);
    let diag: Vec<f64> = (0..4).map(|k| cz[(k, k)].re).collect();
    assert_eq!(diag, [1.0, 1.0, 1.0, -1.0]);
}

#[test]
fn gate_unitary_matches_oracle_for_every_kind() {
    let mut r = rng(3);
    for _ in 0..20 {
        let theta = r.random_range(-PI..PI);
        let a = Angle::Fixed(theta);
        let zx = PauliString::from_sparse(3, &[(0, Pauli::Z), (2, Pauli::Y)]).unwrap();
        let gates = [
            Gate::Ry(0, a),
            Gate::Rz(0, a),
            Gate::H(0),
            Gate::Sdg(0),
            Gate::X(0),
            Gate::Cz(0, 1),
            Gate::PauliExp(zx, a),
        ];
        for g in gates {
            let local = gate_unitary(&g, theta);
            let n = g.targets().len();
            // Compare on the gate's own targets, relabelled to 0..n.
            let relabelled = match &g {
                Gate::PauliExp(p, a) => Gate::PauliExp(p.restrict(&p.support()).unwrap(), *a),
                other => other.clone(),
            };
            assert!(
                max_abs_diff(&local, &oracle_gate(&relabelled, &[], n)) < 1e-12,
                "{:?}",
                g.kind()
            );
            let unitary = &local.adjoint() * &local;
            assert!(
                max_abs_diff(&unitary, &DMatrix::identity(local.nrows(), local.nrows())) < 1e-12
            );
        }
    }
}

#[test]
fn hva_on_two_sites_matches_dense_oracle() {
    let circ = build_hubbard_hva::<f64>(2, 1).unwrap();
    let mut r = rng(11);
    for _ in 0..5 {
        let params: Vec<f64> = (0..circ.n_params())
            .map(|_| r.random_range(-PI..PI))
            .collect();
        let psi = run_circuit(&circ, &params).unwrap();
        assert!((psi.norm_sqr() - 1.0).abs() <= 1e-10);
        assert!(state_diff(&psi, &oracle_state(&circ, &params)) <= 1e-8);
    }
}

#[test]
fn hva_on_three_sites_matches_dense_oracle() {
    let circ = build_hubbard_hva::<f64>(3, 2).unwrap();
    let mut r = rng(12);
    let params: Vec<f64> = (0..circ.n_params())
        .map(|_| r.random_range(-PI..PI))
        .collect();
    let psi = run_circuit(&circ, &params).unwrap();
    assert!(state_diff(&psi, &oracle_state(&circ, &params)) <= 1e-8);
}

#[test]
fn ising_ansatz_parameter_counts() {
    for n in 2..=12 {
        let circ = build_ising_ansatz::<f64>(n).unwrap();
        assert_eq!(circ.n_params(), 4 * n);
        let slotted = circ
            .gates()
            .iter()
            .filter(|g| g.angle().and_then(Angle::slot).is_some())
            .count();
        assert_eq!(slotted, 4 * n);
        assert!(circ.all_slots_used());
    }
    assert_eq!(build_ising_ansatz::<f64>(5).unwrap().n_params(), 20);
    assert!(matches!(
        build_ising_ansatz::<f64>(1),
        Err(CoreError::Domain(_))
    ));
}

#[test]
fn ising_ansatz_starts_with_fixed_quarter_turns() {
    let circ = build_ising_ansatz::<f64>(3).unwrap();
    for (q, g) in circ.gates()[..3].iter().enumerate() {
        assert_eq!(*g, Gate::Ry(q, Angle::Fixed(FRAC_PI_4)));
    }
    assert!(circ.gates()[3].angle().and_then(Angle::slot).is_some());
}

#[test]
fn hva_parameter_counts() {
    assert_eq!(build_hubbard_hva::<f64>(6, 10).unwrap().n_params(), 192);
    assert_eq!(build_hubbard_hva::<f64>(6, 0).unwrap().n_params(), 12);
    for sites in 2..=6 {
        for layers in 0..=3 {
            let circ = build_hubbard_hva::<f64>(sites, layers).unwrap();
            assert_eq!(circ.n_params(), 2 * sites + 3 * sites * layers);
            assert!(circ.all_slots_used());
        }
    }
    assert!(build_hubbard_hva::<f64>(1, 1).is_err());
}

#[test]
fn dumps_match_golden_files() {
    let cases = [
        (
            build_ising_ansatz::<f64>(3).unwrap(),
            include_str!("golden/ising_3.txt"),
        ),
        (
            build_hubbard_hva::<f64>(2, 1).unwrap(),
            include_str!("golden/hva_2_1.txt"),
        ),
        (
            build_hubbard_hva::<f64>(3, 1).unwrap(),
            include_str!("golden/hva_3_1.txt"),
        ),
    ];
    for (circ, golden) in cases {
        assert_eq!(circ.dump(), golden);
    }
}

#[test]
fn push_rejects_malformed_gates() {
    let mut circ = Circuit::<f64>::new(2).unwrap();
    assert!(circ.push(Gate::H(2)).is_err());
    assert!(circ.push(Gate::Cz(1, 1)).is_err());
    assert!(circ.push(Gate::Ry(0, Angle::Slot(0))).is_err());
    assert!(circ
        .push(Gate::PauliExp(
            PauliString::identity(2).unwrap(),
            Angle::Fixed(1.0)
        ))
        .is_err());
    let wide = PauliString::from_sparse(3, &[(2, Pauli::Z)]).unwrap();
    assert!(circ.push(Gate::PauliExp(wide, Angle::Fixed(1.0))).is_err());
    assert!(circ.gates().is_empty());
}

#[test]
fn parameter_shift_matches_finite_differences() {
    let circ = build_ising_ansatz::<f64>(3).unwrap();
    let h = ising_hamiltonian(3).unwrap();
    let cfg = ShotConfig {
        shots: Shots::Exact,
        seed: 0,
    };
    let mut obj = EnergyObjective::new(circ, h, cfg).unwrap();
    let mut r = rng(8);
    let theta: Vec<f64> = (0..obj.n_params())
        .map(|_| r.random_range(-PI..PI))
        .collect();
    let mut energy = |x: &[f64]| obj.estimate(x).unwrap().value;
    let step = 1e-5;
    for i in 0..theta.len() {
        let shifted = |d: f64| {
            let mut x = theta.clone();
            x[i] += d;
            x
        };
        let fd = (energy(&shifted(step)) - energy(&shifted(-step))) / (2.0 * step);
        let ps = (energy(&shifted(FRAC_PI_2)) - energy(&shifted(-FRAC_PI_2))) / 2.0;
        assert!((fd - ps).abs() <= 1e-5, "slot {i}: {fd} vs {ps}");
    }
}

#[test]
fn concatenation_threads_the_state() {
    let mut r = rng(21);
    for _ in 0..10 {
        let (a, pa) = random_circuit(4, 20, &mut r);
        let (b, pb) = random_circuit(4, 20, &mut r);
        let joined = a.concat(&b).unwrap();
        assert_eq!(joined.n_params(), a.n_params() + b.n_params());
        let params: Vec<f64> = pa.iter().chain(&pb).copied().collect();
        let whole = run_circuit(&joined, &params).unwrap();
        let mut threaded = run_circuit(&a, &pa).unwrap();
        threaded.evolve(&b, &pb).unwrap();
        assert_eq!(whole, threaded);
    }
}

#[test]
fn single_precision_tracks_double() {
    let c64 = build_hubbard_hva::<f64>(2, 2).unwrap();
    let c32 = build_hubbard_hva::<f32>(2, 2).unwrap();
    let params: Vec<f64> = (0..c64.n_params()).map(|k| 0.1 * k as f64 - 0.7).collect();
    let p32: Vec<f32> = params.iter().map(|&v| v as f32).collect();
    let a = run_circuit(&c64, &params).unwrap();
    let b = run_circuit(&c32, &p32).unwrap();
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x.re - y.re as f64).abs() < 1e-5 && (x.im - y.im as f64).abs() < 1e-5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]
    #[test]
    fn runs_preserve_norm(seed in any::<u64>(), n in 1usize..=8, len in 0usize..40) {
        let (circ, params) = random_circuit(n, len, &mut rng(seed));
        let psi = run_circuit(&circ, &params).unwrap();
        prop_assert!((psi.norm_sqr() - 1.0).abs() <= 1e-10);
    }
}
