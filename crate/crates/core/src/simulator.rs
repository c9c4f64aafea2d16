//! Dense statevector simulation of parameterized circuits.
//!
//! Qubit 0 is the least-significant bit of the amplitude index.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{check_dim, domain, CoreError, Result};
use crate::pauli::{PauliString, PauliSum, PauliTerm, Phase};
use crate::scalar::Real;

/// Where a rotation angle comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle<T: Real> {
    Fixed(T),
    /// Index into the parameter vector.
    Slot(usize),
}

impl<T: Real> Angle<T> {
    pub fn resolve(&self, params: &[T]) -> T {
        match *self {
            Angle::Fixed(a) => a,
            Angle::Slot(s) => params[s],
        }
    }

    pub fn slot(&self) -> Option<usize> {
        match *self {
            Angle::Fixed(_) => None,
            Angle::Slot(s) => Some(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Ry,
    Rz,
    H,
    Sdg,
    X,
    Cz,
    PauliExp,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Gate<T: Real> {
    Ry(usize, Angle<T>),
    Rz(usize, Angle<T>),
    H(usize),
    /// `S^dagger = diag(1, -i)`.
    Sdg(usize),
    X(usize),
    Cz(usize, usize),
    /// `exp(-i θ P)`.
    PauliExp(PauliString, Angle<T>),
}

impl<T: Real> Gate<T> {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::Ry(..) => GateKind::Ry,
            Gate::Rz(..) => GateKind::Rz,
            Gate::H(_) => GateKind::H,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::X(_) => GateKind::X,
            Gate::Cz(..) => GateKind::Cz,
            Gate::PauliExp(..) => GateKind::PauliExp,
        }
    }

    /// Acted-on qubits; for `PauliExp` the support of its string, ascending.
    pub fn targets(&self) -> Vec<usize> {
        match self {
            Gate::Ry(q, _) | Gate::Rz(q, _) | Gate::H(q) | Gate::Sdg(q) | Gate::X(q) => vec![*q],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::PauliExp(p, _) => p.support(),
        }
    }

    pub fn angle(&self) -> Option<&Angle<T>> {
        match self {
            Gate::Ry(_, a) | Gate::Rz(_, a) | Gate::PauliExp(_, a) => Some(a),
            _ => None,
        }
    }
}

/// Ordered gate list acting on `|0…0>`, with `n_params` parameter slots.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T: Real> {
    n_qubits: usize,
    n_params: usize,
    gates: Vec<Gate<T>>,
}

impl<T: Real> Circuit<T> {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > crate::pauli::MAX_QUBITS {
            return Err(domain(format!("unsupported qubit count {n_qubits}")));
        }
        Ok(Self {
            n_qubits,
            n_params: 0,
            gates: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    /// Reserve a fresh parameter slot.
    pub fn new_slot(&mut self) -> Angle<T> {
        self.n_params += 1;
        Angle::Slot(self.n_params - 1)
    }

    pub fn push(&mut self, gate: Gate<T>) -> Result<()> {
        let targets = gate.targets();
        if let Some(&q) = targets.iter().find(|&&q| q >= self.n_qubits) {
            return Err(domain(format!(
                "qubit {q} out of range for {} qubits",
                self.n_qubits
            )));
        }
        match &gate {
            Gate::Cz(a, b) if a == b => return Err(domain("CZ needs two distinct qubits")),
            Gate::PauliExp(p, _) => {
                check_dim(self.n_qubits, p.n_qubits())?;
                if p.is_identity() {
                    return Err(domain("PauliExp of the identity is a global phase"));
                }
            }
            _ => {}
        }
        if let Some(s) = gate.angle().and_then(Angle::slot) {
            if s >= self.n_params {
                return Err(domain(format!(
                    "slot {s} not reserved (have {})",
                    self.n_params
                )));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    /// Gate list of `self` followed by `other`, whose slots are shifted past ours.
    pub fn concat(&self, other: &Circuit<T>) -> Result<Circuit<T>> {
        check_dim(self.n_qubits, other.n_qubits)?;
        let shift = |a: &Angle<T>| match *a {
            Angle::Slot(s) => Angle::Slot(s + self.n_params),
            fixed => fixed,
        };
        let mut out = self.clone();
        out.n_params += other.n_params;
        out.gates.extend(other.gates.iter().map(|g| match g {
            Gate::Ry(q, a) => Gate::Ry(*q, shift(a)),
            Gate::Rz(q, a) => Gate::Rz(*q, shift(a)),
            Gate::PauliExp(p, a) => Gate::PauliExp(*p, shift(a)),
            other => other.clone(),
        }));
        Ok(out)
    }

    /// Every slot in `0..n_params` is used by some gate.
    pub fn all_slots_used(&self) -> bool {
        let mut used = vec![false; self.n_params];
        for s in self
            .gates
            .iter()
            .filter_map(|g| g.angle().and_then(Angle::slot))
        {
            used[s] = true;
        }
        used.into_iter().all(|u| u)
    }

    /// One gate per line, e.g. `RY q0 slot=3`, `CZ q0 q1`, `EXP ZZ q0 q1 slot=17`.
    ///
    /// For `EXP`, the k-th label belongs to the k-th listed qubit.
    pub fn dump(&self) -> String {
        let angle = |a: &Angle<T>| match *a {
            Angle::Fixed(v) => format!("fixed={:.10}", v.as_f64()),
            Angle::Slot(s) => format!("slot={s}"),
        };
        let mut out = String::new();
        for g in &self.gates {
            let line = match g {
                Gate::Ry(q, a) => format!("RY q{q} {}", angle(a)),
                Gate::Rz(q, a) => format!("RZ q{q} {}", angle(a)),
                Gate::H(q) => format!("H q{q}"),
                Gate::Sdg(q) => format!("SDG q{q}"),
                Gate::X(q) => format!("X q{q}"),
                Gate::Cz(a, b) => format!("CZ q{a} q{b}"),
                Gate::PauliExp(p, a) => {
                    let support = p.support();
                    let labels: String = support.iter().map(|&q| p.get(q).symbol()).collect();
                    let qubits: Vec<String> = support.iter().map(|q| format!("q{q}")).collect();
                    format!("EXP {labels} {} {}", qubits.join(" "), angle(a))
                }
            };
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

/// Odd number of set bits; cheaper than `count_ones` without a popcount instruction.
#[inline]
fn parity(v: usize) -> bool {
    let mut v = v as u64;
    v ^= v >> 32;
    v ^= v >> 16;
    v ^= v >> 8;
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    v & 1 == 1
}

/// `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector<T: Real> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> Statevector<T> {
    /// `|0…0>`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 30 {
            return Err(CoreError::Capacity { n_qubits, max: 30 });
        }
        let mut amps = vec![Complex::default(); 1 << n_qubits];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Normalizes `amps`, whose length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(domain(format!("{len} amplitudes is not 2^n for n >= 1")));
        }
        let mut s = Self {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        };
        let norm = s.norm_sqr().sqrt();
        if !(norm > T::zero() && norm.is_finite()) {
            return Err(domain("state has zero or non-finite norm"));
        }
        for a in &mut s.amps {
            *a /= norm;
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|<k|psi>|^2` for every basis state `k`.
    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::default(), |acc, x| acc + x)
    }

    /// Apply a 2x2 matrix `[[m00, m01], [m10, m11]]` to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: [[Complex<T>; 2]; 2]) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_ry(&mut self, q: usize, theta: T) {
        let half = theta / T::of(2.0);
        let (s, c) = half.sin_cos();
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = a0 * c - a1 * s;
                self.amps[i | bit] = a0 * s + a1 * c;
            }
        }
    }

    fn apply_rz(&mut self, q: usize, theta: T) {
        let half = theta / T::of(2.0);
        let (s, c) = half.sin_cos();
        let lo = Complex::new(c, -s);
        let hi = Complex::new(c, s);
        let bit = 1usize << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= if i & bit == 0 { lo } else { hi };
        }
    }

    fn apply_cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// `exp(-i θ P) = cos θ · I - i sin θ · P`.
    pub fn apply_pauli_exp(&mut self, p: &PauliString, theta: T) {
        let (s, c) = theta.sin_cos();
        let cos = Complex::new(c, T::zero());
        // P|k> = i^{nY} (-1)^{|k & z|} |k ^ x>; fold the constant phase into one factor.
        let b = Complex::new(T::zero(), -s) * Phase::from_exponent(p.y_count()).to_complex::<T>();
        let (x, z) = (p.x_mask() as usize, p.z_mask() as usize);
        let odd = |k: usize| parity(k & z);
        if x == 0 {
            let (even_factor, odd_factor) = (cos + b, cos - b);
            for (k, a) in self.amps.iter_mut().enumerate() {
                *a *= if odd(k) { odd_factor } else { even_factor };
            }
            return;
        }
        // Visit each pair {k, k ^ x} once, from the member with the top bit of x clear.
        let t = (usize::BITS - 1 - x.leading_zeros()) as usize;
        let low = (1usize << t) - 1;
        // |j & z| differs from |k & z| by |x & z| mod 2.
        let parity_x = parity(x & z);
        let amps = &mut self.amps[..];
        for m in 0..amps.len() / 2 {
            let k = ((m >> t) << (t + 1)) | (m & low);
            let j = k ^ x;
            let bk = if odd(k) { -b } else { b };
            let bj = if parity_x { -bk } else { bk };
            let (ak, aj) = (amps[k], amps[j]);
            // (P psi)[j] = phase(k) psi[k] and vice versa.
            amps[k] = ak * c + bj * aj;
            amps[j] = aj * c + bk * ak;
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate<T>, params: &[T]) {
        let inv_sqrt2 = T::FRAC_1_SQRT_2();
        match gate {
            Gate::Ry(q, a) => self.apply_ry(*q, a.resolve(params)),
            Gate::Rz(q, a) => self.apply_rz(*q, a.resolve(params)),
            Gate::H(q) => {
                let h = Complex::new(inv_sqrt2, T::zero());
                self.apply_single(*q, [[h, h], [h, -h]]);
            }
            Gate::Sdg(q) => {
                let bit = 1usize << q;
                let minus_i = Complex::new(T::zero(), -T::one());
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a *= minus_i;
                    }
                }
            }
            Gate::X(q) => {
                let bit = 1usize << q;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        self.amps.swap(i, i | bit);
                    }
                }
            }
            Gate::Cz(a, b) => self.apply_cz(*a, *b),
            Gate::PauliExp(p, a) => self.apply_pauli_exp(p, a.resolve(params)),
        }
    }

    /// Apply `circuit` with `params` to this state.
    pub fn evolve(&mut self, circuit: &Circuit<T>, params: &[T]) -> Result<()> {
        check_dim(circuit.n_qubits, self.n_qubits)?;
        check_dim(circuit.n_params, params.len())?;
        for g in &circuit.gates {
            self.apply_gate(g, params);
        }
        Ok(())
    }
}

/// `U(params)|0…0>`.
pub fn run_circuit<T: Real>(circuit: &Circuit<T>, params: &[T]) -> Result<Statevector<T>> {
    check_dim(circuit.n_params, params.len())?;
    let mut psi = Statevector::zero(circuit.n_qubits)?;
    psi.evolve(circuit, params)?;
    Ok(psi)
}

/// Dense unitary of `gate` on its own targets, with `targets()[0]` as the
/// least-significant qubit. `angle` is used by rotations and ignored otherwise.
pub fn gate_unitary<T: Real>(gate: &Gate<T>, angle: T) -> DMatrix<Complex<T>> {
    let z = Complex::<T>::default();
    let one = Complex::new(T::one(), T::zero());
    let re = |v: T| Complex::new(v, T::zero());
    let half = angle / T::of(2.0);
    match gate {
        Gate::Ry(..) => {
            let (s, c) = half.sin_cos();
            DMatrix::from_row_slice(2, 2, &[re(c), re(-s), re(s), re(c)])
        }
        Gate::Rz(..) => {
            let (s, c) = half.sin_cos();
            DMatrix::from_row_slice(2, 2, &[Complex::new(c, -s), z, z, Complex::new(c, s)])
        }
        Gate::H(_) => {
            let h = re(T::FRAC_1_SQRT_2());
            DMatrix::from_row_slice(2, 2, &[h, h, h, -h])
        }
        Gate::Sdg(_) => {
            DMatrix::from_row_slice(2, 2, &[one, z, z, Complex::new(T::zero(), -T::one())])
        }
        Gate::X(_) => DMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        Gate::Cz(..) => {
            let mut m = DMatrix::identity(4, 4);
            m[(3, 3)] = -one;
            m
        }
        Gate::PauliExp(p, _) => {
            let local = p.restrict(&p.support()).expect("non-empty support");
            let mut term = PauliSum::zero(local.n_qubits()).expect("valid qubit count");
            term.push(PauliTerm::real(T::one(), local).expect("finite"))
                .expect("same qubit count");
            let pm = term.dense_matrix().expect("support within dense limit");
            let (s, c) = angle.sin_cos();
            let dim = pm.nrows();
            DMatrix::<Complex<T>>::identity(dim, dim) * re(c) - pm * Complex::new(T::zero(), s)
        }
    }
}

/// TwoLocal ansatz with one repetition, `4n` parameters.
///
/// Fixed `RY(π/4)` on every qubit; `RY` then `RZ` rotation layers; a linear
/// CZ chain; a final `RY` then `RZ` layer. Slots are numbered in gate order.
pub fn build_ising_ansatz<T: Real>(n_qubits: usize) -> Result<Circuit<T>> {
    if n_qubits < 2 {
        return Err(domain("the Ising ansatz needs at least 2 qubits"));
    }
    let mut c = Circuit::new(n_qubits)?;
    for q in 0..n_qubits {
        c.push(Gate::Ry(q, Angle::Fixed(T::FRAC_PI_4())))?;
    }
    let rotation_layer = |c: &mut Circuit<T>| -> Result<()> {
        for q in 0..n_qubits {
            let a = c.new_slot();
            c.push(Gate::Ry(q, a))?;
        }
        for q in 0..n_qubits {
            let a = c.new_slot();
            c.push(Gate::Rz(q, a))?;
        }
        Ok(())
    };
    rotation_layer(&mut c)?;
    for q in 0..n_qubits - 1 {
        c.push(Gate::Cz(q, q + 1))?;
    }
    rotation_layer(&mut c)?;
    Ok(c)
}

/// Hopping strings `X_a Z…Z X_b` and `Y_a Z…Z Y_b` between qubits `a < b`.
pub(crate) fn hopping_strings(n_qubits: usize, a: usize, b: usize) -> Result<[PauliString; 2]> {
    use crate::pauli::Pauli;
    let (a, b) = (a.min(b), a.max(b));
    let mut ops: Vec<(usize, Pauli)> = ((a + 1)..b).map(|q| (q, Pauli::Z)).collect();
    let mut xx = ops.clone();
    xx.extend([(a, Pauli::X), (b, Pauli::X)]);
    ops.extend([(a, Pauli::Y), (b, Pauli::Y)]);
    Ok([
        PauliString::from_sparse(n_qubits, &xx)?,
        PauliString::from_sparse(n_qubits, &ops)?,
    ])
}

/// Hamiltonian variational ansatz for a Hubbard ring in the blocked layout.
///
/// A parameterized `RY` on each of the `2·sites` qubits prepares the initial
/// state. Each layer then applies, for every ring bond `(i, i+1 mod sites)`
/// of the up block and then of the down block, `exp(-iθ XZ…ZX)` and
/// `exp(-iθ YZ…ZY)` sharing one slot, followed by `exp(-iθ Z_{i↑} Z_{i↓})`
/// per site. Parameter count is `2·sites + layers·3·sites`.
pub fn build_hubbard_hva<T: Real>(sites: usize, layers: usize) -> Result<Circuit<T>> {
    use crate::pauli::Pauli;
    if sites < 2 {
        return Err(domain("the Hubbard ansatz needs at least 2 sites"));
    }
    let n = 2 * sites;
    let mut c = Circuit::new(n)?;
    for q in 0..n {
        let a = c.new_slot();
        c.push(Gate::Ry(q, a))?;
    }
    for _ in 0..layers {
        for offset in [0, sites] {
            for i in 0..sites {
                let j = (i + 1) % sites;
                let a = c.new_slot();
                for p in hopping_strings(n, offset + i, offset + j)? {
                    c.push(Gate::PauliExp(p, a))?;
                }
            }
        }
        for i in 0..sites {
            let a = c.new_slot();
            let zz = PauliString::from_sparse(n, &[(i, Pauli::Z), (sites + i, Pauli::Z)])?;
            c.push(Gate::PauliExp(zz, a))?;
        }
    }
    Ok(c)
}

/// Gates rotating each qubit of `basis` so its label is measured in Z:
/// `H` for X, `S^dagger` then `H` for Y.
pub fn basis_change<T: Real>(basis: &PauliString) -> Vec<Gate<T>> {
    use crate::pauli::Pauli;
    let mut gates = Vec::new();
    for q in basis.support() {
        match basis.get(q) {
            Pauli::X => gates.push(Gate::H(q)),
            Pauli::Y => {
                gates.push(Gate::Sdg(q));
                gates.push(Gate::H(q));
            }
            _ => {}
        }
    }
    gates
}
