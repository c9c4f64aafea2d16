//! Ising and Hubbard Hamiltonians as Pauli sums, and a dense exact-diagonalization oracle.

use faer::{Mat, Side};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, CoreError, Result};
use crate::pauli::{Hamiltonian, Pauli, PauliString, PauliSum};
use crate::scalar::Real;
use crate::simulator::hopping_strings;

/// Largest qubit count [`exact_spectrum`] accepts.
pub const SPECTRUM_MAX_QUBITS: usize = 12;

/// Lowest ten eigenvalues published for an extended 6-site Hubbard model at
/// `t = U = 1`. The extension is undefined, so [`hubbard_hamiltonian`] does not
/// reproduce these; they are kept for side-by-side reporting only.
pub const REFERENCE_HUBBARD_EIGENVALUES: [f64; 10] = [
    -18.0, -17.0, -16.0, -15.0, -15.0, -15.0, -15.0, -15.0, -15.0, -15.0,
];

/// Open transverse-field-free Ising chain `-Σ_{i=0}^{n-2} Z_i Z_{i+1}`.
pub fn ising_hamiltonian<T: Real>(n_qubits: usize) -> Result<Hamiltonian<T>> {
    if n_qubits < 2 {
        return Err(domain("the Ising chain needs at least 2 qubits"));
    }
    let mut h = PauliSum::zero(n_qubits)?;
    for i in 0..n_qubits - 1 {
        let zz = PauliString::from_sparse(n_qubits, &[(i, Pauli::Z), (i + 1, Pauli::Z)])?;
        h.push_real(-T::one(), zz)?;
    }
    Hamiltonian::new(h)
}

/// Fermi-Hubbard lattice parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HubbardSpec {
    pub sites: usize,
    pub t: f64,
    #[serde(rename = "U")]
    pub u: f64,
    pub periodic: bool,
}

impl Default for HubbardSpec {
    /// Six-site ring with `t = U = 1`.
    fn default() -> Self {
        Self {
            sites: 6,
            t: 1.0,
            u: 1.0,
            periodic: true,
        }
    }
}

impl HubbardSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(domain("a Hubbard lattice needs at least 2 sites"));
        }
        if 2 * self.sites > crate::pauli::MAX_QUBITS {
            return Err(CoreError::Capacity {
                n_qubits: 2 * self.sites,
                max: crate::pauli::MAX_QUBITS,
            });
        }
        if !(self.t.is_finite() && self.u.is_finite()) {
            return Err(domain("t and U must be finite"));
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.sites
    }

    /// Nearest-neighbour site pairs `(i, j)`. The wrap bond is included iff
    /// periodic; with 2 sites it coincides with `(0, 1)` and is not repeated.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let mut bonds: Vec<(usize, usize)> = (0..self.sites - 1).map(|i| (i, i + 1)).collect();
        if self.periodic && self.sites > 2 {
            bonds.push((self.sites - 1, 0));
        }
        bonds
    }
}

/// Jordan-Wigner image of the hopping `-t (c†_i c_j + c†_j c_i)`:
/// `(-t/2)(X_a Z…Z X_b + Y_a Z…Z Y_b)` with `a = offset + min(i, j)` and
/// `b = offset + max(i, j)`.
///
/// `offset` selects the spin block and must be `0` or `n_qubits / 2`; `i` and
/// `j` index sites within that block.
pub fn jw_hopping_term<T: Real>(
    i: usize,
    j: usize,
    offset: usize,
    n_qubits: usize,
    t: T,
) -> Result<PauliSum<T>> {
    if n_qubits < 2 || !n_qubits.is_multiple_of(2) {
        return Err(domain(format!(
            "{n_qubits} qubits cannot hold two equal spin blocks"
        )));
    }
    let block = n_qubits / 2;
    if offset != 0 && offset != block {
        return Err(domain(format!(
            "offset {offset} is not a spin-block start (0 or {block})"
        )));
    }
    if i == j {
        return Err(domain("hopping needs two distinct sites"));
    }
    if i >= block || j >= block {
        return Err(domain(format!("site index outside the {block}-site block")));
    }
    let mut term = PauliSum::zero(n_qubits)?;
    for s in hopping_strings(n_qubits, offset + i, offset + j)? {
        term.push_real(-t / T::of(2.0), s)?;
    }
    Ok(term.simplified())
}

/// `H = -t Σ_{<ij>,σ} (c†_{iσ} c_{jσ} + h.c.) + U Σ_i n_{i↑} n_{i↓}` in the
/// blocked layout: spin-up on qubits `0..sites`, spin-down on `sites..2·sites`.
///
/// With `n = (I - Z)/2` the interaction expands to `U/4 Σ_i (I - Z_{i↑} - Z_{i↓} + Z_{i↑} Z_{i↓})`.
pub fn hubbard_hamiltonian<T: Real>(spec: &HubbardSpec) -> Result<Hamiltonian<T>> {
    spec.validate()?;
    let n = spec.n_qubits();
    let s = spec.sites;
    let mut h = PauliSum::zero(n)?;
    for offset in [0, s] {
        for &(i, j) in &spec.bonds() {
            h = h.sum(&jw_hopping_term(i, j, offset, n, T::of(spec.t))?)?;
        }
    }
    let quarter_u = T::of(spec.u / 4.0);
    for i in 0..s {
        let up = PauliString::from_sparse(n, &[(i, Pauli::Z)])?;
        let down = PauliString::from_sparse(n, &[(s + i, Pauli::Z)])?;
        let both = PauliString::from_sparse(n, &[(i, Pauli::Z), (s + i, Pauli::Z)])?;
        h.push_real(quarter_u, PauliString::identity(n)?)?;
        h.push_real(-quarter_u, up)?;
        h.push_real(-quarter_u, down)?;
        h.push_real(quarter_u, both)?;
    }
    Hamiltonian::new(h)
}

/// Total occupation `Σ_q (I - Z_q)/2`.
pub fn number_operator<T: Real>(n_qubits: usize) -> Result<Hamiltonian<T>> {
    let half = T::of(0.5);
    let mut h = PauliSum::zero(n_qubits)?;
    for q in 0..n_qubits {
        h.push_real(half, PauliString::identity(n_qubits)?)?;
        h.push_real(-half, PauliString::from_sparse(n_qubits, &[(q, Pauli::Z)])?)?;
    }
    Hamiltonian::new(h)
}

/// Lowest eigenvalues of a Hamiltonian, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Number requested; `eigenvalues.len() == min(k, 2^n)`.
    pub k: usize,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Eigenvalues within `tol` of the ground energy, among those computed.
    pub fn ground_degeneracy(&self, tol: f64) -> usize {
        let e0 = self.ground_energy();
        self.eigenvalues
            .iter()
            .take_while(|&&e| e - e0 <= tol)
            .count()
    }
}

/// The `k` smallest eigenvalues of `h` by dense Hermitian diagonalization in `f64`.
///
/// The matrix is real whenever every coefficient is real and every string has
/// an even number of Y labels; the cheaper real solver is used then.
pub fn exact_spectrum<T: Real>(h: &PauliSum<T>, k: usize) -> Result<Spectrum> {
    let n = h.n_qubits();
    if n > SPECTRUM_MAX_QUBITS {
        return Err(CoreError::Capacity {
            n_qubits: n,
            max: SPECTRUM_MAX_QUBITS,
        });
    }
    if k == 0 {
        return Err(domain("requested zero eigenvalues"));
    }
    let dim = 1usize << n;
    let real = h
        .terms()
        .iter()
        .all(|t| t.coefficient.im == T::zero() && t.string.y_count() % 2 == 0);

    let mut all = if real {
        let mut m = Mat::<f64>::zeros(dim, dim);
        for t in h.terms() {
            let c = t.coefficient.re.as_f64();
            for col in 0..dim {
                let (phase, row) = t.string.apply_basis(col);
                // Even Y count keeps the phase at ±1.
                m[(row, col)] += c * phase.to_complex::<f64>().re;
            }
        }
        m.self_adjoint_eigenvalues(Side::Lower)
    } else {
        let mut m = Mat::<Complex<f64>>::zeros(dim, dim);
        for t in h.terms() {
            let c = Complex::new(t.coefficient.re.as_f64(), t.coefficient.im.as_f64());
            for col in 0..dim {
                let (phase, row) = t.string.apply_basis(col);
                m[(row, col)] += c * phase.to_complex::<f64>();
            }
        }
        m.self_adjoint_eigenvalues(Side::Lower)
    }
    .map_err(|e| domain(format!("eigensolver failed: {e:?}")))?;

    all.sort_by(f64::total_cmp);
    all.truncate(k);
    Ok(Spectrum {
        eigenvalues: all,
        k,
    })
}
