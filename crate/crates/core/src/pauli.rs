//! Pauli strings, their products, and weighted Pauli sums.
//!
//! A [`PauliString`] on up to 64 qubits is stored as symplectic bit masks:
//! qubit `q` carries X if bit `q` of `x` is set, Z if bit `q` of `z` is set,
//! and Y if both are. As an operator a string acts on a basis state as
//!
//! `P|k> = i^{n_Y} (-1)^{popcount(k & z)} |k ^ x>`
//!
//! with qubit 0 the least-significant bit of `k`. Text form prints qubit 0 as
//! the rightmost character, so `"ZXI"` is Z on qubit 2 and X on qubit 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, domain, CoreError, Result};
use crate::scalar::Real;

/// Largest qubit count a [`PauliString`] can address.
pub const MAX_QUBITS: usize = 64;
/// Largest qubit count accepted by [`PauliSum::dense_matrix`].
pub const DENSE_MAX_QUBITS: usize = 14;
/// Default magnitude at or below which [`PauliSum::simplify`] drops a term.
pub const DROP_TOL: f64 = 1e-12;
/// Largest imaginary coefficient part tolerated by [`Hamiltonian::new`].
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`: one of `+1, +i, -1, -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    /// `k` such that the phase equals `i^k`, in `0..4`.
    pub fn exponent(self) -> u32 {
        self.0 as u32
    }

    pub fn to_complex<T: Real>(self) -> Complex<T> {
        let (one, zero) = (T::one(), T::zero());
        match self.0 {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    // Powers of i multiply by adding exponents.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Phase) -> Phase {
        Phase::from_exponent(self.exponent() + rhs.exponent())
    }
}

fn qubit_mask(n_qubits: usize) -> u64 {
    if n_qubits >= 64 {
        u64::MAX
    } else {
        (1u64 << n_qubits) - 1
    }
}

fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 {
        return Err(domain("a Pauli string needs at least one qubit"));
    }
    if n_qubits > MAX_QUBITS {
        return Err(CoreError::Capacity {
            n_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

/// Tensor product of single-qubit Paulis, without phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    /// The all-I string.
    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self {
            n_qubits,
            x: 0,
            z: 0,
        })
    }

    /// Labels indexed by qubit: `labels[q]` acts on qubit `q`.
    pub fn from_labels(labels: &[Pauli]) -> Result<Self> {
        let mut s = Self::identity(labels.len())?;
        for (q, &p) in labels.iter().enumerate() {
            s.set(q, p);
        }
        Ok(s)
    }

    /// Identity except for the listed `(qubit, label)` pairs.
    pub fn from_sparse(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(n_qubits)?;
        for &(q, p) in ops {
            if q >= n_qubits {
                return Err(domain(format!(
                    "qubit {q} out of range for {n_qubits} qubits"
                )));
            }
            s.set(q, p);
        }
        Ok(s)
    }

    /// Build from raw masks. Bits at or above `n_qubits` must be clear.
    pub fn from_masks(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        check_qubits(n_qubits)?;
        let outside = !qubit_mask(n_qubits);
        if (x | z) & outside != 0 {
            return Err(domain("mask bits set beyond the qubit count"));
        }
        Ok(Self { n_qubits, x, z })
    }

    fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        let bit = 1u64 << q;
        self.x = if x { self.x | bit } else { self.x & !bit };
        self.z = if z { self.z | bit } else { self.z & !bit };
    }

    pub fn with(mut self, q: usize, p: Pauli) -> Self {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        self.set(q, p);
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    pub fn labels(&self) -> Vec<Pauli> {
        (0..self.n_qubits).map(|q| self.get(q)).collect()
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    /// Qubits carrying Z or Y.
    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Qubits carrying a non-identity label.
    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    /// Non-identity qubits in ascending order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|q| self.support_mask() >> q & 1 == 1)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.support_mask() == 0
    }

    /// True when the string has only I and Z labels.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    /// Every qubit carries the same label in both strings or I in at least one.
    pub fn qubitwise_commutes(&self, other: &PauliString) -> bool {
        let both = self.support_mask() & other.support_mask();
        (self.x ^ other.x) & both == 0 && (self.z ^ other.z) & both == 0
    }

    /// Operator commutation: an even number of anticommuting positions.
    pub fn commutes(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x))
            .count_ones()
            .is_multiple_of(2)
    }

    /// Image of basis state `k`: `P|k> = phase * |k'>`.
    #[inline]
    pub fn apply_basis(&self, k: usize) -> (Phase, usize) {
        let sign = 2 * ((k as u64 & self.z).count_ones() & 1);
        (
            Phase::from_exponent(self.y_count() + sign),
            k ^ self.x as usize,
        )
    }

    /// Restriction to the given qubits: qubit `qubits[j]` becomes qubit `j`.
    pub fn restrict(&self, qubits: &[usize]) -> Result<PauliString> {
        let labels: Vec<Pauli> = qubits.iter().map(|&q| self.get(q)).collect();
        PauliString::from_labels(&labels)
    }
}

/// Product `a·b = phase · product`.
pub fn compose(a: &PauliString, b: &PauliString) -> Result<(Phase, PauliString)> {
    check_dim(a.n_qubits, b.n_qubits)?;
    // With P = i^{n_Y} X^x Z^z, moving Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}.
    let x = a.x ^ b.x;
    let z = a.z ^ b.z;
    let exponent =
        a.y_count() + b.y_count() + 2 * (a.z & b.x).count_ones() + 3 * (x & z).count_ones();
    Ok((
        Phase::from_exponent(exponent),
        PauliString {
            n_qubits: a.n_qubits,
            x,
            z,
        },
    ))
}

impl Ord for PauliString {
    /// Qubit count first, then labels read left to right in text form
    /// (highest qubit first) with `I < X < Y < Z`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n_qubits.cmp(&other.n_qubits).then_with(|| {
            (0..self.n_qubits)
                .rev()
                .map(|q| self.get(q).cmp(&other.get(q)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..self.n_qubits).rev() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason| CoreError::Parse {
            input: s.to_string(),
            reason,
        };
        let mut labels = s
            .chars()
            .map(Pauli::from_symbol)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| parse_err("labels must be I, X, Y or Z"))?;
        labels.reverse();
        PauliString::from_labels(&labels).map_err(|_| parse_err("string length must be 1..=64"))
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// `coefficient · string`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm<T: Real> {
    pub coefficient: Complex<T>,
    pub string: PauliString,
}

impl<T: Real> PauliTerm<T> {
    pub fn new(coefficient: Complex<T>, string: PauliString) -> Result<Self> {
        if !(coefficient.re.is_finite() && coefficient.im.is_finite()) {
            return Err(domain(format!("non-finite coefficient on `{string}`")));
        }
        Ok(Self {
            coefficient,
            string,
        })
    }

    pub fn real(coefficient: T, string: PauliString) -> Result<Self> {
        Self::new(Complex::new(coefficient, T::zero()), string)
    }
}

impl<T: Real> fmt::Display for PauliTerm<T> {
    /// `-1.0*ZZI` for real coefficients, `(0.5-0.25i)*XY` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient;
        if c.im == T::zero() {
            write!(f, "{:?}*{}", c.re, self.string)
        } else {
            write!(f, "({:?}{:+?}i)*{}", c.re, c.im, self.string)
        }
    }
}

fn parse_real<T: Real>(s: &str, input: &str) -> Result<T> {
    s.trim()
        .parse::<f64>()
        .map(T::of)
        .map_err(|_| CoreError::Parse {
            input: input.to_string(),
            reason: "malformed coefficient",
        })
}

impl<T: Real> FromStr for PauliTerm<T> {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let (coef, string) = s.rsplit_once('*').ok_or(CoreError::Parse {
            input: s.to_string(),
            reason: "expected `coefficient*LABELS`",
        })?;
        let string: PauliString = string.trim().parse()?;
        let coef = coef.trim();
        let coefficient = match coef.strip_prefix('(').and_then(|c| c.strip_suffix("i)")) {
            Some(body) => {
                // The imaginary part starts at the last sign not belonging to an exponent.
                let bytes = body.as_bytes();
                let split = (1..bytes.len())
                    .rev()
                    .find(|&i| {
                        (bytes[i] == b'+' || bytes[i] == b'-')
                            && !matches!(bytes[i - 1], b'e' | b'E')
                    })
                    .ok_or(CoreError::Parse {
                        input: s.to_string(),
                        reason: "complex coefficient needs `re±im`",
                    })?;
                Complex::new(
                    parse_real(&body[..split], s)?,
                    parse_real(&body[split..], s)?,
                )
            }
            None => Complex::new(parse_real(coef, s)?, T::zero()),
        };
        PauliTerm::new(coefficient, string)
    }
}

/// Weighted sum of Pauli strings on a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum<T: Real> {
    n_qubits: usize,
    terms: Vec<PauliTerm<T>>,
}

impl<T: Real> PauliSum<T> {
    /// The empty (zero) operator.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self {
            n_qubits,
            terms: Vec::new(),
        })
    }

    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = PauliTerm<T>>,
    ) -> Result<Self> {
        let mut sum = Self::zero(n_qubits)?;
        for t in terms {
            sum.push(t)?;
        }
        Ok(sum)
    }

    /// Parse a list of text terms such as `["-1.0*ZZI", "0.5*XII"]`.
    pub fn parse_terms<S: AsRef<str>>(terms: &[S]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|t| t.as_ref().parse::<PauliTerm<T>>())
            .collect::<Result<Vec<_>>>()?;
        let n = parsed
            .first()
            .map(|t| t.string.n_qubits())
            .ok_or_else(|| domain("an empty term list does not determine the qubit count"))?;
        Self::from_terms(n, parsed)
    }

    pub fn push(&mut self, term: PauliTerm<T>) -> Result<()> {
        check_dim(self.n_qubits, term.string.n_qubits())?;
        self.terms.push(term);
        Ok(())
    }

    /// Append `coefficient · string` with a real coefficient.
    pub fn push_real(&mut self, coefficient: T, string: PauliString) -> Result<()> {
        self.push(PauliTerm::real(coefficient, string)?)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merge equal strings, drop terms with `|c| <= drop_tol`, and sort lexicographically.
    pub fn simplify(&self, drop_tol: T) -> Self {
        let mut merged: BTreeMap<PauliString, Complex<T>> = BTreeMap::new();
        for t in &self.terms {
            *merged.entry(t.string).or_default() += t.coefficient;
        }
        Self {
            n_qubits: self.n_qubits,
            terms: merged
                .into_iter()
                .filter(|(_, c)| c.norm() > drop_tol)
                .map(|(string, coefficient)| PauliTerm {
                    coefficient,
                    string,
                })
                .collect(),
        }
    }

    /// [`simplify`](Self::simplify) with [`DROP_TOL`].
    pub fn simplified(&self) -> Self {
        self.simplify(T::of(DROP_TOL))
    }

    /// Concatenation of both term lists (not simplified).
    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_dim(self.n_qubits, other.n_qubits)?;
        let mut out = self.clone();
        out.terms.extend_from_slice(&other.terms);
        Ok(out)
    }

    /// Operator product, expanded term by term (not simplified).
    pub fn product(&self, other: &Self) -> Result<Self> {
        check_dim(self.n_qubits, other.n_qubits)?;
        let mut out = Self::zero(self.n_qubits)?;
        for a in &self.terms {
            for b in &other.terms {
                let (phase, string) = compose(&a.string, &b.string)?;
                out.terms.push(PauliTerm {
                    coefficient: a.coefficient * b.coefficient * phase.to_complex::<T>(),
                    string,
                });
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm {
                    coefficient: t.coefficient * factor,
                    string: t.string,
                })
                .collect(),
        }
    }

    /// Hermitian conjugate; each Pauli string is self-adjoint.
    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm {
                    coefficient: t.coefficient.conj(),
                    string: t.string,
                })
                .collect(),
        }
    }

    /// Summed coefficient of the all-I string.
    pub fn identity_coefficient(&self) -> Complex<T> {
        self.terms
            .iter()
            .filter(|t| t.string.is_identity())
            .map(|t| t.coefficient)
            .fold(Complex::default(), |a, b| a + b)
    }

    /// Largest `|Im c|` over all terms.
    pub fn max_imag(&self) -> T {
        self.terms
            .iter()
            .map(|t| t.coefficient.im.abs())
            .fold(T::zero(), T::max)
    }

    /// Greedy first-fit partition into qubit-wise commuting groups.
    ///
    /// Terms are visited in lexicographic string order. Identity terms form
    /// their own group flagged `constant`, placed first.
    pub fn qubitwise_commuting_groups(&self) -> Vec<CommutingGroup<T>> {
        let mut ordered: Vec<&PauliTerm<T>> = self.terms.iter().collect();
        ordered.sort_by_key(|a| a.string);

        let mut constant: Vec<PauliTerm<T>> = Vec::new();
        let mut groups: Vec<CommutingGroup<T>> = Vec::new();
        for term in ordered {
            if term.string.is_identity() {
                constant.push(*term);
                continue;
            }
            match groups
                .iter_mut()
                .find(|g| g.basis.qubitwise_commutes(&term.string))
            {
                Some(g) => {
                    g.basis = PauliString {
                        n_qubits: self.n_qubits,
                        x: g.basis.x | term.string.x,
                        z: g.basis.z | term.string.z,
                    };
                    g.terms.terms.push(*term);
                }
                None => groups.push(CommutingGroup {
                    terms: PauliSum {
                        n_qubits: self.n_qubits,
                        terms: vec![*term],
                    },
                    basis: term.string,
                    constant: false,
                }),
            }
        }
        if !constant.is_empty() {
            groups.insert(
                0,
                CommutingGroup {
                    terms: PauliSum {
                        n_qubits: self.n_qubits,
                        terms: constant,
                    },
                    basis: PauliString {
                        n_qubits: self.n_qubits,
                        x: 0,
                        z: 0,
                    },
                    constant: true,
                },
            );
        }
        groups
    }

    /// `H|psi>` for a dense amplitude vector.
    pub fn apply(&self, amps: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        check_dim(1usize << self.n_qubits, amps.len())?;
        let mut out = vec![Complex::default(); amps.len()];
        for t in &self.terms {
            for (k, &a) in amps.iter().enumerate() {
                let (phase, image) = t.string.apply_basis(k);
                out[image] += t.coefficient * phase.to_complex::<T>() * a;
            }
        }
        Ok(out)
    }

    /// Dense `2^n x 2^n` matrix `Σ c_k P_k`.
    pub fn dense_matrix(&self) -> Result<DMatrix<Complex<T>>> {
        if self.n_qubits > DENSE_MAX_QUBITS {
            return Err(CoreError::Capacity {
                n_qubits: self.n_qubits,
                max: DENSE_MAX_QUBITS,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::from_element(dim, dim, Complex::<T>::default());
        for t in &self.terms {
            for col in 0..dim {
                let (phase, row) = t.string.apply_basis(col);
                m[(row, col)] += t.coefficient * phase.to_complex::<T>();
            }
        }
        Ok(m)
    }
}

impl<T: Real> fmt::Display for PauliSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl<T: Real> Serialize for PauliSum<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|t| t.to_string()))
    }
}

impl<'de, T: Real> Deserialize<'de> for PauliSum<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        PauliSum::parse_terms(&raw).map_err(D::Error::custom)
    }
}

/// Terms that can be measured together in one rotated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutingGroup<T: Real> {
    pub terms: PauliSum<T>,
    /// Per qubit, the unique non-I label any member carries there.
    pub basis: PauliString,
    /// The group holds only identity terms and needs no measurement.
    pub constant: bool,
}

/// A simplified Pauli sum with real coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T: Real>(PauliSum<T>);

impl<T: Real> Hamiltonian<T> {
    /// Simplify `sum` and require every imaginary part to be within
    /// [`HERMITIAN_TOL`]; the residue is then discarded.
    pub fn new(sum: PauliSum<T>) -> Result<Self> {
        let mut sum = sum.simplified();
        for t in &mut sum.terms {
            if t.coefficient.im.abs() > T::of(HERMITIAN_TOL) {
                return Err(CoreError::NotHermitian {
                    string: t.string.to_string(),
                    imag: t.coefficient.im.as_f64(),
                });
            }
            t.coefficient.im = T::zero();
        }
        Ok(Self(sum))
    }

    pub fn as_sum(&self) -> &PauliSum<T> {
        &self.0
    }

    pub fn into_sum(self) -> PauliSum<T> {
        self.0
    }

    /// Real coefficient of every term, in term order.
    pub fn coefficients(&self) -> impl Iterator<Item = T> + '_ {
        self.0.terms.iter().map(|t| t.coefficient.re)
    }
}

impl<T: Real> Deref for Hamiltonian<T> {
    type Target = PauliSum<T>;

    fn deref(&self) -> &PauliSum<T> {
        &self.0
    }
}

impl<T: Real> Serialize for Hamiltonian<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Hamiltonian<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Hamiltonian::new(PauliSum::deserialize(d)?).map_err(D::Error::custom)
    }
}
