//! Dense-matrix oracles built from first principles, independent of the
//! bit-mask machinery under test.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = DMatrix<C>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn single(label: char) -> Mat {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match label {
        'I' => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        'Y' => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        'Z' => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("bad label {label}"),
    }
}

/// Kronecker product of the labels in text order; the leftmost factor is the
/// highest qubit, so the rightmost is the least-significant index bit.
pub fn kron_labels(text: &str) -> Mat {
    text.chars()
        .map(single)
        .reduce(|acc, m| acc.kronecker(&m))
        .expect("non-empty label string")
}

/// Embed a gate on `targets` (targets[0] least significant locally) into `n` qubits.
pub fn embed(local: &Mat, targets: &[usize], n: usize) -> Mat {
    let dim = 1usize << n;
    let mut full = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    let local_index = |k: usize| -> usize {
        targets
            .iter()
            .enumerate()
            .map(|(j, &q)| ((k >> q) & 1) << j)
            .sum()
    };
    let rest_mask: usize = !targets.iter().map(|&q| 1usize << q).sum::<usize>();
    for col in 0..dim {
        for row in 0..dim {
            if row & rest_mask == col & rest_mask {
                full[(row, col)] = local[(local_index(row), local_index(col))];
            }
        }
    }
    full
}

/// `exp(A)` by scaling and squaring a Taylor series.
pub fn expm(a: &Mat) -> Mat {
    let norm: f64 = a.iter().map(|v| v.norm()).sum();
    let squarings = (norm.max(1.0).log2().ceil() as u32) + 4;
    let scaled = a / c(2f64.powi(squarings as i32), 0.0);
    let dim = a.nrows();
    let mut term = DMatrix::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / c(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn basis_state(n: usize, k: usize) -> DVector<C> {
    let mut v = DVector::from_element(1 << n, c(0.0, 0.0));
    v[k] = c(1.0, 0.0);
    v
}

pub fn random_state(n: usize, rng: &mut impl Rng) -> Vec<C> {
    let v: Vec<C> = (0..1 << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|a| a / norm).collect()
}

pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn random_labels(n: usize, rng: &mut impl Rng) -> String {
    (0..n)
        .map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)])
        .collect()
}
