//! Independent dense-matrix oracles shared by the integration tests.
#![allow(dead_code)]

use lmg_variance::pauli::{Pauli, PauliString, PauliSum};
use nalgebra::DMatrix;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(p: Pauli) -> DMatrix<Complex64> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match p {
        Pauli::I => DMatrix::from_row_slice(2, 2, &[l, o, o, l]),
        Pauli::X => DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
    }
}

/// Kronecker product with qubit 0 as the leftmost factor.
pub fn kron_string(s: &PauliString) -> DMatrix<Complex64> {
    s.letters()
        .iter()
        .fold(DMatrix::from_element(1, 1, c(1.0, 0.0)), |acc, &p| acc.kronecker(&single(p)))
}

pub fn kron_sum(h: &PauliSum) -> DMatrix<Complex64> {
    let dim = 1 << h.n_qubits();
    h.terms()
        .iter()
        .fold(DMatrix::zeros(dim, dim), |acc, t| acc + kron_string(&t.string) * t.coeff)
}

/// `Tr(P·M) / 2^n` computed with full dense products.
pub fn trace_coeff(m: &DMatrix<Complex64>, s: &PauliString) -> Complex64 {
    let p = kron_string(s);
    (p * m).trace() / m.nrows() as f64
}

pub fn all_strings(n: usize) -> Vec<PauliString> {
    (0..1usize << (2 * n)).map(|i| PauliString::from_index(n, i)).collect()
}

pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The N = 3, V/ε = 0.5 Pauli form with the printed three-decimal coefficient.
pub fn lmg3_printed() -> PauliSum {
    PauliSum::from_real(&[(-1.0, "ZI"), (-0.5, "IZ"), (-0.866, "XI")]).unwrap()
}

pub fn lmg3_exact() -> PauliSum {
    PauliSum::from_real(&[(-1.0, "ZI"), (-0.5, "IZ"), (-(3.0f64.sqrt()) / 2.0, "XI")]).unwrap()
}

/// The printed N = 3 matrix.
pub fn lmg3_matrix_printed() -> DMatrix<f64> {
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        -1.5, 0.0, -0.866, 0.0,
        0.0, -0.5, 0.0, -0.866,
        -0.866, 0.0, 0.5, 0.0,
        0.0, -0.866, 0.0, 1.5,
    ]);
    m
}

/// Ground and excited eigenvalues `∓0.5 ∓ √(1 + 3/4)`.
pub const LMG3_EXACT: [f64; 4] = [-1.8228756555322954, -0.8228756555322954, 0.8228756555322954, 1.8228756555322954];
/// Values as printed to three decimals.
pub const LMG3_PRINTED: [f64; 4] = [-1.823, -0.823, 0.823, 1.823];
