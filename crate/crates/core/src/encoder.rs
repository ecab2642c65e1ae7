//! Reduced-qubit encoding of dense Hermitian matrices as Pauli sums.
//!
//! A `dim × dim` matrix is padded to `2^n` with `n = ⌈log₂ dim⌉` and expanded
//! over all `4^n` Pauli strings with `a_P = Tr(P·H) / 2^n`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum, PauliTerm, DROP_TOLERANCE};

/// Maximum `|H − H†|` entry accepted as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseHermitian {
    matrix: DMatrix<Complex64>,
}

impl DenseHermitian {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() == 0 {
            return Err(Error::Validation("matrix dimension must be at least 1".into()));
        }
        if !matrix.is_square() {
            return Err(Error::Validation(format!(
                "matrix must be square, got {}×{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dev = hermitian_deviation(&matrix);
        if dev >= HERMITIAN_TOLERANCE {
            return Err(Error::Validation(format!(
                "matrix is not Hermitian (max |H − H†| = {dev:.3e})"
            )));
        }
        Ok(DenseHermitian { matrix })
    }

    pub fn from_real(matrix: &DMatrix<f64>) -> Result<Self> {
        DenseHermitian::new(matrix.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Number of qubits needed to hold this matrix.
    pub fn n_qubits(&self) -> usize {
        qubits_for_dim(self.dim())
    }

    /// Writes the matrix file format: `dim` on the first line, then one row
    /// per line of `a+bi` entries.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.dim());
        for r in 0..self.dim() {
            let row: Vec<String> = (0..self.dim()).map(|c| format_complex(self.matrix[(r, c)])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the matrix file format. Lines starting with `#` are comments.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first_no, first) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty matrix file".into(),
        })?;
        let dim: usize = first.parse().map_err(|_| Error::Parse {
            line: first_no,
            msg: format!("expected dimension, got {first:?}"),
        })?;
        if dim == 0 {
            return Err(Error::Validation("matrix dimension must be at least 1".into()));
        }
        let mut m = DMatrix::zeros(dim, dim);
        for r in 0..dim {
            let (line_no, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("expected {dim} rows, found {r}"),
            })?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != dim {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected {dim} entries, found {}", entries.len()),
                });
            }
            for (c, e) in entries.iter().enumerate() {
                m[(r, c)] = parse_complex(e).ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: format!("bad complex entry {e:?}"),
                })?;
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing data after matrix rows".into(),
            });
        }
        DenseHermitian::new(m)
    }
}

fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for r in 0..n {
        for c in r..n {
            dev = dev.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    dev
}

pub fn qubits_for_dim(dim: usize) -> usize {
    (dim.max(2) - 1).ilog2() as usize + 1
}

fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

/// Accepts `a+bi`, `a-bi`, `a`, and `bi`.
fn parse_complex(s: &str) -> Option<Complex64> {
    if let Some(body) = s.strip_suffix('i') {
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => {
                let re: f64 = body[..k].parse().ok()?;
                let im: f64 = body[k..].parse().ok()?;
                Some(Complex64::new(re, im))
            }
            None => {
                let im = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    b => b.parse().ok()?,
                };
                Some(Complex64::new(0.0, im))
            }
        }
    } else {
        s.parse().ok().map(|re| Complex64::new(re, 0.0))
    }
}

/// How the unused basis states are filled when `dim` is not a power of two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PaddingPolicy {
    /// Padded diagonal entries are zero.
    Zero,
    /// Padded diagonal entries are set to this energy, which must exceed the
    /// physical spectrum.
    Penalty(f64),
}

impl PaddingPolicy {
    /// Penalty of `10 × max|entry| × dim` (at least 1).
    pub fn default_for(h: &DenseHermitian) -> Self {
        let value = 10.0 * h.max_abs_entry() * h.dim() as f64;
        PaddingPolicy::Penalty(if value > 0.0 { value } else { 1.0 })
    }
}

/// Gershgorin upper bound on the largest eigenvalue.
fn eigenvalue_upper_bound(h: &DenseHermitian) -> f64 {
    let m = h.matrix();
    (0..h.dim())
        .map(|r| {
            let off: f64 = (0..h.dim()).filter(|&c| c != r).map(|c| m[(r, c)].norm()).sum();
            m[(r, r)].re + off
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn pad(h: &DenseHermitian, policy: PaddingPolicy) -> Result<DMatrix<Complex64>> {
    let dim = h.dim();
    let padded_dim = 1usize << h.n_qubits();
    if padded_dim == dim {
        return Ok(h.matrix().clone());
    }
    let fill = match policy {
        PaddingPolicy::Zero => 0.0,
        PaddingPolicy::Penalty(v) => {
            let bound = eigenvalue_upper_bound(h);
            if !(v > bound) {
                return Err(Error::Validation(format!(
                    "penalty {v} does not exceed the spectrum bound {bound}"
                )));
            }
            v
        }
    };
    let mut out = DMatrix::zeros(padded_dim, padded_dim);
    out.view_mut((0, 0), (dim, dim)).copy_from(h.matrix());
    for k in dim..padded_dim {
        out[(k, k)] = Complex64::new(fill, 0.0);
    }
    Ok(out)
}

/// Trace-formula expansion over every Pauli string on `⌈log₂ dim⌉` qubits.
pub fn decompose(h: &DenseHermitian, policy: PaddingPolicy) -> Result<PauliSum> {
    let n = h.n_qubits();
    let m = pad(h, policy)?;
    let dim = 1usize << n;
    let norm = 1.0 / dim as f64;
    let mut terms = Vec::new();
    for index in 0..(1usize << (2 * n)) {
        let p = PauliString::from_index(n, index);
        // Tr(P·M) = Σ_k ⟨k|P M|k⟩ = Σ_k Σ_j P_{kj} M_{jk}; P has one entry per column.
        let mut trace = Complex64::new(0.0, 0.0);
        for j in 0..dim {
            let (phase, k) = p.apply_to_basis(j);
            trace += phase.to_complex() * m[(j, k)];
        }
        let coeff = trace * norm;
        if coeff.norm() >= DROP_TOLERANCE {
            terms.push(PauliTerm::new(coeff, p));
        }
    }
    PauliSum::from_terms(n, terms)
}

/// Eigenvalues in ascending order with matching unit eigenvectors.
pub fn eigh(h: &DenseHermitian) -> (Vec<f64>, Vec<DVector<Complex64>>) {
    let eig = h.matrix().clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
    (values, vectors)
}

pub fn spectrum(h: &DenseHermitian) -> Vec<f64> {
    eigh(h).0
}
