//! Readout-error injection and correction.
//!
//! Each qubit has an independent confusion channel: a true 0 reads as 1 with
//! probability `p01`, a true 1 reads as 0 with probability `p10`. The full
//! calibration matrix is the tensor product of the per-qubit 2×2 channels.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;
use crate::simulator::ShotHistogram;

/// Calibration matrices with a larger condition number are rejected.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReadoutError {
    pub p01: f64,
    pub p10: f64,
}

impl ReadoutError {
    /// `P(observed | true)`
    fn confusion(self, observed: bool, truth: bool) -> f64 {
        match (truth, observed) {
            (false, false) => 1.0 - self.p01,
            (false, true) => self.p01,
            (true, false) => self.p10,
            (true, true) => 1.0 - self.p10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadoutNoiseModel {
    qubits: Vec<ReadoutError>,
}

impl ReadoutNoiseModel {
    pub fn new(qubits: Vec<ReadoutError>) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::Validation("noise model needs at least one qubit".into()));
        }
        for (q, e) in qubits.iter().enumerate() {
            for (name, p) in [("p01", e.p01), ("p10", e.p10)] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Validation(format!("noise.q{q}.{name} = {p} is outside [0, 1]")));
                }
            }
        }
        Ok(ReadoutNoiseModel { qubits })
    }

    pub fn uniform(n_qubits: usize, p01: f64, p10: f64) -> Result<Self> {
        ReadoutNoiseModel::new(vec![ReadoutError { p01, p10 }; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[ReadoutError] {
        &self.qubits
    }

    pub fn is_identity(&self) -> bool {
        self.qubits.iter().all(|e| e.p01 == 0.0 && e.p10 == 0.0)
    }

    /// The channel equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &ReadoutNoiseModel) -> Result<ReadoutNoiseModel> {
        if self.n_qubits() != next.n_qubits() {
            return Err(Error::Length {
                expected: self.n_qubits(),
                found: next.n_qubits(),
            });
        }
        let qubits = self
            .qubits
            .iter()
            .zip(&next.qubits)
            .map(|(a, b)| ReadoutError {
                p01: a.p01 * (1.0 - b.p10) + (1.0 - a.p01) * b.p01,
                p10: a.p10 * (1.0 - b.p01) + (1.0 - a.p10) * b.p10,
            })
            .collect();
        ReadoutNoiseModel::new(qubits)
    }

    pub fn calibration_matrix(&self) -> CalibrationMatrix {
        let n = self.n_qubits();
        let dim = 1usize << n;
        let matrix = DMatrix::from_fn(dim, dim, |observed, truth| {
            self.qubits
                .iter()
                .enumerate()
                .map(|(q, e)| {
                    let shift = n - 1 - q;
                    e.confusion((observed >> shift) & 1 == 1, (truth >> shift) & 1 == 1)
                })
                .product()
        });
        CalibrationMatrix { n_qubits: n, matrix }
    }
}

/// `A[observed][true]`, column-stochastic.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationMatrix {
    n_qubits: usize,
    matrix: DMatrix<f64>,
}

impl CalibrationMatrix {
    pub fn new(n_qubits: usize, matrix: DMatrix<f64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.shape() != (dim, dim) {
            return Err(Error::Validation(format!(
                "calibration matrix for {n_qubits} qubits must be {dim}×{dim}"
            )));
        }
        if matrix.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
            return Err(Error::Validation("calibration entries must lie in [0, 1]".into()));
        }
        for c in 0..dim {
            let s: f64 = matrix.column(c).sum();
            if (s - 1.0).abs() > 1e-12 {
                return Err(Error::Validation(format!("column {c} sums to {s}, expected 1")));
            }
        }
        Ok(CalibrationMatrix { n_qubits, matrix })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Expected observed distribution for a true distribution.
    pub fn forward(&self, truth: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(truth)).as_slice().to_vec()
    }

    pub fn condition_number(&self) -> f64 {
        let sv = self.matrix.clone().singular_values();
        let (max, min) = sv.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }
}

/// Flips each bit of each recorded shot independently according to `model`.
pub fn corrupt(hist: &ShotHistogram, model: &ReadoutNoiseModel, seed: u64) -> Result<ShotHistogram> {
    let n = hist.n_qubits();
    if model.n_qubits() != n {
        return Err(Error::Length {
            expected: n,
            found: model.n_qubits(),
        });
    }
    if model.is_identity() {
        return Ok(hist.clone());
    }
    let mut rng = seed::rng(seed);
    let mut out = ShotHistogram::empty(n);
    for (index, &count) in hist.counts().iter().enumerate() {
        for _ in 0..count {
            let mut observed = index;
            for (q, e) in model.qubits().iter().enumerate() {
                let bit = 1 << (n - 1 - q);
                let p = if index & bit == 0 { e.p01 } else { e.p10 };
                if p > 0.0 && rng.random::<f64>() < p {
                    observed ^= bit;
                }
            }
            out.record(observed, 1);
        }
    }
    Ok(out)
}

/// Solves `A·x = f` for the empirical frequencies `f`, then clips negative
/// entries and renormalises. Clipping biases the estimate slightly when the
/// raw solution leaves the probability simplex.
pub fn mitigate(hist: &ShotHistogram, a: &CalibrationMatrix) -> Result<Vec<f64>> {
    if hist.n_qubits() != a.n_qubits() {
        return Err(Error::Length {
            expected: a.n_qubits(),
            found: hist.n_qubits(),
        });
    }
    let cond = a.condition_number();
    if !(cond <= MAX_CONDITION) {
        return Err(Error::Conditioning(cond));
    }
    let f = DVector::from_vec(hist.frequencies());
    let x = a
        .matrix()
        .clone()
        .lu()
        .solve(&f)
        .ok_or(Error::Conditioning(f64::INFINITY))?;
    let clipped: Vec<f64> = x.iter().map(|&v| v.max(0.0)).collect();
    let total: f64 = clipped.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Conditioning(cond));
    }
    Ok(clipped.into_iter().map(|v| v / total).collect())
}
