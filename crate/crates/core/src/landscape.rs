//! Variance landscape over the parameter torus `[0, 2π)²`.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::error::Result;
use crate::seed;
use crate::simulator::AnsatzParams;
use crate::vqe::{self, Estimator, Objective, SpectrumLevel};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub theta1: Vec<f64>,
    pub theta2: Vec<f64>,
    /// `values[i][j]` is the variance at `(theta1[i], theta2[j])`.
    pub values: Vec<Vec<f64>>,
}

pub fn axis(resolution: usize) -> Vec<f64> {
    (0..resolution).map(|k| TAU * k as f64 / resolution as f64).collect()
}

/// Evaluates the variance at every grid cell. Cell `(i, j)` samples with seed
/// `derive(cfg.seed, i·resolution + j)` in shot mode.
pub fn sweep(est: &Estimator, resolution: usize) -> Result<SweepGrid> {
    let ax = axis(resolution);
    let root = est.config().seed;
    let flat: Vec<f64> = (0..resolution * resolution)
        .into_par_iter()
        .map(|cell| {
            let (i, j) = (cell / resolution, cell % resolution);
            est.variance(AnsatzParams::new(ax[i], ax[j]), seed::derive(root, cell as u64))
        })
        .collect::<Result<_>>()?;
    Ok(SweepGrid {
        theta1: ax.clone(),
        theta2: ax,
        values: flat.chunks(resolution).map(|r| r.to_vec()).collect(),
    })
}

impl SweepGrid {
    pub fn resolution(&self) -> (usize, usize) {
        (self.theta1.len(), self.theta2.len())
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    /// Rows `theta1,theta2,variance`, row-major in `theta1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta1,theta2,variance\n");
        for (i, row) in self.values.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", self.theta1[i], self.theta2[j], v));
            }
        }
        out
    }

    /// Cells strictly below all eight neighbours, with periodic wrap-around.
    pub fn local_minima(&self) -> Vec<(usize, usize)> {
        let (n1, n2) = self.resolution();
        let mut found = Vec::new();
        for i in 0..n1 {
            for j in 0..n2 {
                let v = self.values[i][j];
                let is_min = (-1i64..=1).all(|di| {
                    (-1i64..=1).all(|dj| {
                        if di == 0 && dj == 0 {
                            return true;
                        }
                        let a = (i as i64 + di).rem_euclid(n1 as i64) as usize;
                        let b = (j as i64 + dj).rem_euclid(n2 as i64) as usize;
                        (a, b) == (i, j) || v < self.values[a][b]
                    })
                });
                if is_min {
                    found.push((i, j));
                }
            }
        }
        found
    }

    /// Polishes every grid minimum with the variance minimiser and groups
    /// the accepted ones by energy.
    pub fn refined_minima(&self, est: &Estimator) -> Result<Vec<SpectrumLevel>> {
        let root = est.config().seed;
        let cells = self.local_minima();
        let runs = cells
            .par_iter()
            .map(|&(i, j)| {
                let start = AnsatzParams::new(self.theta1[i], self.theta2[j]);
                vqe::run_vqe(est, Objective::Variance, start, seed::derive(root, (i * self.theta2.len() + j) as u64))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(vqe::deduplicate(&runs, vqe::DEDUP_RADIUS))
    }
}
