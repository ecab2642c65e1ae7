//! Energy and variance cost functions, a Nelder-Mead minimiser over the two
//! ansatz angles, and multistart recovery of the full spectrum.
//!
//! The variance `σ² = ⟨H²⟩ − ⟨H⟩²` vanishes exactly at eigenstates, so every
//! eigenstate reachable by the ansatz is a global minimum of the variance
//! landscape. Minimising from a grid of starting points and grouping the
//! zero-variance results by energy recovers the excitation spectrum.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::eigh;
use crate::error::{Error, Result};
use crate::noise::{self, CalibrationMatrix, ReadoutNoiseModel};
use crate::pauli::{PauliString, PauliSum};
use crate::seed;
use crate::simulator::{self, ansatz_state, AnsatzParams, ANSATZ_QUBITS};

pub const DEFAULT_SHOTS: u64 = 20_000;
/// Variance below which an exact-mode minimum counts as an eigenstate.
pub const EXACT_ACCEPT: f64 = 1e-8;
/// Variance below which a shot-mode minimum counts as an eigenstate.
pub const SHOT_ACCEPT: f64 = 0.05;
pub const DEDUP_RADIUS: f64 = 0.1;
pub const DEFAULT_GRID: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorMode {
    Exact,
    Shots,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorConfig {
    pub mode: EstimatorMode,
    /// Shots per measured Pauli string.
    pub shots: u64,
    pub seed: u64,
    pub noise: Option<ReadoutNoiseModel>,
    pub mitigation: bool,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig::exact()
    }
}

impl EstimatorConfig {
    pub fn exact() -> Self {
        EstimatorConfig {
            mode: EstimatorMode::Exact,
            shots: DEFAULT_SHOTS,
            seed: 0,
            noise: None,
            mitigation: false,
        }
    }

    pub fn shots(shots: u64, seed: u64) -> Self {
        EstimatorConfig {
            mode: EstimatorMode::Shots,
            shots,
            seed,
            noise: None,
            mitigation: false,
        }
    }

    pub fn with_noise(mut self, model: ReadoutNoiseModel, mitigation: bool) -> Self {
        self.noise = Some(model);
        self.mitigation = mitigation;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == EstimatorMode::Shots && self.shots == 0 {
            return Err(Error::Validation("shot mode needs at least one shot".into()));
        }
        if self.mitigation && self.noise.is_none() {
            return Err(Error::Validation("mitigation requested without a noise model".into()));
        }
        Ok(())
    }

    /// Variance threshold for accepting a minimum as an eigenstate.
    pub fn acceptance_tolerance(&self) -> f64 {
        match self.mode {
            EstimatorMode::Exact => EXACT_ACCEPT,
            EstimatorMode::Shots => SHOT_ACCEPT,
        }
    }

    fn simplex_tolerance(&self) -> f64 {
        match self.mode {
            EstimatorMode::Exact => 1e-6,
            EstimatorMode::Shots => 1e-2,
        }
    }
}

/// Evaluates `⟨H⟩` and `⟨H²⟩` on ansatz states under a fixed configuration.
///
/// In shot mode every non-identity string of `H` and `H²` is measured once per
/// evaluation; strings shared by both operators reuse the same histogram.
/// The variance is the plug-in estimate `⟨H²⟩ − ⟨H⟩²`, biased upward by
/// `Var(⟨H⟩ estimate) = O(1/shots)`.
#[derive(Debug, Clone)]
pub struct Estimator {
    h: PauliSum,
    h2: PauliSum,
    cfg: EstimatorConfig,
    strings: Vec<PauliString>,
    calibration: Option<CalibrationMatrix>,
}

impl Estimator {
    pub fn new(h: &PauliSum, cfg: &EstimatorConfig) -> Result<Self> {
        Estimator::with_square(h, &h.square(), cfg)
    }

    pub fn with_square(h: &PauliSum, h2: &PauliSum, cfg: &EstimatorConfig) -> Result<Self> {
        cfg.validate()?;
        for op in [h, h2] {
            if op.n_qubits() != ANSATZ_QUBITS {
                return Err(Error::Length {
                    expected: ANSATZ_QUBITS,
                    found: op.n_qubits(),
                });
            }
        }
        if !h.is_real() {
            return Err(Error::Validation("Hamiltonian coefficients must be real".into()));
        }
        if cfg!(debug_assertions) {
            let expect = h.square();
            let max_dev = expect
                .terms()
                .iter()
                .map(|t| (t.coeff - h2.coeff(&t.string)).norm())
                .chain(h2.terms().iter().map(|t| (t.coeff - expect.coeff(&t.string)).norm()))
                .fold(0.0, f64::max);
            if max_dev > 1e-9 {
                return Err(Error::Contract(format!("h2 is not the square of h (deviation {max_dev:.3e})")));
            }
        }
        if let Some(model) = &cfg.noise {
            if model.n_qubits() != ANSATZ_QUBITS {
                return Err(Error::Length {
                    expected: ANSATZ_QUBITS,
                    found: model.n_qubits(),
                });
            }
        }
        let strings: BTreeSet<PauliString> = h
            .terms()
            .iter()
            .chain(h2.terms())
            .map(|t| t.string.clone())
            .filter(|s| !s.is_identity())
            .collect();
        let calibration = match (&cfg.noise, cfg.mitigation) {
            (Some(model), true) => Some(model.calibration_matrix()),
            _ => None,
        };
        Ok(Estimator {
            h: h.clone(),
            h2: h2.clone(),
            cfg: cfg.clone(),
            strings: strings.into_iter().collect(),
            calibration,
        })
    }

    pub fn config(&self) -> &EstimatorConfig {
        &self.cfg
    }

    pub fn hamiltonian(&self) -> &PauliSum {
        &self.h
    }

    /// Strings measured in shot mode, in the order their seeds are assigned.
    pub fn measured_strings(&self) -> &[PauliString] {
        &self.strings
    }

    /// Shot estimate of one string. The histogram seed is
    /// `derive(seed, string index)`; readout corruption uses `derive(that, 1)`.
    fn sample_string(&self, state: &simulator::Statevector, index: usize, seed: u64) -> Result<f64> {
        let p = &self.strings[index];
        let string_seed = seed::derive(seed, index as u64);
        let hist = simulator::sample_pauli(state, p, self.cfg.shots, &mut seed::rng(string_seed))?;
        let Some(model) = &self.cfg.noise else {
            return Ok(simulator::parity_mean(&hist, p));
        };
        let noisy = noise::corrupt(&hist, model, seed::derive(string_seed, 1))?;
        match &self.calibration {
            Some(a) => Ok(simulator::parity_expectation(&noise::mitigate(&noisy, a)?, p)),
            None => Ok(simulator::parity_mean(&noisy, p)),
        }
    }

    /// Combines per-string estimates into the expectation of `op`.
    fn combine(op: &PauliSum, strings: &[PauliString], values: &[Option<f64>]) -> f64 {
        op.terms()
            .iter()
            .map(|t| {
                if t.string.is_identity() {
                    t.coeff.re
                } else {
                    let i = strings.binary_search(&t.string).expect("string was registered");
                    t.coeff.re * values[i].expect("string was measured")
                }
            })
            .sum()
    }

    fn estimates(&self, state: &simulator::Statevector, seed: u64, needed: &[&PauliSum]) -> Result<Vec<Option<f64>>> {
        let mut values = vec![None; self.strings.len()];
        for (i, p) in self.strings.iter().enumerate() {
            if needed.iter().any(|op| op.coeff(p).norm() > 0.0) {
                values[i] = Some(self.sample_string(state, i, seed)?);
            }
        }
        Ok(values)
    }

    pub fn energy(&self, theta: AnsatzParams, seed: u64) -> Result<f64> {
        let state = ansatz_state(theta);
        match self.cfg.mode {
            EstimatorMode::Exact => simulator::expectation(&state, &self.h),
            EstimatorMode::Shots => {
                let values = self.estimates(&state, seed, &[&self.h])?;
                Ok(Estimator::combine(&self.h, &self.strings, &values))
            }
        }
    }

    /// `(⟨H⟩, ⟨H²⟩)` from one shared set of measurements.
    pub fn moments(&self, theta: AnsatzParams, seed: u64) -> Result<(f64, f64)> {
        let state = ansatz_state(theta);
        match self.cfg.mode {
            EstimatorMode::Exact => Ok((
                simulator::expectation(&state, &self.h)?,
                simulator::expectation(&state, &self.h2)?,
            )),
            EstimatorMode::Shots => {
                let values = self.estimates(&state, seed, &[&self.h, &self.h2])?;
                Ok((
                    Estimator::combine(&self.h, &self.strings, &values),
                    Estimator::combine(&self.h2, &self.strings, &values),
                ))
            }
        }
    }

    pub fn variance(&self, theta: AnsatzParams, seed: u64) -> Result<f64> {
        let (e, e2) = self.moments(theta, seed)?;
        Ok(e2 - e * e)
    }
}

/// `⟨H⟩` on the ansatz state at `theta`, using `cfg.seed` in shot mode.
pub fn energy_cost(theta: AnsatzParams, h: &PauliSum, cfg: &EstimatorConfig) -> Result<f64> {
    Estimator::new(h, cfg)?.energy(theta, cfg.seed)
}

/// `⟨H²⟩ − ⟨H⟩²` on the ansatz state at `theta`; `h2` must equal `h.square()`.
pub fn variance_cost(theta: AnsatzParams, h: &PauliSum, h2: &PauliSum, cfg: &EstimatorConfig) -> Result<f64> {
    Estimator::with_square(h, h2, cfg)?.variance(theta, cfg.seed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadOptions {
    pub initial_step: f64,
    /// Converged once every vertex lies within this distance (max-norm) of the best.
    pub tolerance: f64,
    pub max_evaluations: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            initial_step: 0.3,
            tolerance: 1e-6,
            max_evaluations: 500,
        }
    }
}

impl NelderMeadOptions {
    pub fn for_config(cfg: &EstimatorConfig) -> Self {
        NelderMeadOptions {
            tolerance: cfg.simplex_tolerance(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub theta: AnsatzParams,
    pub value: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// Nelder-Mead on the two ansatz angles with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½). Exhausting the
/// evaluation budget is reported through `converged = false`.
pub fn minimize<F>(mut cost: F, start: AnsatzParams, opts: &NelderMeadOptions) -> Result<Minimum>
where
    F: FnMut(AnsatzParams) -> Result<f64>,
{
    type Point = [f64; 2];
    let mut evaluations = 0usize;
    let mut eval = |x: Point, count: &mut usize| -> Result<f64> {
        *count += 1;
        cost(AnsatzParams::new(x[0], x[1]))
    };
    let lerp = |a: Point, b: Point, t: f64| -> Point { [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])] };

    let x0 = start.to_array();
    let mut simplex: Vec<(Point, f64)> = Vec::with_capacity(3);
    for k in 0..3 {
        let mut x = x0;
        if k > 0 {
            x[k - 1] += opts.initial_step;
        }
        let f = eval(x, &mut evaluations)?;
        simplex.push((x, f));
    }

    let converged = loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].0;
        let spread = simplex[1..]
            .iter()
            .map(|(x, _)| (x[0] - best[0]).abs().max((x[1] - best[1]).abs()))
            .fold(0.0, f64::max);
        if spread < opts.tolerance {
            break true;
        }
        if evaluations >= opts.max_evaluations {
            break false;
        }
        let (worst, f_worst) = simplex[2];
        let f_second = simplex[1].1;
        let f_best = simplex[0].1;
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);

        let reflected = lerp(centroid, worst, -1.0);
        let f_r = eval(reflected, &mut evaluations)?;
        if f_r < f_best {
            let expanded = lerp(centroid, worst, -2.0);
            let f_e = eval(expanded, &mut evaluations)?;
            simplex[2] = if f_e < f_r { (expanded, f_e) } else { (reflected, f_r) };
            continue;
        }
        if f_r < f_second {
            simplex[2] = (reflected, f_r);
            continue;
        }
        let (contracted, accept) = if f_r < f_worst {
            let x = lerp(centroid, reflected, 0.5);
            let f = eval(x, &mut evaluations)?;
            ((x, f), f <= f_r)
        } else {
            let x = lerp(centroid, worst, 0.5);
            let f = eval(x, &mut evaluations)?;
            ((x, f), f < f_worst)
        };
        if accept {
            simplex[2] = contracted;
            continue;
        }
        for v in simplex.iter_mut().skip(1) {
            let x = lerp(best, v.0, 0.5);
            *v = (x, eval(x, &mut evaluations)?);
        }
    };

    let (x, value) = simplex[0];
    Ok(Minimum {
        theta: AnsatzParams::new(x[0], x[1]),
        value,
        converged,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub theta: AnsatzParams,
    pub energy: f64,
    pub variance: f64,
    pub converged: bool,
    pub evaluations: usize,
    pub seed: u64,
}

/// Which expectation the optimiser drives down.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Energy,
    Variance,
}

/// One optimisation run from `start`. Cost evaluation `k` uses sampling seed
/// `derive(run_seed, k)`; the reported energy and variance come from a fresh
/// evaluation at the optimum with seed `derive(run_seed, u64::MAX)`.
///
/// For the variance objective `converged` additionally requires the reported
/// variance to be below the acceptance tolerance; in shot mode a second fresh
/// evaluation (seed `derive(run_seed, u64::MAX − 1)`) must pass as well.
pub fn run_vqe(est: &Estimator, objective: Objective, start: AnsatzParams, run_seed: u64) -> Result<VqeResult> {
    let cfg = est.config();
    let opts = NelderMeadOptions::for_config(cfg);
    let mut k = 0u64;
    let min = minimize(
        |theta| {
            let s = seed::derive(run_seed, k);
            k += 1;
            match objective {
                Objective::Energy => est.energy(theta, s),
                Objective::Variance => est.variance(theta, s),
            }
        },
        start,
        &opts,
    )?;
    let theta = min.theta.wrapped();
    let (energy, e2) = est.moments(theta, seed::derive(run_seed, u64::MAX))?;
    let variance = e2 - energy * energy;
    let converged = match objective {
        Objective::Energy => min.converged,
        Objective::Variance => {
            let tol = cfg.acceptance_tolerance();
            let guard = match cfg.mode {
                EstimatorMode::Exact => true,
                EstimatorMode::Shots => est.variance(theta, seed::derive(run_seed, u64::MAX - 1))? < tol,
            };
            min.converged && variance < tol && guard
        }
    };
    Ok(VqeResult {
        theta,
        energy,
        variance,
        converged,
        evaluations: min.evaluations,
        seed: run_seed,
    })
}

/// Evenly spaced starting points over `[0, 2π)²`, row-major in `θ₁`.
pub fn grid_starts(per_axis: usize) -> Vec<AnsatzParams> {
    let step = TAU / per_axis as f64;
    (0..per_axis)
        .flat_map(|i| (0..per_axis).map(move |j| AnsatzParams::new(i as f64 * step, j as f64 * step)))
        .collect()
}

/// Runs every start on its own seed `derive(root, start index)`. Output order
/// follows the start order regardless of scheduling.
pub fn multistart(est: &Estimator, objective: Objective, per_axis: usize) -> Result<Vec<VqeResult>> {
    let root = est.config().seed;
    grid_starts(per_axis)
        .into_par_iter()
        .enumerate()
        .map(|(i, start)| run_vqe(est, objective, start, seed::derive(root, i as u64)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub energy: f64,
    pub variance: f64,
    pub theta: AnsatzParams,
    pub seed: u64,
    pub start_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Ascending in energy; neighbours differ by more than `dedup_radius`.
    pub levels: Vec<SpectrumLevel>,
    pub dedup_radius: f64,
    pub acceptance_tolerance: f64,
    pub expected_levels: usize,
    pub runs: usize,
    pub accepted_runs: usize,
    pub complete: bool,
}

impl SpectrumReport {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }
}

/// Groups converged runs whose energies chain together within `radius` and
/// keeps the lowest-variance member of each group.
pub fn deduplicate(runs: &[VqeResult], radius: f64) -> Vec<SpectrumLevel> {
    let mut accepted: Vec<(usize, &VqeResult)> = runs.iter().enumerate().filter(|(_, r)| r.converged).collect();
    accepted.sort_by(|a, b| a.1.energy.total_cmp(&b.1.energy).then(a.0.cmp(&b.0)));

    let mut levels: Vec<SpectrumLevel> = Vec::new();
    let mut last_energy = f64::NEG_INFINITY;
    for (i, r) in accepted {
        let level = SpectrumLevel {
            energy: r.energy,
            variance: r.variance,
            theta: r.theta,
            seed: r.seed,
            start_index: i,
        };
        match levels.last_mut() {
            Some(prev) if r.energy - last_energy <= radius => {
                if r.variance < prev.variance {
                    *prev = level;
                }
            }
            _ => levels.push(level),
        }
        last_energy = r.energy;
    }
    levels
}

/// Variance minimisation from a `per_axis × per_axis` grid of starts.
/// A report with fewer levels than the Hilbert-space dimension is flagged
/// incomplete.
pub fn find_spectrum(h: &PauliSum, cfg: &EstimatorConfig, per_axis: usize) -> Result<SpectrumReport> {
    if per_axis == 0 {
        return Err(Error::Validation("grid must have at least one start per axis".into()));
    }
    let est = Estimator::new(h, cfg)?;
    let runs = multistart(&est, Objective::Variance, per_axis)?;
    let levels = deduplicate(&runs, DEDUP_RADIUS);
    let expected_levels = 1usize << h.n_qubits();
    Ok(SpectrumReport {
        complete: levels.len() >= expected_levels,
        accepted_runs: runs.iter().filter(|r| r.converged).count(),
        runs: runs.len(),
        levels,
        dedup_radius: DEDUP_RADIUS,
        acceptance_tolerance: cfg.acceptance_tolerance(),
        expected_levels,
    })
}

/// Energy minimisation from the same start grid; returns the lowest result.
pub fn find_ground_state(h: &PauliSum, cfg: &EstimatorConfig, per_axis: usize) -> Result<VqeResult> {
    let est = Estimator::new(h, cfg)?;
    let runs = multistart(&est, Objective::Energy, per_axis)?;
    runs.into_iter()
        .min_by(|a, b| a.energy.total_cmp(&b.energy))
        .ok_or_else(|| Error::Validation("no starts".into()))
}

/// Ansatz angles preparing each exact eigenvector of `h`, paired with its
/// eigenvalue. Eigenvectors off the ansatz manifold are skipped.
pub fn eigenstate_points(h: &PauliSum) -> Result<Vec<(f64, AnsatzParams)>> {
    if h.n_qubits() != ANSATZ_QUBITS {
        return Err(Error::Length {
            expected: ANSATZ_QUBITS,
            found: h.n_qubits(),
        });
    }
    let (values, vectors) = eigh(&h.to_hermitian()?);
    Ok(values
        .into_iter()
        .zip(vectors)
        .filter_map(|(e, v)| AnsatzParams::preparing(v.as_slice()).map(|p| (e, p)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lmg3() -> PauliSum {
        let c = 3.0f64.sqrt() / 2.0;
        PauliSum::from_real(&[(-1.0, "ZI"), (-0.5, "IZ"), (-c, "XI")]).unwrap()
    }

    #[test]
    fn exact_energy_at_origin() {
        let e = energy_cost(AnsatzParams::new(0.0, 0.0), &lmg3(), &EstimatorConfig::exact()).unwrap();
        assert!((e + 1.5).abs() < 1e-12);
    }

    #[test]
    fn constant_operator_in_every_mode() {
        let h = PauliSum::from_real(&[(2.5, "II")]).unwrap();
        let h2 = h.square();
        let theta = AnsatzParams::new(1.1, 4.2);
        let noisy = EstimatorConfig::shots(100, 3)
            .with_noise(ReadoutNoiseModel::uniform(2, 0.02, 0.02).unwrap(), true);
        for cfg in [EstimatorConfig::exact(), EstimatorConfig::shots(100, 3), noisy] {
            assert_eq!(energy_cost(theta, &h, &cfg).unwrap(), 2.5);
            assert_eq!(variance_cost(theta, &h, &h2, &cfg).unwrap(), 0.0);
        }
    }

    #[test]
    fn inconsistent_square_is_rejected() {
        let h = lmg3();
        let wrong = PauliSum::from_real(&[(1.0, "II")]).unwrap();
        let r = variance_cost(AnsatzParams::default(), &h, &wrong, &EstimatorConfig::exact());
        if cfg!(debug_assertions) {
            assert!(matches!(r, Err(Error::Contract(_))));
        }
    }

    #[test]
    fn config_validation() {
        assert!(EstimatorConfig::shots(0, 1).validate().is_err());
        let mut c = EstimatorConfig::exact();
        c.mitigation = true;
        assert!(c.validate().is_err());
        let one_qubit = PauliSum::from_real(&[(1.0, "Z")]).unwrap();
        assert!(Estimator::new(&one_qubit, &EstimatorConfig::exact()).is_err());
    }

    #[test]
    fn constant_cost_returns_start() {
        let start = AnsatzParams::new(0.4, 1.7);
        let m = minimize(|_| Ok(3.0), start, &NelderMeadOptions::default()).unwrap();
        assert!(m.converged);
        assert_eq!(m.theta, start);
        assert_eq!(m.value, 3.0);
    }

    #[test]
    fn budget_exhaustion_is_not_an_error() {
        let opts = NelderMeadOptions {
            max_evaluations: 10,
            ..Default::default()
        };
        let m = minimize(|t| Ok((t.theta1 - 1.0).powi(2) + (t.theta2 + 2.0).powi(2)), AnsatzParams::default(), &opts)
            .unwrap();
        assert!(!m.converged);
        assert!(m.evaluations >= 10);
    }

    #[test]
    fn quadratic_bowl() {
        let m = minimize(
            |t| Ok((t.theta1 - 1.0).powi(2) + 3.0 * (t.theta2 + 2.0).powi(2)),
            AnsatzParams::default(),
            &NelderMeadOptions::default(),
        )
        .unwrap();
        assert!(m.converged);
        assert!((m.theta.theta1 - 1.0).abs() < 1e-5 && (m.theta.theta2 + 2.0).abs() < 1e-5);
    }

    #[test]
    fn dedup_keeps_lowest_variance_and_separates_levels() {
        let r = |energy: f64, variance: f64| VqeResult {
            theta: AnsatzParams::default(),
            energy,
            variance,
            converged: true,
            evaluations: 0,
            seed: 0,
        };
        let mut runs = vec![r(-1.0, 1e-3), r(-0.98, 1e-4), r(0.5, 0.0), r(0.55, 0.0), r(2.0, 0.0)];
        runs.push(VqeResult {
            converged: false,
            ..r(7.0, 0.0)
        });
        let levels = deduplicate(&runs, 0.1);
        let e: Vec<f64> = levels.iter().map(|l| l.energy).collect();
        assert_eq!(e, vec![-0.98, 0.5, 2.0]);
        assert_eq!(levels[1].start_index, 2);
        for w in e.windows(2) {
            assert!(w[1] - w[0] > 0.1);
        }
    }

    #[test]
    fn eigenstate_points_cover_all_levels() {
        let pts = eigenstate_points(&lmg3()).unwrap();
        assert_eq!(pts.len(), 4);
        let est = Estimator::new(&lmg3(), &EstimatorConfig::exact()).unwrap();
        for (e, p) in pts {
            assert!(est.variance(p, 0).unwrap().abs() < 1e-12);
            assert!((est.energy(p, 0).unwrap() - e).abs() < 1e-12);
        }
    }
}
