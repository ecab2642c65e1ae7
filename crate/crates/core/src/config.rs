//! Run configuration: defaults, a `key = value` config file, and flag overrides.
//!
//! Recognised keys:
//!
//! ```text
//! n, epsilon, v, w          model parameters
//! mode = exact | shots
//! shots, seed, grid, seeds
//! mitigate = true | false
//! padding = penalty | zero
//! noise.p01, noise.p10      same rates on every qubit
//! noise.q<k>.p01, .p10      per-qubit rates (override the shared ones)
//! out                       output directory
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lmg::LmgParams;
use crate::noise::{ReadoutError, ReadoutNoiseModel};
use crate::simulator::ANSATZ_QUBITS;
use crate::vqe::{EstimatorConfig, EstimatorMode, DEFAULT_SHOTS};

pub const DEFAULT_SWEEP_RESOLUTION: usize = 100;
pub const DEFAULT_DEMO_SEEDS: usize = 20;
/// Readout rates used by `noise-demo` when none are configured. Synthetic.
pub const DEFAULT_DEMO_NOISE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Padding {
    Penalty,
    Zero,
}

/// Unresolved settings: every field optional so that file values and flags
/// can be layered before defaults are applied.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub n: Option<usize>,
    pub epsilon: Option<f64>,
    pub v: Option<f64>,
    pub w: Option<f64>,
    pub mode: Option<EstimatorMode>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub grid: Option<usize>,
    pub seeds: Option<usize>,
    pub mitigate: Option<bool>,
    pub padding: Option<Padding>,
    pub noise_p01: Option<f64>,
    pub noise_p10: Option<f64>,
    pub noise_qubits: BTreeMap<usize, (Option<f64>, Option<f64>)>,
    pub out: Option<PathBuf>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid value {value:?} for `{key}`"),
    })
}

impl Overrides {
    pub fn parse_file(text: &str) -> Result<Overrides> {
        let mut o = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: line_no,
                msg: format!("expected `key = value`, got {line:?}"),
            })?;
            o.set(key.trim(), value.trim(), line_no)?;
        }
        Ok(o)
    }

    fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        match key {
            "n" => self.n = Some(parse_value(key, value, line)?),
            "epsilon" => self.epsilon = Some(parse_value(key, value, line)?),
            "v" => self.v = Some(parse_value(key, value, line)?),
            "w" => self.w = Some(parse_value(key, value, line)?),
            "mode" => {
                self.mode = Some(match value {
                    "exact" => EstimatorMode::Exact,
                    "shots" => EstimatorMode::Shots,
                    _ => return Err(Error::Parse { line, msg: format!("unknown mode {value:?}") }),
                })
            }
            "shots" => self.shots = Some(parse_value(key, value, line)?),
            "seed" => self.seed = Some(parse_value(key, value, line)?),
            "grid" => self.grid = Some(parse_value(key, value, line)?),
            "seeds" => self.seeds = Some(parse_value(key, value, line)?),
            "mitigate" => self.mitigate = Some(parse_value(key, value, line)?),
            "padding" => {
                self.padding = Some(match value {
                    "penalty" => Padding::Penalty,
                    "zero" => Padding::Zero,
                    _ => return Err(Error::Parse { line, msg: format!("unknown padding {value:?}") }),
                })
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "noise.p01" => self.noise_p01 = Some(parse_value(key, value, line)?),
            "noise.p10" => self.noise_p10 = Some(parse_value(key, value, line)?),
            _ => {
                let per_qubit = key
                    .strip_prefix("noise.q")
                    .and_then(|rest| rest.split_once('.'))
                    .and_then(|(q, which)| q.parse::<usize>().ok().map(|q| (q, which)));
                match per_qubit {
                    Some((q, "p01")) => self.noise_qubits.entry(q).or_default().0 = Some(parse_value(key, value, line)?),
                    Some((q, "p10")) => self.noise_qubits.entry(q).or_default().1 = Some(parse_value(key, value, line)?),
                    _ => return Err(Error::Parse { line, msg: format!("unknown key `{key}`") }),
                }
            }
        }
        Ok(())
    }

    /// Fields set in `other` take precedence.
    pub fn overlay(mut self, other: Overrides) -> Overrides {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(n, epsilon, v, w, mode, shots, seed, grid, seeds, mitigate, padding, noise_p01, noise_p10, out);
        for (q, (a, b)) in other.noise_qubits {
            let e = self.noise_qubits.entry(q).or_default();
            if a.is_some() {
                e.0 = a;
            }
            if b.is_some() {
                e.1 = b;
            }
        }
        self
    }

    fn has_noise(&self) -> bool {
        self.noise_p01.is_some() || self.noise_p10.is_some() || !self.noise_qubits.is_empty()
    }

    fn noise_model(&self, fallback: f64) -> Result<ReadoutNoiseModel> {
        if let Some(&q) = self.noise_qubits.keys().find(|&&q| q >= ANSATZ_QUBITS) {
            return Err(Error::Validation(format!("noise.q{q} is outside the {ANSATZ_QUBITS}-qubit register")));
        }
        let qubits = (0..ANSATZ_QUBITS)
            .map(|q| {
                let (a, b) = self.noise_qubits.get(&q).copied().unwrap_or_default();
                ReadoutError {
                    p01: a.or(self.noise_p01).unwrap_or(fallback),
                    p10: b.or(self.noise_p10).unwrap_or(fallback),
                }
            })
            .collect();
        ReadoutNoiseModel::new(qubits)
    }

    /// Applies defaults. `default_grid` depends on the subcommand;
    /// `demo_noise` supplies readout noise when none is configured.
    pub fn resolve(&self, default_grid: usize, demo_noise: bool) -> Result<RunConfig> {
        let lmg = LmgParams::new(
            self.n.unwrap_or(3),
            self.epsilon.unwrap_or(1.0),
            self.v.unwrap_or(0.5),
            self.w.unwrap_or(0.0),
        )?;
        let noise = if self.has_noise() {
            Some(self.noise_model(0.0)?)
        } else if demo_noise {
            Some(self.noise_model(DEFAULT_DEMO_NOISE)?)
        } else {
            None
        };
        let mitigation = self.mitigate.unwrap_or(false);
        if mitigation && noise.is_none() {
            return Err(Error::Validation("--mitigate needs a readout noise model".into()));
        }
        let estimator = EstimatorConfig {
            mode: self.mode.unwrap_or(EstimatorMode::Exact),
            shots: self.shots.unwrap_or(DEFAULT_SHOTS),
            seed: self.seed.unwrap_or(0),
            noise,
            mitigation,
        };
        estimator.validate()?;
        let grid = self.grid.unwrap_or(default_grid);
        if grid == 0 {
            return Err(Error::Validation("grid must be positive".into()));
        }
        Ok(RunConfig {
            lmg,
            estimator,
            grid,
            seeds: self.seeds.unwrap_or(DEFAULT_DEMO_SEEDS),
            padding: self.padding.unwrap_or(Padding::Penalty),
            out: self.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        })
    }
}

/// Fully resolved settings, echoed into every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub lmg: LmgParams,
    pub estimator: EstimatorConfig,
    /// Points per axis: multistart grid for `spectrum`, resolution for `sweep`.
    pub grid: usize,
    /// Seeds per point in `noise-demo`.
    pub seeds: usize,
    pub padding: Padding,
    pub out: PathBuf,
}
