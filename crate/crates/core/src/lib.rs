//! Excitation spectra of the Lipkin-Meshkov-Glick model by variance
//! minimisation on a simulated two-qubit device.
//!
//! The pipeline: build the quasispin Hamiltonian ([`lmg`]), encode it as a
//! Pauli sum on `⌈log₂(N+1)⌉` qubits ([`encoder`], [`pauli`]), then minimise
//! `σ² = ⟨H²⟩ − ⟨H⟩²` over a two-parameter ansatz ([`simulator`], [`vqe`]),
//! optionally with shot noise and readout errors ([`noise`]).

pub mod cli;
pub mod config;
pub mod encoder;
pub mod error;
pub mod landscape;
pub mod lmg;
pub mod noise;
pub mod pauli;
pub mod seed;
pub mod simulator;
pub mod vqe;

pub use encoder::{decompose, spectrum, DenseHermitian, PaddingPolicy};
pub use error::{Error, Result};
pub use lmg::{build_fock_sector, build_quasispin, LmgParams};
pub use noise::{CalibrationMatrix, ReadoutNoiseModel};
pub use pauli::{Pauli, PauliString, PauliSum, PauliTerm, Phase};
pub use simulator::{AnsatzParams, Gate, ShotHistogram, Statevector};
pub use vqe::{EstimatorConfig, EstimatorMode, SpectrumReport, VqeResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
