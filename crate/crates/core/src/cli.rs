//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when `spectrum` finds fewer levels than the
//! Hilbert-space dimension (the report is still written), 1 on usage or I/O
//! errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{Overrides, Padding, RunConfig, DEFAULT_SWEEP_RESOLUTION};
use crate::encoder::{decompose, spectrum, DenseHermitian, PaddingPolicy};
use crate::landscape;
use crate::lmg::build_quasispin;
use crate::pauli::PauliSum;
use crate::seed;
use crate::simulator::AnsatzParams;
use crate::vqe::{self, Estimator, EstimatorConfig, EstimatorMode, DEFAULT_GRID};
use crate::VERSION;

#[derive(Debug, Parser)]
#[command(name = "lmg-variance", version, about = "Variance-minimising VQE for the Lipkin-Meshkov-Glick model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the quasispin matrix and its Pauli decomposition.
    Model,
    /// Decompose a matrix file into a Pauli sum.
    Encode {
        #[arg(long)]
        input: PathBuf,
    },
    /// Evaluate the variance on a grid over [0, 2π)² and write CSV.
    Sweep,
    /// Recover the spectrum by multistart variance minimisation.
    Spectrum,
    /// Compare raw and readout-mitigated energies at the exact eigenstates.
    NoiseDemo,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Exact,
    Shots,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PaddingArg {
    Penalty,
    Zero,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Key-value config file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub v: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub w: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Shots per measured Pauli string.
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Points per axis (multistart grid for `spectrum`, resolution for `sweep`).
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Seeds per eigenstate in `noise-demo`.
    #[arg(long, global = true)]
    pub seeds: Option<usize>,
    #[arg(long = "noise-p01", global = true)]
    pub noise_p01: Option<f64>,
    #[arg(long = "noise-p10", global = true)]
    pub noise_p10: Option<f64>,
    #[arg(long, global = true)]
    pub mitigate: bool,
    #[arg(long, global = true, value_enum)]
    pub padding: Option<PaddingArg>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            n: self.n,
            epsilon: self.epsilon,
            v: self.v,
            w: self.w,
            mode: self.mode.map(|m| match m {
                ModeArg::Exact => EstimatorMode::Exact,
                ModeArg::Shots => EstimatorMode::Shots,
            }),
            shots: self.shots,
            seed: self.seed,
            grid: self.grid,
            seeds: self.seeds,
            mitigate: self.mitigate.then_some(true),
            padding: self.padding.map(|p| match p {
                PaddingArg::Penalty => Padding::Penalty,
                PaddingArg::Zero => Padding::Zero,
            }),
            noise_p01: self.noise_p01,
            noise_p10: self.noise_p10,
            noise_qubits: Default::default(),
            out: self.out.clone(),
        }
    }

    pub fn resolve(&self, command: &Command) -> anyhow::Result<RunConfig> {
        let base = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
                Overrides::parse_file(&text).with_context(|| format!("parsing config {}", path.display()))?
            }
            None => Overrides::default(),
        };
        let merged = base.overlay(self.overrides());
        let (grid, demo_noise) = match command {
            Command::Sweep => (DEFAULT_SWEEP_RESOLUTION, false),
            Command::NoiseDemo => (DEFAULT_GRID, true),
            _ => (DEFAULT_GRID, false),
        };
        let mut cfg = merged.resolve(grid, demo_noise)?;
        if matches!(command, Command::NoiseDemo) {
            cfg.estimator.mode = EstimatorMode::Shots;
        }
        Ok(cfg)
    }
}

/// Parses `args` and runs the command, printing errors to stderr.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Runs a parsed command and returns its exit code.
pub fn execute(cli: &Cli) -> anyhow::Result<u8> {
    let cfg = cli.flags.resolve(&cli.command)?;
    fs::create_dir_all(&cfg.out).with_context(|| format!("creating output directory {}", cfg.out.display()))?;
    match &cli.command {
        Command::Model => {
            let out = model(&cfg)?;
            write(&cfg.out.join("hamiltonian.mat"), &out.matrix_file)?;
            write(&cfg.out.join("hamiltonian.pauli"), &out.pauli_file)?;
            print!("{}", out.summary);
            Ok(0)
        }
        Command::Encode { input } => {
            let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let h = DenseHermitian::parse_text(&text).with_context(|| format!("parsing {}", input.display()))?;
            let out = encode(&cfg, &h)?;
            write(&cfg.out.join("encoded.pauli"), &out.pauli_file)?;
            print!("{}", out.summary);
            Ok(0)
        }
        Command::Sweep => {
            let out = sweep(&cfg)?;
            write(&cfg.out.join("sweep.csv"), &out.csv)?;
            print!("{}", out.summary);
            Ok(0)
        }
        Command::Spectrum => {
            let out = spectrum_report(&cfg)?;
            write(&cfg.out.join("spectrum.json"), &out.json)?;
            print!("{}", out.table);
            Ok(if out.report.complete { 0 } else { 2 })
        }
        Command::NoiseDemo => {
            let out = noise_demo(&cfg)?;
            write(&cfg.out.join("noise_demo.json"), &out.json)?;
            print!("{}", out.table);
            Ok(0)
        }
    }
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

/// `#`-prefixed lines carrying the version and effective configuration.
pub fn config_header(cfg: &RunConfig) -> String {
    format!(
        "# lmg-variance {VERSION}\n# config: {}\n",
        serde_json::to_string(cfg).expect("config serialises")
    )
}

fn padding_policy(cfg: &RunConfig, h: &DenseHermitian) -> PaddingPolicy {
    match cfg.padding {
        Padding::Penalty => PaddingPolicy::default_for(h),
        Padding::Zero => PaddingPolicy::Zero,
    }
}

/// The encoded quasispin Hamiltonian for `cfg`.
pub fn encoded_hamiltonian(cfg: &RunConfig) -> anyhow::Result<(DenseHermitian, PauliSum)> {
    let h = build_quasispin(&cfg.lmg)?;
    let sum = decompose(&h, padding_policy(cfg, &h))?;
    Ok((h, sum))
}

fn two_qubit_hamiltonian(cfg: &RunConfig) -> anyhow::Result<(DenseHermitian, PauliSum)> {
    let (h, sum) = encoded_hamiltonian(cfg)?;
    if sum.n_qubits() != crate::simulator::ANSATZ_QUBITS {
        bail!(
            "N = {} encodes on {} qubit(s); the ansatz needs exactly 2 (use N = 2 or 3)",
            cfg.lmg.n,
            sum.n_qubits()
        );
    }
    Ok((h, sum))
}

fn format_levels(values: &[f64]) -> String {
    values.iter().map(|e| format!("{e:.6}")).collect::<Vec<_>>().join(", ")
}

pub struct EncodeOutput {
    pub sum: PauliSum,
    pub pauli_file: String,
    pub summary: String,
}

pub fn encode(cfg: &RunConfig, h: &DenseHermitian) -> anyhow::Result<EncodeOutput> {
    let sum = decompose(h, padding_policy(cfg, h))?;
    let pauli_file = format!("{}{}", config_header(cfg), sum.to_text()?);
    let mut summary = format!("{} qubit(s), {} term(s)\n", sum.n_qubits(), sum.len());
    for t in sum.terms() {
        let _ = writeln!(summary, "  {:>12.6} {}", t.coeff.re, t.string);
    }
    let _ = writeln!(summary, "exact spectrum: {}", format_levels(&spectrum(h)));
    Ok(EncodeOutput {
        sum,
        pauli_file,
        summary,
    })
}

pub struct ModelOutput {
    pub matrix: DenseHermitian,
    pub sum: PauliSum,
    pub matrix_file: String,
    pub pauli_file: String,
    pub summary: String,
}

pub fn model(cfg: &RunConfig) -> anyhow::Result<ModelOutput> {
    let h = build_quasispin(&cfg.lmg)?;
    let enc = encode(cfg, &h)?;
    Ok(ModelOutput {
        matrix_file: format!("{}{}", config_header(cfg), h.to_text()),
        pauli_file: enc.pauli_file,
        summary: enc.summary,
        sum: enc.sum,
        matrix: h,
    })
}

pub struct SweepOutput {
    pub grid: landscape::SweepGrid,
    pub csv: String,
    pub summary: String,
}

pub fn sweep(cfg: &RunConfig) -> anyhow::Result<SweepOutput> {
    if cfg.grid < 2 {
        bail!("sweep resolution must be at least 2 per axis");
    }
    let (_, h) = two_qubit_hamiltonian(cfg)?;
    let est = Estimator::new(&h, &cfg.estimator)?;
    let grid = landscape::sweep(&est, cfg.grid)?;
    let csv = format!("{}{}", config_header(cfg), grid.to_csv());
    let mut summary = format!(
        "{0}×{0} grid, minimum variance {1:.3e}, {2} grid-local minima\n",
        cfg.grid,
        grid.min_value(),
        grid.local_minima().len()
    );
    if cfg.estimator.mode == EstimatorMode::Exact {
        let refined = grid.refined_minima(&est)?;
        let energies: Vec<f64> = refined.iter().map(|l| l.energy).collect();
        let _ = writeln!(summary, "{} refined minima at energies {}", refined.len(), format_levels(&energies));
    }
    Ok(SweepOutput { grid, csv, summary })
}

const ORDINALS: [&str; 4] = ["Ground", "1st", "2nd", "3rd"];

fn level_label(k: usize) -> String {
    ORDINALS.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("{k}th"))
}

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub label: String,
    pub exact: f64,
    pub vqe: Option<f64>,
    pub deviation: Option<f64>,
    pub variance: Option<f64>,
    pub theta: Option<AnsatzParams>,
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
struct SpectrumJson<'a> {
    version: &'static str,
    config: &'a RunConfig,
    mode: EstimatorMode,
    exact_eigenvalues: &'a [f64],
    rows: &'a [SpectrumRow],
    report: &'a vqe::SpectrumReport,
}

pub struct SpectrumOutput {
    pub exact: Vec<f64>,
    pub rows: Vec<SpectrumRow>,
    pub report: vqe::SpectrumReport,
    pub json: String,
    pub table: String,
}

/// Pairs each exact eigenvalue with the nearest recovered level.
pub fn spectrum_rows(exact: &[f64], report: &vqe::SpectrumReport) -> Vec<SpectrumRow> {
    exact
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let nearest = report
                .levels
                .iter()
                .min_by(|a, b| (a.energy - e).abs().total_cmp(&(b.energy - e).abs()))
                .filter(|l| (l.energy - e).abs() <= report.dedup_radius * 5.0);
            SpectrumRow {
                label: level_label(k),
                exact: e,
                vqe: nearest.map(|l| l.energy),
                deviation: nearest.map(|l| (l.energy - e).abs()),
                variance: nearest.map(|l| l.variance),
                theta: nearest.map(|l| l.theta),
                seed: nearest.map(|l| l.seed),
            }
        })
        .collect()
}

pub fn spectrum_report(cfg: &RunConfig) -> anyhow::Result<SpectrumOutput> {
    let (matrix, h) = two_qubit_hamiltonian(cfg)?;
    let exact = spectrum(&matrix);
    let report = vqe::find_spectrum(&h, &cfg.estimator, cfg.grid)?;
    let rows = spectrum_rows(&exact, &report);
    let json = serde_json::to_string_pretty(&SpectrumJson {
        version: VERSION,
        config: cfg,
        mode: cfg.estimator.mode,
        exact_eigenvalues: &exact,
        rows: &rows,
        report: &report,
    })? + "\n";

    let mut table = String::new();
    let _ = writeln!(table, "{:<10} {:>12} {:>12} {:>10} {:>11}", "Eigenstate", "Exact", "VQE", "|dev|", "variance");
    for r in &rows {
        let opt = |v: Option<f64>, p: usize| v.map_or_else(|| "-".to_string(), |x| format!("{x:.p$}"));
        let _ = writeln!(
            table,
            "{:<10} {:>12.3} {:>12} {:>10} {:>11}",
            r.label,
            r.exact,
            opt(r.vqe, 3),
            opt(r.deviation, 4),
            r.variance.map_or_else(|| "-".to_string(), |v| format!("{v:.2e}"))
        );
    }
    let _ = writeln!(
        table,
        "{} of {} runs accepted, {} distinct level(s){}",
        report.accepted_runs,
        report.runs,
        report.levels.len(),
        if report.complete { "" } else { " (incomplete)" }
    );
    Ok(SpectrumOutput {
        exact,
        rows,
        report,
        json,
        table,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NoiseDemoRow {
    pub label: String,
    pub exact: f64,
    pub theta: AnsatzParams,
    pub mean_abs_dev_raw: f64,
    pub mean_abs_dev_mitigated: f64,
    pub improved: bool,
}

#[derive(Debug, Serialize)]
struct NoiseDemoJson<'a> {
    version: &'static str,
    config: &'a RunConfig,
    rows: &'a [NoiseDemoRow],
}

pub struct NoiseDemoOutput {
    pub rows: Vec<NoiseDemoRow>,
    pub json: String,
    pub table: String,
}

/// Shot-mode energy at each exact eigenstate point with readout noise,
/// with and without mitigation, over `cfg.seeds` seeds. Seed `s` uses
/// `derive(cfg.seed, s)` for both variants, so they see identical shots.
pub fn noise_demo_rows(h: &PauliSum, base: &EstimatorConfig, seeds: usize) -> anyhow::Result<Vec<NoiseDemoRow>> {
    let Some(model) = base.noise.clone() else {
        bail!("noise demo needs a readout noise model");
    };
    let mk = |mitigation| EstimatorConfig {
        mode: EstimatorMode::Shots,
        mitigation,
        noise: Some(model.clone()),
        ..base.clone()
    };
    let raw = Estimator::new(h, &mk(false))?;
    let mitigated = Estimator::new(h, &mk(true))?;
    let points = vqe::eigenstate_points(h)?;
    let mut rows = Vec::new();
    for (k, (exact, theta)) in points.into_iter().enumerate() {
        let (mut dev_raw, mut dev_mit) = (0.0, 0.0);
        for s in 0..seeds {
            let sd = seed::derive(base.seed, s as u64);
            dev_raw += (raw.energy(theta, sd)? - exact).abs();
            dev_mit += (mitigated.energy(theta, sd)? - exact).abs();
        }
        let n = seeds.max(1) as f64;
        let (dev_raw, dev_mit) = (dev_raw / n, dev_mit / n);
        rows.push(NoiseDemoRow {
            label: level_label(k),
            exact,
            theta,
            mean_abs_dev_raw: dev_raw,
            mean_abs_dev_mitigated: dev_mit,
            improved: dev_mit < dev_raw,
        });
    }
    Ok(rows)
}

pub fn noise_demo(cfg: &RunConfig) -> anyhow::Result<NoiseDemoOutput> {
    let (_, h) = two_qubit_hamiltonian(cfg)?;
    let rows = noise_demo_rows(&h, &cfg.estimator, cfg.seeds)?;
    let json = serde_json::to_string_pretty(&NoiseDemoJson {
        version: VERSION,
        config: cfg,
        rows: &rows,
    })? + "\n";
    let mut table = String::new();
    let _ = writeln!(table, "{:<10} {:>10} {:>14} {:>14}", "Eigenstate", "Exact", "raw |dev|", "mitigated |dev|");
    for r in &rows {
        let _ = writeln!(
            table,
            "{:<10} {:>10.3} {:>14.4} {:>14.4}",
            r.label, r.exact, r.mean_abs_dev_raw, r.mean_abs_dev_mitigated
        );
    }
    Ok(NoiseDemoOutput { rows, json, table })
}
