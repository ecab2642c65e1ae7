//! Statevector simulation of the two-parameter ansatz, exact expectation
//! values, and seeded shot sampling.
//!
//! Basis indices put qubit 0 in the most-significant bit, matching the Pauli
//! string convention.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::seed::{self, SimRng};

/// Number of qubits the ansatz acts on.
pub const ANSATZ_QUBITS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// `[[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`
    Ry { theta: f64, target: usize },
    Cnot { control: usize, target: usize },
    H(usize),
    Sdg(usize),
    X(usize),
}

impl Gate {
    fn check(&self, n_qubits: usize) -> Result<()> {
        let out_of_range = |q: usize| Error::Index(format!("qubit {q} on a {n_qubits}-qubit register"));
        match *self {
            Gate::Cnot { control, target } => {
                if control >= n_qubits {
                    return Err(out_of_range(control));
                }
                if target >= n_qubits {
                    return Err(out_of_range(target));
                }
                if control == target {
                    return Err(Error::Index(format!("CNOT control and target are both {control}")));
                }
            }
            Gate::Ry { target, .. } | Gate::H(target) | Gate::Sdg(target) | Gate::X(target) => {
                if target >= n_qubits {
                    return Err(out_of_range(target));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    pub fn zero(n_qubits: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Statevector { n_qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() < 2 || !amps.len().is_power_of_two() {
            return Err(Error::Validation(format!("{} amplitudes is not 2^n with n ≥ 1", amps.len())));
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Validation(format!("state norm² is {norm}, expected 1")));
        }
        Ok(Statevector {
            n_qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `|⟨self|other⟩|²`
    pub fn fidelity(&self, other: &[Complex64]) -> f64 {
        self.amps
            .iter()
            .zip(other)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }

    fn bit(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn apply_1q(&mut self, target: usize, u: [[Complex64; 2]; 2]) {
        let b = self.bit(target);
        for i in 0..self.amps.len() {
            if i & b == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | b]);
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[i | b] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.check(self.n_qubits)?;
        let re = |x: f64| Complex64::new(x, 0.0);
        match *gate {
            Gate::Ry { theta, target } => {
                let (s, c) = (theta / 2.0).sin_cos();
                self.apply_1q(target, [[re(c), re(-s)], [re(s), re(c)]]);
            }
            Gate::H(target) => {
                let h = re(FRAC_1_SQRT_2);
                self.apply_1q(target, [[h, h], [h, -h]]);
            }
            Gate::Sdg(target) => {
                let b = self.bit(target);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & b != 0 {
                        *a *= Complex64::new(0.0, -1.0);
                    }
                }
            }
            Gate::X(target) => {
                let b = self.bit(target);
                for i in 0..self.amps.len() {
                    if i & b == 0 {
                        self.amps.swap(i, i | b);
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (cb, tb) = (self.bit(control), self.bit(target));
                for i in 0..self.amps.len() {
                    if i & cb != 0 && i & tb == 0 {
                        self.amps.swap(i, i | tb);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<()> {
        gates.iter().try_for_each(|g| self.apply(g))
    }

    /// Exact `⟨ψ|P|ψ⟩` for a single string.
    pub fn string_expectation(&self, p: &PauliString) -> Result<f64> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::Length {
                expected: self.n_qubits,
                found: p.n_qubits(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, a) in self.amps.iter().enumerate() {
            let (phase, out) = p.apply_to_basis(k);
            acc += self.amps[out].conj() * phase.to_complex() * a;
        }
        Ok(acc.re)
    }
}

/// Applies `gates` left to right to `|0…0⟩`.
pub fn run(circuit: &[Gate], n_qubits: usize) -> Result<Statevector> {
    let mut state = Statevector::zero(n_qubits);
    state.apply_all(circuit)?;
    Ok(state)
}

/// Exact `⟨ψ|O|ψ⟩`; any imaginary residue is discarded.
pub fn expectation(state: &Statevector, obs: &PauliSum) -> Result<f64> {
    if obs.n_qubits() != state.n_qubits() {
        return Err(Error::Length {
            expected: state.n_qubits(),
            found: obs.n_qubits(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for t in obs.terms() {
        let mut term = Complex64::new(0.0, 0.0);
        for (k, a) in state.amps.iter().enumerate() {
            let (phase, out) = t.string.apply_to_basis(k);
            term += state.amps[out].conj() * phase.to_complex() * a;
        }
        acc += t.coeff * term;
    }
    Ok(acc.re)
}

/// The two ansatz angles, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AnsatzParams {
    pub theta1: f64,
    pub theta2: f64,
}

impl AnsatzParams {
    pub fn new(theta1: f64, theta2: f64) -> Self {
        AnsatzParams { theta1, theta2 }
    }

    pub fn from_slice(x: &[f64]) -> Self {
        AnsatzParams::new(x[0], x[1])
    }

    pub fn to_array(self) -> [f64; 2] {
        [self.theta1, self.theta2]
    }

    /// Both angles reduced to `[0, 2π)`.
    pub fn wrapped(self) -> Self {
        let w = |t: f64| {
            let r = t.rem_euclid(TAU);
            if r >= TAU {
                0.0
            } else {
                r
            }
        };
        AnsatzParams::new(w(self.theta1), w(self.theta2))
    }

    /// Real amplitudes `(|00⟩, |01⟩, |10⟩, |11⟩)` produced by the ansatz.
    pub fn amplitudes(self) -> [f64; 4] {
        let (s1, c1) = (self.theta1 / 2.0).sin_cos();
        let (s2, c2) = (self.theta2 / 2.0).sin_cos();
        [c1 * c2, -s1 * s2, c1 * s2, s1 * c2]
    }

    /// Angles whose ansatz state equals `target` up to a global phase, if the
    /// target lies on the ansatz manifold.
    pub fn preparing(target: &[Complex64]) -> Option<AnsatzParams> {
        if target.len() != 4 {
            return None;
        }
        let norm = target.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        let pivot = target.iter().copied().max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))?;
        let unphase = pivot.conj() / pivot.norm();
        let a: Vec<f64> = target.iter().map(|z| (z * unphase).re / norm).collect();

        let (r_even, r_odd) = (a[0].hypot(a[2]), a[1].hypot(a[3]));
        let (half1, half2) = if r_even >= r_odd {
            let half2 = a[2].atan2(a[0]);
            let (s2, c2) = half2.sin_cos();
            let s1 = a[3] * c2 - a[1] * s2;
            (s1.atan2(r_even), half2)
        } else {
            let half2 = (-a[1]).atan2(a[3]);
            let (s2, c2) = half2.sin_cos();
            let c1 = a[0] * c2 + a[2] * s2;
            (r_odd.atan2(c1), half2)
        };
        let params = AnsatzParams::new(2.0 * half1, 2.0 * half2).wrapped();
        let state = run(&build_ansatz(params), ANSATZ_QUBITS).ok()?;
        let fid = state.fidelity(target) / (norm * norm);
        (fid > 1.0 - 1e-10).then_some(params)
    }
}

/// `Ry(θ₁)` on qubit 1, `CNOT(1 → 0)`, `Ry(θ₂)` on qubit 0.
///
/// With `θ₁ ∈ {0, 2π}` the state spans `{|00⟩, |10⟩}`, with `θ₁ = π` it spans
/// `{|01⟩, |11⟩}`; both parity blocks of a block-diagonal two-qubit
/// Hamiltonian are reachable.
pub fn build_ansatz(params: AnsatzParams) -> Vec<Gate> {
    vec![
        Gate::Ry {
            theta: params.theta1,
            target: 1,
        },
        Gate::Cnot { control: 1, target: 0 },
        Gate::Ry {
            theta: params.theta2,
            target: 0,
        },
    ]
}

pub fn ansatz_state(params: AnsatzParams) -> Statevector {
    run(&build_ansatz(params), ANSATZ_QUBITS).expect("ansatz gates are in range")
}

/// Basis change mapping the eigenbasis of `p` onto the computational basis:
/// `H` for `X`, `S†` then `H` for `Y`, nothing for `Z` and `I`.
pub fn measurement_rotations(p: &PauliString) -> Vec<Gate> {
    let mut gates = Vec::new();
    for (q, &letter) in p.letters().iter().enumerate() {
        match letter {
            Pauli::X => gates.push(Gate::H(q)),
            Pauli::Y => gates.extend([Gate::Sdg(q), Gate::H(q)]),
            Pauli::Z | Pauli::I => {}
        }
    }
    gates
}

/// Measured bitstring counts, indexed by basis state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotHistogram {
    n_qubits: usize,
    counts: Vec<u64>,
    shots: u64,
}

impl ShotHistogram {
    pub fn empty(n_qubits: usize) -> Self {
        ShotHistogram {
            n_qubits,
            counts: vec![0; 1 << n_qubits],
            shots: 0,
        }
    }

    pub fn from_counts(n_qubits: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != 1 << n_qubits {
            return Err(Error::Length {
                expected: 1 << n_qubits,
                found: counts.len(),
            });
        }
        let shots = counts.iter().sum();
        Ok(ShotHistogram {
            n_qubits,
            counts,
            shots,
        })
    }

    pub fn record(&mut self, index: usize, times: u64) {
        self.counts[index] += times;
        self.shots += times;
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, bitstring: &str) -> u64 {
        usize::from_str_radix(bitstring, 2)
            .ok()
            .filter(|_| bitstring.len() == self.n_qubits)
            .and_then(|i| self.counts.get(i).copied())
            .unwrap_or(0)
    }

    pub fn bitstring(&self, index: usize) -> String {
        format!("{index:0width$b}", width = self.n_qubits)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.shots.max(1) as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }

    /// `(bitstring, count)` for every observed outcome.
    pub fn nonzero(&self) -> impl Iterator<Item = (String, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (self.bitstring(i), c))
    }
}

/// Draws `shots` outcomes from `|amp|²` by inverting the cumulative distribution.
pub fn sample(state: &Statevector, shots: u64, rng: &mut SimRng) -> ShotHistogram {
    let mut cdf = state.probabilities();
    for i in 1..cdf.len() {
        cdf[i] += cdf[i - 1];
    }
    let last = cdf.len() - 1;
    let mut hist = ShotHistogram::empty(state.n_qubits());
    for _ in 0..shots {
        let u: f64 = rng.random();
        let idx = cdf.partition_point(|&c| c <= u).min(last);
        hist.record(idx, 1);
    }
    hist
}

/// `(−1)^parity` of the bits selected by `mask`.
fn parity_sign(index: usize, mask: usize) -> f64 {
    if (index & mask).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Mean over shots of the ±1 parity on the support of `p`.
pub fn parity_mean(hist: &ShotHistogram, p: &PauliString) -> f64 {
    parity_expectation(&hist.frequencies(), p)
}

/// Parity expectation under a probability vector over basis states.
pub fn parity_expectation(probs: &[f64], p: &PauliString) -> f64 {
    let mask = p.support_mask();
    probs.iter().enumerate().map(|(i, &q)| q * parity_sign(i, mask)).sum()
}

/// Samples the measurement of `p` on `state` after rotating into its eigenbasis.
pub fn sample_pauli(state: &Statevector, p: &PauliString, shots: u64, rng: &mut SimRng) -> Result<ShotHistogram> {
    if p.n_qubits() != state.n_qubits() {
        return Err(Error::Length {
            expected: state.n_qubits(),
            found: p.n_qubits(),
        });
    }
    if p.is_identity() {
        return Err(Error::Contract("identity strings are not measured".into()));
    }
    let mut rotated = state.clone();
    rotated.apply_all(&measurement_rotations(p))?;
    Ok(sample(&rotated, shots, rng))
}

/// Shot estimate of `⟨P⟩` on the ansatz state.
pub fn measure_pauli(params: AnsatzParams, p: &PauliString, shots: u64, seed: u64) -> Result<f64> {
    let state = ansatz_state(params);
    let hist = sample_pauli(&state, p, shots, &mut seed::rng(seed))?;
    Ok(parity_mean(&hist, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_state(s: &Statevector, want: &[f64]) {
        for (a, w) in s.amplitudes().iter().zip(want) {
            assert!((a - c(*w)).norm() < 1e-12, "{:?} vs {want:?}", s.amplitudes());
        }
    }

    #[test]
    fn empty_circuit_is_zero_state() {
        assert_state(&run(&[], 3).unwrap(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn hadamard_and_bell() {
        let r = FRAC_1_SQRT_2;
        assert_state(&run(&[Gate::H(0)], 1).unwrap(), &[r, r]);
        let bell = run(
            &[
                Gate::Ry {
                    theta: PI / 2.0,
                    target: 1,
                },
                Gate::Cnot { control: 1, target: 0 },
            ],
            2,
        )
        .unwrap();
        assert_state(&bell, &[r, 0.0, 0.0, r]);
    }

    #[test]
    fn ansatz_corner_cases() {
        assert_state(&ansatz_state(AnsatzParams::new(0.0, 0.0)), &[1.0, 0.0, 0.0, 0.0]);
        assert_state(&ansatz_state(AnsatzParams::new(PI, 0.0)), &[0.0, 0.0, 0.0, 1.0]);
        let t = 1.234;
        let (s, co) = (t / 2.0f64).sin_cos();
        assert_state(&ansatz_state(AnsatzParams::new(0.0, t)), &[co, 0.0, s, 0.0]);
    }

    #[test]
    fn closed_form_amplitudes_match_simulation() {
        for &(a, b) in &[(0.3, 2.1), (4.0, -1.0), (PI, PI / 3.0), (6.0, 5.5)] {
            let p = AnsatzParams::new(a, b);
            assert_state(&ansatz_state(p), &p.amplitudes());
        }
    }

    #[test]
    fn gate_index_errors() {
        assert!(run(&[Gate::H(2)], 2).is_err());
        assert!(run(&[Gate::Cnot { control: 0, target: 0 }], 2).is_err());
        assert!(run(&[Gate::Cnot { control: 3, target: 0 }], 2).is_err());
    }

    #[test]
    fn sdg_h_rotates_y_to_z() {
        // |+i⟩ = (|0⟩ + i|1⟩)/√2 is the +1 eigenstate of Y.
        let r = FRAC_1_SQRT_2;
        let mut s = Statevector::from_amplitudes(vec![c(r), Complex64::new(0.0, r)]).unwrap();
        s.apply_all(&measurement_rotations(&"Y".parse().unwrap())).unwrap();
        assert!((s.amplitudes()[0].norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identity_and_zero_state_expectations() {
        let h = PauliSum::from_real(&[(1.0, "II")]).unwrap();
        let s = ansatz_state(AnsatzParams::new(0.7, 2.9));
        assert!((expectation(&s, &h).unwrap() - 1.0).abs() < 1e-12);
        let wrong = PauliSum::from_real(&[(1.0, "I")]).unwrap();
        assert!(expectation(&s, &wrong).is_err());
    }

    #[test]
    fn deterministic_measurements() {
        let ten = Statevector::from_amplitudes(vec![c(0.0), c(0.0), c(1.0), c(0.0)]).unwrap();
        let zi: PauliString = "ZI".parse().unwrap();
        for shots in [1, 10, 1000] {
            let hist = sample_pauli(&ten, &zi, shots, &mut seed::rng(3)).unwrap();
            assert_eq!(parity_mean(&hist, &zi), -1.0);
        }
        let r = FRAC_1_SQRT_2;
        let bell = Statevector::from_amplitudes(vec![c(r), c(0.0), c(0.0), c(r)]).unwrap();
        let zz: PauliString = "ZZ".parse().unwrap();
        let hist = sample_pauli(&bell, &zz, 5000, &mut seed::rng(9)).unwrap();
        assert_eq!(parity_mean(&hist, &zz), 1.0);
    }

    #[test]
    fn identity_string_is_a_contract_violation() {
        let r = measure_pauli(AnsatzParams::default(), &"II".parse().unwrap(), 10, 0);
        assert!(matches!(r, Err(Error::Contract(_))));
    }

    #[test]
    fn x_on_zero_state_averages_to_zero() {
        let shots = 20_000;
        let m = measure_pauli(AnsatzParams::new(0.0, 0.0), &"XI".parse().unwrap(), shots, 2024).unwrap();
        assert!(m.abs() < 3.0 / (shots as f64).sqrt(), "{m}");
    }

    #[test]
    fn same_seed_same_histogram() {
        let s = ansatz_state(AnsatzParams::new(1.0, 2.0));
        let a = sample(&s, 1000, &mut seed::rng(77));
        let b = sample(&s, 1000, &mut seed::rng(77));
        assert_eq!(a, b);
        assert_eq!(a.shots(), 1000);
        assert_eq!(a.counts().iter().sum::<u64>(), 1000);
    }

    #[test]
    fn histogram_lookup() {
        let h = ShotHistogram::from_counts(2, vec![5, 0, 3, 2]).unwrap();
        assert_eq!(h.count("10"), 3);
        assert_eq!(h.count("1"), 0);
        assert_eq!(h.shots(), 10);
        let seen: Vec<_> = h.nonzero().collect();
        assert_eq!(seen, vec![("00".to_string(), 5), ("10".to_string(), 3), ("11".to_string(), 2)]);
    }

    #[test]
    fn wrapping() {
        let p = AnsatzParams::new(-0.5, 7.0).wrapped();
        assert!((p.theta1 - (TAU - 0.5)).abs() < 1e-12);
        assert!((p.theta2 - (7.0 - TAU)).abs() < 1e-12);
    }

    #[test]
    fn preparing_rejects_states_off_the_manifold() {
        // (|00⟩ + |01⟩)/√2 needs c1c2 = −s1s2, impossible with c1s2 = s1c2 = 0.
        let r = FRAC_1_SQRT_2;
        assert!(AnsatzParams::preparing(&[c(r), c(r), c(0.0), c(0.0)]).is_none());
        let p = AnsatzParams::new(2.2, 0.9);
        let target: Vec<Complex64> = p.amplitudes().iter().map(|&a| Complex64::new(0.0, -a)).collect();
        let found = AnsatzParams::preparing(&target).unwrap();
        assert!(ansatz_state(found).fidelity(&target) > 1.0 - 1e-12);
    }
}
