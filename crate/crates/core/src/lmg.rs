//! Lipkin-Meshkov-Glick Hamiltonians.
//!
//! Two independent constructions are provided: the `(N+1)`-dimensional
//! quasispin matrix, and the Hamiltonian restricted to the `N`-particle sector
//! of the `2N`-mode Fock space. The quasispin spectrum is contained in the
//! Fock-sector spectrum, which makes the latter an oracle for the former.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::encoder::DenseHermitian;
use crate::error::{Error, Result};

/// Largest particle count accepted by [`build_fock_sector`].
pub const MAX_FOCK_PARTICLES: usize = 6;

/// Physical inputs. Energies are in units of `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LmgParams {
    pub n: usize,
    pub epsilon: f64,
    pub v: f64,
    pub w: f64,
}

impl Default for LmgParams {
    fn default() -> Self {
        LmgParams {
            n: 3,
            epsilon: 1.0,
            v: 0.5,
            w: 0.0,
        }
    }
}

impl LmgParams {
    pub fn new(n: usize, epsilon: f64, v: f64, w: f64) -> Result<Self> {
        let p = LmgParams { n, epsilon, v, w };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Validation("particle count N must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::Validation(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !self.v.is_finite() || !self.w.is_finite() {
            return Err(Error::Validation("V and W must be finite".into()));
        }
        Ok(())
    }
}

/// The `j = N/2` multiplet, ordered by ascending `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasispinBasis {
    pub j: f64,
    pub m_values: Vec<f64>,
}

impl QuasispinBasis {
    pub fn new(n: usize) -> Self {
        let j = n as f64 / 2.0;
        let m_values = (0..=n).map(|k| k as f64 - j).collect();
        QuasispinBasis { j, m_values }
    }

    pub fn dim(&self) -> usize {
        self.m_values.len()
    }

    /// `⟨m+1|J₊|m⟩ = √(j(j+1) − m(m+1))`.
    pub fn raise_element(&self, m: f64) -> f64 {
        (self.j * (self.j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
    }
}

/// `H = εJz − ½V(J₊² + J₋²) + ½W(J₊J₋ + J₋J₊)` in the ascending-`m` basis.
///
/// The pair-scattering term carries a minus sign so that `N = 3, V = 0.5`
/// gives the familiar `−√3/2` couplings. Flipping the sign of `V` is a unitary
/// change of basis (`e^{iπJz/2}`), so the spectrum is unaffected either way.
pub fn build_quasispin(params: &LmgParams) -> Result<DenseHermitian> {
    params.validate()?;
    let basis = QuasispinBasis::new(params.n);
    let dim = basis.dim();
    let jj = basis.j * (basis.j + 1.0);
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for (k, &m) in basis.m_values.iter().enumerate() {
        // J₊J₋ + J₋J₊ = 2(J² − Jz²)
        h[(k, k)] = params.epsilon * m + params.w * (jj - m * m);
        if k + 2 < dim {
            let pair = basis.raise_element(m) * basis.raise_element(m + 1.0);
            h[(k + 2, k)] = -0.5 * params.v * pair;
            h[(k, k + 2)] = -0.5 * params.v * pair;
        }
    }
    DenseHermitian::from_real(&h)
}

/// A single-particle state `(p, σ)` with `p ∈ 1..=N` and `σ ∈ {−1, +1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockMode {
    pub p: usize,
    pub sigma: i8,
}

impl FockMode {
    /// Mode order `(1,−1), (1,+1), (2,−1), …`.
    pub fn index(self) -> usize {
        2 * (self.p - 1) + usize::from(self.sigma > 0)
    }

    pub fn flipped(self) -> FockMode {
        FockMode {
            p: self.p,
            sigma: -self.sigma,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Ladder {
    Create(usize),
    Annihilate(usize),
}

/// Applies a product of ladder operators (rightmost first) to an occupation
/// bitmask. Returns the resulting state with its fermionic sign, or `None`
/// when the product annihilates the state.
fn apply_ladder(ops: &[Ladder], state: u32) -> Option<(f64, u32)> {
    let mut sign = 1.0;
    let mut s = state;
    for op in ops.iter().rev() {
        let (mode, create) = match *op {
            Ladder::Create(m) => (m, true),
            Ladder::Annihilate(m) => (m, false),
        };
        let bit = 1u32 << mode;
        if (s & bit != 0) == create {
            return None;
        }
        if (s & (bit - 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        s ^= bit;
    }
    Some((sign, s))
}

/// Occupation bitmasks of the `N`-particle sector, ascending.
pub fn fock_sector_states(n: usize) -> Vec<u32> {
    (0u32..(1 << (2 * n)))
        .filter(|s| s.count_ones() as usize == n)
        .collect()
}

/// The Hamiltonian on the `C(2N, N)`-dimensional `N`-particle sector:
///
/// `½ε Σ σ a†_{pσ}a_{pσ} + ½V Σ a†_{pσ}a†_{p'σ}a_{p',−σ}a_{p,−σ}
///  + ½W Σ a†_{pσ}a_{p,−σ}a†_{p',−σ}a_{p',σ}`
///
/// The exchange term is written as a product of two one-body scattering
/// operators. Its normal-ordered form `a†_{pσ}a†_{p',−σ}a_{p',σ}a_{p,−σ}`
/// differs from it by `½W·N̂`; see [`fock_exchange_normal_ordered`].
pub fn build_fock_sector(params: &LmgParams) -> Result<DenseHermitian> {
    params.validate()?;
    build_fock_with(params, ExchangeOrdering::ScatteringProduct)
}

/// Same as [`build_fock_sector`] but with the exchange term in normal order,
/// which shifts every level by `−½W·N`.
pub fn fock_exchange_normal_ordered(params: &LmgParams) -> Result<DenseHermitian> {
    params.validate()?;
    build_fock_with(params, ExchangeOrdering::NormalOrdered)
}

#[derive(Clone, Copy)]
enum ExchangeOrdering {
    ScatteringProduct,
    NormalOrdered,
}

fn build_fock_with(params: &LmgParams, ordering: ExchangeOrdering) -> Result<DenseHermitian> {
    let n = params.n;
    if n > MAX_FOCK_PARTICLES {
        return Err(Error::Capacity(format!(
            "Fock sector for N = {n} exceeds the limit N ≤ {MAX_FOCK_PARTICLES}"
        )));
    }
    let states = fock_sector_states(n);
    let position = |s: u32| states.binary_search(&s).expect("particle number is conserved");
    let mut h = DMatrix::<f64>::zeros(states.len(), states.len());

    let modes: Vec<FockMode> = (1..=n)
        .flat_map(|p| [FockMode { p, sigma: -1 }, FockMode { p, sigma: 1 }])
        .collect();

    for (col, &state) in states.iter().enumerate() {
        let mut add = |coeff: f64, ops: &[Ladder]| {
            if let Some((sign, out)) = apply_ladder(ops, state) {
                h[(position(out), col)] += coeff * sign;
            }
        };
        for &a in &modes {
            let i = a.index();
            add(0.5 * params.epsilon * f64::from(a.sigma), &[Ladder::Create(i), Ladder::Annihilate(i)]);
        }
        for &a in &modes {
            for p2 in 1..=n {
                let b = FockMode { p: p2, sigma: a.sigma };
                let (pa, pb) = (a.index(), b.index());
                let (ma, mb) = (a.flipped().index(), b.flipped().index());
                add(
                    0.5 * params.v,
                    &[Ladder::Create(pa), Ladder::Create(pb), Ladder::Annihilate(mb), Ladder::Annihilate(ma)],
                );
                // b' = (p', −σ)
                let b_flip = b.flipped().index();
                let b_same = b.index();
                let ops = match ordering {
                    ExchangeOrdering::ScatteringProduct => [
                        Ladder::Create(pa),
                        Ladder::Annihilate(ma),
                        Ladder::Create(b_flip),
                        Ladder::Annihilate(b_same),
                    ],
                    ExchangeOrdering::NormalOrdered => [
                        Ladder::Create(pa),
                        Ladder::Create(b_flip),
                        Ladder::Annihilate(b_same),
                        Ladder::Annihilate(ma),
                    ],
                };
                add(0.5 * params.w, &ops);
            }
        }
    }
    DenseHermitian::from_real(&h)
}
