//! Pauli strings and real-weighted Pauli sums.
//!
//! Qubit 0 is the leftmost tensor factor, i.e. the most-significant bit of a
//! basis index. `ZI` therefore means `Z ⊗ I` and acts on the high bit.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::encoder::DenseHermitian;
use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped when a sum is canonicalised.
pub const DROP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Single-qubit product `self · other = phase · result`.
    pub fn product(self, other: Pauli) -> (Phase, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (Phase::ONE, p),
            (a, b) if a == b => (Phase::ONE, I),
            (X, Y) => (Phase::I, Z),
            (Y, Z) => (Phase::I, X),
            (Z, X) => (Phase::I, Y),
            (Y, X) => (Phase::MINUS_I, Z),
            (Z, Y) => (Phase::MINUS_I, X),
            (X, Z) => (Phase::MINUS_I, Y),
            _ => unreachable!(),
        }
    }

    /// Action on a computational basis bit: `P|b⟩ = phase |b'⟩`.
    fn act(self, bit: bool) -> (Phase, bool) {
        match self {
            Pauli::I => (Phase::ONE, bit),
            Pauli::X => (Phase::ONE, !bit),
            Pauli::Y if bit => (Phase::MINUS_I, false),
            Pauli::Y => (Phase::I, true),
            Pauli::Z if bit => (Phase::MINUS_ONE, true),
            Pauli::Z => (Phase::ONE, false),
        }
    }
}

/// A unit phase `i^k`, kept as the exponent `k mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) & 3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Validation("Pauli string must act on at least one qubit".into()));
        }
        Ok(PauliString(letters))
    }

    pub fn identity(n_qubits: usize) -> Self {
        PauliString(vec![Pauli::I; n_qubits.max(1)])
    }

    /// Builds the string whose letters are given by the base-4 digits of
    /// `index` (qubit 0 most significant, `I=0, X=1, Y=2, Z=3`).
    pub fn from_index(n_qubits: usize, index: usize) -> Self {
        const ORDER: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
        let letters = (0..n_qubits)
            .map(|q| ORDER[(index >> (2 * (n_qubits - 1 - q))) & 3])
            .collect();
        PauliString(letters)
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Bit mask of qubits carrying a non-identity letter, in basis-index bit order.
    pub fn support_mask(&self) -> usize {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .fold(0, |m, (q, _)| m | (1 << (n - 1 - q)))
    }

    /// `P|k⟩ = phase |k'⟩` for a basis index `k`.
    pub fn apply_to_basis(&self, k: usize) -> (Phase, usize) {
        let n = self.0.len();
        let mut phase = Phase::ONE;
        let mut out = k;
        for (q, &p) in self.0.iter().enumerate() {
            let shift = n - 1 - q;
            let (ph, bit) = p.act((k >> shift) & 1 == 1);
            phase = phase * ph;
            out = (out & !(1 << shift)) | ((bit as usize) << shift);
        }
        (phase, out)
    }

    /// Product of two strings with the phase tracked exactly.
    pub fn multiply(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        if self.n_qubits() != other.n_qubits() {
            return Err(Error::Length {
                expected: self.n_qubits(),
                found: other.n_qubits(),
            });
        }
        let mut phase = Phase::ONE;
        let letters = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| {
                let (ph, r) = a.product(b);
                phase = phase * ph;
                r
            })
            .collect();
        Ok((phase, PauliString(letters)))
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits();
        let mut m = DMatrix::zeros(dim, dim);
        for k in 0..dim {
            let (phase, row) = self.apply_to_basis(k);
            m[(row, k)] = phase.to_complex();
        }
        m
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| {
                Pauli::from_char(c.to_ascii_uppercase())
                    .ok_or_else(|| Error::Validation(format!("invalid Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(letters)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub coeff: Complex64,
    pub string: PauliString,
}

impl PauliTerm {
    pub fn new(coeff: impl Into<Complex64>, string: PauliString) -> Self {
        PauliTerm {
            coeff: coeff.into(),
            string,
        }
    }
}

/// Weighted sum of Pauli strings, kept in canonical form: sorted by string,
/// duplicates merged, negligible coefficients dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        if n_qubits == 0 {
            return Err(Error::Validation("Pauli sum must act on at least one qubit".into()));
        }
        let terms: Vec<_> = terms.into_iter().collect();
        for t in &terms {
            if t.string.n_qubits() != n_qubits {
                return Err(Error::Length {
                    expected: n_qubits,
                    found: t.string.n_qubits(),
                });
            }
        }
        Ok(PauliSum { n_qubits, terms }.canonicalized())
    }

    /// Convenience constructor from `(coefficient, "letters")` pairs.
    pub fn from_real(terms: &[(f64, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|&(c, s)| Ok(PauliTerm::new(c, s.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        let n = parsed
            .first()
            .map(|t| t.string.n_qubits())
            .ok_or_else(|| Error::Validation("empty term list".into()))?;
        PauliSum::from_terms(n, parsed)
    }

    pub fn canonicalized(&self) -> Self {
        let mut merged: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for t in &self.terms {
            *merged.entry(t.string.clone()).or_default() += t.coeff;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.norm() >= DROP_TOLERANCE)
            .map(|(string, coeff)| PauliTerm { coeff, string })
            .collect();
        PauliSum {
            n_qubits: self.n_qubits,
            terms,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, string: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|t| t.string.cmp(string))
            .map(|i| self.terms[i].coeff)
            .unwrap_or_default()
    }

    pub fn identity_coeff(&self) -> f64 {
        self.coeff(&PauliString::identity(self.n_qubits)).re
    }

    pub fn max_imag(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_real(&self) -> bool {
        self.max_imag() < DROP_TOLERANCE
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Length {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let (phase, string) = a.string.multiply(&b.string)?;
                terms.push(PauliTerm {
                    coeff: a.coeff * b.coeff * phase.to_complex(),
                    string,
                });
            }
        }
        Ok(PauliSum {
            n_qubits: self.n_qubits,
            terms,
        }
        .canonicalized())
    }

    /// `H²`, needed to measure `⟨H²⟩` for the variance cost. Cross terms of
    /// anticommuting strings cancel, so a real sum squares to a real sum.
    pub fn square(&self) -> PauliSum {
        self.mul(self).expect("a sum always matches its own width")
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            for k in 0..dim {
                let (phase, row) = t.string.apply_to_basis(k);
                m[(row, k)] += t.coeff * phase.to_complex();
            }
        }
        m
    }

    pub fn to_hermitian(&self) -> Result<DenseHermitian> {
        DenseHermitian::new(self.to_matrix())
    }

    /// Serialises to the line format `<coeff> <letters>`. Fails on complex
    /// coefficients, which the format cannot carry.
    pub fn to_text(&self) -> Result<String> {
        if !self.is_real() {
            return Err(Error::Validation(format!(
                "cannot write complex coefficient (max imaginary part {:.3e})",
                self.max_imag()
            )));
        }
        if self.terms.is_empty() {
            return Ok(format!("0 {}\n", PauliString::identity(self.n_qubits)));
        }
        Ok(self
            .terms
            .iter()
            .map(|t| format!("{} {}\n", t.coeff.re, t.string))
            .collect())
    }

    /// Parses the line format. Blank lines and lines starting with `#` are skipped.
    pub fn parse_text(text: &str) -> Result<PauliSum> {
        let mut terms = Vec::new();
        let mut n_qubits = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
            let mut fields = line.split_whitespace();
            let (Some(c), Some(s), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(parse_err(format!("expected `<coeff> <letters>`, got {line:?}")));
            };
            let coeff: f64 = c
                .parse()
                .map_err(|_| parse_err(format!("bad coefficient {c:?}")))?;
            let string: PauliString = s.parse().map_err(|e: Error| parse_err(e.to_string()))?;
            match n_qubits {
                None => n_qubits = Some(string.n_qubits()),
                Some(n) if n != string.n_qubits() => {
                    return Err(parse_err(format!(
                        "string {string} has {} qubits, expected {n}",
                        string.n_qubits()
                    )))
                }
                _ => {}
            }
            terms.push(PauliTerm::new(coeff, string));
        }
        let n = n_qubits.ok_or(Error::Parse {
            line: 0,
            msg: "no terms found".into(),
        })?;
        PauliSum::from_terms(n, terms)
    }
}
