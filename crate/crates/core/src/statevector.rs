//! Dense complex statevector and the small gate set used by the harness.
//!
//! Qubit 0 is the leftmost label of a basis ket `|b0 b1 … b(n-1)⟩` and maps to
//! the most significant bit of the amplitude index.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

/// Largest register the engine accepts (256 amplitudes).
pub const MAX_QUBITS: usize = 8;

/// Bit mask of `qubit` inside an amplitude index of an `n`-qubit register.
#[inline]
pub(crate) fn qubit_mask(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

/// A single- or two-qubit gate.
///
/// Conventions: `H = [[1,1],[1,-1]]/√2`, `S = diag(1, i)`, `Phase(θ) = diag(1, e^{iθ})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRecord", into = "GateRecord")]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Phase(usize, f64),
    X(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    /// Qubits the gate acts on, control first for CNOT.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Phase(q, _) | Gate::X(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::Phase(..) => "phase",
            Gate::X(_) => "x",
            Gate::Cnot { .. } => "cnot",
        }
    }

    /// The same gate with every qubit index passed through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::Phase(q, theta) => Gate::Phase(f(q), theta),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(control),
                target: f(target),
            },
        }
    }

    /// Checks index bounds against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= n {
                return Err(SimError::QubitIndex { index: q, n });
            }
        }
        if let Gate::Cnot { control, target } = *self {
            if control == target {
                return Err(SimError::CnotSameQubit(control));
            }
        }
        Ok(())
    }
}

/// Wire form of a gate: `{"kind": "phase", "targets": [0], "angle": 1.57}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl From<Gate> for GateRecord {
    fn from(g: Gate) -> Self {
        let angle = match g {
            Gate::Phase(_, theta) => Some(theta),
            _ => None,
        };
        GateRecord {
            kind: g.kind().to_string(),
            targets: g.qubits(),
            angle,
        }
    }
}

impl TryFrom<GateRecord> for Gate {
    type Error = String;

    fn try_from(r: GateRecord) -> std::result::Result<Self, Self::Error> {
        let one = |t: &[usize]| match t {
            [q] => Ok(*q),
            _ => Err(format!("gate {:?} expects one target, got {:?}", r.kind, t)),
        };
        match r.kind.as_str() {
            "h" => Ok(Gate::H(one(&r.targets)?)),
            "s" => Ok(Gate::S(one(&r.targets)?)),
            "sdg" => Ok(Gate::Sdg(one(&r.targets)?)),
            "x" => Ok(Gate::X(one(&r.targets)?)),
            "phase" => {
                let theta = r.angle.ok_or("phase gate without angle")?;
                Ok(Gate::Phase(one(&r.targets)?, theta))
            }
            "cnot" => match r.targets.as_slice() {
                [c, t] => Ok(Gate::Cnot {
                    control: *c,
                    target: *t,
                }),
                t => Err(format!("cnot expects two targets, got {t:?}")),
            },
            other => Err(format!("unknown gate kind {other:?}")),
        }
    }
}

/// `2^n` complex amplitudes of an `n`-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// `|0…0⟩` on `n` qubits, `1 ≤ n ≤ 8`.
    pub fn zero(n: usize) -> Result<Self> {
        check_register(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Statevector { n, amplitudes })
    }

    /// Wraps raw amplitudes and normalizes them. Fails on a zero vector or a
    /// length that is not a supported power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(SimError::Config(format!(
                "amplitude count {len} is not 2^n with n ≥ 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        check_register(n)?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(SimError::Config("cannot normalize a zero vector".into()));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Statevector { n, amplitudes })
    }

    /// `(|0…0⟩ + e^{iφ}|1…1⟩)/√2`, built directly from the amplitudes.
    pub fn ghz(n: usize, phase: f64) -> Result<Self> {
        check_register(n)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amplitudes[(1 << n) - 1] = Complex64::from_polar(FRAC_1_SQRT_2, phase);
        Ok(Statevector { n, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(SimError::DimensionMismatch {
                state: self.n,
                operator: other.n,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`, insensitive to global phase.
    pub fn fidelity(&self, other: &Statevector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Applies `gate` in place.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match *gate {
            Gate::H(q) => self.apply_single(q, [[h, h], [h, -h]]),
            Gate::X(q) => self.apply_single(q, [[zero, one], [one, zero]]),
            Gate::S(q) => self.apply_diagonal(q, i),
            Gate::Sdg(q) => self.apply_diagonal(q, -i),
            Gate::Phase(q, theta) => self.apply_diagonal(q, Complex64::from_polar(1.0, theta)),
            Gate::Cnot { control, target } => self.apply_cnot(control, target),
        }
        Ok(())
    }

    /// Consuming form of [`Statevector::apply_gate`].
    pub fn with_gate(mut self, gate: &Gate) -> Result<Self> {
        self.apply_gate(gate)?;
        Ok(self)
    }

    /// Born-rule distribution over the `2^n` computational-basis outcomes.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    fn apply_single(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let mask = qubit_mask(self.n, qubit);
        for lo in 0..self.amplitudes.len() {
            if lo & mask != 0 {
                continue;
            }
            let hi = lo | mask;
            let (a, b) = (self.amplitudes[lo], self.amplitudes[hi]);
            self.amplitudes[lo] = m[0][0] * a + m[0][1] * b;
            self.amplitudes[hi] = m[1][0] * a + m[1][1] * b;
        }
    }

    fn apply_diagonal(&mut self, qubit: usize, phase: Complex64) {
        let mask = qubit_mask(self.n, qubit);
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & mask != 0 {
                *amp *= phase;
            }
        }
    }

    fn apply_cnot(&mut self, control: usize, target: usize) {
        let cmask = qubit_mask(self.n, control);
        let tmask = qubit_mask(self.n, target);
        for idx in 0..self.amplitudes.len() {
            if idx & cmask != 0 && idx & tmask == 0 {
                self.amplitudes.swap(idx, idx | tmask);
            }
        }
    }

    /// Pauli Z on one qubit; used for noise insertion.
    pub(crate) fn apply_z(&mut self, qubit: usize) {
        self.apply_diagonal(qubit, Complex64::new(-1.0, 0.0));
    }

    /// Pauli X on one qubit; used for noise insertion.
    pub(crate) fn apply_x(&mut self, qubit: usize) {
        let mask = qubit_mask(self.n, qubit);
        for lo in 0..self.amplitudes.len() {
            if lo & mask == 0 {
                self.amplitudes.swap(lo, lo | mask);
            }
        }
    }
}

fn check_register(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(SimError::QubitCount {
            n,
            min: 1,
            max: MAX_QUBITS,
        })
    }
}

/// `Σ_o p(o)·(-1)^{popcount(o)}`: the ±1-parity expectation of a distribution.
pub fn parity_expectation(probabilities: &[f64]) -> f64 {
    probabilities
        .iter()
        .enumerate()
        .map(|(o, p)| if o.count_ones() % 2 == 0 { *p } else { -*p })
        .sum()
}
