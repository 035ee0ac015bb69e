//! Tensor products of σ_x and σ_y, applied matrix-free.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::statevector::{qubit_mask, Statevector, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn label(self) -> char {
        match self {
            Axis::X => 'X',
            Axis::Y => 'Y',
        }
    }

    /// x ↔ y exchange.
    pub fn swapped(self) -> Axis {
        match self {
            Axis::X => Axis::Y,
            Axis::Y => Axis::X,
        }
    }
}

/// A word over {X, Y}, one letter per qubit, qubit 0 leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    axes: Vec<Axis>,
}

impl PauliString {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() || axes.len() > MAX_QUBITS {
            return Err(SimError::QubitCount {
                n: axes.len(),
                min: 1,
                max: MAX_QUBITS,
            });
        }
        Ok(PauliString { axes })
    }

    /// String with `X` everywhere except `Y` on the qubits set in `y_mask`
    /// (bit `n-1-q` marks qubit `q`, same layout as amplitude indices).
    pub fn from_y_mask(n: usize, y_mask: usize) -> Result<Self> {
        PauliString::new(
            (0..n)
                .map(|q| {
                    if y_mask & qubit_mask(n, q) != 0 {
                        Axis::Y
                    } else {
                        Axis::X
                    }
                })
                .collect(),
        )
    }

    /// Canonical class representative: `X^(n-y) Y^y`, e.g. `XXY` for n=3, y=1.
    pub fn representative(n: usize, y_count: usize) -> Result<Self> {
        if y_count > n {
            return Err(SimError::Config(format!(
                "Y-count {y_count} exceeds {n} qubits"
            )));
        }
        PauliString::new(
            std::iter::repeat_n(Axis::X, n - y_count)
                .chain(std::iter::repeat_n(Axis::Y, y_count))
                .collect(),
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn y_count(&self) -> usize {
        self.axes.iter().filter(|a| **a == Axis::Y).count()
    }

    /// Bit mask of the Y positions in amplitude-index layout.
    pub fn y_mask(&self) -> usize {
        let n = self.n_qubits();
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a == Axis::Y)
            .fold(0, |m, (q, _)| m | qubit_mask(n, q))
    }

    pub fn swapped(&self) -> PauliString {
        PauliString {
            axes: self.axes.iter().map(|a| a.swapped()).collect(),
        }
    }

    /// Appends one more qubit on the right.
    pub fn extended(&self, axis: Axis) -> Result<PauliString> {
        let mut axes = self.axes.clone();
        axes.push(axis);
        PauliString::new(axes)
    }

    /// The string whose qubit `perm[q]` carries this string's axis on qubit `q`.
    pub fn permuted(&self, perm: &[usize]) -> Result<PauliString> {
        crate::circuit::check_permutation(perm, self.n_qubits())?;
        let mut axes = vec![Axis::X; self.n_qubits()];
        for (q, a) in self.axes.iter().enumerate() {
            axes[perm[q]] = *a;
        }
        PauliString::new(axes)
    }

    fn check_dims(&self, state: &Statevector) -> Result<()> {
        if state.n_qubits() != self.n_qubits() {
            return Err(SimError::DimensionMismatch {
                state: state.n_qubits(),
                operator: self.n_qubits(),
            });
        }
        Ok(())
    }

    /// `P|ψ⟩` where X flips a bit and Y flips it with phase `i` (0→1) or `-i` (1→0).
    pub fn apply(&self, state: &Statevector) -> Result<Statevector> {
        self.check_dims(state)?;
        let flip = (1usize << self.n_qubits()) - 1;
        let y_mask = self.y_mask();
        let y_count = self.y_count() as u32;
        let src = state.amplitudes();
        let mut out = state.clone();
        for (idx, amp) in out.amplitudes_mut().iter_mut().enumerate() {
            // amplitude at idx comes from idx ^ flip; each Y contributes i if the
            // source bit was 0 and -i if it was 1
            let from = idx ^ flip;
            let ones = (from & y_mask).count_ones();
            *amp = src[from] * i_power(y_count + 2 * ones);
        }
        Ok(out)
    }

    /// `⟨ψ|P|ψ⟩`, real because P is Hermitian.
    pub fn expectation(&self, state: &Statevector) -> Result<f64> {
        let applied = self.apply(state)?;
        Ok(state.inner(&applied)?.re)
    }
}

/// `i^k`.
fn i_power(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axes {
            write!(f, "{}", a.label())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        let axes = s
            .chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'X' => Ok(Axis::X),
                'Y' => Ok(Axis::Y),
                other => Err(SimError::PauliLabel(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(axes)
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Applies `p` to `state`.
pub fn apply_pauli(state: &Statevector, p: &PauliString) -> Result<Statevector> {
    p.apply(state)
}

/// `⟨state|p|state⟩`.
pub fn exact_expectation(state: &Statevector, p: &PauliString) -> Result<f64> {
    p.expectation(state)
}
