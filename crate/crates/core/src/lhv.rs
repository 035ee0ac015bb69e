//! Local-realistic bounds by exhaustive search over deterministic
//! hidden-variable assignments.
//!
//! A deterministic assignment fixes the ±1 outcome of both σ_x and σ_y on every
//! qubit. Mixtures of assignments form a polytope whose vertices are the
//! deterministic ones, so a linear functional is maximized at one of them.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::polynomial::MerminPolynomial;
use crate::statevector::MAX_QUBITS;

/// Threshold above which four-qubit correlations rule out hybrid two-plus-two
/// local models. Taken as a constant, not derived here.
pub const GENUINE_FOUR_PARTY_THRESHOLD: f64 = 8.0;

/// Outcomes `(a_x, a_y)` for each qubit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LhvAssignment {
    pub outcomes: Vec<(i8, i8)>,
}

impl LhvAssignment {
    /// Decodes a `2n`-bit index: the low `n` bits are the x outcomes, the high
    /// `n` bits the y outcomes, in amplitude-index qubit order; a set bit is −1.
    pub fn from_index(n: usize, index: usize) -> Self {
        let x_bits = index & ((1 << n) - 1);
        let y_bits = index >> n;
        let sign = |bits: usize, q: usize| if bits >> (n - 1 - q) & 1 == 1 { -1 } else { 1 };
        LhvAssignment {
            outcomes: (0..n).map(|q| (sign(x_bits, q), sign(y_bits, q))).collect(),
        }
    }

    /// `Σ_t c_t Π_q a_q^{axis(t, q)}` in floating point.
    pub fn value(&self, p: &MerminPolynomial) -> f64 {
        p.terms
            .iter()
            .map(|t| {
                let prod: i64 = t
                    .string
                    .axes()
                    .iter()
                    .zip(&self.outcomes)
                    .map(|(axis, (ax, ay))| match axis {
                        crate::pauli::Axis::X => *ax as i64,
                        crate::pauli::Axis::Y => *ay as i64,
                    })
                    .product();
                crate::polynomial::to_f64(t.coefficient) * prod as f64
            })
            .sum()
    }
}

/// Maximum of the polynomial over all `4^n` deterministic assignments,
/// together with one maximizing assignment.
///
/// Coefficients are brought to a common denominator and summed as integers,
/// so the result is exact.
pub fn lr_optimum(p: &MerminPolynomial) -> Result<(f64, LhvAssignment)> {
    let n = p.n;
    if n == 0 || n > MAX_QUBITS {
        return Err(SimError::QubitCount {
            n,
            min: 1,
            max: MAX_QUBITS,
        });
    }
    let denom = p
        .terms
        .iter()
        .fold(1i64, |acc, t| acc.lcm(t.coefficient.denom()));
    let terms: Vec<(usize, i64)> = p
        .terms
        .iter()
        .map(|t| (t.string.y_mask(), (t.coefficient * denom).to_integer()))
        .collect();
    let low = (1usize << n) - 1;

    let (best_index, best) = (0..1usize << (2 * n))
        .map(|idx| {
            let (x_bits, y_bits) = (idx & low, idx >> n);
            let total: i64 = terms
                .iter()
                .map(|&(y_mask, c)| {
                    let bits = (x_bits & !y_mask) | (y_bits & y_mask);
                    if bits.count_ones() % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .sum();
            (idx, total)
        })
        .fold(
            (0, i64::MIN),
            |acc, cur| if cur.1 > acc.1 { cur } else { acc },
        );

    let value = best.to_f64().expect("i64 fits") / denom as f64;
    Ok((value, LhvAssignment::from_index(n, best_index)))
}

/// Maximum local-realistic value of `p`.
pub fn lr_bound_bruteforce(p: &MerminPolynomial) -> Result<f64> {
    lr_optimum(p).map(|(v, _)| v)
}

/// `2^(n/2)` for even `n`, `2^((n-1)/2)` for odd `n`.
pub fn lr_bound_formula(n: usize) -> f64 {
    2f64.powi((n / 2) as i32)
}
