//! Mermin polynomials: signed sums of σ_x/σ_y tensor products.
//!
//! Three constructions are provided:
//!
//! * [`mermin_direct`] enumerates every string with an odd number of `Y`
//!   factors and weights it by `(-1)^((Y-1)/2)`.
//! * [`alsina_recursive`] runs the two-branch recursion
//!   `M_n = ½[M_{n-1}(σx + σy) + M*_{n-1}(σx − σy)]`, `M_1 = σx`, where `M*`
//!   exchanges x and y.
//! * [`primed`] negates every coefficient.
//!
//! Coefficients are exact rationals; floating point only appears when a
//! polynomial is evaluated on a state.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::lhv::lr_bound_formula;
use crate::pauli::{Axis, PauliString};
use crate::statevector::{Statevector, MAX_QUBITS};

/// Residual above which [`eigencheck`] rejects a state.
pub const EIGEN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub string: PauliString,
    /// `[numerator, denominator]` on the wire.
    pub coefficient: Rational64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MerminPolynomial {
    pub name: String,
    pub n: usize,
    pub terms: Vec<Term>,
    pub lr_bound: f64,
    pub qm_value: f64,
}

/// All strings with the same Y-count, sharing one per-term coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryClass {
    pub y_count: usize,
    pub coefficient: Rational64,
    pub multiplicity: usize,
}

impl SymmetryClass {
    /// `X^(n-Y) Y^Y`.
    pub fn representative(&self, n: usize) -> PauliString {
        PauliString::representative(n, self.y_count).expect("y_count ≤ n by construction")
    }

    /// Coefficient times multiplicity: the weight the class carries in the
    /// collapsed polynomial.
    pub fn weight(&self) -> f64 {
        to_f64(self.coefficient) * self.multiplicity as f64
    }
}

pub(crate) fn to_f64(r: Rational64) -> f64 {
    r.to_f64().expect("small rationals convert")
}

impl MerminPolynomial {
    /// Builds a polynomial from raw terms, merging duplicates and dropping
    /// zeros. Bounds are left for the caller to fill in.
    fn from_terms(name: String, n: usize, raw: impl IntoIterator<Item = Term>) -> Self {
        let mut merged: BTreeMap<PauliString, Rational64> = BTreeMap::new();
        for t in raw {
            debug_assert_eq!(t.string.n_qubits(), n);
            *merged.entry(t.string).or_insert_with(Rational64::zero) += t.coefficient;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(string, coefficient)| Term {
                string,
                coefficient,
            })
            .collect();
        let mut p = MerminPolynomial {
            name,
            n,
            terms,
            lr_bound: 0.0,
            qm_value: 0.0,
        };
        p.qm_value = p.ghz_optimum().1;
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient_of(&self, s: &PauliString) -> Rational64 {
        self.terms
            .iter()
            .find(|t| &t.string == s)
            .map_or(Rational64::zero(), |t| t.coefficient)
    }

    fn scaled(mut self, factor: Rational64) -> Self {
        for t in &mut self.terms {
            t.coefficient *= factor;
        }
        self.qm_value = self.ghz_optimum().1;
        self
    }

    /// x ↔ y on every factor.
    fn swapped(&self) -> Self {
        MerminPolynomial::from_terms(
            format!("{}*", self.name),
            self.n,
            self.terms.iter().map(|t| Term {
                string: t.string.swapped(),
                coefficient: t.coefficient,
            }),
        )
    }

    /// `self ⊗ (x_coef·σx + y_coef·σy)` on a new rightmost qubit.
    fn extend(&self, x_coef: Rational64, y_coef: Rational64) -> Vec<Term> {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            for (axis, c) in [(Axis::X, x_coef), (Axis::Y, y_coef)] {
                out.push(Term {
                    string: t.string.extended(axis).expect("n ≤ 8 checked by caller"),
                    coefficient: t.coefficient * c,
                });
            }
        }
        out
    }

    /// Best GHZ phase and the value reached there.
    ///
    /// On `(|0…0⟩ + e^{iφ}|1…1⟩)/√2` a string with Y-count `Y` has expectation
    /// `cos(φ − Yπ/2)`, so the polynomial evaluates to `A cos φ + B sin φ` with
    /// `A + iB = Σ c_t i^{Y_t}`. The maximum is `|A + iB|` at `φ = arg(A + iB)`,
    /// and that GHZ state is an eigenvector with this eigenvalue.
    pub fn ghz_optimum(&self) -> (f64, f64) {
        let (mut a, mut b) = (Rational64::zero(), Rational64::zero());
        for t in &self.terms {
            match t.string.y_count() % 4 {
                0 => a += t.coefficient,
                1 => b += t.coefficient,
                2 => a -= t.coefficient,
                _ => b -= t.coefficient,
            }
        }
        let (a, b) = (to_f64(a), to_f64(b));
        (b.atan2(a), a.hypot(b))
    }

    /// `Σ c_t ⟨ψ|P_t|ψ⟩`.
    pub fn evaluate(&self, state: &Statevector) -> Result<f64> {
        self.terms.iter().try_fold(0.0, |acc, t| {
            Ok(acc + to_f64(t.coefficient) * t.string.expectation(state)?)
        })
    }

    /// `Σ c_t P_t|ψ⟩`.
    pub fn apply(&self, state: &Statevector) -> Result<Statevector> {
        let mut acc = vec![Complex64::new(0.0, 0.0); state.amplitudes().len()];
        for t in &self.terms {
            let applied = t.string.apply(state)?;
            let c = to_f64(t.coefficient);
            for (a, x) in acc.iter_mut().zip(applied.amplitudes()) {
                *a += x * c;
            }
        }
        let mut out = state.clone();
        out.amplitudes_mut().copy_from_slice(&acc);
        Ok(out)
    }
}

fn check_range(n: usize, min: usize) -> Result<()> {
    if (min..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(SimError::QubitCount {
            n,
            min,
            max: MAX_QUBITS,
        })
    }
}

/// Mermin's operator expanded into its `2^(n-1)` odd-Y strings.
pub fn mermin_direct(n: usize) -> Result<MerminPolynomial> {
    check_range(n, 3)?;
    let terms = (0..1usize << n).filter_map(|mask| {
        let y = mask.count_ones() as usize;
        (y % 2 == 1).then(|| Term {
            string: PauliString::from_y_mask(n, mask).expect("n checked"),
            coefficient: Rational64::from_integer(if ((y - 1) / 2).is_multiple_of(2) {
                1
            } else {
                -1
            }),
        })
    });
    let mut p = MerminPolynomial::from_terms(format!("M_{n}"), n, terms);
    p.lr_bound = lr_bound_formula(n);
    Ok(p)
}

/// Normalization applied on top of the ½-recursion: `2^(n-2)` makes the
/// three-qubit result coincide with Mermin's `M_3` and gives the four-qubit
/// polynomial unit coefficients; five qubits is then halved once more.
fn alsina_scale(n: usize) -> Rational64 {
    let base = Rational64::from_integer(1 << n.saturating_sub(2));
    if n == 5 {
        base / 2
    } else {
        base
    }
}

/// The recursive construction, normalized so that `n = 3` gives `M_3` and
/// `n = 5` carries per-term coefficients ±1.
///
/// The unscaled ½-recursion has local-realistic bound 1 for every `n`, so the
/// bound of the returned polynomial is the normalization factor itself.
pub fn alsina_recursive(n: usize) -> Result<MerminPolynomial> {
    check_range(n, 1)?;
    let one = Rational64::from_integer(1);
    let half = Rational64::new(1, 2);
    let mut current = MerminPolynomial::from_terms(
        "M_1^A".into(),
        1,
        [Term {
            string: "X".parse().expect("literal"),
            coefficient: one,
        }],
    );
    for k in 2..=n {
        let star = current.swapped();
        let mut raw = current.extend(half, half);
        raw.extend(star.extend(half, -half));
        current = MerminPolynomial::from_terms(format!("M_{k}^A"), k, raw);
    }
    let scale = alsina_scale(n);
    let mut p = current.scaled(scale);
    p.lr_bound = to_f64(scale);
    Ok(p)
}

/// Every coefficient negated; bounds unchanged.
pub fn primed(p: &MerminPolynomial) -> MerminPolynomial {
    let name = match p.name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{}'", p.name),
    };
    let mut out = p.clone().scaled(Rational64::from_integer(-1));
    out.name = name;
    out.lr_bound = p.lr_bound;
    out
}

/// Groups terms by Y-count. Fails if two strings with the same Y-count carry
/// different coefficients.
pub fn collapse(p: &MerminPolynomial) -> Result<Vec<SymmetryClass>> {
    let mut classes: BTreeMap<usize, SymmetryClass> = BTreeMap::new();
    for t in &p.terms {
        let y = t.string.y_count();
        let entry = classes.entry(y).or_insert(SymmetryClass {
            y_count: y,
            coefficient: t.coefficient,
            multiplicity: 0,
        });
        if entry.coefficient != t.coefficient {
            return Err(SimError::MixedClass { y_count: y });
        }
        entry.multiplicity += 1;
    }
    Ok(classes.into_values().collect())
}

/// Returns `λ` with `p|ψ⟩ = λ|ψ⟩`, or an error carrying the residual norm
/// `‖p|ψ⟩ − λ|ψ⟩‖` when it exceeds [`EIGEN_TOLERANCE`].
pub fn eigencheck(p: &MerminPolynomial, state: &Statevector) -> Result<f64> {
    let applied = p.apply(state)?;
    let lambda = state.inner(&applied)?.re;
    let residual = applied
        .amplitudes()
        .iter()
        .zip(state.amplitudes())
        .map(|(a, s)| (a - s * lambda).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > EIGEN_TOLERANCE {
        return Err(SimError::NotEigenvector { residual });
    }
    Ok(lambda)
}

/// Binomial coefficient, small arguments only.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
