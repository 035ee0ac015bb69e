//! GHZ preparation, measurement-basis transforms, qubit relabeling and the
//! table of state/polynomial setups.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::pauli::{Axis, PauliString};
use crate::polynomial::{alsina_recursive, mermin_direct, primed, MerminPolynomial};
use crate::statevector::{Gate, Statevector, MAX_QUBITS};

/// Ordered gate list on `n` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit {
            n,
            gates: Vec::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// `self` followed by `other`.
    pub fn then(mut self, other: &Circuit) -> Result<Circuit> {
        if other.n != self.n {
            return Err(SimError::DimensionMismatch {
                state: self.n,
                operator: other.n,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(self)
    }

    /// Runs the circuit on `|0…0⟩`.
    pub fn run(&self) -> Result<Statevector> {
        let mut s = Statevector::zero(self.n)?;
        self.run_on(&mut s)?;
        Ok(s)
    }

    pub fn run_on(&self, state: &mut Statevector) -> Result<()> {
        if state.n_qubits() != self.n {
            return Err(SimError::DimensionMismatch {
                state: state.n_qubits(),
                operator: self.n,
            });
        }
        self.gates.iter().try_for_each(|g| state.apply_gate(g))
    }
}

/// H and PHASE(φ) on qubit 0, then a CNOT chain 0→1→…→n-1. Prepares
/// `(|0…0⟩ + e^{iφ}|1…1⟩)/√2`.
pub fn ghz_circuit(n: usize, phase: f64) -> Result<Circuit> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(SimError::QubitCount {
            n,
            min: 2,
            max: MAX_QUBITS,
        });
    }
    let mut c = Circuit::new(n);
    c.push(Gate::H(0))?.push(Gate::Phase(0, phase))?;
    for q in 0..n - 1 {
        c.push(Gate::Cnot {
            control: q,
            target: q + 1,
        })?;
    }
    Ok(c)
}

/// Rotates each qubit so that a computational-basis readout measures the
/// string's axis there: H for X, S† then H for Y.
pub fn measurement_transform(p: &PauliString) -> Circuit {
    let mut c = Circuit::new(p.n_qubits());
    for (q, axis) in p.axes().iter().enumerate() {
        if *axis == Axis::Y {
            c.gates.push(Gate::Sdg(q));
        }
        c.gates.push(Gate::H(q));
    }
    c
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(SimError::Permutation(format!(
            "length {} for {n} qubits",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(SimError::Permutation(format!(
                "{perm:?} is not a bijection"
            )));
        }
    }
    Ok(())
}

/// Relabels qubit `q` as `perm[q]` in every gate.
pub fn permute_qubits(c: &Circuit, perm: &[usize]) -> Result<Circuit> {
    check_permutation(perm, c.n)?;
    Ok(Circuit {
        n: c.n,
        gates: c.gates.iter().map(|g| g.map_qubits(|q| perm[q])).collect(),
    })
}

/// State/polynomial pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetupId {
    /// GHZ phase from the recursive construction, measured with the primed
    /// polynomial.
    Al,
    /// Sign-corrected GHZ phase, measured with the recursive polynomial.
    AlMod,
    /// Phase π/2 with Mermin's operator.
    Mermin,
}

impl SetupId {
    pub const ALL: [SetupId; 3] = [SetupId::Al, SetupId::AlMod, SetupId::Mermin];

    pub fn as_str(self) -> &'static str {
        match self {
            SetupId::Al => "al",
            SetupId::AlMod => "al-mod",
            SetupId::Mermin => "mermin",
        }
    }

    /// Number used in tables: 1, 2, 3.
    pub fn number(self) -> u8 {
        match self {
            SetupId::Al => 1,
            SetupId::AlMod => 2,
            SetupId::Mermin => 3,
        }
    }
}

impl fmt::Display for SetupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetupId {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "al" | "a-l" | "1" => Ok(SetupId::Al),
            "al-mod" | "al_modified" | "al-modified" | "2" => Ok(SetupId::AlMod),
            "mermin" | "3" => Ok(SetupId::Mermin),
            other => Err(SimError::Config(format!("unknown setup {other:?}"))),
        }
    }
}

/// GHZ phase, polynomial and bounds for one qubit count and setup.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetupConfig {
    pub n: usize,
    pub setup_id: SetupId,
    pub ghz_phase: f64,
    pub polynomial: MerminPolynomial,
    pub lr_bound: f64,
    pub qm_value: f64,
}

impl SetupConfig {
    /// The nine supported combinations, n ∈ {3, 4, 5}. For three qubits all
    /// setups coincide.
    pub fn new(n: usize, setup_id: SetupId) -> Result<Self> {
        let (ghz_phase, polynomial) = match (n, setup_id) {
            (3, _) => (FRAC_PI_2, mermin_direct(3)?),
            (4 | 5, SetupId::Mermin) => (FRAC_PI_2, mermin_direct(n)?),
            (4, SetupId::Al) => (-FRAC_PI_4, primed(&alsina_recursive(4)?)),
            (4, SetupId::AlMod) => (3.0 * FRAC_PI_4, alsina_recursive(4)?),
            (5, SetupId::Al) => (0.0, primed(&alsina_recursive(5)?)),
            (5, SetupId::AlMod) => (PI, alsina_recursive(5)?),
            _ => {
                return Err(SimError::Config(format!(
                    "no setup {setup_id} for {n} qubits (supported: 3, 4, 5)"
                )))
            }
        };
        Ok(SetupConfig {
            n,
            setup_id,
            ghz_phase,
            lr_bound: polynomial.lr_bound,
            qm_value: polynomial.qm_value,
            polynomial,
        })
    }

    pub fn all() -> Vec<SetupConfig> {
        (3..=5)
            .flat_map(|n| SetupId::ALL.into_iter().map(move |s| (n, s)))
            .map(|(n, s)| SetupConfig::new(n, s).expect("table entries are valid"))
            .collect()
    }

    pub fn preparation(&self) -> Circuit {
        ghz_circuit(self.n, self.ghz_phase).expect("n in 3..=5")
    }

    pub fn ghz_state(&self) -> Statevector {
        Statevector::ghz(self.n, self.ghz_phase).expect("n in 3..=5")
    }

    /// Preparation followed by the measurement transform for `p`.
    pub fn measurement_circuit(&self, p: &PauliString) -> Result<Circuit> {
        self.preparation().then(&measurement_transform(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::collapse;
    use crate::statevector::parity_expectation;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn ghz_circuit_examples() {
        for (n, phase) in [(3, FRAC_PI_2), (4, -FRAC_PI_4), (5, 0.0)] {
            let out = ghz_circuit(n, phase).unwrap().run().unwrap();
            let target = Statevector::ghz(n, phase).unwrap();
            assert!(out.fidelity(&target).unwrap() >= 1.0 - 1e-10);
        }
        let s = ghz_circuit(3, FRAC_PI_2).unwrap().run().unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0] - Complex64::new(h, 0.0)).norm() < 1e-15);
        assert!((s.amplitudes()[7] - Complex64::new(0.0, h)).norm() < 1e-15);
    }

    #[test]
    fn ghz_circuit_has_two_nonzero_amplitudes() {
        for n in 2..=8 {
            for phase in [0.0, 0.7, -FRAC_PI_4, PI] {
                let s = ghz_circuit(n, phase).unwrap().run().unwrap();
                let last = (1 << n) - 1;
                for (i, a) in s.amplitudes().iter().enumerate() {
                    if i == 0 || i == last {
                        assert!((a.norm() - FRAC_1_SQRT_2).abs() < 1e-10);
                    } else {
                        assert!(a.norm() < 1e-10);
                    }
                }
            }
        }
        assert!(ghz_circuit(1, 0.0).is_err());
        assert!(ghz_circuit(9, 0.0).is_err());
    }

    #[test]
    fn measurement_transform_layouts() {
        let c = measurement_transform(&ps("YYXX"));
        assert_eq!(
            c.gates,
            vec![
                Gate::Sdg(0),
                Gate::H(0),
                Gate::Sdg(1),
                Gate::H(1),
                Gate::H(2),
                Gate::H(3)
            ]
        );
        let c = measurement_transform(&ps("XXX"));
        assert_eq!(c.gates, vec![Gate::H(0), Gate::H(1), Gate::H(2)]);
    }

    #[test]
    fn parity_route_matches_exact_expectation() {
        let c = ghz_circuit(3, FRAC_PI_2)
            .unwrap()
            .then(&measurement_transform(&ps("YXX")))
            .unwrap();
        let parity = parity_expectation(&c.run().unwrap().probabilities());
        let exact = ps("YXX")
            .expectation(&Statevector::ghz(3, FRAC_PI_2).unwrap())
            .unwrap();
        assert!((parity - exact).abs() < 1e-10);
        assert!((parity - 1.0).abs() < 1e-10);
    }

    #[test]
    fn setup_table() {
        let all = SetupConfig::all();
        assert_eq!(all.len(), 9);
        let expect = [
            (3, SetupId::Al, FRAC_PI_2, 2.0, 4.0),
            (
                4,
                SetupId::Al,
                -FRAC_PI_4,
                4.0,
                8.0 * std::f64::consts::SQRT_2,
            ),
            (
                4,
                SetupId::AlMod,
                3.0 * FRAC_PI_4,
                4.0,
                8.0 * std::f64::consts::SQRT_2,
            ),
            (4, SetupId::Mermin, FRAC_PI_2, 4.0, 8.0),
            (5, SetupId::Al, 0.0, 4.0, 16.0),
            (5, SetupId::AlMod, PI, 4.0, 16.0),
            (5, SetupId::Mermin, FRAC_PI_2, 4.0, 16.0),
        ];
        for (n, id, phase, lr, qm) in expect {
            let s = SetupConfig::new(n, id).unwrap();
            assert_eq!(s.ghz_phase, phase);
            assert_eq!(s.lr_bound, lr);
            assert!((s.qm_value - qm).abs() < 1e-12);
        }
        assert_eq!(
            SetupConfig::new(4, SetupId::Al).unwrap().polynomial.name,
            "M_4^A'"
        );
        assert!(SetupConfig::new(6, SetupId::Mermin).is_err());
        assert!(SetupConfig::new(2, SetupId::Al).is_err());
    }

    #[test]
    fn class_representatives_follow_closed_form_for_every_setup() {
        for s in SetupConfig::all() {
            for class in collapse(&s.polynomial).unwrap() {
                let rep = class.representative(s.n);
                let probs = s
                    .measurement_circuit(&rep)
                    .unwrap()
                    .run()
                    .unwrap()
                    .probabilities();
                let expected = (s.ghz_phase - class.y_count as f64 * FRAC_PI_2).cos();
                assert!((parity_expectation(&probs) - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn permutations() {
        let c = ghz_circuit(3, FRAC_PI_2).unwrap();
        assert_eq!(permute_qubits(&c, &[0, 1, 2]).unwrap(), c);
        let once = permute_qubits(&c, &[1, 0, 2]).unwrap();
        assert_ne!(once, c);
        assert_eq!(permute_qubits(&once, &[1, 0, 2]).unwrap(), c);
        assert!(matches!(
            permute_qubits(&c, &[0, 0, 2]),
            Err(SimError::Permutation(_))
        ));
        assert!(permute_qubits(&c, &[0, 1]).is_err());
    }

    #[test]
    fn exchanged_terms_share_expectation() {
        let g = Statevector::ghz(3, FRAC_PI_2).unwrap();
        let vals: Vec<f64> = ["YXX", "XYX", "XXY"]
            .iter()
            .map(|s| ps(s).expectation(&g).unwrap())
            .collect();
        for v in vals {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn setup_parsing() {
        assert_eq!("al-mod".parse::<SetupId>().unwrap(), SetupId::AlMod);
        assert_eq!("MERMIN".parse::<SetupId>().unwrap(), SetupId::Mermin);
        assert!("bell".parse::<SetupId>().is_err());
        assert_eq!(
            serde_json::to_string(&SetupId::AlMod).unwrap(),
            r#""al-mod""#
        );
    }

    #[test]
    fn circuit_json() {
        let c = ghz_circuit(3, 0.5).unwrap();
        let js = serde_json::to_value(&c).unwrap();
        assert_eq!(
            js["gates"][0],
            serde_json::json!({"kind": "h", "targets": [0]})
        );
        assert_eq!(
            js["gates"][1],
            serde_json::json!({"kind": "phase", "targets": [0], "angle": 0.5})
        );
        assert_eq!(
            js["gates"][2],
            serde_json::json!({"kind": "cnot", "targets": [0, 1]})
        );
        let back: Circuit = serde_json::from_value(js).unwrap();
        assert_eq!(back, c);
    }

    fn arb_state(n: usize) -> impl Strategy<Value = Statevector> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map(
            "non-zero",
            |v| {
                Statevector::from_amplitudes(
                    v.into_iter().map(|(r, i)| Complex64::new(r, i)).collect(),
                )
                .ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn transform_parity_equals_expectation(
            (state, p) in (1usize..=5).prop_flat_map(|n| (
                arb_state(n),
                (0..(1usize << n)).prop_map(move |m| PauliString::from_y_mask(n, m).unwrap()),
            ))
        ) {
            let mut rotated = state.clone();
            measurement_transform(&p).run_on(&mut rotated).unwrap();
            let parity = parity_expectation(&rotated.probabilities());
            let exact = p.expectation(&state).unwrap();
            prop_assert!((parity - exact).abs() <= 1e-10);
        }

        #[test]
        fn permuting_a_circuit_permutes_the_measured_string(
            (phase, perm, mask) in (-PI..PI, Just(vec![0usize, 1, 2, 3]).prop_shuffle(), 0usize..16)
        ) {
            // GHZ is permutation symmetric, so any relabeling leaves every
            // expectation unchanged
            let p = PauliString::from_y_mask(4, mask).unwrap();
            let base = ghz_circuit(4, phase).unwrap().then(&measurement_transform(&p)).unwrap();
            let moved = permute_qubits(&base, &perm).unwrap();
            let a = parity_expectation(&base.run().unwrap().probabilities());
            let b = parity_expectation(&moved.run().unwrap().probabilities());
            prop_assert!((a - b).abs() <= 1e-10);
        }
    }
}
