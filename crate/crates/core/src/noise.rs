//! Depolarizing gate noise and symmetric readout error, sampled one
//! trajectory per shot.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::error::{Result, SimError};
use crate::statevector::Statevector;
use crate::stats::{chunked_counts, Cumulative, ShotCounts};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Depolarizing probability after each single-qubit gate.
    pub p1: f64,
    /// Depolarizing probability on each qubit touched by a CNOT.
    pub p2: f64,
    /// Probability of flipping each measured bit.
    pub readout_flip: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, readout_flip: f64) -> Result<Self> {
        let m = NoiseModel {
            p1,
            p2,
            readout_flip,
        };
        m.validate()?;
        Ok(m)
    }

    /// Same depolarizing strength on every gate and readout.
    pub fn uniform(p: f64) -> Result<Self> {
        NoiseModel::new(p, p, p)
    }

    pub fn noiseless() -> Self {
        NoiseModel::default()
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.readout_flip == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("p1", self.p1),
            ("p2", self.p2),
            ("readout_flip", self.readout_flip),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(SimError::Probability { name, value });
            }
        }
        Ok(())
    }

    /// Parses `"p1,p2,readout"`.
    pub fn parse_triple(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|x| x.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| SimError::Config(format!("noise {s:?}: {e}")))?;
        match parts.as_slice() {
            [p1, p2, r] => NoiseModel::new(*p1, *p2, *r),
            _ => Err(SimError::Config(format!(
                "noise {s:?}: expected p1,p2,readout"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PauliError {
    X,
    Y,
    Z,
}

/// Samples noisy shots of one circuit.
///
/// Each shot first draws its error pattern. Shots without gate errors reuse
/// the noiseless output distribution; the rest are simulated gate by gate.
#[derive(Debug, Clone)]
pub struct TrajectorySampler<'a> {
    circuit: &'a Circuit,
    model: NoiseModel,
    ideal: Cumulative,
}

impl<'a> TrajectorySampler<'a> {
    pub fn new(circuit: &'a Circuit, model: NoiseModel) -> Result<Self> {
        model.validate()?;
        let ideal = Cumulative::new(&circuit.run()?.probabilities())?;
        Ok(TrajectorySampler {
            circuit,
            model,
            ideal,
        })
    }

    /// One shot; returns the outcome index (qubit 0 most significant).
    pub fn shot<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut errors: Vec<(usize, usize, PauliError)> = Vec::new();
        for (g, gate) in self.circuit.gates.iter().enumerate() {
            let p = if gate.is_two_qubit() {
                self.model.p2
            } else {
                self.model.p1
            };
            if p == 0.0 {
                continue;
            }
            for q in gate.qubits() {
                if rng.random::<f64>() < p {
                    let kind = match rng.random_range(0..3) {
                        0 => PauliError::X,
                        1 => PauliError::Y,
                        _ => PauliError::Z,
                    };
                    errors.push((g, q, kind));
                }
            }
        }

        let outcome = if errors.is_empty() {
            self.ideal.sample(rng)
        } else {
            let probs = self.simulate(&errors).probabilities();
            Cumulative::new(&probs)
                .expect("unitary evolution keeps the state normalized")
                .sample(rng)
        };
        self.apply_readout(outcome, rng)
    }

    fn simulate(&self, errors: &[(usize, usize, PauliError)]) -> Statevector {
        let mut state = Statevector::zero(self.circuit.n).expect("validated circuit");
        let mut pending = errors.iter().peekable();
        for (g, gate) in self.circuit.gates.iter().enumerate() {
            state.apply_gate(gate).expect("validated circuit");
            while let Some((_, q, kind)) = pending.next_if(|e| e.0 == g) {
                // Y = iXZ; the global phase is unobservable
                match kind {
                    PauliError::X => state.apply_x(*q),
                    PauliError::Z => state.apply_z(*q),
                    PauliError::Y => {
                        state.apply_z(*q);
                        state.apply_x(*q);
                    }
                }
            }
        }
        state
    }

    fn apply_readout<R: Rng + ?Sized>(&self, mut outcome: usize, rng: &mut R) -> usize {
        if self.model.readout_flip > 0.0 {
            for bit in 0..self.circuit.n {
                if rng.random::<f64>() < self.model.readout_flip {
                    outcome ^= 1 << bit;
                }
            }
        }
        outcome
    }
}

/// One noisy shot of `c`.
pub fn run_noisy_trajectory<R: Rng + ?Sized>(
    c: &Circuit,
    m: &NoiseModel,
    rng: &mut R,
) -> Result<usize> {
    Ok(TrajectorySampler::new(c, *m)?.shot(rng))
}

/// `shots` noisy trajectories of `c`, reproducible from `seed`.
pub fn sample_noisy(c: &Circuit, m: &NoiseModel, shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let sampler = TrajectorySampler::new(c, *m)?;
    Ok(chunked_counts(c.n, shots, seed, |rng| sampler.shot(rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{ghz_circuit, measurement_transform};
    use crate::statevector::Gate;
    use crate::stats::{sample_shots, stream_rng};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn validation() {
        assert!(NoiseModel::new(0.1, 0.2, 0.0).is_ok());
        assert_eq!(
            NoiseModel::new(-0.1, 0.0, 0.0),
            Err(SimError::Probability {
                name: "p1",
                value: -0.1
            })
        );
        assert!(NoiseModel::new(0.0, 1.5, 0.0).is_err());
        assert_eq!(
            NoiseModel::parse_triple("0.01, 0.02,0.03").unwrap(),
            NoiseModel::new(0.01, 0.02, 0.03).unwrap()
        );
        assert!(NoiseModel::parse_triple("0.1,0.2").is_err());
        assert!(NoiseModel::parse_triple("a,b,c").is_err());
    }

    #[test]
    fn zero_noise_is_identical_to_ideal_sampling() {
        let c = ghz_circuit(3, FRAC_PI_2)
            .unwrap()
            .then(&measurement_transform(&"XXY".parse().unwrap()))
            .unwrap();
        let probs = c.run().unwrap().probabilities();
        let noisy = sample_noisy(&c, &NoiseModel::noiseless(), 10_000, 42).unwrap();
        let ideal = sample_shots(&probs, 10_000, 42).unwrap();
        assert_eq!(noisy, ideal);
    }

    #[test]
    fn half_readout_flip_randomizes_each_bit() {
        let mut c = Circuit::new(3);
        c.push(Gate::X(0)).unwrap();
        let m = NoiseModel::new(0.0, 0.0, 0.5).unwrap();
        let counts = sample_noisy(&c, &m, 16384, 3).unwrap();
        for bit in 0..3 {
            let ones: u64 = (0..8)
                .filter(|o| o >> bit & 1 == 1)
                .map(|o| counts.count(o))
                .sum();
            let frac = ones as f64 / 16384.0;
            assert!(
                (frac - 0.5).abs() < 5.0 * (0.25f64 / 16384.0).sqrt(),
                "{frac}"
            );
        }
    }

    #[test]
    fn trajectories_are_deterministic() {
        let c = ghz_circuit(4, 0.3).unwrap();
        let m = NoiseModel::uniform(0.05).unwrap();
        let a: Vec<usize> = {
            let mut rng = stream_rng(9, 0);
            (0..200)
                .map(|_| run_noisy_trajectory(&c, &m, &mut rng).unwrap())
                .collect()
        };
        let b: Vec<usize> = {
            let mut rng = stream_rng(9, 0);
            (0..200)
                .map(|_| run_noisy_trajectory(&c, &m, &mut rng).unwrap())
                .collect()
        };
        assert_eq!(a, b);
        assert_eq!(
            sample_noisy(&c, &m, 5000, 1).unwrap(),
            sample_noisy(&c, &m, 5000, 1).unwrap()
        );
    }

    #[test]
    fn full_depolarizing_after_x_scrambles_the_bit() {
        // after X the qubit is |1⟩; an X or Y error sends it to |0⟩, Z leaves it
        let mut c = Circuit::new(1);
        c.push(Gate::X(0)).unwrap();
        let m = NoiseModel::new(1.0, 0.0, 0.0).unwrap();
        let counts = sample_noisy(&c, &m, 30_000, 5).unwrap();
        let frac0 = counts.count(0) as f64 / 30_000.0;
        assert!((frac0 - 2.0 / 3.0).abs() < 0.015, "{frac0}");
    }
}
