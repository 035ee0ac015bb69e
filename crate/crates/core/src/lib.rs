//! Statevector simulation of Mermin-inequality tests.
//!
//! The crate prepares GHZ states `(|0…0⟩ + e^{iφ}|1…1⟩)/√2`, builds Mermin
//! polynomials (direct odd-Y expansion, the two-branch recursion and its
//! negation), and evaluates them either exactly or from sampled shots with
//! binomial error bars. An exhaustive search over deterministic local
//! hidden-variable assignments supplies the classical bound each result is
//! compared against.
//!
//! Module map:
//!
//! | module | contents |
//! |---|---|
//! | [`statevector`] | amplitudes, gates, Born probabilities |
//! | [`pauli`] | σ_x/σ_y strings, matrix-free application, expectations |
//! | [`polynomial`] | Mermin polynomials, symmetry classes, eigenvalue check |
//! | [`lhv`] | local-realistic bounds by brute force |
//! | [`circuit`] | GHZ circuits, basis changes, setup table |
//! | [`noise`] | depolarizing + readout trajectories |
//! | [`stats`] | shot counts, estimates, error propagation |
//! | [`experiment`] | end-to-end runs, reports, reference tables |
//! | [`verify`] | the invariant suite behind `mermin verify` |
//!
//! ```
//! use mermin_sim::{eigencheck, mermin_direct, lr_bound_bruteforce, Statevector};
//!
//! let m3 = mermin_direct(3).unwrap();
//! let ghz = Statevector::ghz(3, std::f64::consts::FRAC_PI_2).unwrap();
//! assert!((eigencheck(&m3, &ghz).unwrap() - 4.0).abs() < 1e-12);
//! assert_eq!(lr_bound_bruteforce(&m3).unwrap(), 2.0);
//! ```

#[cfg(test)]
extern crate self as mermin_sim;

pub mod circuit;
pub mod error;
pub mod experiment;
pub mod lhv;
pub mod noise;
pub mod pauli;
pub mod polynomial;
pub mod reference;
pub mod statevector;
pub mod stats;
pub mod verify;

#[cfg(test)]
#[path = "../tests/common/dense.rs"]
mod dense_oracle;

pub use circuit::{
    ghz_circuit, measurement_transform, permute_qubits, Circuit, SetupConfig, SetupId,
};
pub use error::{Result, SimError};
pub use experiment::{
    render_exchange, render_report, run_exchange_test, run_experiment, ExchangeConfig,
    ExchangeReport, ExperimentConfig, ExperimentReport, ReportFormat, Verdict,
};
pub use lhv::{lr_bound_bruteforce, lr_bound_formula, LhvAssignment, GENUINE_FOUR_PARTY_THRESHOLD};
pub use noise::{run_noisy_trajectory, sample_noisy, NoiseModel};
pub use pauli::{apply_pauli, exact_expectation, Axis, PauliString};
pub use polynomial::{
    alsina_recursive, collapse, eigencheck, mermin_direct, primed, MerminPolynomial, SymmetryClass,
    Term,
};
pub use statevector::{parity_expectation, Gate, Statevector};
pub use stats::{
    exchange_spread, expectation_from_counts, polynomial_estimate, round_error, sample_shots,
    Estimate, ShotCounts,
};
pub use verify::{run_invariant_suite, Check};
