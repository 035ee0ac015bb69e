//! Dense Kronecker-product oracle. Builds full `2^n × 2^n` matrices from the
//! textbook single-qubit definitions; shares no code with the matrix-free
//! kernels it checks.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use mermin_sim::Gate;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn vector(amps: &[Complex64]) -> DVector<Complex64> {
    DVector::from_column_slice(amps)
}

pub fn identity() -> DMatrix<Complex64> {
    DMatrix::identity(2, 2)
}

pub fn sigma_x() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn sigma_y() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn sigma_z() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

/// 2×2 matrix of a single-qubit gate (target index ignored).
pub fn single(g: &Gate) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match *g {
        Gate::H(_) => DMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]),
        Gate::S(_) => {
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])
        }
        Gate::Sdg(_) => {
            DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)])
        }
        Gate::Phase(_, t) => DMatrix::from_row_slice(
            2,
            2,
            &[
                c(1.0, 0.0),
                c(0.0, 0.0),
                c(0.0, 0.0),
                Complex64::from_polar(1.0, t),
            ],
        ),
        Gate::X(_) => sigma_x(),
        Gate::Cnot { .. } => panic!("two-qubit gate"),
    }
}

/// Left factor acts on qubit 0 (most significant bit).
pub fn kron_all(factors: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

fn embed(n: usize, qubit: usize, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let factors: Vec<_> = (0..n)
        .map(|q| if q == qubit { m.clone() } else { identity() })
        .collect();
    kron_all(&factors)
}

pub fn gate_matrix(g: &Gate, n: usize) -> DMatrix<Complex64> {
    match *g {
        Gate::Cnot { control, target } => {
            let p0 = DMatrix::from_row_slice(
                2,
                2,
                &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            );
            let p1 = DMatrix::from_row_slice(
                2,
                2,
                &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            );
            let off: Vec<_> = (0..n)
                .map(|q| if q == control { p0.clone() } else { identity() })
                .collect();
            let on: Vec<_> = (0..n)
                .map(|q| {
                    if q == control {
                        p1.clone()
                    } else if q == target {
                        sigma_x()
                    } else {
                        identity()
                    }
                })
                .collect();
            kron_all(&off) + kron_all(&on)
        }
        _ => embed(n, g.qubits()[0], &single(g)),
    }
}

/// Tensor product of σ_x / σ_y from a label like `"XYX"`.
pub fn pauli_matrix(label: &str) -> DMatrix<Complex64> {
    let factors: Vec<_> = label
        .chars()
        .map(|ch| match ch {
            'X' => sigma_x(),
            'Y' => sigma_y(),
            'Z' => sigma_z(),
            'I' => identity(),
            _ => panic!("bad label {ch}"),
        })
        .collect();
    kron_all(&factors)
}

/// `⟨ψ|M|ψ⟩` by dense multiplication.
pub fn expectation(m: &DMatrix<Complex64>, amps: &[Complex64]) -> Complex64 {
    let psi = vector(amps);
    (psi.adjoint() * m * &psi)[(0, 0)]
}
