//! Polynomials assembled as dense matrices and checked against the
//! matrix-free results.

mod common;

use common::dense::{expectation, pauli_matrix};
use mermin_sim::{lr_bound_bruteforce, MerminPolynomial, SetupConfig};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn dense(p: &MerminPolynomial) -> DMatrix<Complex64> {
    let dim = 1 << p.n;
    p.terms.iter().fold(DMatrix::zeros(dim, dim), |acc, t| {
        let c = *t.coefficient.numer() as f64 / *t.coefficient.denom() as f64;
        acc + pauli_matrix(&t.string.to_string()) * Complex64::new(c, 0.0)
    })
}

#[test]
fn dense_expectation_matches_every_setup() {
    for s in SetupConfig::all() {
        let m = dense(&s.polynomial);
        let e = expectation(&m, s.ghz_state().amplitudes());
        assert!(e.im.abs() < 1e-12);
        assert!(
            (e.re - s.qm_value).abs() < 1e-9,
            "{} {}",
            s.polynomial.name,
            e.re
        );
    }
}

#[test]
fn qm_value_is_the_largest_eigenvalue() {
    for s in SetupConfig::all() {
        let m = dense(&s.polynomial);
        assert!((&m - m.adjoint()).norm() < 1e-12);
        let top = m
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::MIN, f64::max);
        assert!(
            (top - s.qm_value).abs() < 1e-9,
            "{}: {top}",
            s.polynomial.name
        );
        assert!(top > lr_bound_bruteforce(&s.polynomial).unwrap());
    }
}

#[test]
fn ghz_state_is_an_eigenvector_of_the_dense_matrix() {
    for s in SetupConfig::all() {
        let m = dense(&s.polynomial);
        let v = common::dense::vector(s.ghz_state().amplitudes());
        let residual = (&m * &v - &v * Complex64::new(s.qm_value, 0.0)).norm();
        assert!(residual < 1e-9, "{} residual {residual}", s.polynomial.name);
    }
}
