//! Invariant suite run by `mermin verify`.

use serde::{Deserialize, Serialize};

use crate::circuit::SetupConfig;
use crate::experiment::{
    check_bounds, render_report, run_experiment, ExperimentConfig, ReportFormat,
};
use crate::lhv::{lr_bound_bruteforce, lr_bound_formula};
use crate::polynomial::{alsina_recursive, collapse, mermin_direct};
use crate::statevector::parity_expectation;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, failures: Vec<String>, ok_detail: String) -> Check {
        Check {
            name: name.to_string(),
            passed: failures.is_empty(),
            detail: if failures.is_empty() {
                ok_detail
            } else {
                failures.join("; ")
            },
        }
    }
}

fn setup_label(s: &SetupConfig) -> String {
    format!("n={} {}", s.n, s.setup_id)
}

fn bounds_match_bruteforce() -> Check {
    let mut failures = Vec::new();
    for s in SetupConfig::all() {
        if let Err(e) = check_bounds(&s) {
            failures.push(format!("{}: {e}", setup_label(&s)));
        }
    }
    for n in 3..=7 {
        match mermin_direct(n).and_then(|p| lr_bound_bruteforce(&p)) {
            Ok(b) if b == lr_bound_formula(n) => {}
            Ok(b) => failures.push(format!(
                "M_{n}: brute force {b}, formula {}",
                lr_bound_formula(n)
            )),
            Err(e) => failures.push(format!("M_{n}: {e}")),
        }
    }
    Check::new(
        "lr-bounds",
        failures,
        "brute force matches stored bounds (9 setups) and 2^⌊n/2⌋ for n = 3..7".into(),
    )
}

fn exact_values() -> Check {
    let mut failures = Vec::new();
    for s in SetupConfig::all() {
        match s.polynomial.evaluate(&s.ghz_state()) {
            Ok(v) if (v - s.qm_value).abs() <= 1e-9 => {}
            Ok(v) => failures.push(format!(
                "{}: ⟨M⟩ = {v}, expected {}",
                setup_label(&s),
                s.qm_value
            )),
            Err(e) => failures.push(format!("{}: {e}", setup_label(&s))),
        }
    }
    Check::new(
        "qm-values",
        failures,
        "⟨M⟩ equals the QM value for all setups".into(),
    )
}

fn circuits_prepare_ghz() -> Check {
    let mut failures = Vec::new();
    for s in SetupConfig::all() {
        match s.preparation().run() {
            Ok(psi) => {
                let f = psi.fidelity(&s.ghz_state()).unwrap_or(0.0);
                if (f - 1.0).abs() > 1e-12 {
                    failures.push(format!("{}: fidelity {f}", setup_label(&s)));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", setup_label(&s))),
        }
    }
    Check::new(
        "ghz-circuits",
        failures,
        "preparation fidelity 1 for all setups".into(),
    )
}

fn parity_route_matches_exact() -> Check {
    let mut failures = Vec::new();
    for s in SetupConfig::all() {
        for t in &s.polynomial.terms {
            let exact = t.string.expectation(&s.ghz_state());
            let parity = s
                .measurement_circuit(&t.string)
                .and_then(|c| c.run())
                .map(|psi| parity_expectation(&psi.probabilities()));
            match (exact, parity) {
                (Ok(a), Ok(b)) if (a - b).abs() <= 1e-12 => {}
                (a, b) => {
                    failures.push(format!("{} {}: {a:?} vs {b:?}", setup_label(&s), t.string))
                }
            }
        }
    }
    Check::new(
        "parity-route",
        failures,
        "rotated parity equals ⟨P⟩ for every term".into(),
    )
}

fn polynomial_structure() -> Check {
    let mut failures = Vec::new();
    for n in 3..=8 {
        match mermin_direct(n) {
            Ok(p) if p.len() == 1 << (n - 1) => {}
            Ok(p) => failures.push(format!("M_{n} has {} terms", p.len())),
            Err(e) => failures.push(e.to_string()),
        }
    }
    match (alsina_recursive(3), mermin_direct(3)) {
        (Ok(a), Ok(d)) if a.terms == d.terms => {}
        _ => failures.push("recursion at n=3 differs from M_3".into()),
    }
    for s in SetupConfig::all() {
        if let Err(e) = collapse(&s.polynomial) {
            failures.push(format!("{}: {e}", setup_label(&s)));
        }
    }
    Check::new(
        "polynomial-structure",
        failures,
        "2^(n−1) terms, recursion base case, class-constant coefficients".into(),
    )
}

fn sampled_runs(seeds: u64) -> Check {
    let mut failures = Vec::new();
    for s in SetupConfig::all() {
        for seed in 0..seeds {
            let cfg = ExperimentConfig::new(s.n, s.setup_id).with_seed(seed);
            match run_experiment(&cfg) {
                Ok(r) if (r.estimate.value - r.exact_value).abs() <= 5.0 * r.estimate.error => {}
                Ok(r) => failures.push(format!(
                    "{} seed {seed}: {} ± {} vs {}",
                    setup_label(&s),
                    r.estimate.value,
                    r.estimate.error,
                    r.exact_value
                )),
                Err(e) => failures.push(format!("{} seed {seed}: {e}", setup_label(&s))),
            }
        }
    }
    Check::new(
        "sampled-estimates",
        failures,
        format!("noiseless runs within 5σ of exact ({seeds} seeds × 9 setups)"),
    )
}

fn reports_reproducible() -> Check {
    let cfg = ExperimentConfig::new(4, crate::circuit::SetupId::Al).with_seed(7);
    let render = || run_experiment(&cfg).and_then(|r| render_report(&r, ReportFormat::Json));
    let failures = match (render(), render()) {
        (Ok(a), Ok(b)) if a == b => Vec::new(),
        (Ok(_), Ok(_)) => vec!["two runs with one seed differ".into()],
        (a, b) => vec![format!("{:?} {:?}", a.err(), b.err())],
    };
    Check::new(
        "determinism",
        failures,
        "same seed gives byte-identical JSON".into(),
    )
}

/// Runs every check; `seeds` sets how many sampled runs per setup.
pub fn run_invariant_suite(seeds: u64) -> Vec<Check> {
    vec![
        exact_values(),
        bounds_match_bruteforce(),
        polynomial_structure(),
        circuits_prepare_ghz(),
        parity_route_matches_exact(),
        sampled_runs(seeds),
        reports_reproducible(),
    ]
}
