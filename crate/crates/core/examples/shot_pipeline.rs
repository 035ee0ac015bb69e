//! Sampling each class representative and propagating binomial errors into
//! the polynomial estimate, by hand and through `run_experiment`.
//!
//! ```bash
//! cargo run --example shot_pipeline -- 5 mermin 16384 7
//! ```

use std::collections::BTreeMap;

use mermin_sim::{
    collapse, expectation_from_counts, polynomial_estimate, run_experiment, sample_shots,
    ExperimentConfig, SetupConfig, SetupId,
};

fn main() -> mermin_sim::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().map_or(Ok(4), |s| s.parse()).unwrap_or(4);
    let setup: SetupId = args.get(1).map_or(Ok(SetupId::AlMod), |s| s.parse())?;
    let shots: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(16384);
    let seed: u64 = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(0);

    let s = SetupConfig::new(n, setup)?;
    let classes = collapse(&s.polynomial)?;
    let mut per_class = BTreeMap::new();
    for (i, c) in classes.iter().enumerate() {
        let rep = c.representative(n);
        let probs = s.measurement_circuit(&rep)?.run()?.probabilities();
        let counts = sample_shots(&probs, shots, seed + i as u64)?;
        let e = expectation_from_counts(&counts)?;
        println!("{rep}: {:+.4} ± {:.4}", e.value, e.error);
        per_class.insert(c.y_count, e);
    }
    let m = polynomial_estimate(&classes, &per_class)?;
    println!(
        "{} ≈ {:.3} ± {:.3} (exact {:.3})",
        s.polynomial.name, m.value, m.error, s.qm_value
    );

    let report = run_experiment(
        &ExperimentConfig::new(n, setup)
            .with_shots(shots)
            .with_seed(seed),
    )?;
    println!(
        "run_experiment: {:.2} ± {}  LR {}  {}",
        report.display.value,
        report.display.error,
        report.lr_bound,
        report.verdict.as_str()
    );
    Ok(())
}
