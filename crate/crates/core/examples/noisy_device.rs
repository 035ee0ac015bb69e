//! ⟨M_3⟩ and the four-qubit hybrid flag under increasing depolarizing noise.
//!
//! ```bash
//! cargo run --release --example noisy_device
//! ```

use mermin_sim::{run_experiment, ExperimentConfig, NoiseModel, SetupId};

fn main() -> mermin_sim::Result<()> {
    println!("  p     ⟨M_3⟩            verdict");
    for p in [0.0, 0.01, 0.02, 0.03, 0.05, 0.1] {
        let cfg = ExperimentConfig::new(3, SetupId::Mermin)
            .with_seed(11)
            .with_noise(NoiseModel::uniform(p)?);
        let r = run_experiment(&cfg)?;
        println!(
            "{p:5.2}  {:.3} ± {:.3}  {}",
            r.estimate.value,
            r.estimate.error,
            r.verdict.as_str()
        );
    }

    println!("\n  p     ⟨M_4^A⟩          verdict              > 8");
    for p in [0.0, 0.01, 0.02, 0.03, 0.05] {
        let cfg = ExperimentConfig::new(4, SetupId::AlMod)
            .with_seed(11)
            .with_noise(NoiseModel::new(p / 2.0, p, p)?);
        let r = run_experiment(&cfg)?;
        println!(
            "{p:5.2}  {:.3} ± {:.3}  {:<19}  {}",
            r.estimate.value,
            r.estimate.error,
            r.verdict.as_str(),
            r.genuine_four_party.unwrap_or(false)
        );
    }
    Ok(())
}
