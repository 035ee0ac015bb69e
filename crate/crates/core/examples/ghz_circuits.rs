//! GHZ preparation, basis rotation and the parity readout of one term.
//!
//! ```bash
//! cargo run --example ghz_circuits
//! ```

use std::f64::consts::FRAC_PI_2;

use mermin_sim::{
    ghz_circuit, measurement_transform, parity_expectation, PauliString, Statevector,
};

fn main() -> mermin_sim::Result<()> {
    let prep = ghz_circuit(3, FRAC_PI_2)?;
    println!("preparation: {}", serde_json::to_string(&prep).unwrap());

    let psi = prep.run()?;
    let target = Statevector::ghz(3, FRAC_PI_2)?;
    println!(
        "fidelity with (|000⟩ + i|111⟩)/√2: {:.12}",
        psi.fidelity(&target)?
    );

    for label in ["XXY", "XYX", "YXX", "YYY", "XXX"] {
        let p: PauliString = label.parse()?;
        let rotated = prep.clone().then(&measurement_transform(&p))?.run()?;
        let probs = rotated.probabilities();
        let nonzero: Vec<String> = probs
            .iter()
            .enumerate()
            .filter(|(_, &q)| q > 1e-12)
            .map(|(o, q)| format!("{o:03b}:{q:.3}"))
            .collect();
        println!(
            "{label}: parity {:+.3}  exact {:+.3}  [{}]",
            parity_expectation(&probs),
            p.expectation(&psi)?,
            nonzero.join(" ")
        );
    }
    Ok(())
}
