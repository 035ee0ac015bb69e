//! Exact ⟨M⟩ for every setup, straight from the statevector.
//!
//! ```bash
//! cargo run --example exact_values
//! ```

use mermin_sim::{collapse, eigencheck, SetupConfig};

fn main() -> mermin_sim::Result<()> {
    for s in SetupConfig::all() {
        let ghz = s.ghz_state();
        let value = s.polynomial.evaluate(&ghz)?;
        let lambda = eigencheck(&s.polynomial, &ghz)?;
        println!(
            "n={} {:<7} {:<7} φ={:+.4}  ⟨M⟩={:+.6}  eigenvalue={:+.6}  LR={}",
            s.n, s.setup_id, s.polynomial.name, s.ghz_phase, value, lambda, s.lr_bound
        );
        for c in collapse(&s.polynomial)? {
            let rep = c.representative(s.n);
            println!(
                "    {:>4} × {:<2} {}  ⟨·⟩={:+.6}",
                c.coefficient.to_string(),
                c.multiplicity,
                rep,
                rep.expectation(&ghz)?
            );
        }
    }
    Ok(())
}
