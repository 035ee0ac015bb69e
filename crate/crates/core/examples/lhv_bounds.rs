//! Local-realistic bounds by exhaustive search over ±1 assignments, next to
//! the closed form for Mermin's operator.
//!
//! ```bash
//! cargo run --example lhv_bounds
//! ```

use mermin_sim::lhv::lr_optimum;
use mermin_sim::{alsina_recursive, lr_bound_formula, mermin_direct, primed};

fn main() -> mermin_sim::Result<()> {
    println!("n  |M_n| terms  brute force  2^⌊n/2⌋");
    for n in 3..=7 {
        let m = mermin_direct(n)?;
        let (bound, _) = lr_optimum(&m)?;
        println!(
            "{n}  {:>11}  {bound:>11}  {:>7}",
            m.len(),
            lr_bound_formula(n)
        );
    }

    println!();
    for n in 3..=5 {
        for p in [alsina_recursive(n)?, primed(&alsina_recursive(n)?)] {
            let (bound, best) = lr_optimum(&p)?;
            let signs: String = best
                .outcomes
                .iter()
                .map(|(x, y)| format!("({x:+},{y:+})"))
                .collect::<Vec<_>>()
                .join(" ");
            println!("{:<7} bound {bound:<3} at {signs}", p.name);
        }
    }
    Ok(())
}
