//! Qubit-exchange check: XXY, XYX and YXX measured as separate circuits.
//! On an ideal device all three equal 1 and the spread is pure shot noise.
//!
//! ```bash
//! cargo run --example exchange_test -- 0.02
//! ```

use mermin_sim::experiment::render_exchange;
use mermin_sim::{run_exchange_test, ExchangeConfig, NoiseModel, ReportFormat};

fn main() -> mermin_sim::Result<()> {
    let p: f64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(0.0);
    let cfg = ExchangeConfig::new(16384, 3, NoiseModel::uniform(p)?);
    let report = run_exchange_test(&cfg)?;
    print!("{}", render_exchange(&report, ReportFormat::Markdown)?);
    println!(
        "\nspread {:.4} vs per-term error {:.4}",
        report.spread, report.max_error
    );
    Ok(())
}
