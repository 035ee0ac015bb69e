//! The three report formats for one run, and a JSON round trip.
//!
//! ```bash
//! cargo run --example reports
//! ```

use mermin_sim::{
    render_report, run_experiment, ExperimentConfig, ExperimentReport, ReportFormat, SetupId,
};

fn main() -> mermin_sim::Result<()> {
    let report = run_experiment(&ExperimentConfig::new(4, SetupId::Al).with_seed(2))?;
    println!("{}", render_report(&report, ReportFormat::Markdown)?);
    println!("{}", render_report(&report, ReportFormat::Csv)?);

    let json = render_report(&report, ReportFormat::Json)?;
    let back: ExperimentReport = serde_json::from_str(&json).expect("report parses");
    println!(
        "json: {} bytes, schema {}, round trip {}",
        json.len(),
        back.schema_version,
        if back == report { "exact" } else { "lossy" }
    );
    Ok(())
}
