//! End-to-end runs: prepare, rotate, sample, estimate, compare with bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{ghz_circuit, measurement_transform, Circuit, SetupConfig, SetupId};
use crate::error::{Result, SimError};
use crate::lhv::{lr_bound_bruteforce, GENUINE_FOUR_PARTY_THRESHOLD};
use crate::noise::{sample_noisy, NoiseModel};
use crate::pauli::{Axis, PauliString};
use crate::polynomial::{collapse, eigencheck, MerminPolynomial, EIGEN_TOLERANCE};
use crate::reference::{reference_data, rows_for, ExchangeRow, ReferenceRow};
use crate::statevector::Statevector;
use crate::stats::{
    derive_seed, exchange_spread, expectation_from_counts, polynomial_estimate,
    polynomial_estimate_expanded, round_error, Estimate, ShotCounts,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SHOTS: u64 = 16384;
pub const DEFAULT_K_SIGMA: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    #[serde(rename = "md")]
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(SimError::Format(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub setup: SetupId,
    pub shots: u64,
    pub seed: u64,
    pub noise: NoiseModel,
    /// Measure every string of each class separately instead of one
    /// representative.
    pub expand_permutations: bool,
    /// Violation requires `value − k·error > lr_bound`.
    pub k_sigma: f64,
    pub format: ReportFormat,
}

impl ExperimentConfig {
    pub fn new(n: usize, setup: SetupId) -> Self {
        ExperimentConfig {
            n,
            setup,
            shots: DEFAULT_SHOTS,
            seed: 0,
            noise: NoiseModel::noiseless(),
            expand_permutations: false,
            k_sigma: DEFAULT_K_SIGMA,
            format: ReportFormat::Json,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_shots(mut self, shots: u64) -> Self {
        self.shots = shots;
        self
    }

    pub fn with_noise(mut self, noise: NoiseModel) -> Self {
        self.noise = noise;
        self
    }

    pub fn validate(&self) -> Result<SetupConfig> {
        if self.shots == 0 {
            return Err(SimError::ZeroShots);
        }
        if !(self.k_sigma >= 0.0 && self.k_sigma.is_finite()) {
            return Err(SimError::Config(format!(
                "k_sigma {} must be ≥ 0",
                self.k_sigma
            )));
        }
        self.noise.validate()?;
        SetupConfig::new(self.n, self.setup)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ViolatesLr,
    ConsistentWithLr,
}

impl Verdict {
    pub fn decide(estimate: &Estimate, bound: f64, k_sigma: f64) -> Verdict {
        if estimate.value - k_sigma * estimate.error > bound {
            Verdict::ViolatesLr
        } else {
            Verdict::ConsistentWithLr
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ViolatesLr => "VIOLATES_LR",
            Verdict::ConsistentWithLr => "CONSISTENT_WITH_LR",
        }
    }
}

/// Value and error as printed in tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Display {
    pub value: f64,
    pub error: f64,
}

impl Display {
    fn of(e: &Estimate, decimals: i32) -> Display {
        let scale = 10f64.powi(decimals);
        Display {
            value: (e.value * scale).round() / scale,
            error: round_error(e.error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub string: PauliString,
    pub seed: u64,
    pub counts: ShotCounts,
    pub estimate: Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub y_count: usize,
    pub representative: PauliString,
    pub coefficient: Rational64,
    pub multiplicity: usize,
    /// `cos(φ − Yπ/2)` on the prepared GHZ state.
    pub exact: f64,
    /// Representative estimate, or the mean over all measured strings.
    pub estimate: Estimate,
    pub display: Display,
    pub measurements: Vec<Measurement>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub polynomial: MerminPolynomial,
    pub ghz_phase: f64,
    pub preparation: Circuit,
    pub classes: Vec<ClassReport>,
    pub estimate: Estimate,
    pub display: Display,
    pub exact_value: f64,
    pub lr_bound: f64,
    pub qm_value: f64,
    pub verdict: Verdict,
    /// Only for the four-qubit recursive setups: `value − k·error > 8`.
    pub genuine_four_party: Option<bool>,
    pub reference: Vec<ReferenceRow>,
}

impl ExperimentReport {
    /// Largest per-class error, as in a table's error header row.
    pub fn max_term_error(&self) -> f64 {
        self.classes
            .iter()
            .map(|c| c.estimate.error)
            .fold(0.0, f64::max)
    }
}

fn setup_tag(n: usize, setup: SetupId, class_index: usize, string_index: usize) -> u64 {
    ((n as u64) << 40)
        | ((setup.number() as u64) << 32)
        | ((class_index as u64) << 16)
        | string_index as u64
}

/// Strings of `poly` with the given Y-count, in term order.
fn class_strings(poly: &MerminPolynomial, y_count: usize) -> Vec<PauliString> {
    poly.terms
        .iter()
        .filter(|t| t.string.y_count() == y_count)
        .map(|t| t.string.clone())
        .collect()
}

fn measure(
    prep: &Circuit,
    string: &PauliString,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<Measurement> {
    let circuit = prep.clone().then(&measurement_transform(string))?;
    let counts = sample_noisy(&circuit, noise, shots, seed)?;
    let estimate = expectation_from_counts(&counts)?;
    Ok(Measurement {
        string: string.clone(),
        seed,
        counts,
        estimate,
    })
}

/// Checks the setup's stored bounds against brute force and the eigenvalue
/// on the prepared state.
pub fn check_bounds(setup: &SetupConfig) -> Result<()> {
    let lr = lr_bound_bruteforce(&setup.polynomial)?;
    if lr != setup.lr_bound {
        return Err(SimError::Invariant(format!(
            "brute-force LR bound {lr} differs from stored {}",
            setup.lr_bound
        )));
    }
    let lambda = eigencheck(&setup.polynomial, &setup.ghz_state())
        .map_err(|e| SimError::Invariant(e.to_string()))?;
    if (lambda - setup.qm_value).abs() > EIGEN_TOLERANCE {
        return Err(SimError::Invariant(format!(
            "eigenvalue {lambda} differs from QM value {}",
            setup.qm_value
        )));
    }
    Ok(())
}

/// Runs every symmetry class of the configured setup and assembles the
/// polynomial estimate, bounds and verdict.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let setup = cfg.validate()?;
    check_bounds(&setup)?;

    let poly = &setup.polynomial;
    let classes = collapse(poly)?;
    let prep = setup.preparation();
    let state = setup.ghz_state();

    let class_reports: Vec<ClassReport> = classes
        .par_iter()
        .enumerate()
        .map(|(ci, class)| -> Result<ClassReport> {
            let representative = class.representative(cfg.n);
            let strings = if cfg.expand_permutations {
                class_strings(poly, class.y_count)
            } else {
                vec![representative.clone()]
            };
            let measurements = strings
                .iter()
                .enumerate()
                .map(|(si, s)| {
                    let seed = derive_seed(cfg.seed, setup_tag(cfg.n, cfg.setup, ci, si));
                    measure(&prep, s, &cfg.noise, cfg.shots, seed)
                })
                .collect::<Result<Vec<_>>>()?;
            let m = measurements.len() as f64;
            let estimate = Estimate {
                value: measurements.iter().map(|x| x.estimate.value).sum::<f64>() / m,
                error: measurements
                    .iter()
                    .map(|x| x.estimate.error.powi(2))
                    .sum::<f64>()
                    .sqrt()
                    / m,
            };
            Ok(ClassReport {
                y_count: class.y_count,
                exact: representative.expectation(&state)?,
                representative,
                coefficient: class.coefficient,
                multiplicity: class.multiplicity,
                display: Display::of(&estimate, 3),
                estimate,
                measurements,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let estimate = if cfg.expand_permutations {
        let per_string: BTreeMap<PauliString, Estimate> = class_reports
            .iter()
            .flat_map(|c| c.measurements.iter())
            .map(|m| (m.string.clone(), m.estimate))
            .collect();
        polynomial_estimate_expanded(poly, &per_string)?
    } else {
        let per_class: BTreeMap<usize, Estimate> = class_reports
            .iter()
            .map(|c| (c.y_count, c.estimate))
            .collect();
        polynomial_estimate(&classes, &per_class)?
    };

    let verdict = Verdict::decide(&estimate, setup.lr_bound, cfg.k_sigma);
    let genuine_four_party = (cfg.n == 4 && cfg.setup != SetupId::Mermin).then(|| {
        Verdict::decide(&estimate, GENUINE_FOUR_PARTY_THRESHOLD, cfg.k_sigma) == Verdict::ViolatesLr
    });

    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        exact_value: poly.evaluate(&state)?,
        polynomial: poly.clone(),
        ghz_phase: setup.ghz_phase,
        preparation: prep,
        classes: class_reports,
        display: Display::of(&estimate, 2),
        estimate,
        lr_bound: setup.lr_bound,
        qm_value: setup.qm_value,
        verdict,
        genuine_four_party,
        reference: rows_for(cfg.n, cfg.setup),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeConfig {
    pub n: usize,
    pub shots: u64,
    pub seed: u64,
    pub noise: NoiseModel,
    /// Permit n = 4 or 5; the reference rows exist only for three qubits.
    pub allow_general: bool,
}

impl ExchangeConfig {
    pub fn new(shots: u64, seed: u64, noise: NoiseModel) -> Self {
        ExchangeConfig {
            n: 3,
            shots,
            seed,
            noise,
            allow_general: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExchangeReport {
    pub schema_version: u32,
    pub config: ExchangeConfig,
    pub measurements: Vec<Measurement>,
    pub exact: Vec<f64>,
    /// Sample standard deviation of the measured values.
    pub spread: f64,
    pub max_error: f64,
    pub reference: Vec<ExchangeRow>,
}

/// Single-Y strings with the Y moving right to left: `XXY, XYX, YXX`.
pub fn exchange_strings(n: usize) -> Result<Vec<PauliString>> {
    (0..n)
        .rev()
        .map(|pos| {
            PauliString::new(
                (0..n)
                    .map(|q| if q == pos { Axis::Y } else { Axis::X })
                    .collect(),
            )
        })
        .collect()
}

/// Measures every single-Y placement on Mermin's GHZ state (phase π/2) as an
/// independent circuit and reports their spread.
pub fn run_exchange_test(cfg: &ExchangeConfig) -> Result<ExchangeReport> {
    if cfg.n != 3 && !(cfg.allow_general && (4..=5).contains(&cfg.n)) {
        return Err(SimError::Config(format!(
            "exchange test runs on 3 qubits (4 or 5 with the general flag), got {}",
            cfg.n
        )));
    }
    if cfg.shots == 0 {
        return Err(SimError::ZeroShots);
    }
    cfg.noise.validate()?;
    let phase = std::f64::consts::FRAC_PI_2;
    let prep = ghz_circuit(cfg.n, phase)?;
    let state = Statevector::ghz(cfg.n, phase)?;
    let strings = exchange_strings(cfg.n)?;
    let measurements = strings
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let seed = derive_seed(cfg.seed, (0xE5 << 40) | ((cfg.n as u64) << 32) | i as u64);
            measure(&prep, s, &cfg.noise, cfg.shots, seed)
        })
        .collect::<Result<Vec<_>>>()?;
    let estimates: Vec<Estimate> = measurements.iter().map(|m| m.estimate).collect();
    Ok(ExchangeReport {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        exact: strings
            .iter()
            .map(|s| s.expectation(&state))
            .collect::<Result<_>>()?,
        spread: exchange_spread(&estimates)?,
        max_error: estimates.iter().map(|e| e.error).fold(0.0, f64::max),
        measurements,
        reference: if cfg.n == 3 {
            reference_data().exchange.clone()
        } else {
            Vec::new()
        },
    })
}

fn sigma_label(s: &PauliString) -> String {
    let inner: String = s
        .axes()
        .iter()
        .map(|a| match a {
            Axis::X => "σx",
            Axis::Y => "σy",
        })
        .collect();
    format!("⟨{inner}⟩")
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| SimError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// Renders a report as JSON, CSV or a markdown table.
///
/// CSV has no header: one `term` row per symmetry class
/// (`term,string,coefficient,multiplicity,value,error,exact`) followed by one
/// `result` row (`result,polynomial,lr_bound,qm_value,value,error,verdict`).
pub fn render_report(r: &ExperimentReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(r),
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(vec![]);
            let ser = |e: csv::Error| SimError::Serialize(e.to_string());
            for c in &r.classes {
                w.write_record([
                    "term".to_string(),
                    c.representative.to_string(),
                    c.coefficient.to_string(),
                    c.multiplicity.to_string(),
                    c.estimate.value.to_string(),
                    c.estimate.error.to_string(),
                    c.exact.to_string(),
                ])
                .map_err(ser)?;
            }
            w.write_record([
                "result".to_string(),
                r.polynomial.name.clone(),
                r.lr_bound.to_string(),
                r.qm_value.to_string(),
                r.estimate.value.to_string(),
                r.estimate.error.to_string(),
                r.verdict.as_str().to_string(),
            ])
            .map_err(ser)?;
            let bytes = w
                .into_inner()
                .map_err(|e| SimError::Serialize(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| SimError::Serialize(e.to_string()))
        }
        ReportFormat::Markdown => Ok(render_markdown(r)),
    }
}

fn render_markdown(r: &ExperimentReport) -> String {
    let mut out = String::new();
    let cfg = &r.config;
    let title = if cfg.n == 3 {
        "3 qubits".to_string()
    } else {
        format!("{} qubits (setup {})", cfg.n, cfg.setup.number())
    };
    let _ = writeln!(out, "### {}: {}\n", title, r.polynomial.name);

    let mut header = format!("| {} qubits |", cfg.n);
    let mut rule = String::from("|---|");
    let mut errors = String::from("| |");
    for c in &r.classes {
        let _ = write!(header, " {} |", sigma_label(&c.representative));
        rule.push_str("---:|");
        let _ = write!(errors, " ±{} |", c.display.error);
    }
    header.push_str(" **Result** | source |");
    rule.push_str("---:|---|");
    let _ = write!(errors, " **±{}** | |", r.display.error);
    let _ = writeln!(out, "{header}\n{rule}\n{errors}");

    let mut row = format!("| simulated (seed {}) |", cfg.seed);
    for c in &r.classes {
        let _ = write!(row, " {:.3} |", c.estimate.value);
    }
    let _ = writeln!(out, "{row} **{:.2}** | simulated |", r.estimate.value);
    for p in &r.reference {
        let mut row = format!("| {} |", p.machine);
        for t in &p.terms {
            let _ = write!(row, " {t:.3} |");
        }
        let _ = writeln!(out, "{row} **{:.2}** | published |", p.result);
    }

    let _ = writeln!(
        out,
        "\nLR bound {} · QM value {:.4} · exact {:.4} · shots {} · verdict **{}** (k = {})",
        r.lr_bound,
        r.qm_value,
        r.exact_value,
        cfg.shots,
        r.verdict.as_str(),
        cfg.k_sigma
    );
    if let Some(flag) = r.genuine_four_party {
        let _ = writeln!(
            out,
            "genuine four-party non-locality (> {GENUINE_FOUR_PARTY_THRESHOLD}): {}",
            if flag { "yes" } else { "no" }
        );
    }
    out
}

/// Renders an exchange-test report.
pub fn render_exchange(r: &ExchangeReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(r),
        ReportFormat::Csv => {
            let mut out = String::new();
            for m in &r.measurements {
                let _ = writeln!(
                    out,
                    "term,{},{},{}",
                    m.string, m.estimate.value, m.estimate.error
                );
            }
            let _ = writeln!(out, "spread,{},{}", r.spread, r.max_error);
            Ok(out)
        }
        ReportFormat::Markdown => {
            let mut out = String::new();
            let mut header = format!("| {} qubits |", r.config.n);
            let mut rule = String::from("|---|");
            let mut errors = String::from("| |");
            for m in &r.measurements {
                let _ = write!(header, " {} |", sigma_label(&m.string));
                rule.push_str("---:|");
                let _ = write!(errors, " ±{} |", round_error(m.estimate.error));
            }
            let _ = writeln!(
                out,
                "{header} Standard deviation |\n{rule}---:|\n{errors} |"
            );
            let mut row = format!("| simulated (seed {}) |", r.config.seed);
            for m in &r.measurements {
                let _ = write!(row, " {:.3} |", m.estimate.value);
            }
            let _ = writeln!(out, "{row} {:.3} |", r.spread);
            for p in &r.reference {
                let mut row = format!("| {} |", p.machine);
                for v in &p.values {
                    let _ = write!(row, " {v:.3} |");
                }
                let _ = writeln!(out, "{row} {:.3} |", p.std);
            }
            Ok(out)
        }
    }
}
