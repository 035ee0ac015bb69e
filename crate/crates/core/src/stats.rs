//! Shot sampling, parity estimates and error propagation.
//!
//! Per-outcome uncertainty is the plug-in binomial error
//! `δp = sqrt(p̂(1 − p̂)/N)`; a term's error is the quadrature sum of its
//! outcome errors and a polynomial's error the coefficient-weighted
//! quadrature sum of its term errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};
use crate::pauli::PauliString;
use crate::polynomial::{to_f64, MerminPolynomial, SymmetryClass};

/// Shots per independently seeded RNG stream. Counts depend only on the seed
/// and this constant, never on how chunks are scheduled.
pub const SHOTS_PER_STREAM: u64 = 2048;

/// Histogram of `N` shots over the `2^n` outcomes. Outcome `o` is read with
/// qubit 0 as its most significant bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    n: usize,
    counts: Vec<u64>,
    total: u64,
}

impl ShotCounts {
    pub fn new(n: usize) -> Self {
        ShotCounts {
            n,
            counts: vec![0; 1 << n],
            total: 0,
        }
    }

    pub fn from_counts(n: usize, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != 1 << n {
            return Err(SimError::Config(format!(
                "{} count bins for {n} qubits",
                counts.len()
            )));
        }
        let total = counts.iter().sum();
        Ok(ShotCounts { n, counts, total })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn total_shots(&self) -> u64 {
        self.total
    }

    pub fn count(&self, outcome: usize) -> u64 {
        self.counts[outcome]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn record(&mut self, outcome: usize) {
        self.counts[outcome] += 1;
        self.total += 1;
    }

    fn merge(mut self, other: &ShotCounts) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        self
    }

    /// Observed frequencies `count / N`.
    pub fn frequencies(&self) -> Vec<f64> {
        let n = self.total as f64;
        self.counts.iter().map(|c| *c as f64 / n).collect()
    }

    pub fn bitstring(&self, outcome: usize) -> String {
        format!("{:0width$b}", outcome, width = self.n)
    }

    /// `outcome,count` rows for every outcome, header included.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("outcome,count\n");
        for (o, c) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{},{}", self.bitstring(o), c);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in reader.deserialize::<(String, u64)>() {
            rows.push(rec.map_err(|e| SimError::Serialize(e.to_string()))?);
        }
        let n = rows
            .first()
            .map(|(s, _)| s.len())
            .ok_or_else(|| SimError::Serialize("empty counts table".into()))?;
        let mut counts = ShotCounts::new(n);
        for (s, c) in rows {
            let o = usize::from_str_radix(&s, 2)
                .ok()
                .filter(|_| s.len() == n)
                .ok_or_else(|| SimError::Serialize(format!("bad outcome {s:?}")))?;
            counts.counts[o] += c;
            counts.total += c;
        }
        Ok(counts)
    }
}

#[derive(Serialize, Deserialize)]
struct ShotCountsRecord {
    n: usize,
    shots: u64,
    counts: BTreeMap<String, u64>,
}

impl Serialize for ShotCounts {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ShotCountsRecord {
            n: self.n,
            shots: self.total,
            counts: self
                .counts
                .iter()
                .enumerate()
                .filter(|(_, c)| **c > 0)
                .map(|(o, c)| (self.bitstring(o), *c))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShotCounts {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let r = ShotCountsRecord::deserialize(d)?;
        let mut out = ShotCounts::new(r.n);
        for (k, c) in r.counts {
            let o = usize::from_str_radix(&k, 2)
                .ok()
                .filter(|o| k.len() == r.n && *o < 1 << r.n)
                .ok_or_else(|| D::Error::custom(format!("bad outcome {k:?}")))?;
            out.counts[o] += c;
            out.total += c;
        }
        if out.total != r.shots {
            return Err(D::Error::custom("counts do not sum to shots"));
        }
        Ok(out)
    }
}

/// A value with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, error: 0.0 }
    }

    /// Error rounded to its first significant decimal.
    pub fn display_error(&self) -> f64 {
        round_error(self.error)
    }
}

/// Rounds an error to one significant figure (nearest, halves away from
/// zero): `0.0221 → 0.02`, `0.0586 → 0.06`, `0.0068 → 0.007`.
pub fn round_error(error: f64) -> f64 {
    if error <= 0.0 || !error.is_finite() {
        return error.max(0.0);
    }
    let decimals = -error.log10().floor() as i32;
    let scale = 10f64.powi(decimals);
    let rounded = (error * scale).round() / scale;
    // re-parse through the decimal string so 0.02 prints as 0.02
    format!("{rounded:.prec$}", prec = decimals.max(0) as usize)
        .parse()
        .unwrap_or(rounded)
}

/// Inverse-CDF sampler over outcome indices.
#[derive(Debug, Clone)]
pub(crate) struct Cumulative {
    cdf: Vec<f64>,
}

impl Cumulative {
    pub(crate) fn new(probabilities: &[f64]) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(SimError::Distribution("empty".into()));
        }
        let mut acc = 0.0;
        let mut cdf = Vec::with_capacity(probabilities.len());
        for (i, p) in probabilities.iter().enumerate() {
            if !(p.is_finite() && *p >= -1e-12) {
                return Err(SimError::Distribution(format!("p[{i}] = {p}")));
            }
            acc += p.max(0.0);
            cdf.push(acc);
        }
        if (acc - 1.0).abs() > 1e-9 {
            return Err(SimError::Distribution(format!("sums to {acc}")));
        }
        Ok(Cumulative { cdf })
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().expect("non-empty");
        let u = rng.random::<f64>() * total;
        self.cdf
            .partition_point(|c| *c <= u)
            .min(self.cdf.len() - 1)
    }
}

/// RNG for one stream of one seed.
pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `shots` outcomes with `draw`, in fixed-size streams that may run in
/// parallel. The result depends only on `seed`.
pub(crate) fn chunked_counts<F>(n: usize, shots: u64, seed: u64, draw: F) -> ShotCounts
where
    F: Fn(&mut ChaCha8Rng) -> usize + Sync,
{
    let streams = shots.div_ceil(SHOTS_PER_STREAM);
    (0..streams)
        .into_par_iter()
        .map(|s| {
            let mut rng = stream_rng(seed, s);
            let in_stream = SHOTS_PER_STREAM.min(shots - s * SHOTS_PER_STREAM);
            let mut counts = ShotCounts::new(n);
            for _ in 0..in_stream {
                counts.record(draw(&mut rng));
            }
            counts
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(ShotCounts::new(n), |acc, c| acc.merge(c))
}

/// `N` independent draws from `probabilities` (length `2^n`).
pub fn sample_shots(probabilities: &[f64], shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(SimError::ZeroShots);
    }
    let len = probabilities.len();
    if !len.is_power_of_two() || len < 2 {
        return Err(SimError::Distribution(format!("{len} outcomes is not 2^n")));
    }
    let cdf = Cumulative::new(probabilities)?;
    Ok(chunked_counts(
        len.trailing_zeros() as usize,
        shots,
        seed,
        |rng| cdf.sample(rng),
    ))
}

/// Parity estimate `Σ p̂(o)(−1)^{O(o)}` with error `sqrt(Σ_o p̂(1−p̂)/N)`.
pub fn expectation_from_counts(counts: &ShotCounts) -> Result<Estimate> {
    if counts.total_shots() == 0 {
        return Err(SimError::ZeroShots);
    }
    let n = counts.total_shots() as f64;
    let mut value = 0.0;
    let mut var = 0.0;
    for (o, p) in counts.frequencies().into_iter().enumerate() {
        value += if o.count_ones() % 2 == 0 { p } else { -p };
        var += p * (1.0 - p) / n;
    }
    Ok(Estimate {
        value: value.clamp(-1.0, 1.0),
        error: var.sqrt(),
    })
}

/// Combines one measured representative per symmetry class.
///
/// The value is `Σ_class c·m·⟨rep⟩`. Because a single measurement stands in
/// for all `m` copies of its class, the copies share one error and it adds
/// linearly inside the class: `δ = sqrt(Σ_class (c·m·δ_rep)²)`.
pub fn polynomial_estimate(
    classes: &[SymmetryClass],
    term_estimates: &BTreeMap<usize, Estimate>,
) -> Result<Estimate> {
    let mut value = 0.0;
    let mut var = 0.0;
    for class in classes {
        let est = term_estimates
            .get(&class.y_count)
            .ok_or(SimError::MissingClass(class.y_count))?;
        let w = class.weight();
        value += w * est.value;
        var += (w * est.error).powi(2);
    }
    Ok(Estimate {
        value,
        error: var.sqrt(),
    })
}

/// Combines independently measured estimates of every term:
/// `Σ c_t⟨t⟩ ± sqrt(Σ c_t² δ_t²)`.
pub fn polynomial_estimate_expanded(
    p: &MerminPolynomial,
    term_estimates: &BTreeMap<PauliString, Estimate>,
) -> Result<Estimate> {
    let mut value = 0.0;
    let mut var = 0.0;
    for t in &p.terms {
        let est = term_estimates
            .get(&t.string)
            .ok_or(SimError::MissingClass(t.string.y_count()))?;
        let c = to_f64(t.coefficient);
        value += c * est.value;
        var += (c * est.error).powi(2);
    }
    Ok(Estimate {
        value,
        error: var.sqrt(),
    })
}

/// Sample standard deviation (divisor `k − 1`) of the estimate values.
pub fn exchange_spread(estimates: &[Estimate]) -> Result<f64> {
    let k = estimates.len();
    if k < 2 {
        return Err(SimError::TooFewEstimates(k));
    }
    let mean = estimates.iter().map(|e| e.value).sum::<f64>() / k as f64;
    let ss: f64 = estimates.iter().map(|e| (e.value - mean).powi(2)).sum();
    Ok((ss / (k - 1) as f64).sqrt())
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `seed ⊕ hash(tag)`: per-term seeds that do not depend on scheduling.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    seed ^ mix64(tag)
}
