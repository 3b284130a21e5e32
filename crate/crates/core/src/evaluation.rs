//! Planted-partition experiments and clustering metrics.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{discrepancy, transmit, ChannelParams};
use crate::codeword::{encode, sample_labeling, Codeword, Labeling, ObservedGraph};
use crate::combinatorics::{enumerate_types, PartitionType};
use crate::decoder::{Sash, SashConfig};
use crate::error::{Error, Result};

/// Tolerance for the "as good" discrepancy comparison.
pub const AS_GOOD_TOLERANCE: f64 = 1e-9;

/// Floor applied to empirical crossover estimates.
pub const RATE_FLOOR: f64 = 1e-6;

/// How the planted clustering is drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PlantPrior {
    /// Partition type uniform over the allowed types, then a uniform set
    /// partition of that type.
    #[default]
    UniformType,
    /// Uniform over all codewords (types weighted by their codeword counts).
    UniformCodeword,
}

/// A planted clustering and its noisy observation.
#[derive(Clone, Debug, PartialEq)]
pub struct PlantedGraph {
    pub labeling: Labeling,
    pub codeword: Codeword,
    pub observed: ObservedGraph,
}

/// Uniform integer in `[0, bound)`.
fn random_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero());
    let bits = bound.bits();
    let digits = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    loop {
        let mut words: Vec<u32> = (0..digits).map(|_| rng.random()).collect();
        if let Some(last) = words.last_mut() {
            *last &= top_mask;
        }
        let x = BigUint::from_slice(&words);
        if &x < bound {
            return x;
        }
    }
}

fn draw_type<R: Rng + ?Sized>(
    types: &[PartitionType],
    prior: PlantPrior,
    rng: &mut R,
) -> PartitionType {
    match prior {
        PlantPrior::UniformType => types[rng.random_range(0..types.len())].clone(),
        PlantPrior::UniformCodeword => {
            let counts: Vec<BigUint> = types.iter().map(PartitionType::count).collect();
            let total: BigUint = counts.iter().sum();
            let mut r = random_below(&total, rng);
            for (t, c) in types.iter().zip(&counts) {
                if &r < c {
                    return t.clone();
                }
                r -= c;
            }
            unreachable!("draw below the total lands in some type")
        }
    }
}

/// Draws a clustering of `n` vertices with clusters of size `>= m` and
/// passes its codeword through the channel.
///
/// Equivalent to a planted-partition graph with within-cluster edge
/// probability `1 - q` and between-cluster probability `p`.
pub fn plant_partition<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    ch: &ChannelParams,
    prior: PlantPrior,
    rng: &mut R,
) -> Result<PlantedGraph> {
    let types = enumerate_types(n, m)?;
    Ok(plant_from_types(&types, ch, prior, rng))
}

fn plant_from_types<R: Rng + ?Sized>(
    types: &[PartitionType],
    ch: &ChannelParams,
    prior: PlantPrior,
    rng: &mut R,
) -> PlantedGraph {
    let t = draw_type(types, prior, rng);
    let labeling = sample_labeling(&t, rng);
    let codeword = encode(&labeling);
    let observed = transmit(&codeword, ch, rng);
    PlantedGraph {
        labeling,
        codeword,
        observed,
    }
}

/// Whether `estimate` is at least as close to the observation as `sent`.
pub fn as_good(
    observed: &ObservedGraph,
    sent: &Codeword,
    estimate: &Codeword,
    ch: &ChannelParams,
) -> bool {
    let d_est = discrepancy(observed.bits(), estimate.bits(), ch).expect("same graph size");
    let d_sent = discrepancy(observed.bits(), sent.bits(), ch).expect("same graph size");
    d_est <= d_sent + AS_GOOD_TOLERANCE
}

fn comb2(x: usize) -> f64 {
    let x = x as f64;
    x * (x - 1.0) / 2.0
}

/// Adjusted Rand Index between two labelings of the same vertices.
///
/// When the chance-corrected denominator vanishes (both labelings all
/// singletons, or both a single cluster) the result is 1 for identical
/// partitions and 0 otherwise.
pub fn ari(a: &Labeling, b: &Labeling) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    let mut rows: HashMap<usize, usize> = HashMap::new();
    let mut cols: HashMap<usize, usize> = HashMap::new();
    let mut cells: HashMap<(usize, usize), usize> = HashMap::new();
    for (&x, &y) in a.labels().iter().zip(b.labels()) {
        *rows.entry(x).or_default() += 1;
        *cols.entry(y).or_default() += 1;
        *cells.entry((x, y)).or_default() += 1;
    }
    let index: f64 = cells.values().map(|&c| comb2(c)).sum();
    let sum_a: f64 = rows.values().map(|&c| comb2(c)).sum();
    let sum_b: f64 = cols.values().map(|&c| comb2(c)).sum();
    let expected = sum_a * sum_b / comb2(n);
    let max_index = 0.5 * (sum_a + sum_b);
    let denom = max_index - expected;
    if n < 2 || denom.abs() < 1e-12 {
        return Ok(if a.canonical() == b.canonical() {
            1.0
        } else {
            0.0
        });
    }
    Ok((index - expected) / denom)
}

/// Empirical crossover rates of a graph against a reference clustering.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmpiricalRates {
    /// Fraction of between-cluster pairs carrying an edge (floored at [`RATE_FLOOR`]).
    pub p: f64,
    /// Fraction of within-cluster pairs missing an edge (floored at [`RATE_FLOOR`]).
    pub q: f64,
}

impl EmpiricalRates {
    /// Channel with these rates; rejects (rather than adjusts) estimates
    /// outside `p <= q`, `p + q < 1`.
    pub fn channel(&self) -> Result<ChannelParams> {
        ChannelParams::new(self.p, self.q)
    }
}

pub fn estimate_pq(graph: &ObservedGraph, reference: &Labeling) -> Result<EmpiricalRates> {
    let n = graph.n();
    if reference.n() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: reference.n(),
        });
    }
    let labels = reference.labels();
    let (mut within_pairs, mut within_edges) = (0usize, 0usize);
    let (mut between_pairs, mut between_edges) = (0usize, 0usize);
    for (c, i, j) in crate::codeword::pairs_in_order(n) {
        let edge = graph.bits().get(c);
        if labels[i] == labels[j] {
            within_pairs += 1;
            within_edges += usize::from(edge);
        } else {
            between_pairs += 1;
            between_edges += usize::from(edge);
        }
    }
    if within_pairs == 0 {
        return Err(Error::DegenerateReference("no within-cluster pairs"));
    }
    if between_pairs == 0 {
        return Err(Error::DegenerateReference("no between-cluster pairs"));
    }
    let p = between_edges as f64 / between_pairs as f64;
    let q = 1.0 - within_edges as f64 / within_pairs as f64;
    Ok(EmpiricalRates {
        p: p.max(RATE_FLOOR),
        q: q.max(RATE_FLOOR),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub sent: Codeword,
    pub observed: ObservedGraph,
    pub estimate: Codeword,
    pub exact: bool,
    pub as_good: bool,
    pub ari: f64,
    pub delta_sent: f64,
    pub delta_estimate: f64,
}

impl TrialOutcome {
    pub fn evaluate(
        sent: Codeword,
        observed: ObservedGraph,
        estimate: Codeword,
        ch: &ChannelParams,
    ) -> Self {
        let delta_sent = discrepancy(observed.bits(), sent.bits(), ch).expect("same graph size");
        let delta_estimate =
            discrepancy(observed.bits(), estimate.bits(), ch).expect("same graph size");
        let exact = sent == estimate;
        let ari = ari(&sent.labeling(), &estimate.labeling()).expect("same vertex count");
        Self {
            as_good: delta_estimate <= delta_sent + AS_GOOD_TOLERANCE,
            exact,
            ari,
            delta_sent,
            delta_estimate,
            sent,
            observed,
            estimate,
        }
    }
}

/// Independent rng for one trial: the seed picks the key, the trial index
/// and purpose pick the stream.
pub fn trial_rng(seed: u64, trial: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial.wrapping_mul(4).wrapping_add(purpose));
    rng
}

const PLANT_STREAM: u64 = 0;
const DECODE_STREAM: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub n: usize,
    pub m: usize,
    pub channel: ChannelParams,
    pub t_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub prior: PlantPrior,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub t: usize,
    pub exact_rate: f64,
    pub as_good_rate: f64,
    pub mean_ari: f64,
}

impl SweepRow {
    pub fn from_outcomes(t: usize, outcomes: &[TrialOutcome]) -> Self {
        let k = outcomes.len().max(1) as f64;
        Self {
            t,
            exact_rate: outcomes.iter().filter(|o| o.exact).count() as f64 / k,
            as_good_rate: outcomes.iter().filter(|o| o.as_good).count() as f64 / k,
            mean_ari: outcomes.iter().map(|o| o.ari).sum::<f64>() / k,
        }
    }
}

/// Runs every `t` against the same planted graphs: trial `i` draws its
/// plant and its decoder randomness from streams keyed by `(seed, i)`, so
/// results do not depend on scheduling or thread count.
pub fn run_sweep_detailed(cfg: &SweepConfig) -> Result<Vec<(SweepRow, Vec<TrialOutcome>)>> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let types = enumerate_types(cfg.n, cfg.m)?;
    let plants: Vec<PlantedGraph> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i as u64, PLANT_STREAM);
            plant_from_types(&types, &cfg.channel, cfg.prior, &mut rng)
        })
        .collect();
    let mut out = Vec::with_capacity(cfg.t_values.len());
    for &t in &cfg.t_values {
        let decoder = Sash::new(SashConfig::new(cfg.n, cfg.m, t, cfg.channel, cfg.seed)?)?;
        let outcomes: Vec<TrialOutcome> = plants
            .par_iter()
            .enumerate()
            .map(|(i, plant)| {
                let mut rng = trial_rng(cfg.seed, i as u64, DECODE_STREAM);
                let report = decoder.decode_with_rng(&plant.observed, &mut rng)?;
                Ok(TrialOutcome::evaluate(
                    plant.codeword.clone(),
                    plant.observed.clone(),
                    report.estimate,
                    &cfg.channel,
                ))
            })
            .collect::<Result<_>>()?;
        out.push((SweepRow::from_outcomes(t, &outcomes), outcomes));
    }
    Ok(out)
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    Ok(run_sweep_detailed(cfg)?
        .into_iter()
        .map(|(row, _)| row)
        .collect())
}
