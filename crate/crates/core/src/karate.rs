//! Zachary's Karate Club: 34 members, 78 friendship ties, and the two
//! factions the club split into ("Mr. Hi" = 0, "Officer" = 1).

use rayon::prelude::*;

use crate::codeword::{Labeling, ObservedGraph};
use crate::decoder::{Sash, SashConfig};
use crate::error::Result;
use crate::evaluation::{ari, estimate_pq, trial_rng, EmpiricalRates};

pub const VERTICES: usize = 34;

/// Undirected edges, 0-indexed, `(i, j)` with `i < j`, sorted.
pub const EDGES: [(usize, usize); 78] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (0, 6),
    (0, 7),
    (0, 8),
    (0, 10),
    (0, 11),
    (0, 12),
    (0, 13),
    (0, 17),
    (0, 19),
    (0, 21),
    (0, 31),
    (1, 2),
    (1, 3),
    (1, 7),
    (1, 13),
    (1, 17),
    (1, 19),
    (1, 21),
    (1, 30),
    (2, 3),
    (2, 7),
    (2, 8),
    (2, 9),
    (2, 13),
    (2, 27),
    (2, 28),
    (2, 32),
    (3, 7),
    (3, 12),
    (3, 13),
    (4, 6),
    (4, 10),
    (5, 6),
    (5, 10),
    (5, 16),
    (6, 16),
    (8, 30),
    (8, 32),
    (8, 33),
    (9, 33),
    (13, 33),
    (14, 32),
    (14, 33),
    (15, 32),
    (15, 33),
    (18, 32),
    (18, 33),
    (19, 33),
    (20, 32),
    (20, 33),
    (22, 32),
    (22, 33),
    (23, 25),
    (23, 27),
    (23, 29),
    (23, 32),
    (23, 33),
    (24, 25),
    (24, 27),
    (24, 31),
    (25, 31),
    (26, 29),
    (26, 33),
    (27, 33),
    (28, 31),
    (28, 33),
    (29, 32),
    (29, 33),
    (30, 32),
    (30, 33),
    (31, 32),
    (31, 33),
    (32, 33),
];

/// Faction of each member after the split.
pub const FACTIONS: [usize; VERTICES] = [
    0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1,
    1, 1,
];

pub fn graph() -> ObservedGraph {
    ObservedGraph::from_edges(VERTICES, &EDGES).expect("fixture is a simple graph")
}

pub fn factions() -> Labeling {
    Labeling::new(FACTIONS.to_vec())
}

/// Crossover rates of the network measured against the faction split.
pub fn empirical_rates() -> EmpiricalRates {
    estimate_pq(&graph(), &factions()).expect("both factions are non-trivial")
}

#[derive(Clone, Debug, PartialEq)]
pub struct KarateReport {
    pub m: usize,
    pub t: usize,
    pub rates: EmpiricalRates,
    /// ARI against the factions, one per trial.
    pub aris: Vec<f64>,
    pub estimates: Vec<Labeling>,
}

impl KarateReport {
    pub fn peak_ari(&self) -> f64 {
        self.aris.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean_ari(&self) -> f64 {
        self.aris.iter().sum::<f64>() / self.aris.len() as f64
    }
}

/// Decodes the club `trials` times as a word of `C_{34,m}` with the
/// empirically matched channel; trial `i` uses the rng stream keyed by `(seed, i)`.
pub fn run_karate(m: usize, t: usize, trials: usize, seed: u64) -> Result<KarateReport> {
    let rates = empirical_rates();
    let channel = rates.channel()?;
    let decoder = Sash::new(SashConfig::new(VERTICES, m, t, channel, seed)?)?;
    let y = graph();
    let truth = factions();
    let results: Vec<(f64, Labeling)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i as u64, 1);
            let report = decoder.decode_with_rng(&y, &mut rng)?;
            let est = report.estimate.labeling();
            Ok((ari(&truth, &est)?, est))
        })
        .collect::<Result<_>>()?;
    let (aris, estimates) = results.into_iter().unzip();
    Ok(KarateReport {
        m,
        t,
        rates,
        aris,
        estimates,
    })
}
