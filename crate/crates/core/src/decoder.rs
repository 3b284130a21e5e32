//! SASH ("Slide Along, Shuffle/Hop") decoding plus exact reference decoders.
//!
//! SASH searches outward from the weight of the received word. At radius
//! `r` it visits the codeword weights `w - r` and `w + r`, and for every
//! partition type of that weight draws `t` uniformly random codewords of
//! the type, keeping the candidate with the smallest discrepancy. Since
//! `discrepancy >= Hamming distance >= weight gap`, the search stops once
//! the radius reaches the best discrepancy found so far.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{observed_discrepancy, ChannelParams};
use crate::codeword::{
    enumerate_codewords, type_of, Codeword, CodewordSampler, ObservedGraph, SetPartitions,
    DEFAULT_ENUMERATION_CAP,
};
use crate::combinatorics::{code_size, enumerate_types, pairs, PartitionType};
use crate::error::{Error, Result};

/// How candidates are produced for each partition type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Draw `t` codewords of the type uniformly, with replacement.
    PerType(usize),
    /// Visit every codeword of the type, in enumeration order.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SashConfig {
    pub n: usize,
    pub m: usize,
    pub sampling: Sampling,
    pub channel: ChannelParams,
    pub seed: u64,
    /// Upper bound on `|C_{n,m}|` in exhaustive mode.
    pub enumeration_cap: u64,
}

impl SashConfig {
    pub fn new(n: usize, m: usize, t: usize, channel: ChannelParams, seed: u64) -> Result<Self> {
        let cfg = Self {
            n,
            m,
            sampling: Sampling::PerType(t),
            channel,
            seed,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn exhaustive(n: usize, m: usize, channel: ChannelParams) -> Result<Self> {
        let cfg = Self {
            n,
            m,
            sampling: Sampling::Exhaustive,
            channel,
            seed: 0,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m > self.n {
            return Err(Error::InvalidCode {
                n: self.n,
                m: self.m,
            });
        }
        if self.sampling == Sampling::PerType(0) {
            return Err(Error::InvalidConfig("t must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeReport {
    pub estimate: Codeword,
    pub discrepancy_to_observation: f64,
    pub candidates_checked: u64,
    /// Search radius when the loop stopped.
    pub radius_at_exit: usize,
    /// (weight, partition type) visits; a type is counted once per visit.
    pub types_visited: usize,
}

/// A SASH decoder with its per-code tables built once.
///
/// The weight index is built from partition types rather than codewords,
/// so construction is cheap for any `n` whose partition count is
/// manageable. Exhaustive mode additionally materialises every codeword,
/// grouped by type.
#[derive(Clone, Debug)]
pub struct Sash {
    cfg: SashConfig,
    types_by_weight: BTreeMap<usize, Vec<PartitionType>>,
    complete: Codeword,
    exhaustive: Option<HashMap<PartitionType, Vec<Codeword>>>,
}

impl Sash {
    pub fn new(cfg: SashConfig) -> Result<Self> {
        cfg.validate()?;
        let (n, m) = (cfg.n, cfg.m);
        let mut types_by_weight: BTreeMap<usize, Vec<PartitionType>> = BTreeMap::new();
        for t in enumerate_types(n, m)? {
            types_by_weight.entry(t.weight()).or_default().push(t);
        }
        if types_by_weight.is_empty() {
            return Err(Error::InvalidCode { n, m });
        }
        let exhaustive = match cfg.sampling {
            Sampling::Exhaustive => {
                let size = code_size(n, m)?;
                if size > cfg.enumeration_cap.into() {
                    return Err(Error::CapExceeded {
                        what: format!("C({n},{m}) with {size} codewords"),
                        cap: cfg.enumeration_cap,
                    });
                }
                let mut by_type: HashMap<PartitionType, Vec<Codeword>> = HashMap::new();
                for labeling in SetPartitions::new(n, m) {
                    by_type
                        .entry(type_of(&labeling))
                        .or_default()
                        .push(crate::codeword::encode(&labeling));
                }
                Some(by_type)
            }
            Sampling::PerType(_) => None,
        };
        let complete = Codeword::from_blocks(n, &[(0..n).collect::<Vec<_>>()]);
        Ok(Self {
            cfg,
            types_by_weight,
            complete,
            exhaustive,
        })
    }

    pub fn config(&self) -> &SashConfig {
        &self.cfg
    }

    /// Weights carried by at least one codeword.
    pub fn codeword_weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.types_by_weight.keys().copied()
    }

    /// Decodes with an rng seeded from the configuration.
    pub fn decode(&self, y: &ObservedGraph) -> Result<DecodeReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        self.decode_with_rng(y, &mut rng)
    }

    pub fn decode_with_rng<R: Rng + ?Sized>(
        &self,
        y: &ObservedGraph,
        rng: &mut R,
    ) -> Result<DecodeReport> {
        let n = self.cfg.n;
        if y.n() != n || y.bits().len() != pairs(n) {
            return Err(Error::BadBlockLength {
                n,
                len: y.bits().len(),
            });
        }
        let ch = &self.cfg.channel;
        let w = y.weight();
        let mut rho = pairs(n) as f64;
        let mut radius = 0usize;
        let mut best: Option<Codeword> = None;
        let mut candidates_checked = 0u64;
        let mut types_visited = 0usize;
        let mut sampler = CodewordSampler::new(n);
        let adjacency = Adjacency::new(y);
        let mut mask = adjacency.empty_mask();

        while (radius as f64) < rho {
            let lower = w.checked_sub(radius);
            let upper = (radius > 0).then_some(w + radius);
            for weight in lower.into_iter().chain(upper) {
                let Some(types) = self.types_by_weight.get(&weight) else {
                    continue;
                };
                for t in types {
                    types_visited += 1;
                    let mut local: Option<(Codeword, f64)> = None;
                    let mut consider = |c: Codeword| {
                        let d = observed_discrepancy(y, &c, ch);
                        if local.as_ref().is_none_or(|(_, ld)| d < *ld) {
                            local = Some((c, d));
                        }
                    };
                    match (&self.exhaustive, self.cfg.sampling) {
                        (Some(by_type), _) => {
                            let all = by_type.get(t).map(Vec::as_slice).unwrap_or_default();
                            candidates_checked += all.len() as u64;
                            all.iter().cloned().for_each(&mut consider);
                        }
                        (None, Sampling::PerType(draws)) => {
                            candidates_checked += draws as u64;
                            // d10 = w - overlap and d01 = weight(t) - overlap, where
                            // overlap counts observed edges inside the drawn blocks.
                            let tw = t.weight();
                            let mut best_here: Option<f64> = None;
                            for _ in 0..draws {
                                sampler.shuffle(rng);
                                let overlap: usize = sampler
                                    .blocks(t)
                                    .map(|b| adjacency.edges_within(b, &mut mask))
                                    .sum();
                                let d = ch.weigh(w - overlap, tw - overlap);
                                if best_here.is_none_or(|b| d < b) {
                                    best_here = Some(d);
                                    consider(sampler.codeword(t));
                                }
                            }
                        }
                        (None, Sampling::Exhaustive) => unreachable!("tables built in new()"),
                    }
                    if let Some((c, d)) = local {
                        if d < rho {
                            rho = d;
                            best = Some(c);
                        }
                    }
                }
            }
            radius += 1;
        }

        // Nothing beat the initial bound: only possible when the observation
        // is empty and the complete graph is the sole codeword weight.
        let estimate = best.unwrap_or_else(|| self.complete.clone());
        let discrepancy_to_observation = observed_discrepancy(y, &estimate, ch);
        Ok(DecodeReport {
            estimate,
            discrepancy_to_observation,
            candidates_checked,
            radius_at_exit: radius,
            types_visited,
        })
    }
}

/// Per-vertex neighbour sets of an observation as packed bit rows.
struct Adjacency {
    words: usize,
    rows: Vec<u64>,
}

impl Adjacency {
    fn new(y: &ObservedGraph) -> Self {
        let n = y.n();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (i, j) in y.edges() {
            rows[i * words + j / 64] |= 1 << (j % 64);
            rows[j * words + i / 64] |= 1 << (i % 64);
        }
        Self { words, rows }
    }

    fn empty_mask(&self) -> Vec<u64> {
        vec![0; self.words]
    }

    /// Observed edges with both ends in `block`; `mask` is scratch space.
    fn edges_within(&self, block: &[usize], mask: &mut [u64]) -> usize {
        mask.iter_mut().for_each(|m| *m = 0);
        for &v in block {
            mask[v / 64] |= 1 << (v % 64);
        }
        let mut twice = 0u32;
        for &v in block {
            let row = &self.rows[v * self.words..(v + 1) * self.words];
            twice += row
                .iter()
                .zip(mask.iter())
                .map(|(r, m)| (r & m).count_ones())
                .sum::<u32>();
        }
        (twice / 2) as usize
    }
}

/// One-shot SASH decode.
pub fn sash(y: &ObservedGraph, cfg: &SashConfig) -> Result<DecodeReport> {
    Sash::new(cfg.clone())?.decode(y)
}

/// Maximum-likelihood decoding by scanning every codeword; the first
/// minimiser in enumeration order wins.
pub fn brute_force_ml(
    y: &ObservedGraph,
    n: usize,
    m: usize,
    ch: &ChannelParams,
    cap: u64,
) -> Result<DecodeReport> {
    if y.n() != n {
        return Err(Error::BadBlockLength {
            n,
            len: y.bits().len(),
        });
    }
    let mut best: Option<(Codeword, f64)> = None;
    let mut checked = 0u64;
    for c in enumerate_codewords(n, m, cap)? {
        checked += 1;
        let d = observed_discrepancy(y, &c, ch);
        if best.as_ref().is_none_or(|(_, bd)| d < *bd) {
            best = Some((c, d));
        }
    }
    let (estimate, d) = best.ok_or(Error::InvalidCode { n, m })?;
    Ok(DecodeReport {
        estimate,
        discrepancy_to_observation: d,
        candidates_checked: checked,
        radius_at_exit: 0,
        types_visited: enumerate_types(n, m)?.len(),
    })
}

/// Distinct `(d10, d01)` counts over all ordered pairs `(y, x)` of distinct codewords.
pub fn disagreement_profile(n: usize, m: usize, cap: u64) -> Result<BTreeSet<(usize, usize)>> {
    let words: Vec<Codeword> = enumerate_codewords(n, m, cap)?.collect();
    let mut out = BTreeSet::new();
    for (i, y) in words.iter().enumerate() {
        for x in &words[i + 1..] {
            let (a, b) = y.bits().cross_counts(x.bits());
            out.insert((a, b));
            out.insert((b, a));
        }
    }
    Ok(out)
}

/// Pairwise minimum discrepancy of a code.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairwiseMinimum {
    /// `min discrepancy(y, x)` over ordered pairs `y != x`.
    pub ordered: f64,
    /// `min max(discrepancy(y, x), discrepancy(x, y))` over unordered pairs.
    pub symmetric: f64,
}

impl PairwiseMinimum {
    pub fn differ(&self) -> bool {
        self.ordered != self.symmetric
    }
}

pub fn min_discrepancy_pairs(
    n: usize,
    m: usize,
    ch: &ChannelParams,
    cap: u64,
) -> Result<PairwiseMinimum> {
    let profile = disagreement_profile(n, m, cap)?;
    if profile.is_empty() {
        return Err(Error::UndefinedCode { n, m });
    }
    let ordered = profile
        .iter()
        .map(|&(a, b)| ch.weigh(a, b))
        .fold(f64::INFINITY, f64::min);
    let symmetric = profile
        .iter()
        .map(|&(a, b)| ch.weigh(a.max(b), a.min(b)))
        .fold(f64::INFINITY, f64::min);
    Ok(PairwiseMinimum { ordered, symmetric })
}

/// Minimum discrepancy over ordered pairs of distinct codewords, by exhaustive sweep.
pub fn min_discrepancy_bruteforce(n: usize, m: usize, ch: &ChannelParams, cap: u64) -> Result<f64> {
    Ok(min_discrepancy_pairs(n, m, ch, cap)?.ordered)
}
