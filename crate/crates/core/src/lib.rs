//! Community codes, the binary asymmetric channel, and the SASH decoder.
//!
//! A clustering of `n` vertices into disjoint cliques of size at least `m`
//! is a codeword of the community code `C_{n,m}`: the upper triangle of the
//! cluster graph's adjacency matrix. An observed graph is treated as that
//! codeword after a binary asymmetric channel, and community detection
//! becomes decoding.

pub mod bits;
pub mod channel;
pub mod codeword;
pub mod combinatorics;
pub mod decoder;
pub mod error;
pub mod evaluation;
pub mod karate;

pub use bits::BitWord;
pub use channel::{discrepancy, gamma, transmit, ChannelParams};
pub use codeword::{
    decode_labeling, encode, enumerate_codewords, is_codeword, sample_codeword, type_of, Codeword,
    Labeling, ObservedGraph, DEFAULT_ENUMERATION_CAP,
};
pub use combinatorics::{
    assoc_stirling, bell, code_size, count_of_type, enumerate_types, min_discrepancy_closed_form,
    rate, weight_distribution, weight_of_type, MinDiscrepancyValue, PartitionType, Regime,
    WeightDistribution,
};
pub use decoder::{
    brute_force_ml, min_discrepancy_bruteforce, sash, DecodeReport, Sampling, Sash, SashConfig,
};
pub use error::{Error, Result};
pub use evaluation::{
    ari, as_good, estimate_pq, plant_partition, run_sweep, EmpiricalRates, PlantPrior, SweepConfig,
    SweepRow, TrialOutcome,
};
